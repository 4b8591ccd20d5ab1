#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace latcalc {

/// Parses a scalar expression in the variable `u`.
///
/// Grammar: numbers, `u`, `+ - * / ^` (with `^` right associative), unary
/// minus, parentheses and `exp(...)`. Throws InputError with the offending
/// position on malformed input.
std::function<double(double)> parse_expression(std::string_view text);

/// A validated Orlicz function: convex, phi(0) = 0, strictly increasing and
/// unbounded enough to reach 1.
class OrliczFunction {
 public:
  /// Validates `phi` on a sampled grid and 10^3 seeded midpoint pairs.
  OrliczFunction(std::string label, std::function<double(double)> phi);

  static OrliczFunction from_expression(std::string_view text);

  double operator()(double u) const { return (*phi_)(u); }

  /// The unique u > 0 with phi(u) = 1.
  double unit_level() const { return unit_level_; }
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  std::shared_ptr<const std::function<double(double)>> phi_;
  double unit_level_ = 1.0;
};

}  // namespace latcalc
