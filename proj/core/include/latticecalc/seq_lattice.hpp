#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "latticecalc/optimize.hpp"
#include "latticecalc/orlicz.hpp"

namespace latcalc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Conjugate exponent q with 1/p + 1/q = 1 (1 <-> infinity).
double conjugate_exponent(double p);

enum class FamilyKind { lp, weighted_lp, orlicz, custom, numeric_dual };

/// How a Köthe dual norm is evaluated. `analytic` uses the closed form when
/// the family has one and falls back to the numeric search otherwise;
/// `numeric` always searches.
struct DualMethod {
  enum class Kind { analytic, numeric };
  Kind kind = Kind::analytic;
  AscentOptions budget{};
  std::uint64_t seed = 0;

  static DualMethod analytic() { return {}; }
  static DualMethod numeric(AscentOptions budget = {}, std::uint64_t seed = 0) {
    return {Kind::numeric, budget, seed};
  }
};

/// A Banach sequence lattice norm, realized as the consistent family of its
/// restrictions to R^n for every n.
///
/// Families are immutable and cheap to copy. All built-in kinds are monotone
/// in |t|, absolutely homogeneous, and insensitive to trailing zeros.
class SeqNormFamily {
 public:
  using Oracle = std::function<double(std::span<const double>)>;

  /// l_p for p in [1, infinity].
  static SeqNormFamily lp(double p);
  /// (sum w_i |t_i|^p)^(1/p), or max w_i |t_i| for p = infinity. Vectors
  /// longer than `weights` are rejected.
  static SeqNormFamily weighted_lp(double p, std::vector<double> weights);
  /// Luxemburg norm inf{lambda > 0 : sum phi(|t_i| / lambda) <= 1}.
  static SeqNormFamily orlicz(OrliczFunction phi);
  /// User supplied monotone norm; no structural checks beyond nonnegativity.
  static SeqNormFamily custom(std::string label, Oracle oracle);
  /// Köthe dual of `base` evaluated by the numeric search of `method`.
  static SeqNormFamily numeric_dual(SeqNormFamily base, DualMethod method);

  double norm(std::span<const double> t) const;
  double operator()(std::span<const double> t) const { return norm(t); }

  FamilyKind kind() const;
  const std::string& label() const;
  /// Exponent for lp / weighted_lp families.
  double exponent() const;
  std::span<const double> weights() const;
  const OrliczFunction* orlicz_function() const;
  /// Base family of a numeric_dual family.
  const SeqNormFamily* dual_base() const;
  const DualMethod* dual_method() const;

  bool has_analytic_dual() const;

  /// ||e_j||_Y (0-based j) computed in R^(j+1).
  double unit_vector_norm(std::size_t j) const;
  /// ||(1, ..., 1)||_Y in R^n.
  double ones_norm(std::size_t n) const;

 private:
  struct Impl;
  explicit SeqNormFamily(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Result of a Köthe dual norm evaluation. For the numeric branch `value` is a
/// lower bound attained by `witness` (a nonnegative-or-signed alpha with
/// ||alpha||_Y = 1 and sum alpha_i beta_i = value).
struct DualNormResult {
  double value = 0.0;
  bool analytic = false;
  bool converged = true;
  std::vector<double> witness;
};

/// ||beta||_{Y^x} = sup{ sum |alpha_i beta_i| : ||alpha||_Y <= 1 } over R^n,
/// n = beta.size(). `hints` are extra starting points for the numeric search
/// (each is folded to |.|); a hint alpha guarantees the returned lower bound
/// is at least sum|alpha beta| / ||alpha||_Y.
DualNormResult kothe_dual_norm(const SeqNormFamily& y, std::span<const double> beta,
                               const DualMethod& method = {},
                               std::span<const std::vector<double>> hints = {});

/// The Köthe dual family: closed form for lp and weighted lp, the stored base
/// for a numeric dual (the bidual is the family itself in finite dimension),
/// and a numeric wrapper otherwise.
SeqNormFamily kothe_dual(const SeqNormFamily& y, const DualMethod& numeric_method = DualMethod::numeric());

/// Unit vector a of l_{p'} with sum a_i t_i = ||t||_p: the norming functional
/// of t in l_p. Zero input yields the zero vector.
std::vector<double> norming_functional(double p, std::span<const double> t);

struct HolderReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// lhs = sum |alpha_i beta_i|, rhs = ||alpha||_Y ||beta||_{Y^x}.
HolderReport holder_check(const SeqNormFamily& y, std::span<const double> alpha,
                          std::span<const double> beta, const DualMethod& method = {});

}  // namespace latcalc
