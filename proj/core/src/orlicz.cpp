#include "latticecalc/orlicz.hpp"

#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "latticecalc/error.hpp"
#include "latticecalc/rng.hpp"

namespace latcalc {
namespace {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Op { constant, variable, add, sub, mul, div, pow, neg, exp } op;
  double value = 0.0;
  NodePtr lhs, rhs;
  int int_power = 0;  // > 0 when rhs of a pow node is that small integer

  double eval(double u) const {
    switch (op) {
      case Op::constant: return value;
      case Op::variable: return u;
      case Op::add: return lhs->eval(u) + rhs->eval(u);
      case Op::sub: return lhs->eval(u) - rhs->eval(u);
      case Op::mul: return lhs->eval(u) * rhs->eval(u);
      case Op::div: return lhs->eval(u) / rhs->eval(u);
      case Op::pow: {
        const double base = lhs->eval(u);
        if (int_power > 0) {
          double r = base;
          for (int k = 1; k < int_power; ++k) r *= base;
          return r;
        }
        return std::pow(base, rhs->eval(u));
      }
      case Op::neg: return -lhs->eval(u);
      case Op::exp: return std::exp(lhs->eval(u));
    }
    return 0.0;
  }
};

NodePtr make(Node::Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0) {
  int int_power = 0;
  if (op == Node::Op::pow && rhs->op == Node::Op::constant && rhs->value >= 1.0 &&
      rhs->value <= 8.0 && rhs->value == std::floor(rhs->value)) {
    int_power = static_cast<int>(rhs->value);
  }
  return std::make_shared<const Node>(Node{op, value, std::move(lhs), std::move(rhs), int_power});
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    auto node = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("expression '" + std::string(text_) + "': " + what + " at position " +
                     std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expression() {
    auto node = term();
    for (;;) {
      if (accept('+')) node = make(Node::Op::add, node, term());
      else if (accept('-')) node = make(Node::Op::sub, node, term());
      else return node;
    }
  }

  NodePtr term() {
    auto node = power();
    for (;;) {
      if (accept('*')) node = make(Node::Op::mul, node, power());
      else if (accept('/')) node = make(Node::Op::div, node, power());
      else return node;
    }
  }

  NodePtr power() {
    auto base = unary();
    if (accept('^')) return make(Node::Op::pow, base, power());
    return base;
  }

  NodePtr unary() {
    if (accept('-')) return make(Node::Op::neg, unary());
    return primary();
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end");
    if (accept('(')) {
      auto node = expression();
      if (!accept(')')) fail("expected ')'");
      return node;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(std::string(text_.substr(pos_)), &used);
      } catch (const std::exception&) {
        fail("bad number");
      }
      pos_ += used;
      return make(Node::Op::constant, nullptr, nullptr, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
      const std::string_view word = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (word == "u") return make(Node::Op::variable);
      if (word == "exp") {
        if (!accept('(')) fail("expected '(' after exp");
        auto arg = expression();
        if (!accept(')')) fail("expected ')'");
        return make(Node::Op::exp, arg);
      }
      fail("unknown identifier '" + std::string(word) + "'");
    }
    fail("unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::function<double(double)> parse_expression(std::string_view text) {
  NodePtr root = Parser(text).parse();
  return [root](double u) { return root->eval(u); };
}

OrliczFunction::OrliczFunction(std::string label, std::function<double(double)> phi)
    : label_(std::move(label)),
      phi_(std::make_shared<const std::function<double(double)>>(std::move(phi))) {
  const auto& f = *phi_;
  const auto bad = [&](const std::string& why) {
    throw InputError("invalid Orlicz function '" + label_ + "': " + why);
  };
  if (!(std::abs(f(0.0)) <= 1e-14)) bad("phi(0) must be 0");

  // Bracket and bisect phi(u) = 1.
  double hi = 1.0;
  int doublings = 0;
  while (!(f(hi) >= 1.0)) {
    hi *= 2.0;
    if (++doublings > 200 || !std::isfinite(hi)) bad("phi never reaches 1");
  }
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 4e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) >= 1.0 ? hi : lo) = mid;
  }
  unit_level_ = hi;
  if (!(unit_level_ > 0.0)) bad("phi reaches 1 at u = 0");

  // Validation window: [0, 4 * unit_level].
  const double top = 4.0 * unit_level_;
  constexpr int kGrid = 256;
  double prev = f(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double v = f(top * i / kGrid);
    if (!std::isfinite(v)) bad("phi is not finite on the validation window");
    if (!(v > prev)) bad("phi is not strictly increasing");
    prev = v;
  }
  Rng rng = substream(0x0412c2, 0);
  for (int i = 0; i < 1000; ++i) {
    const double a = uniform(rng, 0.0, top);
    const double b = uniform(rng, 0.0, top);
    const double mid = f(0.5 * (a + b));
    const double chord = 0.5 * (f(a) + f(b));
    if (mid > chord + 1e-12 * std::max(1.0, std::abs(chord))) bad("phi is not convex");
  }
}

OrliczFunction OrliczFunction::from_expression(std::string_view text) {
  return OrliczFunction(std::string(text), parse_expression(text));
}

}  // namespace latcalc
