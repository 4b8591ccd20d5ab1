#include "latticecalc/seq_lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <variant>

#include "latticecalc/error.hpp"

namespace latcalc {
namespace {

std::string format_number(double x) {
  if (std::isinf(x)) return "inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, end) : std::to_string(x);
}

void check_exponent(double p) {
  if (!(p >= 1.0)) throw InputError("exponent p must lie in [1, inf], got " + format_number(p));
}

void check_vector(std::span<const double> t) {
  if (t.empty()) throw InputError("norm of an empty vector");
  for (double x : t) {
    if (!std::isfinite(x)) throw InputError("vector entry is not finite");
  }
}

// (sum w_i |t_i|^p)^(1/p) with the max-scaling guard; w may be empty (all 1).
double weighted_power_norm(double p, std::span<const double> w, std::span<const double> t) {
  const auto weight = [&](std::size_t i) { return w.empty() ? 1.0 : w[i]; };
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) m = std::max(m, weight(i) * std::abs(t[i]));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) s += weight(i) * std::abs(t[i]);
    return s;
  }
  double scale = 0.0;
  for (double x : t) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0.0) continue;
    const double r = std::abs(t[i]) / scale;
    s += weight(i) * (p == 2.0 ? r * r : std::pow(r, p));
  }
  return scale * (p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p));
}

double luxemburg_norm(const OrliczFunction& phi, std::span<const double> t) {
  double m = 0.0;
  std::size_t nonzero = 0;
  for (double x : t) {
    if (x != 0.0) ++nonzero;
    m = std::max(m, std::abs(x));
  }
  if (nonzero == 0) return 0.0;
  const double u1 = phi.unit_level();
  // g(lambda) = sum phi(|t_i| / lambda) is strictly decreasing; g(lo) >= 1 and
  // g(hi) <= 1 by convexity with phi(0) = 0. Zero entries are skipped so a
  // zero tail never changes the computation.
  double lo = m / u1;
  double hi = static_cast<double>(nonzero) * m / u1;
  if (nonzero == 1) return lo;
  const auto g = [&](double lambda) {
    double s = 0.0;
    for (double x : t) {
      if (x != 0.0) s += phi(std::abs(x) / lambda);
    }
    return s;
  };
  // Illinois-modified regula falsi on g - 1; the bracket always keeps
  // g(lo) > 1 >= g(hi), so `hi` is feasible and the result is certified.
  double f_lo = g(lo) - 1.0, f_hi = g(hi) - 1.0;
  int side = 0;
  for (int i = 0; i < 200 && hi - lo > 2e-16 * hi; ++i) {
    double x = (f_lo * hi - f_hi * lo) / (f_lo - f_hi);
    if (!(x > lo && x < hi) || i % 8 == 7) x = 0.5 * (lo + hi);
    if (x <= lo || x >= hi) break;
    const double fx = g(x) - 1.0;
    if (fx <= 0.0) {
      hi = x;
      f_hi = fx;
      if (side < 0) f_lo *= 0.5;
      side = -1;
      if (fx == 0.0) break;
    } else {
      lo = x;
      f_lo = fx;
      if (side > 0) f_hi *= 0.5;
      side = 1;
    }
  }
  return hi;
}

struct LpKind {
  double p;
  std::vector<double> weights;  // empty for unweighted
};
struct OrliczKind {
  OrliczFunction phi;
};
struct CustomKind {
  SeqNormFamily::Oracle oracle;
};
struct NumericDualKind {
  SeqNormFamily base;
  DualMethod method;
};

}  // namespace

struct SeqNormFamily::Impl {
  std::string label;
  FamilyKind kind;
  std::variant<LpKind, OrliczKind, CustomKind, NumericDualKind> data;
};

double conjugate_exponent(double p) {
  check_exponent(p);
  if (p == 1.0) return kInfinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

SeqNormFamily SeqNormFamily::lp(double p) {
  check_exponent(p);
  return SeqNormFamily(std::make_shared<const Impl>(
      Impl{"l" + format_number(p), FamilyKind::lp, LpKind{p, {}}}));
}

SeqNormFamily SeqNormFamily::weighted_lp(double p, std::vector<double> weights) {
  check_exponent(p);
  if (weights.empty()) throw InputError("weighted_lp needs at least one weight");
  std::string label = "wl" + format_number(p) + "[";
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw InputError("weights must be positive and finite (index " + std::to_string(i) + ")");
    }
    label += (i ? "," : "") + format_number(weights[i]);
  }
  label += "]";
  return SeqNormFamily(std::make_shared<const Impl>(
      Impl{std::move(label), FamilyKind::weighted_lp, LpKind{p, std::move(weights)}}));
}

SeqNormFamily SeqNormFamily::orlicz(OrliczFunction phi) {
  std::string label = "orlicz(" + phi.label() + ")";
  return SeqNormFamily(std::make_shared<const Impl>(
      Impl{std::move(label), FamilyKind::orlicz, OrliczKind{std::move(phi)}}));
}

SeqNormFamily SeqNormFamily::custom(std::string label, Oracle oracle) {
  if (!oracle) throw InputError("custom family needs an oracle");
  return SeqNormFamily(std::make_shared<const Impl>(
      Impl{std::move(label), FamilyKind::custom, CustomKind{std::move(oracle)}}));
}

SeqNormFamily SeqNormFamily::numeric_dual(SeqNormFamily base, DualMethod method) {
  if (method.budget.restarts < 1 || method.budget.iterations < 1) {
    throw InputError("numeric dual needs a positive budget");
  }
  std::string label = "dual(" + base.label() + ")";
  return SeqNormFamily(std::make_shared<const Impl>(Impl{
      std::move(label), FamilyKind::numeric_dual, NumericDualKind{std::move(base), method}}));
}

double SeqNormFamily::norm(std::span<const double> t) const {
  check_vector(t);
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, LpKind>) {
          if (!k.weights.empty() && t.size() > k.weights.size()) {
            throw InputError(impl_->label + ": weights cover " + std::to_string(k.weights.size()) +
                             " coordinates, vector has " + std::to_string(t.size()));
          }
          return weighted_power_norm(k.p, k.weights, t);
        } else if constexpr (std::is_same_v<K, OrliczKind>) {
          return luxemburg_norm(k.phi, t);
        } else if constexpr (std::is_same_v<K, CustomKind>) {
          const double v = k.oracle(t);
          if (!(v >= 0.0) || !std::isfinite(v)) {
            throw InputError(impl_->label + ": oracle returned an invalid value");
          }
          return v;
        } else {
          return kothe_dual_norm(k.base, t, k.method).value;
        }
      },
      impl_->data);
}

FamilyKind SeqNormFamily::kind() const { return impl_->kind; }
const std::string& SeqNormFamily::label() const { return impl_->label; }

double SeqNormFamily::exponent() const {
  if (const auto* k = std::get_if<LpKind>(&impl_->data)) return k->p;
  throw InputError(impl_->label + " has no exponent");
}

std::span<const double> SeqNormFamily::weights() const {
  if (const auto* k = std::get_if<LpKind>(&impl_->data)) return k->weights;
  return {};
}

const OrliczFunction* SeqNormFamily::orlicz_function() const {
  const auto* k = std::get_if<OrliczKind>(&impl_->data);
  return k ? &k->phi : nullptr;
}

const SeqNormFamily* SeqNormFamily::dual_base() const {
  const auto* k = std::get_if<NumericDualKind>(&impl_->data);
  return k ? &k->base : nullptr;
}

const DualMethod* SeqNormFamily::dual_method() const {
  const auto* k = std::get_if<NumericDualKind>(&impl_->data);
  return k ? &k->method : nullptr;
}

bool SeqNormFamily::has_analytic_dual() const {
  return impl_->kind == FamilyKind::lp || impl_->kind == FamilyKind::weighted_lp ||
         impl_->kind == FamilyKind::numeric_dual;
}

double SeqNormFamily::unit_vector_norm(std::size_t j) const {
  std::vector<double> e(j + 1, 0.0);
  e[j] = 1.0;
  return norm(e);
}

double SeqNormFamily::ones_norm(std::size_t n) const {
  return norm(std::vector<double>(n, 1.0));
}

namespace {

SeqNormFamily analytic_dual_family(const SeqNormFamily& y) {
  switch (y.kind()) {
    case FamilyKind::lp:
      return SeqNormFamily::lp(conjugate_exponent(y.exponent()));
    case FamilyKind::weighted_lp: {
      const double p = y.exponent();
      const double q = conjugate_exponent(p);
      std::vector<double> w(y.weights().begin(), y.weights().end());
      for (auto& x : w) {
        x = (p == 1.0 || std::isinf(p)) ? 1.0 / x : std::pow(x, 1.0 - q);
      }
      return SeqNormFamily::weighted_lp(q, std::move(w));
    }
    case FamilyKind::numeric_dual:
      return *y.dual_base();
    default:
      throw InputError(y.label() + " has no closed-form dual");
  }
}

DualNormResult numeric_dual_norm(const SeqNormFamily& y, std::span<const double> beta,
                                 const DualMethod& method,
                                 std::span<const std::vector<double>> hints) {
  DualNormResult result;
  result.analytic = false;
  const std::size_t n = beta.size();
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < n; ++i) {
    if (beta[i] != 0.0) support.push_back(i);
  }
  result.witness.assign(n, 0.0);
  if (support.empty()) return result;

  // Coordinates off the support only enlarge ||alpha||_Y, so the search runs
  // over alpha >= 0 supported where beta is nonzero.
  const auto objective = [&](std::span<const double> v) {
    thread_local std::vector<double> full;
    full.assign(n, 0.0);
    double pairing = 0.0;
    for (std::size_t k = 0; k < support.size(); ++k) {
      full[support[k]] = std::abs(v[k]);
      pairing += std::abs(v[k]) * std::abs(beta[support[k]]);
    }
    const double den = y.norm(full);
    return den > 0.0 ? pairing / den : -kInfinity;
  };

  std::vector<std::vector<double>> starts;
  for (const auto& h : hints) {
    if (h.size() != n) continue;
    std::vector<double> s(support.size());
    for (std::size_t k = 0; k < support.size(); ++k) s[k] = std::abs(h[support[k]]);
    starts.push_back(std::move(s));
  }
  {
    std::vector<double> s(support.size());
    for (std::size_t k = 0; k < support.size(); ++k) s[k] = std::abs(beta[support[k]]);
    starts.push_back(std::move(s));
  }

  const AscentResult best = maximize_on_sphere(objective, support.size(), method.budget,
                                               method.seed, starts);
  result.value = std::max(best.value, 0.0);
  result.converged = best.converged;
  std::vector<double> full(n, 0.0);
  for (std::size_t k = 0; k < support.size(); ++k) full[support[k]] = std::abs(best.argmax[k]);
  const double den = y.norm(full);
  for (std::size_t k = 0; k < support.size(); ++k) {
    const std::size_t i = support[k];
    result.witness[i] = std::copysign(full[i] / den, beta[i]);
  }
  return result;
}

}  // namespace

DualNormResult kothe_dual_norm(const SeqNormFamily& y, std::span<const double> beta,
                               const DualMethod& method,
                               std::span<const std::vector<double>> hints) {
  check_vector(beta);
  if (method.kind == DualMethod::Kind::numeric &&
      (method.budget.restarts < 1 || method.budget.iterations < 1)) {
    throw InputError("numeric dual needs a positive budget");
  }
  if (method.kind == DualMethod::Kind::analytic && y.has_analytic_dual()) {
    DualNormResult r;
    r.analytic = true;
    r.value = analytic_dual_family(y).norm(beta);
    if (y.kind() == FamilyKind::lp) r.witness = norming_functional(conjugate_exponent(y.exponent()), beta);
    return r;
  }
  DualMethod numeric = method;
  numeric.kind = DualMethod::Kind::numeric;
  return numeric_dual_norm(y, beta, numeric, hints);
}

SeqNormFamily kothe_dual(const SeqNormFamily& y, const DualMethod& numeric_method) {
  if (y.has_analytic_dual()) return analytic_dual_family(y);
  DualMethod m = numeric_method;
  m.kind = DualMethod::Kind::numeric;
  return SeqNormFamily::numeric_dual(y, m);
}

std::vector<double> norming_functional(double p, std::span<const double> t) {
  check_exponent(p);
  std::vector<double> a(t.size(), 0.0);
  if (t.empty()) return a;
  const auto sign = [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); };
  if (p == 1.0) {
    for (std::size_t i = 0; i < t.size(); ++i) a[i] = sign(t[i]);
    return a;
  }
  if (std::isinf(p)) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (std::abs(t[i]) > std::abs(t[k])) k = i;
    }
    a[k] = sign(t[k]);
    return a;
  }
  const double norm = weighted_power_norm(p, {}, t);
  if (norm == 0.0) return a;
  for (std::size_t i = 0; i < t.size(); ++i) {
    a[i] = sign(t[i]) * std::pow(std::abs(t[i]) / norm, p - 1.0);
  }
  return a;
}

HolderReport holder_check(const SeqNormFamily& y, std::span<const double> alpha,
                          std::span<const double> beta, const DualMethod& method) {
  if (alpha.size() != beta.size()) {
    throw InputError("holder_check: length mismatch (" + std::to_string(alpha.size()) + " vs " +
                     std::to_string(beta.size()) + ")");
  }
  HolderReport r;
  for (std::size_t i = 0; i < alpha.size(); ++i) r.lhs += std::abs(alpha[i] * beta[i]);
  const std::vector<std::vector<double>> hint{std::vector<double>(alpha.begin(), alpha.end())};
  r.rhs = y.norm(alpha) * kothe_dual_norm(y, beta, method, hint).value;
  r.holds = r.lhs <= r.rhs + 1e-9 * r.rhs;
  return r;
}

}  // namespace latcalc
