#include "latticecalc/finite_lattice.hpp"

#include <algorithm>
#include <cmath>

#include "latticecalc/error.hpp"
#include "latticecalc/rng.hpp"

namespace latcalc {

FiniteLattice::FiniteLattice(std::size_t dim, SeqNormFamily norm, std::string label)
    : dim_(dim), norm_(std::move(norm)), label_(std::move(label)) {
  if (dim_ == 0) throw InputError("lattice dimension must be positive");
  if (const auto w = norm_.weights(); !w.empty() && w.size() < dim_) {
    throw InputError(norm_.label() + " does not cover dimension " + std::to_string(dim_));
  }
  if (label_.empty()) label_ = "(R^" + std::to_string(dim_) + "," + norm_.label() + ")";
}

void FiniteLattice::check_dim(std::span<const double> x, const char* what) const {
  if (x.size() != dim_) {
    throw InputError(std::string(what) + ": expected length " + std::to_string(dim_) + ", got " +
                     std::to_string(x.size()));
  }
}

double FiniteLattice::norm(std::span<const double> x) const {
  check_dim(x, "lattice norm");
  return norm_.norm(x);
}

FiniteLattice FiniteLattice::dual(const DualMethod& numeric_method) const {
  return FiniteLattice(dim_, kothe_dual(norm_, numeric_method));
}

std::vector<double> lattice_join(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("join: length mismatch");
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

std::vector<double> lattice_meet(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("meet: length mismatch");
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

std::vector<double> lattice_abs(std::span<const double> a) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::abs(a[i]);
  return r;
}

std::vector<double> max_abs(const VectorTuple& x) {
  std::vector<double> r(x.dim(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t i = 0; i < x.dim(); ++i) r[i] = std::max(r[i], std::abs(x(j, i)));
  }
  return r;
}

double pairing(std::span<const double> x, std::span<const double> phi) {
  if (x.size() != phi.size()) throw InputError("pairing: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * phi[i];
  return s;
}

HomogeneousFunction::HomogeneousFunction(std::size_t arity, Evaluator h, std::string label,
                                         std::uint64_t seed)
    : arity_(arity), eval_(std::move(h)), label_(std::move(label)) {
  if (arity_ == 0) throw InputError("homogeneous function needs arity >= 1");
  Rng rng = substream(seed, 0x4e);
  std::vector<double> t(arity_);
  double best = 0.0;
  for (int s = 0; s < 10000; ++s) {
    for (auto& v : t) v = uniform(rng, -1.0, 1.0);
    const std::size_t k = static_cast<std::size_t>(rng() % arity_);
    t[k] = (rng() & 1U) ? 1.0 : -1.0;
    best = std::max(best, std::abs(eval_(t)));
  }
  hnorm_ = best;
}

HomogeneousFunction::HomogeneousFunction(std::size_t arity, Evaluator h, std::string label,
                                         double exact_hnorm)
    : arity_(arity), eval_(std::move(h)), label_(std::move(label)), hnorm_(exact_hnorm),
      hnorm_exact_(true) {
  if (arity_ == 0) throw InputError("homogeneous function needs arity >= 1");
}

HomogeneousFunction HomogeneousFunction::projection(std::size_t n, std::size_t j) {
  if (j >= n) throw InputError("projection index out of range");
  return {n, [j](std::span<const double> t) { return t[j]; },
          "pi_" + std::to_string(n) + "," + std::to_string(j + 1), 1.0};
}

HomogeneousFunction HomogeneousFunction::y_norm(const SeqNormFamily& y, std::size_t n) {
  // Monotone norms peak on the sup-sphere at (1, ..., 1).
  return {n, [y](std::span<const double> t) { return y.norm(t); }, "norm_" + y.label(),
          y.ones_norm(n)};
}

HomogeneousFunction HomogeneousFunction::join(std::size_t n) {
  return {n, [](std::span<const double> t) { return *std::max_element(t.begin(), t.end()); },
          "join", 1.0};
}

HomogeneousFunction HomogeneousFunction::meet(std::size_t n) {
  return {n, [](std::span<const double> t) { return *std::min_element(t.begin(), t.end()); },
          "meet", 1.0};
}

HomogeneousFunction HomogeneousFunction::linear(std::vector<double> coefficients) {
  double l1 = 0.0;
  for (double c : coefficients) l1 += std::abs(c);
  const std::size_t n = coefficients.size();
  return {n, [a = std::move(coefficients)](std::span<const double> t) { return pairing(t, a); },
          "linear", l1};
}

HomogeneousFunction HomogeneousFunction::compose(const HomogeneousFunction& h,
                                                 const std::vector<HomogeneousFunction>& g) {
  if (g.empty() || g.size() != h.arity()) throw InputError("compose: arity mismatch");
  const std::size_t n = g.front().arity();
  for (const auto& gi : g) {
    if (gi.arity() != n) throw InputError("compose: inner functions differ in arity");
  }
  return HomogeneousFunction(
      n,
      [h, g](std::span<const double> t) {
        std::vector<double> inner(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) inner[i] = g[i](t);
        return h(inner);
      },
      h.label() + "(G)", std::uint64_t{0});
}

std::vector<double> krivine_apply(const HomogeneousFunction& h, const VectorTuple& x) {
  if (h.arity() != x.size()) {
    throw InputError("krivine_apply: h has arity " + std::to_string(h.arity()) + ", tuple has " +
                     std::to_string(x.size()) + " rows");
  }
  std::vector<double> result(x.dim());
  std::vector<double> column(x.size());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) column[j] = x(j, i);
    result[i] = h(column);
  }
  return result;
}

std::vector<double> y_vector_norm(const SeqNormFamily& y, const VectorTuple& x) {
  if (x.empty()) throw InputError("y_vector_norm: empty tuple");
  std::vector<double> result(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) result[i] = y.norm(x.column(i));
  return result;
}

VectorTuple apply_map(const std::vector<HomogeneousFunction>& g, const VectorTuple& x) {
  if (g.empty()) throw InputError("apply_map: empty map");
  VectorTuple out(g.size(), x.dim(), x.tag());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto r = krivine_apply(g[k], x);
    std::copy(r.begin(), r.end(), out.row(k).begin());
  }
  return out;
}

VectorCheck krivine_compose_check(const std::vector<HomogeneousFunction>& g,
                                  const HomogeneousFunction& h, const VectorTuple& x) {
  if (g.size() != h.arity()) throw InputError("krivine_compose_check: arity mismatch");
  VectorCheck c;
  c.lhs = krivine_apply(h, apply_map(g, x));
  c.rhs = krivine_apply(HomogeneousFunction::compose(h, g), x);
  c.equal = c.lhs == c.rhs;
  return c;
}

BoundCheck krivine_bound_check(const FiniteLattice& lattice, const HomogeneousFunction& h,
                               const VectorTuple& x) {
  BoundCheck c;
  c.lhs = lattice.norm(krivine_apply(h, x));
  c.rhs = h.hnorm() * lattice.norm(max_abs(x));
  c.holds = c.lhs <= c.rhs * (1.0 + 1e-9);
  return c;
}

std::vector<double> dual_family_join(const VectorTuple& family, const VectorTuple& x) {
  if (family.dim() != x.size()) throw InputError("dual_family_join: functional length mismatch");
  if (family.empty()) throw InputError("dual_family_join: empty family");
  std::vector<double> out(x.dim(), -kInfinity);
  for (std::size_t k = 0; k < family.size(); ++k) {
    for (std::size_t i = 0; i < x.dim(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) s += family(k, j) * x(j, i);
      out[i] = std::max(out[i], s);
    }
  }
  return out;
}

VectorTuple lp_sup_family(double p, const VectorTuple& x) {
  VectorTuple family(x.dim(), x.size());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const auto a = norming_functional(p, x.column(i));
    std::copy(a.begin(), a.end(), family.row(i).begin());
  }
  return family;
}

}  // namespace latcalc
