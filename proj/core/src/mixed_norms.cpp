#include "latticecalc/mixed_norms.hpp"

#include <algorithm>
#include <cmath>

#include "latticecalc/error.hpp"
#include "latticecalc/rng.hpp"

namespace latcalc {
namespace {

void check_tuple(const FiniteLattice& space, const VectorTuple& t, const char* what) {
  if (t.empty()) throw InputError(std::string(what) + ": empty tuple");
  if (t.dim() != space.dim()) {
    throw InputError(std::string(what) + ": tuple rows have length " + std::to_string(t.dim()) +
                     ", space has dimension " + std::to_string(space.dim()));
  }
}

std::vector<double> row_norms(const FiniteLattice& space, const VectorTuple& t) {
  std::vector<double> r(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) r[j] = space.norm(t.row(j));
  return r;
}

}  // namespace

double norm_EnY(const FiniteLattice& e, const SeqNormFamily& y, const VectorTuple& w) {
  check_tuple(e, w, "norm_EnY");
  return y.norm(row_norms(e, w));
}

double norm_XnY_tau(const FiniteLattice& x_lattice, const SeqNormFamily& y, const VectorTuple& x) {
  check_tuple(x_lattice, x, "norm_XnY_tau");
  return x_lattice.norm(y_vector_norm(y, x));
}

double norm_Xn1(const FiniteLattice& x_lattice, const VectorTuple& x) {
  check_tuple(x_lattice, x, "norm_Xn1");
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += x_lattice.norm(x.row(j));
  return s;
}

EquivalenceReport norm_equivalence_check(const FiniteLattice& x_lattice, const SeqNormFamily& y,
                                         const VectorTuple& x) {
  EquivalenceReport r;
  const std::size_t n = x.size();
  r.tau_norm = norm_XnY_tau(x_lattice, y, x);
  r.l1_norm = norm_Xn1(x_lattice, x);
  double min_unit = kInfinity;
  for (std::size_t j = 0; j < n; ++j) min_unit = std::min(min_unit, y.unit_vector_norm(j));
  r.lower_constant = min_unit / static_cast<double>(n);
  r.upper_constant = y.ones_norm(n);
  const double slack = 1e-12 * std::max(r.tau_norm, r.l1_norm);
  r.bounds_hold = r.lower_constant * r.l1_norm <= r.tau_norm + slack &&
                  r.tau_norm <= r.upper_constant * r.l1_norm + slack;
  return r;
}

std::vector<double> tail_profile(const FiniteLattice& space, const SeqNormFamily& y,
                                 const VectorTuple& seq, TailFlavor flavor) {
  check_tuple(space, seq, "tail_profile");
  std::vector<double> profile;
  profile.reserve(seq.size() + 1);
  for (std::size_t k = 0; k <= seq.size(); ++k) {
    const VectorTuple tail = seq.tail_from(k);
    profile.push_back(flavor == TailFlavor::plain ? norm_EnY(space, y, tail)
                                                  : norm_XnY_tau(space, y, tail));
  }
  return profile;
}

PairingReport pairing_rho(const FiniteLattice& e, const SeqNormFamily& y, const VectorTuple& s,
                          const VectorTuple& w) {
  check_tuple(e, s, "pairing_rho (functionals)");
  check_tuple(e, w, "pairing_rho (vectors)");
  const std::size_t n = std::max(s.size(), w.size());
  const VectorTuple sp = s.size() < n ? s.padded(n - s.size()) : s;
  const VectorTuple wp = w.size() < n ? w.padded(n - w.size()) : w;

  PairingReport r;
  for (std::size_t j = 0; j < n; ++j) r.value += pairing(wp.row(j), sp.row(j));
  r.lhs = std::abs(r.value);

  // Dual norms are evaluated with the paired vectors as search hints, so a
  // numeric lower bound never drops below what the pairing itself certifies.
  std::vector<double> phi_norms(n), w_norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::vector<double> wj(wp.row(j).begin(), wp.row(j).end());
    const std::vector<std::vector<double>> hint{wj};
    phi_norms[j] = kothe_dual_norm(e.norm_family(), sp.row(j), DualMethod::analytic(), hint).value;
    w_norms[j] = e.norm(wj);
  }
  const std::vector<std::vector<double>> hint{w_norms};
  r.rhs = kothe_dual_norm(y, phi_norms, DualMethod::analytic(), hint).value * y.norm(w_norms);
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-9);
  return r;
}

QcvReport qcv_check(const SeqNormFamily& y, const VectorTuple& x, const VectorTuple& phis,
                    const DualMethod& method) {
  if (x.empty() || x.size() != phis.size() || x.dim() != phis.dim()) {
    throw InputError("qcv_check: tuples must have equal length and dimension");
  }
  QcvReport r;
  for (std::size_t j = 0; j < x.size(); ++j) r.lhs += std::abs(pairing(x.row(j), phis.row(j)));
  const auto x_norm = y_vector_norm(y, x);
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const auto col = x.column(i);
    const std::vector<std::vector<double>> hint{col};
    const double phi_norm = kothe_dual_norm(y, phis.column(i), method, hint).value;
    r.rhs += x_norm[i] * phi_norm;
  }
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-9);
  return r;
}

JoinSupReport join_sup_check(const VectorTuple& phis, std::span<const double> x, int trials,
                             std::uint64_t seed) {
  if (phis.empty()) throw InputError("join_sup_check: no functionals");
  if (x.size() != phis.dim()) throw InputError("join_sup_check: dimension mismatch");
  for (double v : x) {
    if (!(v >= 0.0)) throw InputError("join_sup_check: x must be nonnegative");
  }
  const std::size_t k = phis.size();
  const std::size_t m = x.size();

  JoinSupReport r;
  r.join.assign(m, -kInfinity);
  std::vector<std::size_t> argmax(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (phis(j, i) > r.join[i]) {
        r.join[i] = phis(j, i);
        argmax[i] = j;
      }
    }
  }
  r.join_value = pairing(x, r.join);

  // Greedy decomposition: x_j carries x[i] exactly where phi_j is maximal.
  for (std::size_t i = 0; i < m; ++i) r.greedy_value += x[i] * phis(argmax[i], i);

  Rng rng = substream(seed, 0);
  r.best_random_value = -kInfinity;
  r.random_below = true;
  const double tol = 1e-12 * std::max(1.0, std::abs(r.join_value));
  std::vector<double> share(k);
  for (int t = 0; t < trials; ++t) {
    double value = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double total = 0.0;
      for (auto& s : share) total += (s = uniform01(rng));
      for (std::size_t j = 0; j < k; ++j) value += x[i] * (share[j] / total) * phis(j, i);
    }
    r.best_random_value = std::max(r.best_random_value, value);
    if (value > r.join_value + tol) r.random_below = false;
  }
  r.greedy_attains = std::abs(r.join_value - r.greedy_value) <= tol;
  r.equal_within_tol = r.greedy_attains && r.random_below;
  return r;
}

}  // namespace latcalc
