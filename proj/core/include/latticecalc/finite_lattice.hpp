#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "latticecalc/seq_lattice.hpp"
#include "latticecalc/vector_tuple.hpp"

namespace latcalc {

/// X = R^m with the coordinatewise order and a monotone norm. Also used for
/// the normed spaces E = R^d on the domain side of operators, whose norms are
/// taken from the same families.
class FiniteLattice {
 public:
  FiniteLattice(std::size_t dim, SeqNormFamily norm, std::string label = {});

  std::size_t dim() const { return dim_; }
  const SeqNormFamily& norm_family() const { return norm_; }
  const std::string& label() const { return label_; }

  /// Throws InputError unless x has length dim().
  double norm(std::span<const double> x) const;

  /// X* on the same coordinates with the dual norm; closed form for lp-type
  /// norms, the numeric Köthe dual otherwise.
  FiniteLattice dual(const DualMethod& numeric_method = DualMethod::numeric()) const;

  void check_dim(std::span<const double> x, const char* what) const;

 private:
  std::size_t dim_;
  SeqNormFamily norm_;
  std::string label_;
};

std::vector<double> lattice_join(std::span<const double> a, std::span<const double> b);
std::vector<double> lattice_meet(std::span<const double> a, std::span<const double> b);
std::vector<double> lattice_abs(std::span<const double> a);
/// Coordinatewise max_j |x_j|.
std::vector<double> max_abs(const VectorTuple& x);
/// <x, phi> = sum_i x_i phi_i.
double pairing(std::span<const double> x, std::span<const double> phi);

/// Continuous h: R^n -> R with h(lambda t) = lambda h(t) for lambda >= 0,
/// together with ||h|| = sup{|h(t)| : max_j |t_j| = 1}.
class HomogeneousFunction {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  /// Generic h; ||h|| is estimated from 10^4 seeded points of the sup-norm
  /// sphere, which can only understate it.
  HomogeneousFunction(std::size_t arity, Evaluator h, std::string label, std::uint64_t seed = 0);
  /// h with a known ||h||.
  HomogeneousFunction(std::size_t arity, Evaluator h, std::string label, double exact_hnorm);

  static HomogeneousFunction projection(std::size_t n, std::size_t j);
  static HomogeneousFunction y_norm(const SeqNormFamily& y, std::size_t n);
  static HomogeneousFunction join(std::size_t n);
  static HomogeneousFunction meet(std::size_t n);
  static HomogeneousFunction linear(std::vector<double> coefficients);
  /// (h o G)(t) = h(g_1(t), ..., g_k(t)); hnorm is estimated.
  static HomogeneousFunction compose(const HomogeneousFunction& h,
                                     const std::vector<HomogeneousFunction>& g);

  std::size_t arity() const { return arity_; }
  const std::string& label() const { return label_; }
  double operator()(std::span<const double> t) const { return eval_(t); }
  double hnorm() const { return hnorm_; }
  bool hnorm_exact() const { return hnorm_exact_; }

 private:
  std::size_t arity_;
  Evaluator eval_;
  std::string label_;
  double hnorm_ = 0.0;
  bool hnorm_exact_ = false;
};

/// Krivine calculus in an atomic lattice: result[w] = h(x_1[w], ..., x_n[w]).
std::vector<double> krivine_apply(const HomogeneousFunction& h, const VectorTuple& x);

/// ||(x_1, ..., x_n)||_Y as a lattice element: w -> ||(x_1[w], ..., x_n[w])||_Y.
std::vector<double> y_vector_norm(const SeqNormFamily& y, const VectorTuple& x);

/// G(x): row i is krivine_apply(g_i, x).
VectorTuple apply_map(const std::vector<HomogeneousFunction>& g, const VectorTuple& x);

struct VectorCheck {
  std::vector<double> lhs;
  std::vector<double> rhs;
  bool equal = false;
};

/// lhs = tau_{G(x)}(h), rhs = tau_x(h o G); equality is exact.
VectorCheck krivine_compose_check(const std::vector<HomogeneousFunction>& g,
                                  const HomogeneousFunction& h, const VectorTuple& x);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// lhs = ||tau_x(h)||_X, rhs = ||h|| * ||max_j |x_j| ||_X.
BoundCheck krivine_bound_check(const FiniteLattice& lattice, const HomogeneousFunction& h,
                               const VectorTuple& x);

/// Coordinatewise max over the rows a_k of `family` of sum_j a_k[j] x_j. Each
/// a_k has length x.size(). With every a_k in the unit ball of Y* this stays
/// below y_vector_norm(Y, x).
std::vector<double> dual_family_join(const VectorTuple& family, const VectorTuple& x);

/// For Y = l_p: the m norming functionals a(w) = norming_functional(p, x[w]),
/// one per coordinate, which make dual_family_join equal y_vector_norm.
VectorTuple lp_sup_family(double p, const VectorTuple& x);

}  // namespace latcalc
