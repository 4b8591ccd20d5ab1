#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latticecalc/operators.hpp"
#include "latticecalc/seq_lattice.hpp"
#include "latticecalc/vector_tuple.hpp"

namespace latcalc {

/// convexity: T: E -> X against ||T_n w||_{X^n,Y,tau} <= C ||w||_{E^n,Y}.
/// concavity: S: X -> E against ||S_n x||_{E^n,Y} <= C ||x||_{X^n,Y,tau}.
enum class Flavor { convexity, concavity };

const char* to_string(Flavor flavor);

struct ConstantLevel {
  std::size_t n = 0;
  double lower_bound = 0.0;
  /// Only set by the exhaustive grid search.
  std::optional<double> upper_bound;
  VectorTuple witness;
  bool converged = false;
};

/// Per-level lower bounds on ||T||_{K^Y} (or ||S||_{K_Y}). Levels are
/// nondecreasing in n and `overall` is their maximum.
struct ConstantEstimate {
  Flavor flavor = Flavor::convexity;
  std::string y_label;
  std::vector<ConstantLevel> per_n;
  double overall = 0.0;
  AscentOptions optimizer{};
  std::uint64_t seed = 0;
  bool certified = false;
  int grid_resolution = 0;

  bool converged() const;
};

/// ||T_n w||_{X^n,Y,tau} / ||w||_{E^n,Y}; InputError when the denominator is 0.
double convexity_ratio(const OperatorInstance& t, const SeqNormFamily& y, const VectorTuple& w);
/// ||S_n x||_{E^n,Y} / ||x||_{X^n,Y,tau}; InputError when the denominator is 0.
double concavity_ratio(const OperatorInstance& s, const SeqNormFamily& y, const VectorTuple& x);
double flavor_ratio(const OperatorInstance& op, const SeqNormFamily& y, Flavor flavor,
                    const VectorTuple& tuple);

/// Sphere ascent over n-tuples for n = 1 .. n_max. Level n also starts from
/// the zero-padded witness of level n - 1, which keeps the bounds monotone.
/// Deterministic for a fixed seed.
ConstantEstimate estimate_constant(const OperatorInstance& op, const SeqNormFamily& y,
                                   Flavor flavor, std::size_t n_max,
                                   const AscentOptions& options = {}, std::uint64_t seed = 0);

/// Exhaustive search over a hyperspherical grid of the unit sphere of
/// R^(n d) (d = domain dimension) with `grid_resolution` points per angle.
/// The best grid cells are then zoomed into with successively halved
/// subgrids. Returns a certified level with an attained lower bound and an
/// upper bound from Lipschitz constants of both norms over the covering
/// radius of the grid. Throws ScaleGuardError when n * d > 6.
ConstantEstimate brute_force_constant(const OperatorInstance& op, const SeqNormFamily& y,
                                      Flavor flavor, std::size_t n, int grid_resolution = 25);

enum class MixedSpace { EnY, XnY_tau };

struct FunctionalNormEstimate {
  double value = 0.0;  // lower bound
  bool converged = false;
  VectorTuple witness;
};

/// sup{ |sum_j <x_j, phi_j>| : ||x|| <= 1 } over (space^n, ||.||_{E^n,Y}) or
/// (space^n, ||.||_{X^n,Y,tau}), estimated by sphere ascent.
FunctionalNormEstimate functional_norm(MixedSpace kind, const FiniteLattice& space,
                                       const SeqNormFamily& y, const VectorTuple& s,
                                       const AscentOptions& options = {}, std::uint64_t seed = 0);

struct DualityReport {
  std::size_t n = 0;
  double convex_n = 0.0;
  double concave_dual_n = 0.0;
  double rel_gap = 0.0;
  bool converged = false;
  ConstantEstimate convex;
  ConstantEstimate concave_dual;
};

/// Level-n convexity bound of T under Y against the level-n concavity bound
/// of T* under the Köthe dual of Y; both searches get the same budget.
DualityReport duality_check(const OperatorInstance& t, const SeqNormFamily& y, std::size_t n,
                            const AscentOptions& options = {}, std::uint64_t seed = 0);

/// Convexity and concavity constants of the identity on X.
std::pair<ConstantEstimate, ConstantEstimate> lattice_constants(const FiniteLattice& x,
                                                                const SeqNormFamily& y,
                                                                std::size_t n_max,
                                                                const AscentOptions& options = {},
                                                                std::uint64_t seed = 0);

}  // namespace latcalc
