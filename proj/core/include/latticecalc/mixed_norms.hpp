#pragma once

#include <cstdint>
#include <vector>

#include "latticecalc/finite_lattice.hpp"
#include "latticecalc/seq_lattice.hpp"
#include "latticecalc/vector_tuple.hpp"

namespace latcalc {

/// ||w||_{E^n,Y} = ||(||w_1||_E, ..., ||w_n||_E)||_Y.
double norm_EnY(const FiniteLattice& e, const SeqNormFamily& y, const VectorTuple& w);

/// ||x||_{X^n,Y,tau} = || ||(x_1, ..., x_n)||_Y ||_X.
double norm_XnY_tau(const FiniteLattice& x_lattice, const SeqNormFamily& y, const VectorTuple& x);

/// sum_j ||x_j||_X.
double norm_Xn1(const FiniteLattice& x_lattice, const VectorTuple& x);

struct EquivalenceReport {
  double tau_norm = 0.0;
  double l1_norm = 0.0;
  double lower_constant = 0.0;  // min_j ||e_j||_Y / n
  double upper_constant = 0.0;  // ||(1, ..., 1)||_Y
  bool bounds_hold = false;
};

/// lower_constant * l1 <= tau <= upper_constant * l1.
EquivalenceReport norm_equivalence_check(const FiniteLattice& x_lattice, const SeqNormFamily& y,
                                         const VectorTuple& x);

enum class TailFlavor { plain, tau };

/// Norms of the in-place tails {x_j}_{j >= k}, k = 1 .. N+1 (N = seq.size());
/// the last entry is 0.
std::vector<double> tail_profile(const FiniteLattice& space, const SeqNormFamily& y,
                                 const VectorTuple& seq, TailFlavor flavor);

struct PairingReport {
  double value = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// rho_s(w) = sum_j phi_j(w_j) with the bound
/// |rho_s(w)| <= ||s||_{l^{Y^x}(E^*)} ||w||_{l^Y(E)}. Sequences of different
/// lengths are compared on their zero-padded common length.
PairingReport pairing_rho(const FiniteLattice& e, const SeqNormFamily& y, const VectorTuple& s,
                          const VectorTuple& w);

struct QcvReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// lhs = sum_j |<x_j, phi_j>|,
/// rhs = < ||x||_Y (in X), ||phi||_{Y^x} (in X^*) >.
/// When Y has no closed-form dual, each coordinate's dual norm is searched
/// numerically with |x[w]| as a starting point.
QcvReport qcv_check(const SeqNormFamily& y, const VectorTuple& x, const VectorTuple& phis,
                    const DualMethod& method = {});

struct JoinSupReport {
  std::vector<double> join;
  double join_value = 0.0;
  double greedy_value = 0.0;
  double best_random_value = 0.0;
  bool greedy_attains = false;     // |join_value - greedy_value| <= 1e-12 scale
  bool random_below = false;       // every random decomposition <= join_value
  bool equal_within_tol = false;   // both of the above
};

/// (phi_1 v ... v phi_k)(x) against sum_j phi_j(x_j) over decompositions
/// x = sum_j x_j with x_j >= 0: the greedy one (each coordinate to an argmax
/// functional) and `trials` random ones. Throws InputError when x has a
/// negative coordinate.
JoinSupReport join_sup_check(const VectorTuple& phis, std::span<const double> x, int trials,
                             std::uint64_t seed);

}  // namespace latcalc
