#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace latcalc {

/// Budget and schedule of the sphere ascent. One "budget unit" is a full set
/// of restarts each running up to `iterations` outer steps.
struct AscentOptions {
  int restarts = 32;
  int iterations = 500;
  double initial_step = 0.1;
  double step_tolerance = 1e-10;
  double gradient_step = 1e-6;
  /// The best `polish` restarts are refined by a covariance-adapting local
  /// search, which follows ridges of nonsmooth objectives; 0 disables it.
  int polish = 4;
  unsigned threads = 1;

  AscentOptions doubled() const {
    AscentOptions o = *this;
    o.restarts *= 2;
    o.iterations *= 2;
    return o;
  }
};

struct AscentResult {
  double value = 0.0;
  std::vector<double> argmax;  // unit Euclidean norm
  bool converged = false;      // best restart stopped on step tolerance
  int best_restart = -1;
  int iterations = 0;          // outer iterations spent by the best restart
  int evaluations = 0;         // objective calls over all restarts
};

/// Objective on R^k that is invariant under positive scaling. Points where it
/// is undefined should return -infinity or NaN.
using ScaleInvariantObjective = std::function<double(std::span<const double>)>;

/// Maximizes `objective` over the Euclidean unit sphere of R^dim.
///
/// Each restart starts either from one of `starts` (in order) or from a
/// Gaussian point drawn from its own substream of `seed`, then alternates
/// normalized finite-difference gradient steps with a compass/random
/// direction search when the gradient step fails; the step grows on success
/// and halves otherwise. The best few restarts are then polished by CMA-ES
/// started at their end points. The returned value is the best objective
/// seen, so it is a lower bound on the true maximum. Results depend only on
/// the options, the seed and the starts, not on `threads`.
AscentResult maximize_on_sphere(const ScaleInvariantObjective& objective, std::size_t dim,
                                const AscentOptions& options, std::uint64_t seed,
                                std::span<const std::vector<double>> starts = {});

}  // namespace latcalc
