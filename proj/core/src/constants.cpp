#include "latticecalc/constants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "latticecalc/error.hpp"
#include "latticecalc/mixed_norms.hpp"
#include "latticecalc/rng.hpp"

namespace latcalc {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct RatioParts {
  std::function<double(const VectorTuple&)> numerator;
  std::function<double(const VectorTuple&)> denominator;
};

RatioParts ratio_parts(const OperatorInstance& op, const SeqNormFamily& y, Flavor flavor) {
  if (flavor == Flavor::convexity) {
    return {[&op, &y](const VectorTuple& w) { return norm_XnY_tau(op.codomain, y, apply_n(op, w)); },
            [&op, &y](const VectorTuple& w) { return norm_EnY(op.domain, y, w); }};
  }
  return {[&op, &y](const VectorTuple& x) { return norm_EnY(op.codomain, y, apply_n(op, x)); },
          [&op, &y](const VectorTuple& x) { return norm_XnY_tau(op.domain, y, x); }};
}

std::uint64_t level_seed(std::uint64_t seed, std::size_t n) {
  return splitmix64(seed ^ (0x5851f42d4c957f2dULL * (n + 1)));
}

}  // namespace

const char* to_string(Flavor flavor) {
  return flavor == Flavor::convexity ? "convexity" : "concavity";
}

bool ConstantEstimate::converged() const {
  return std::all_of(per_n.begin(), per_n.end(), [](const ConstantLevel& l) { return l.converged; });
}

double flavor_ratio(const OperatorInstance& op, const SeqNormFamily& y, Flavor flavor,
                    const VectorTuple& tuple) {
  const RatioParts parts = ratio_parts(op, y, flavor);
  const double den = parts.denominator(tuple);
  if (!(den > 0.0)) throw InputError(std::string(to_string(flavor)) + " ratio: zero denominator");
  return parts.numerator(tuple) / den;
}

double convexity_ratio(const OperatorInstance& t, const SeqNormFamily& y, const VectorTuple& w) {
  return flavor_ratio(t, y, Flavor::convexity, w);
}

double concavity_ratio(const OperatorInstance& s, const SeqNormFamily& y, const VectorTuple& x) {
  return flavor_ratio(s, y, Flavor::concavity, x);
}

ConstantEstimate estimate_constant(const OperatorInstance& op, const SeqNormFamily& y,
                                   Flavor flavor, std::size_t n_max, const AscentOptions& options,
                                   std::uint64_t seed) {
  if (n_max < 1) throw InputError("estimate_constant: n_max must be >= 1");
  if (options.restarts < 1 || options.iterations < 1) {
    throw InputError("estimate_constant: budget must be positive");
  }
  const RatioParts parts = ratio_parts(op, y, flavor);
  const std::size_t d = op.domain.dim();

  ConstantEstimate est;
  est.flavor = flavor;
  est.y_label = y.label();
  est.optimizer = options;
  est.seed = seed;

  std::vector<std::vector<double>> starts;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto objective = [&](std::span<const double> flat) {
      const VectorTuple t = VectorTuple::from_flat(n, d, flat);
      const double den = parts.denominator(t);
      return den > 0.0 ? parts.numerator(t) / den : -kInfinity;
    };
    const AscentResult best = maximize_on_sphere(objective, n * d, options, level_seed(seed, n), starts);

    ConstantLevel level;
    level.n = n;
    level.witness = VectorTuple::from_flat(n, d, best.argmax);
    level.lower_bound = best.value;
    level.converged = best.converged;
    if (!est.per_n.empty() && est.per_n.back().lower_bound > level.lower_bound) {
      // The padded witness was a start, so this only happens through a NaN
      // objective; keep the levels monotone regardless.
      level.lower_bound = est.per_n.back().lower_bound;
      level.witness = est.per_n.back().witness.padded();
    }
    const VectorTuple next_start = level.witness.padded();
    starts.assign(1, std::vector<double>(next_start.flat().begin(), next_start.flat().end()));
    est.per_n.push_back(std::move(level));
  }
  est.overall = est.per_n.back().lower_bound;
  for (const auto& l : est.per_n) est.overall = std::max(est.overall, l.lower_bound);
  return est;
}

ConstantEstimate brute_force_constant(const OperatorInstance& op, const SeqNormFamily& y,
                                      Flavor flavor, std::size_t n, int grid_resolution) {
  const std::size_t d = op.domain.dim();
  const std::size_t k = n * d;
  if (n < 1) throw InputError("brute_force_constant: n must be >= 1");
  if (k > 6) {
    throw ScaleGuardError("brute_force_constant: n*d = " + std::to_string(k) +
                          " exceeds the limit of 6");
  }
  if (grid_resolution < 2) throw InputError("brute_force_constant: grid_resolution must be >= 2");
  const RatioParts parts = ratio_parts(op, y, flavor);

  // Lipschitz constants of both seminorms w.r.t. the Euclidean norm of R^k:
  // N(u) <= sum |u_i| N(e_i) <= |u|_2 * sqrt(sum N(e_i)^2).
  double lip_num = 0.0, lip_den = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    VectorTuple e(n, d);
    e(i / d, i % d) = 1.0;
    lip_num += std::pow(parts.numerator(e), 2);
    lip_den += std::pow(parts.denominator(e), 2);
  }
  lip_num = std::sqrt(lip_num);
  lip_den = std::sqrt(lip_den);

  const int r = grid_resolution;
  const std::size_t angles = k - 1;
  // Polar angles take r points on [0, pi]; the azimuth takes r points on
  // [0, pi), which with the evenness of the ratio covers the sphere. Moving
  // one angle by delta moves the point by at most delta.
  const double polar_step = kPi / (r - 1);
  const double azimuth_step = kPi / r;
  const double radius =
      angles == 0 ? 0.0
                  : static_cast<double>(angles - 1) * polar_step / 2.0 + azimuth_step / 2.0;

  std::vector<double> point(k);
  const auto evaluate = [&](const std::vector<double>& theta) {
    double sin_prod = 1.0;
    for (std::size_t a = 0; a < angles; ++a) {
      point[a] = sin_prod * std::cos(theta[a]);
      sin_prod *= std::sin(theta[a]);
    }
    point[k - 1] = sin_prod;
    const VectorTuple t = VectorTuple::from_flat(n, d, point);
    return std::pair{parts.numerator(t), parts.denominator(t)};
  };

  struct Candidate {
    double ratio;
    std::vector<double> theta;
  };
  constexpr std::size_t kZoomCandidates = 8;
  std::vector<Candidate> top;
  double upper = -kInfinity;
  std::vector<int> index(angles, 0);
  std::vector<double> theta(angles);
  for (;;) {
    for (std::size_t a = 0; a < angles; ++a) {
      theta[a] = (a + 1 == angles) ? index[a] * azimuth_step : index[a] * polar_step;
    }
    const auto [num, den] = evaluate(theta);
    if (den > 0.0) {
      const double ratio = num / den;
      if (top.size() < kZoomCandidates || ratio > top.back().ratio) {
        auto at = std::upper_bound(top.begin(), top.end(), ratio,
                                   [](double v, const Candidate& c) { return v > c.ratio; });
        top.insert(at, Candidate{ratio, theta});
        if (top.size() > kZoomCandidates) top.pop_back();
      }
    }
    const double den_low = den - lip_den * radius;
    upper = std::max(upper, den_low > 0.0 ? (num + lip_num * radius) / den_low : kInfinity);

    std::size_t a = 0;
    for (; a < angles; ++a) {
      if (++index[a] < r) break;
      index[a] = 0;
    }
    if (a == angles) break;
  }
  if (top.empty()) throw InputError("brute_force_constant: denominator vanishes on the whole grid");

  // Zoom: a 5-point subgrid per angle around each leading grid point, halving
  // the window until it is negligible. Every value is attained, so the lower
  // bound stays certified; the upper bound is the one of the full grid.
  Candidate best = top.front();
  for (Candidate c : top) {
    for (double half = polar_step; angles > 0 && half > 1e-9; half /= 2.0) {
      const Candidate center = c;
      std::vector<int> sub(angles, 0);
      for (;;) {
        for (std::size_t a = 0; a < angles; ++a) theta[a] = center.theta[a] + (sub[a] - 2) * half / 2.0;
        const auto [num, den] = evaluate(theta);
        if (den > 0.0 && num / den > c.ratio) c = Candidate{num / den, theta};
        std::size_t a = 0;
        for (; a < angles; ++a) {
          if (++sub[a] < 5) break;
          sub[a] = 0;
        }
        if (a == angles) break;
      }
    }
    if (c.ratio > best.ratio) best = c;
  }
  evaluate(best.theta);
  const std::vector<double> best_point = point;
  const double best_ratio = best.ratio;

  ConstantEstimate est;
  est.flavor = flavor;
  est.y_label = y.label();
  est.certified = true;
  est.grid_resolution = grid_resolution;
  ConstantLevel level;
  level.n = n;
  level.lower_bound = best_ratio;
  level.upper_bound = std::max(upper, best_ratio);
  level.witness = VectorTuple::from_flat(n, d, best_point);
  level.converged = true;
  est.per_n.push_back(std::move(level));
  est.overall = best_ratio;
  return est;
}

FunctionalNormEstimate functional_norm(MixedSpace kind, const FiniteLattice& space,
                                       const SeqNormFamily& y, const VectorTuple& s,
                                       const AscentOptions& options, std::uint64_t seed) {
  if (s.empty() || s.dim() != space.dim()) {
    throw InputError("functional_norm: functional tuple does not match the space");
  }
  const std::size_t n = s.size();
  const std::size_t m = s.dim();
  const auto objective = [&](std::span<const double> flat) {
    const VectorTuple x = VectorTuple::from_flat(n, m, flat);
    const double den = kind == MixedSpace::EnY ? norm_EnY(space, y, x) : norm_XnY_tau(space, y, x);
    if (!(den > 0.0)) return -kInfinity;
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) value += pairing(x.row(j), s.row(j));
    return std::abs(value) / den;
  };
  const std::vector<std::vector<double>> starts{std::vector<double>(s.flat().begin(), s.flat().end())};
  const AscentResult best = maximize_on_sphere(objective, n * m, options, seed, starts);
  FunctionalNormEstimate est;
  est.value = std::max(best.value, 0.0);
  est.converged = best.converged;
  est.witness = VectorTuple::from_flat(n, m, best.argmax);
  return est;
}

DualityReport duality_check(const OperatorInstance& t, const SeqNormFamily& y, std::size_t n,
                            const AscentOptions& options, std::uint64_t seed) {
  DualityReport r;
  r.n = n;
  r.convex = estimate_constant(t, y, Flavor::convexity, n, options, seed);
  const OperatorInstance adjoint = transpose(t);
  const SeqNormFamily y_dual = kothe_dual(y);
  r.concave_dual = estimate_constant(adjoint, y_dual, Flavor::concavity, n, options, seed);
  r.convex_n = r.convex.per_n.back().lower_bound;
  r.concave_dual_n = r.concave_dual.per_n.back().lower_bound;
  const double scale = std::max(r.convex_n, r.concave_dual_n);
  r.rel_gap = scale > 0.0 ? std::abs(r.convex_n - r.concave_dual_n) / scale : 0.0;
  r.converged = r.convex.converged() && r.concave_dual.converged();
  return r;
}

std::pair<ConstantEstimate, ConstantEstimate> lattice_constants(const FiniteLattice& x,
                                                                const SeqNormFamily& y,
                                                                std::size_t n_max,
                                                                const AscentOptions& options,
                                                                std::uint64_t seed) {
  const OperatorInstance id = identity_operator(x);
  return {estimate_constant(id, y, Flavor::convexity, n_max, options, seed),
          estimate_constant(id, y, Flavor::concavity, n_max, options, seed)};
}

}  // namespace latcalc
