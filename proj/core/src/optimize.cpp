#include "latticecalc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include <Eigen/Dense>

#include "latticecalc/rng.hpp"

namespace latcalc {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double euclidean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

bool normalize(std::vector<double>& v) {
  const double n = euclidean(v);
  if (!(n > 0.0) || !std::isfinite(n)) return false;
  for (auto& x : v) x /= n;
  return true;
}

struct RestartOutcome {
  double value = kNegInf;
  std::vector<double> point;
  bool converged = false;
  int iterations = 0;
  int evaluations = 0;
};

class Evaluator {
 public:
  explicit Evaluator(const ScaleInvariantObjective& f) : f_(f) {}
  double operator()(std::span<const double> x) {
    ++count;
    const double v = f_(x);
    return std::isnan(v) ? kNegInf : v;
  }
  int count = 0;

 private:
  const ScaleInvariantObjective& f_;
};

RestartOutcome run_restart(const ScaleInvariantObjective& objective, std::size_t dim,
                           const AscentOptions& opt, std::uint64_t seed, int index,
                           std::span<const std::vector<double>> starts) {
  Rng rng = substream(seed, static_cast<std::uint64_t>(index));
  Evaluator eval(objective);
  RestartOutcome out;

  std::vector<double> u;
  if (static_cast<std::size_t>(index) < starts.size() && starts[index].size() == dim) {
    u = starts[index];
  }
  double f = kNegInf;
  if (!u.empty() && normalize(u)) f = eval(u);
  for (int attempt = 0; attempt < 64 && !(f > kNegInf); ++attempt) {
    u = gaussian_vector(rng, dim);
    if (normalize(u)) f = eval(u);
  }
  out.point = u;
  out.value = f;
  if (!(f > kNegInf)) {
    out.evaluations = eval.count;
    return out;
  }

  const double h = opt.gradient_step;
  double step = opt.initial_step;
  std::vector<double> grad(dim), cand(dim), probe(dim), best_cand(dim);

  int it = 0;
  for (; it < opt.iterations; ++it) {
    // Central differences on the ambient coordinates.
    probe = u;
    for (std::size_t i = 0; i < dim; ++i) {
      probe[i] = u[i] + h;
      const double fp = eval(probe);
      probe[i] = u[i] - h;
      const double fm = eval(probe);
      probe[i] = u[i];
      grad[i] = (fp > kNegInf && fm > kNegInf) ? (fp - fm) / (2.0 * h) : 0.0;
    }
    double radial = 0.0;
    for (std::size_t i = 0; i < dim; ++i) radial += grad[i] * u[i];
    for (std::size_t i = 0; i < dim; ++i) grad[i] -= radial * u[i];
    const double gnorm = euclidean(grad);

    bool improved = false;
    if (gnorm > 0.0 && std::isfinite(gnorm)) {
      for (std::size_t i = 0; i < dim; ++i) cand[i] = u[i] + step * grad[i] / gnorm;
      if (normalize(cand)) {
        const double fc = eval(cand);
        if (fc > f) {
          u.swap(cand);
          f = fc;
          improved = true;
        }
      }
    }
    if (!improved) {
      // Fallback: a stencil gradient at the scale of the step (across a kink
      // it averages the one-sided slopes and tends to point along the
      // ridge), the compass directions and random directions; the best
      // candidate wins.
      double best = f;
      bool found = false;
      auto try_point = [&](std::vector<double>& c) {
        if (!normalize(c)) return;
        const double fc = eval(c);
        if (fc > best) {
          best = fc;
          best_cand = c;
          found = true;
        }
      };
      if (step > h) {
        probe = u;
        for (std::size_t i = 0; i < dim; ++i) {
          probe[i] = u[i] + step;
          const double fp = eval(probe);
          probe[i] = u[i] - step;
          const double fm = eval(probe);
          probe[i] = u[i];
          grad[i] = (fp > kNegInf && fm > kNegInf) ? fp - fm : 0.0;
        }
        double along = 0.0;
        for (std::size_t i = 0; i < dim; ++i) along += grad[i] * u[i];
        for (std::size_t i = 0; i < dim; ++i) grad[i] -= along * u[i];
        const double sn = euclidean(grad);
        if (sn > 0.0 && std::isfinite(sn)) {
          for (double scale : {1.0, 0.25}) {
            for (std::size_t i = 0; i < dim; ++i) cand[i] = u[i] + scale * step * grad[i] / sn;
            try_point(cand);
          }
        }
      }
      for (std::size_t i = 0; i < dim; ++i) {
        for (double sign : {1.0, -1.0}) {
          cand = u;
          cand[i] += sign * step;
          try_point(cand);
        }
      }
      for (std::size_t r = 0; r < 2 * dim; ++r) {
        auto dir = gaussian_vector(rng, dim);
        const double dn = euclidean(dir);
        if (!(dn > 0.0)) continue;
        for (std::size_t i = 0; i < dim; ++i) cand[i] = u[i] + step * dir[i] / dn;
        try_point(cand);
      }
      if (found) {
        u = best_cand;
        f = best;
        improved = true;
      }
    }
    step = improved ? std::min(step * 1.5, 1.0) : step * 0.5;
    if (step < opt.step_tolerance) {
      out.converged = true;
      ++it;
      break;
    }
  }
  out.value = f;
  out.point = std::move(u);
  out.iterations = it;
  out.evaluations = eval.count;
  return out;
}


// CMA-ES from a unit point. Scale invariance lets the mean be renormalized
// each generation, with the step size divided by the same factor.
RestartOutcome polish(const ScaleInvariantObjective& objective, std::size_t dim,
                      const AscentOptions& opt, std::uint64_t seed, std::uint64_t stream,
                      const RestartOutcome& from) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  RestartOutcome out = from;
  if (dim < 2 || from.point.size() != dim || !(from.value > kNegInf)) return out;
  Rng rng = substream(seed, stream);
  Evaluator eval(objective);

  const double n = static_cast<double>(dim);
  const int lambda = 4 + static_cast<int>(std::floor(3.0 * std::log(n)));
  const int mu = lambda / 2;
  VectorXd w(mu);
  for (int i = 0; i < mu; ++i) w[i] = std::log(mu + 0.5) - std::log(i + 1.0);
  w /= w.sum();
  const double mueff = 1.0 / w.squaredNorm();
  const double cc = (4.0 + mueff / n) / (n + 4.0 + 2.0 * mueff / n);
  const double cs = (mueff + 2.0) / (n + mueff + 5.0);
  const double c1 = 2.0 / ((n + 1.3) * (n + 1.3) + mueff);
  const double cmu =
      std::min(1.0 - c1, 2.0 * (mueff - 2.0 + 1.0 / mueff) / ((n + 2.0) * (n + 2.0) + mueff));
  const double damps = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff - 1.0) / (n + 1.0)) - 1.0) + cs;
  const double chi = std::sqrt(n) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n));

  VectorXd m = Eigen::Map<const VectorXd>(from.point.data(), static_cast<Eigen::Index>(dim));
  double sigma = 0.05;
  VectorXd pc = VectorXd::Zero(dim), ps = VectorXd::Zero(dim);
  MatrixXd C = MatrixXd::Identity(dim, dim), B = C;
  VectorXd D = VectorXd::Ones(dim);
  const int max_evals = 400 * static_cast<int>(dim) * static_cast<int>(dim) + 4000;

  std::vector<VectorXd> y(static_cast<std::size_t>(lambda));
  std::vector<double> fy(static_cast<std::size_t>(lambda));
  std::vector<int> order(static_cast<std::size_t>(lambda));
  std::vector<double> point(dim);
  int gen = 0;
  while (eval.count < max_evals) {
    ++gen;
    for (int k = 0; k < lambda; ++k) {
      VectorXd z(dim);
      for (std::size_t i = 0; i < dim; ++i) z[static_cast<Eigen::Index>(i)] = gaussian(rng);
      y[k] = B * D.cwiseProduct(z);
      const VectorXd x = m + sigma * y[k];
      for (std::size_t i = 0; i < dim; ++i) point[i] = x[static_cast<Eigen::Index>(i)];
      fy[k] = normalize(point) ? eval(point) : kNegInf;
      if (fy[k] > out.value) {
        out.value = fy[k];
        out.point = point;
      }
    }
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fy[a] > fy[b]; });

    VectorXd yw = VectorXd::Zero(dim);
    for (int i = 0; i < mu; ++i) yw += w[i] * y[order[i]];
    m += sigma * yw;

    const VectorXd cinv_yw = B * (B.transpose() * yw).cwiseQuotient(D);
    ps = (1.0 - cs) * ps + std::sqrt(cs * (2.0 - cs) * mueff) * cinv_yw;
    const bool hsig = ps.norm() / std::sqrt(1.0 - std::pow(1.0 - cs, 2.0 * gen)) / chi <
                      1.4 + 2.0 / (n + 1.0);
    pc = (1.0 - cc) * pc + (hsig ? std::sqrt(cc * (2.0 - cc) * mueff) : 0.0) * yw;
    MatrixXd rank_mu = MatrixXd::Zero(dim, dim);
    for (int i = 0; i < mu; ++i) rank_mu += w[i] * y[order[i]] * y[order[i]].transpose();
    C = (1.0 - c1 - cmu) * C + c1 * (pc * pc.transpose() + (hsig ? 0.0 : cc * (2.0 - cc)) * C) +
        cmu * rank_mu;
    sigma *= std::exp((cs / damps) * (ps.norm() / chi - 1.0));

    const double mn = m.norm();
    if (!(mn > 0.0) || !std::isfinite(mn) || !std::isfinite(sigma)) break;
    m /= mn;
    sigma /= mn;

    C = 0.5 * (C + C.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(C);
    if (eig.info() != Eigen::Success) break;
    B = eig.eigenvectors();
    D = eig.eigenvalues().cwiseMax(1e-300).cwiseSqrt();
    if (sigma * D.maxCoeff() < opt.step_tolerance) break;
    if (D.maxCoeff() > 1e7 * D.minCoeff()) break;
  }
  out.evaluations = from.evaluations + eval.count;
  return out;
}

}  // namespace

AscentResult maximize_on_sphere(const ScaleInvariantObjective& objective, std::size_t dim,
                                const AscentOptions& options, std::uint64_t seed,
                                std::span<const std::vector<double>> starts) {
  AscentResult result;
  if (dim == 0) return result;
  const int restarts = std::max(options.restarts, static_cast<int>(starts.size()));
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(std::max(restarts, 1)));

  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(outcomes.size())));
  if (threads == 1) {
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
      outcomes[r] = run_restart(objective, dim, options, seed, static_cast<int>(r), starts);
    }
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t r = t; r < outcomes.size(); r += threads) {
          outcomes[r] = run_restart(objective, dim, options, seed, static_cast<int>(r), starts);
        }
      });
    }
  }

  if (options.polish > 0) {
    std::vector<std::size_t> rank(outcomes.size());
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
      return outcomes[a].value > outcomes[b].value;
    });
    const std::size_t k = std::min(rank.size(), static_cast<std::size_t>(options.polish));
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t r = rank[j];
      outcomes[r] = polish(objective, dim, options, seed, outcomes.size() + r, outcomes[r]);
    }
  }

  // Order-independent reduction; ties go to the lowest restart index.
  result.value = kNegInf;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    result.evaluations += outcomes[r].evaluations;
    if (outcomes[r].value > result.value) {
      result.value = outcomes[r].value;
      result.best_restart = static_cast<int>(r);
    }
  }
  if (result.best_restart >= 0) {
    const auto& best = outcomes[static_cast<std::size_t>(result.best_restart)];
    result.argmax = best.point;
    result.converged = best.converged;
    result.iterations = best.iterations;
  }
  return result;
}

}  // namespace latcalc
