#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "latticecalc/constants.hpp"
#include "latticecalc/mixed_norms.hpp"
#include "latticecalc/optimize.hpp"
#include "latticecalc/rng.hpp"

using namespace latcalc;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  Rng rng = substream(seed, 0);
  std::vector<double> v(n);
  for (auto& x : v) x = uniform(rng, -1.0, 1.0);
  return v;
}

Matrix random_matrix(std::size_t m, std::size_t d, std::uint64_t seed) {
  const auto v = random_vector(m * d, seed);
  Matrix a(m, d);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) a(i, j) = v[i * d + j];
  }
  return a;
}

void BM_LpNorm(benchmark::State& state) {
  const auto y = SeqNormFamily::lp(1.5);
  const auto v = random_vector(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(y.norm(v));
}
BENCHMARK(BM_LpNorm)->Arg(8)->Arg(64)->Arg(512);

void BM_Luxemburg(benchmark::State& state) {
  const auto y = SeqNormFamily::orlicz(OrliczFunction::from_expression("exp(u) - 1 - u"));
  const auto v = random_vector(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(y.norm(v));
}
BENCHMARK(BM_Luxemburg)->Arg(8)->Arg(64);

void BM_NumericDual(benchmark::State& state) {
  const auto y = kothe_dual(SeqNormFamily::orlicz(OrliczFunction::from_expression("u^2")),
                            DualMethod::numeric(AscentOptions{.restarts = 8, .polish = 1}));
  const auto v = random_vector(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(y.norm(v));
}
BENCHMARK(BM_NumericDual)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_MixedTau(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const FiniteLattice x(4, SeqNormFamily::lp(3));
  const auto flat = random_vector(n * 4, 4);
  const VectorTuple t = VectorTuple::from_flat(n, 4, flat);
  const auto y = SeqNormFamily::lp(2);
  for (auto _ : state) benchmark::DoNotOptimize(norm_XnY_tau(x, y, t));
}
BENCHMARK(BM_MixedTau)->Arg(2)->Arg(8);

void BM_SphereOptimizer(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const auto y = SeqNormFamily::lp(1);
  const auto objective = [&](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return y.norm(x) / std::sqrt(s);
  };
  for (auto _ : state) benchmark::DoNotOptimize(maximize_on_sphere(objective, dim, AscentOptions{}, 5).value);
}
BENCHMARK(BM_SphereOptimizer)->Arg(4)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_EstimateConstant(benchmark::State& state) {
  const OperatorInstance t(random_matrix(3, 3, 6), FiniteLattice(3, SeqNormFamily::lp(2)),
                           FiniteLattice(3, SeqNormFamily::lp(kInfinity)));
  const auto y = SeqNormFamily::lp(1.5);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_constant(t, y, Flavor::convexity, n, AscentOptions{}, 7).overall);
  }
}
BENCHMARK(BM_EstimateConstant)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const OperatorInstance t(random_matrix(2, 2, 8), FiniteLattice(2, SeqNormFamily::lp(1)),
                           FiniteLattice(2, SeqNormFamily::lp(kInfinity)));
  const auto y = SeqNormFamily::lp(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_constant(t, y, Flavor::convexity, 2, 25).overall);
  }
}
BENCHMARK(BM_BruteForce)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
