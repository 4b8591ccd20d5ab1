#include <gtest/gtest.h>

#include <cmath>

#include "latticecalc/optimize.hpp"

using namespace latcalc;

namespace {

// sum |v_i| a_i / ||v||_2 has a kink along every axis; its maximum is ||a||_2.
double kinked(std::span<const double> v) {
  static const double a[] = {1.0, 2.0, 0.5, 3.0};
  double s = 0.0, n = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += std::abs(v[i]) * a[i];
    n += v[i] * v[i];
  }
  return s / std::sqrt(n);
}

// max_i |v_i| w_i / ||v||_1: a ridge objective whose maximum max_i w_i sits on an axis.
double ridge(std::span<const double> v) {
  static const double w[] = {0.7, 1.3, 1.1};
  double m = 0.0, n = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    m = std::max(m, std::abs(v[i]) * w[i]);
    n += std::abs(v[i]);
  }
  return m / n;
}

}  // namespace

TEST(Optimize, FindsMaximumOfKinkedObjective) {
  const auto r = maximize_on_sphere(kinked, 4, {}, 1);
  EXPECT_NEAR(r.value, std::sqrt(1 + 4 + 0.25 + 9), 1e-9);
  EXPECT_EQ(r.argmax.size(), 4u);
  EXPECT_NEAR(kinked(r.argmax), r.value, 1e-15);
}

TEST(Optimize, FindsRidgeMaximum) {
  const auto r = maximize_on_sphere(ridge, 3, {}, 2);
  EXPECT_NEAR(r.value, 1.3, 1e-9);
}

TEST(Optimize, IndependentOfThreadCount) {
  AscentOptions serial;
  AscentOptions threaded;
  threaded.threads = 4;
  for (std::uint64_t seed : {1u, 7u, 99u}) {
    const auto a = maximize_on_sphere(kinked, 4, serial, seed);
    const auto b = maximize_on_sphere(kinked, 4, threaded, seed);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.argmax, b.argmax);
    EXPECT_EQ(a.best_restart, b.best_restart);
    EXPECT_EQ(a.evaluations, b.evaluations);
  }
}

TEST(Optimize, StartsAreUsed) {
  AscentOptions one;
  one.restarts = 1;
  one.iterations = 1;
  one.polish = 0;
  const std::vector<std::vector<double>> starts{{0.0, 5.0, 0.0}};
  const auto r = maximize_on_sphere(ridge, 3, one, 3, starts);
  EXPECT_DOUBLE_EQ(r.value, 1.3);
}

TEST(Optimize, ZeroDimension) {
  const auto r = maximize_on_sphere(kinked, 0, {}, 1);
  EXPECT_TRUE(r.argmax.empty());
}
