#include <gtest/gtest.h>

#include <cmath>

#include "latticecalc/error.hpp"
#include "latticecalc/mixed_norms.hpp"
#include "latticecalc/rng.hpp"
#include "oracles.hpp"

using namespace latcalc;

namespace {

oracle::Rows random_rows(Rng& rng, std::size_t n, std::size_t m) {
  oracle::Rows r(n, oracle::Vec(m));
  for (auto& row : r) {
    for (auto& x : row) x = uniform(rng, -2.0, 2.0);
  }
  return r;
}

}  // namespace

TEST(NormEnY, Examples) {
  const FiniteLattice e(2, SeqNormFamily::lp(2));
  const VectorTuple w({{3, 4}, {0, 1}}, SpaceTag::normed_space);
  EXPECT_DOUBLE_EQ(norm_EnY(e, SeqNormFamily::lp(1), w), 6.0);
  EXPECT_DOUBLE_EQ(norm_EnY(e, SeqNormFamily::lp(1), w.padded()), 6.0);
  EXPECT_THROW(norm_EnY(FiniteLattice(3, SeqNormFamily::lp(2)), SeqNormFamily::lp(1), w), InputError);
}

TEST(NormEnY, OrliczRecomposition) {
  const auto phi = [](double u) { return u * u * u + u; };
  const auto y = SeqNormFamily::orlicz(OrliczFunction::from_expression("u^3 + u"));
  const FiniteLattice e(3, SeqNormFamily::lp(1.5));
  Rng rng = substream(31, 0);
  for (int i = 0; i < 50; ++i) {
    const auto rows = random_rows(rng, 1 + i % 5, 3);
    const double ref = oracle::mixed_plain(
        rows, [](const oracle::Vec& v) { return oracle::lp(v, 1.5); },
        [&](const oracle::Vec& v) { return oracle::luxemburg(v, phi); });
    const double v = norm_EnY(e, y, VectorTuple(rows, SpaceTag::normed_space));
    EXPECT_NEAR(v, ref, 1e-12 * ref);
  }
}

TEST(NormXnYTau, Examples) {
  const FiniteLattice x(2, SeqNormFamily::lp(kInfinity));
  EXPECT_DOUBLE_EQ(norm_XnY_tau(x, SeqNormFamily::lp(2), VectorTuple({{3, 0}, {4, 0}})), 5.0);
}

TEST(NormXnYTau, FubiniCollapse) {
  Rng rng = substream(32, 0);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const FiniteLattice x(4, SeqNormFamily::lp(p));
    const auto y = SeqNormFamily::lp(p);
    for (int i = 0; i < 50; ++i) {
      const VectorTuple t(random_rows(rng, 1 + i % 5, 4));
      const double a = norm_XnY_tau(x, y, t);
      EXPECT_NEAR(a, norm_EnY(x, y, t), 1e-12 * a);
    }
  }
}

TEST(NormXnYTau, DoubleLoopOracle) {
  Rng rng = substream(33, 0);
  for (int i = 0; i < 100; ++i) {
    const double px = i % 2 ? 1.0 : 3.0;
    const double py = i % 3 ? 1.5 : kInfinity;
    const auto rows = random_rows(rng, 1 + i % 6, 1 + i % 4);
    const double ref = oracle::mixed_tau(
        rows, [&](const oracle::Vec& v) { return oracle::lp(v, px); },
        [&](const oracle::Vec& v) { return oracle::lp(v, py); });
    const double v = norm_XnY_tau(FiniteLattice(rows.front().size(), SeqNormFamily::lp(px)),
                                  SeqNormFamily::lp(py), VectorTuple(rows));
    EXPECT_NEAR(v, ref, 1e-12 * ref);
  }
}

TEST(Equivalence, Examples) {
  const FiniteLattice x(3, SeqNormFamily::lp(2));
  const auto y = SeqNormFamily::lp(1.5);
  const VectorTuple single({{1, -2, 2}});
  const auto a = norm_equivalence_check(x, y, single);
  EXPECT_DOUBLE_EQ(a.tau_norm, y.unit_vector_norm(0) * 3.0);
  EXPECT_TRUE(a.bounds_hold);

  // Y = l1 on disjoint rows: equality when X = l1, strict inequality for X = l2.
  const VectorTuple disjoint({{1, 0}, {0, 1}});
  const auto b = norm_equivalence_check(FiniteLattice(2, SeqNormFamily::lp(1)), SeqNormFamily::lp(1), disjoint);
  EXPECT_DOUBLE_EQ(b.tau_norm, b.l1_norm);
  const auto c = norm_equivalence_check(FiniteLattice(2, SeqNormFamily::lp(2)), SeqNormFamily::lp(1), disjoint);
  EXPECT_DOUBLE_EQ(c.tau_norm, std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(c.l1_norm, 2.0);
  EXPECT_TRUE(c.bounds_hold);
}

TEST(TailProfile, Examples) {
  const FiniteLattice e(2, SeqNormFamily::lp(2));
  const auto y = SeqNormFamily::lp(1);
  const auto p = tail_profile(e, y, VectorTuple({{3, 4}}), TailFlavor::plain);
  EXPECT_EQ(p, (std::vector<double>{5.0, 0.0}));

  std::vector<std::vector<double>> rows;
  for (int j = 1; j <= 5; ++j) rows.push_back({std::ldexp(1.0, -j), std::ldexp(2.0, -j)});
  for (TailFlavor f : {TailFlavor::plain, TailFlavor::tau}) {
    const auto q = tail_profile(e, y, VectorTuple(rows), f);
    for (std::size_t k = 1; k < q.size(); ++k) EXPECT_LT(q[k], q[k - 1]);
  }
}

TEST(TailProfile, NonincreasingScan) {
  Rng rng = substream(34, 0);
  const FiniteLattice x(3, SeqNormFamily::lp(1.5));
  for (int i = 0; i < 100; ++i) {
    const auto y = SeqNormFamily::lp(i % 2 ? 2.0 : kInfinity);
    const VectorTuple seq(random_rows(rng, 1 + i % 7, 3));
    for (TailFlavor f : {TailFlavor::plain, TailFlavor::tau}) {
      const auto q = tail_profile(x, y, seq, f);
      ASSERT_EQ(q.size(), seq.size() + 1);
      EXPECT_EQ(q.back(), 0.0);
      for (std::size_t k = 1; k < q.size(); ++k) EXPECT_LE(q[k], q[k - 1]);
    }
  }
}

TEST(PairingRho, Examples) {
  const FiniteLattice e(2, SeqNormFamily::lp(2));
  const auto y = SeqNormFamily::lp(2);
  const auto r = pairing_rho(e, y, VectorTuple({{1, 0}}), VectorTuple({{1, 0}}));
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_DOUBLE_EQ(r.rhs, 1.0);
  EXPECT_TRUE(r.holds);
  const auto z = pairing_rho(e, y, VectorTuple({{0, 0}, {0, 0}}), VectorTuple({{1, 2}, {3, 4}}));
  EXPECT_EQ(z.value, 0.0);
}

TEST(PairingRho, SeededSweep) {
  Rng rng = substream(35, 0);
  for (double p : {2.0, 3.0}) {
    const auto y = SeqNormFamily::lp(p);
    for (int i = 0; i < 200; ++i) {
      const std::size_t m = 1 + i % 3;
      const FiniteLattice e(m, SeqNormFamily::lp(i % 2 ? 1.0 : 2.5));
      const auto r = pairing_rho(e, y, VectorTuple(random_rows(rng, 1 + i % 4, m)),
                                 VectorTuple(random_rows(rng, 1 + i % 5, m)));
      EXPECT_TRUE(r.holds);
    }
  }
}

TEST(Qcv, Examples) {
  const auto y = SeqNormFamily::lp(2);
  const auto r = qcv_check(y, VectorTuple(oracle::Rows{{1.0}, {2.0}}), VectorTuple(oracle::Rows{{2.0}, {4.0}}));
  EXPECT_NEAR(r.lhs, 10.0, 1e-14);
  EXPECT_NEAR(r.rhs, 10.0, 1e-14);
  EXPECT_TRUE(r.holds);
  const auto s = qcv_check(SeqNormFamily::lp(3), VectorTuple({{1, -2}}), VectorTuple({{3, 1}}));
  EXPECT_DOUBLE_EQ(s.lhs, 1.0);
  EXPECT_TRUE(s.holds);
}

TEST(Qcv, SeededSweep) {
  Rng rng = substream(36, 0);
  const std::vector<SeqNormFamily> families{SeqNormFamily::lp(1), SeqNormFamily::lp(2),
                                            SeqNormFamily::lp(3),
                                            SeqNormFamily::orlicz(OrliczFunction::from_expression("u^2"))};
  for (const auto& y : families) {
    const int count = y.has_analytic_dual() ? 200 : 10;
    for (int i = 0; i < count; ++i) {
      const std::size_t n = 1 + i % 4, m = 1 + i % 3;
      const auto r = qcv_check(y, VectorTuple(random_rows(rng, n, m)), VectorTuple(random_rows(rng, n, m)),
                               DualMethod::numeric({.restarts = 4}, 1));
      EXPECT_TRUE(r.holds) << y.label() << " " << r.lhs << " " << r.rhs;
    }
  }
}

TEST(JoinSup, Examples) {
  const auto a = join_sup_check(VectorTuple({{1, 2, 3}}), std::vector<double>{1, 1, 2}, 10, 1);
  EXPECT_DOUBLE_EQ(a.join_value, 9.0);
  EXPECT_DOUBLE_EQ(a.greedy_value, 9.0);
  const auto b = join_sup_check(VectorTuple({{1, 0}, {0, 1}}), std::vector<double>{1, 1}, 10, 1);
  EXPECT_EQ(b.join, (std::vector<double>{1, 1}));
  EXPECT_DOUBLE_EQ(b.join_value, 2.0);
  EXPECT_TRUE(b.equal_within_tol);
  EXPECT_THROW(join_sup_check(VectorTuple({{1, 0}}), std::vector<double>{1, -1}, 1, 1), InputError);
}

TEST(JoinSup, GreedyOracle) {
  Rng rng = substream(37, 0);
  for (int i = 0; i < 100; ++i) {
    const std::size_t k = 1 + i % 4, m = 1 + i % 5;
    const auto phis = random_rows(rng, k, m);
    oracle::Vec x(m);
    for (auto& v : x) v = uniform(rng, 0.0, 2.0);
    double ref = 0.0;
    for (std::size_t w = 0; w < m; ++w) {
      double best = phis[0][w];
      for (const auto& phi : phis) best = std::max(best, phi[w]);
      ref += best * x[w];
    }
    const auto r = join_sup_check(VectorTuple(phis), x, 20, static_cast<std::uint64_t>(i));
    EXPECT_NEAR(r.join_value, ref, 1e-12 * (1 + std::abs(ref)));
    EXPECT_TRUE(r.equal_within_tol);
    EXPECT_LE(r.best_random_value, r.join_value + 1e-12 * (1 + std::abs(ref)));
  }
}
