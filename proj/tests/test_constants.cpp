#include <gtest/gtest.h>

#include <cmath>

#include "latticecalc/constants.hpp"
#include "latticecalc/error.hpp"
#include "latticecalc/mixed_norms.hpp"
#include "latticecalc/rng.hpp"
#include "oracles.hpp"

using namespace latcalc;

namespace {

Matrix random_matrix(Rng& rng, std::size_t m, std::size_t d) {
  Matrix a(m, d);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) a(i, j) = uniform(rng, -1.0, 1.0);
  }
  return a;
}

oracle::Rows random_rows(Rng& rng, std::size_t n, std::size_t m) {
  oracle::Rows r(n, oracle::Vec(m));
  for (auto& row : r) {
    for (auto& x : row) x = uniform(rng, -1.0, 1.0);
  }
  return r;
}

OperatorInstance make(Matrix a, double pe, double px) {
  const std::size_t m = a.rows(), d = a.cols();
  return OperatorInstance(std::move(a), FiniteLattice(d, SeqNormFamily::lp(pe)),
                          FiniteLattice(m, SeqNormFamily::lp(px)));
}

AscentOptions quick() {
  AscentOptions o;
  o.restarts = 8;
  return o;
}

}  // namespace

TEST(Ratio, IdentityAndScaling) {
  Rng rng = substream(51, 0);
  for (double p : {1.0, 2.0, 3.0}) {
    const FiniteLattice x(3, SeqNormFamily::lp(p));
    const auto id = identity_operator(x);
    const auto y = SeqNormFamily::lp(p);
    for (int i = 0; i < 20; ++i) {
      const VectorTuple w(random_rows(rng, 1 + i % 4, 3), SpaceTag::normed_space);
      EXPECT_NEAR(convexity_ratio(id, y, w), 1.0, 1e-12);
      EXPECT_NEAR(concavity_ratio(id, y, w), 1.0, 1e-12);
      EXPECT_NEAR(convexity_ratio(id.scaled(-2.5), y, w), 2.5, 1e-12);
      EXPECT_NEAR(concavity_ratio(id.scaled(-2.5), y, w), 2.5, 1e-12);
    }
  }
  const auto id = identity_operator(FiniteLattice(2, SeqNormFamily::lp(2)));
  EXPECT_THROW(convexity_ratio(id, SeqNormFamily::lp(2), VectorTuple(2, 2)), InputError);
  EXPECT_THROW(concavity_ratio(id, SeqNormFamily::lp(2), VectorTuple(2, 2)), InputError);
}

TEST(Ratio, RecompositionOracle) {
  Rng rng = substream(52, 0);
  for (int i = 0; i < 100; ++i) {
    const double pe = i % 2 ? 1.0 : 2.5, px = i % 3 ? 3.0 : kInfinity, py = i % 5 ? 1.5 : 2.0;
    const auto t = make(random_matrix(rng, 1 + i % 3, 1 + i % 4), pe, px);
    const auto rows = random_rows(rng, 1 + i % 3, t.matrix.cols());
    const auto a = t.matrix.to_rows();
    oracle::Rows image;
    for (const auto& r : rows) image.push_back(oracle::matvec(a, r));
    const auto ne = [&](const oracle::Vec& v) { return oracle::lp(v, pe); };
    const auto nx = [&](const oracle::Vec& v) { return oracle::lp(v, px); };
    const auto ny = [&](const oracle::Vec& v) { return oracle::lp(v, py); };
    const double ref = oracle::mixed_tau(image, nx, ny) / oracle::mixed_plain(rows, ne, ny);
    const VectorTuple w(rows, SpaceTag::normed_space);
    EXPECT_NEAR(convexity_ratio(t, SeqNormFamily::lp(py), w), ref, 1e-12 * ref);

    // Concavity: the same matrix read as S: X -> E with X = l_pe as the lattice.
    const double ref_s = oracle::mixed_plain(image, nx, ny) / oracle::mixed_tau(rows, ne, ny);
    EXPECT_NEAR(concavity_ratio(t, SeqNormFamily::lp(py), VectorTuple(rows)), ref_s, 1e-12 * ref_s);
  }
}

TEST(Estimate, IdentityIsOne) {
  const auto id = identity_operator(FiniteLattice(3, SeqNormFamily::lp(2)));
  const auto e = estimate_constant(id, SeqNormFamily::lp(2), Flavor::convexity, 3, quick(), 1);
  ASSERT_EQ(e.per_n.size(), 3u);
  for (const auto& level : e.per_n) EXPECT_NEAR(level.lower_bound, 1.0, 1e-6);
  EXPECT_FALSE(e.certified);
}

TEST(Estimate, HomogeneityLevelsAndWitnesses) {
  Rng rng = substream(53, 0);
  const auto t = make(random_matrix(rng, 2, 3), 1.5, 3.0);
  const auto y = SeqNormFamily::lp(2);
  for (Flavor f : {Flavor::convexity, Flavor::concavity}) {
    const auto a = estimate_constant(t, y, f, 2, quick(), 7);
    const auto b = estimate_constant(t.scaled(-3.0), y, f, 2, quick(), 7);
    EXPECT_NEAR(b.overall, 3.0 * a.overall, 1e-9 * b.overall);
    double prev = 0.0, best = 0.0;
    for (const auto& level : a.per_n) {
      EXPECT_GE(level.lower_bound, prev);
      prev = level.lower_bound;
      best = std::max(best, level.lower_bound);
      const double replay = flavor_ratio(t, y, f, level.witness);
      EXPECT_NEAR(replay, level.lower_bound, 1e-9 * level.lower_bound);
    }
    EXPECT_EQ(a.overall, best);
  }
}

TEST(Estimate, AgreesWithGridOn2x2) {
  Rng rng = substream(54, 0);
  for (int i = 0; i < 3; ++i) {
    const auto t = make(random_matrix(rng, 2, 2), 1.0, kInfinity);
    const auto y = SeqNormFamily::lp(2);
    const auto est = estimate_constant(t, y, Flavor::convexity, 2, {}, 3);
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto grid = brute_force_constant(t, y, Flavor::convexity, n, 25);
      ASSERT_TRUE(grid.certified);
      const auto& g = grid.per_n.front();
      EXPECT_NEAR(est.per_n[n - 1].lower_bound, g.lower_bound, 1e-2 * g.lower_bound);
      EXPECT_LE(est.per_n[n - 1].lower_bound, *g.upper_bound);
      EXPECT_LE(g.lower_bound, *g.upper_bound);
    }
  }
}

TEST(BruteForce, ExamplesAndScaleGuard) {
  for (double p : {1.0, 2.0, kInfinity}) {
    const auto id = identity_operator(FiniteLattice(2, SeqNormFamily::lp(p)));
    const auto g = brute_force_constant(id, SeqNormFamily::lp(p), Flavor::convexity, 2, 9);
    EXPECT_NEAR(g.per_n.front().lower_bound, 1.0, 1e-12);
  }
  Matrix s(1, 1);
  s(0, 0) = -1.75;
  const auto scalar = make(s, 2, 2);
  EXPECT_NEAR(brute_force_constant(scalar, SeqNormFamily::lp(3), Flavor::convexity, 1).per_n.front().lower_bound,
              1.75, 1e-12);
  const auto big = identity_operator(FiniteLattice(4, SeqNormFamily::lp(2)));
  EXPECT_THROW(brute_force_constant(big, SeqNormFamily::lp(2), Flavor::convexity, 2), ScaleGuardError);
}

TEST(FunctionalNorm, SelfDualPair) {
  const FiniteLattice e(1, SeqNormFamily::lp(1));
  const VectorTuple s(oracle::Rows{{1.0}, {1.0}});
  const auto r = functional_norm(MixedSpace::EnY, e, SeqNormFamily::lp(2), s, quick(), 1);
  EXPECT_NEAR(r.value, std::sqrt(2.0), 1e-9);
  EXPECT_LE(r.value, std::sqrt(2.0) * (1 + 1e-12));
}

TEST(FunctionalNorm, SingleFunctional) {
  const FiniteLattice e(3, SeqNormFamily::lp(3));
  const VectorTuple s(oracle::Rows{{1.0, -2.0, 0.5}});
  const double q = oracle::lp({1.0, -2.0, 0.5}, 1.5);
  for (double py : {1.0, 2.0, kInfinity}) {
    const auto y = SeqNormFamily::lp(py);
    const double scale = kothe_dual(y).unit_vector_norm(0);
    EXPECT_NEAR(functional_norm(MixedSpace::EnY, e, y, s, quick(), 2).value, q * scale, 1e-6 * q);
  }
}

TEST(FunctionalNorm, MatchesDualMixedNorms) {
  Rng rng = substream(55, 0);
  const std::vector<SeqNormFamily> fams{SeqNormFamily::lp(1), SeqNormFamily::lp(2), SeqNormFamily::lp(3),
                                        SeqNormFamily::lp(kInfinity)};
  for (int i = 0; i < 6; ++i) {
    const auto& y = fams[i % fams.size()];
    const FiniteLattice space(1 + i % 3, fams[(i + 1) % fams.size()]);
    const VectorTuple s(random_rows(rng, 1 + i % 3, space.dim()));
    const double a = functional_norm(MixedSpace::EnY, space, y, s, {}, 4).value;
    const double ea = norm_EnY(space.dual(), kothe_dual(y), s);
    EXPECT_NEAR(a, ea, 1e-3 * ea);
    const double b = functional_norm(MixedSpace::XnY_tau, space, y, s, {}, 4).value;
    const double eb = norm_XnY_tau(space.dual(), kothe_dual(y), s);
    EXPECT_NEAR(b, eb, 1e-3 * eb);
  }
}

TEST(Duality, IdentityAndScaling) {
  const auto id = identity_operator(FiniteLattice(3, SeqNormFamily::lp(2)));
  const auto r = duality_check(id, SeqNormFamily::lp(2), 2, quick(), 1);
  EXPECT_NEAR(r.convex_n, 1.0, 1e-6);
  EXPECT_NEAR(r.concave_dual_n, 1.0, 1e-6);
  EXPECT_LT(r.rel_gap, 1e-6);

  Rng rng = substream(56, 0);
  const auto t = make(random_matrix(rng, 3, 3), 2.0, 1.5);
  const auto a = duality_check(t, SeqNormFamily::lp(1.5), 2, quick(), 5);
  const auto b = duality_check(t.scaled(4.0), SeqNormFamily::lp(1.5), 2, quick(), 5);
  EXPECT_NEAR(b.convex_n, 4.0 * a.convex_n, 1e-9 * b.convex_n);
  EXPECT_NEAR(b.concave_dual_n, 4.0 * a.concave_dual_n, 1e-9 * b.concave_dual_n);
  EXPECT_NEAR(b.rel_gap, a.rel_gap, 1e-9);
}

TEST(Duality, Seeded3x3) {
  Rng rng = substream(57, 0);
  for (int i = 0; i < 4; ++i) {
    const auto t = make(random_matrix(rng, 3, 3), i % 2 ? 1.0 : 2.0, i % 2 ? 3.0 : kInfinity);
    const auto r = duality_check(t, SeqNormFamily::lp(i % 2 ? 1.5 : 2.0), 1 + i % 3, {}, 9);
    EXPECT_LT(r.rel_gap, 5e-2);
  }
}

TEST(LatticeConstants, Examples) {
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const auto [cv, cc] = lattice_constants(FiniteLattice(2, SeqNormFamily::lp(p)), SeqNormFamily::lp(p), 2, quick(), 1);
    EXPECT_NEAR(cv.overall, 1.0, 1e-6);
    EXPECT_NEAR(cc.overall, 1.0, 1e-6);
  }
  const auto [inf_cv, inf_cc] = lattice_constants(FiniteLattice(3, SeqNormFamily::lp(kInfinity)),
                                                  SeqNormFamily::lp(kInfinity), 2, quick(), 1);
  EXPECT_NEAR(inf_cv.overall, 1.0, 1e-6);

  const FiniteLattice l1(2, SeqNormFamily::lp(1));
  const auto [cv, cc] = lattice_constants(l1, SeqNormFamily::lp(2), 2, {}, 2);
  const auto grid = brute_force_constant(identity_operator(l1), SeqNormFamily::lp(2), Flavor::convexity, 2, 25);
  EXPECT_NEAR(cv.per_n[1].lower_bound, grid.per_n.front().lower_bound, 1e-2);
  EXPECT_LE(cv.per_n[1].lower_bound, *grid.per_n.front().upper_bound);
}
