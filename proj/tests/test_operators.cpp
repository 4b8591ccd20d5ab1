#include <gtest/gtest.h>

#include "latticecalc/error.hpp"
#include "latticecalc/operators.hpp"
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

OperatorInstance make(Matrix a, double pe, double px) {
  const std::size_t m = a.rows(), d = a.cols();
  return OperatorInstance(std::move(a), FiniteLattice(d, SeqNormFamily::lp(pe)),
                          FiniteLattice(m, SeqNormFamily::lp(px)));
}

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(Apply, Examples) {
  const auto id = make(Matrix::identity(3), 2, 2);
  const std::vector<double> w{1, -2, 3};
  EXPECT_EQ(latcalc::apply(id, w), w);
  EXPECT_EQ(latcalc::apply(make(Matrix(2, 3), 2, 2), w), (std::vector<double>{0, 0}));
  EXPECT_THROW(latcalc::apply(id, std::vector<double>{1, 2}), InputError);
}

TEST(Apply, NaiveRecompute) {
  Rng rng = substream(41, 0);
  for (int i = 0; i < 50; ++i) {
    const auto t = make(random_matrix(rng, 1 + i % 4, 1 + i % 3), 2, 2);
    oracle::Vec w(t.matrix.cols());
    for (auto& x : w) x = uniform(rng, -1.0, 1.0);
    const auto ref = oracle::matvec(t.matrix.to_rows(), w);
    const auto got = latcalc::apply(t, w);
    for (std::size_t k = 0; k < ref.size(); ++k) EXPECT_NEAR(got[k], ref[k], 1e-15);
  }
}

TEST(ApplyN, RowwiseAndPadding) {
  Rng rng = substream(42, 0);
  const auto t = make(random_matrix(rng, 3, 2), 1, 2);
  const VectorTuple w({{1, 2}, {-1, 0.5}, {0, 3}}, SpaceTag::normed_space);
  const auto tw = apply_n(t, w);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto ref = oracle::matvec(t.matrix.to_rows(), vec(w.row(j)));
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(tw(j, k), ref[k], 1e-15);
  }
  EXPECT_EQ(vec(apply_n(t, w.prefix(1)).row(0)), latcalc::apply(t, w.row(0)));
  EXPECT_EQ(apply_n(t, w.padded()), tw.padded());
  EXPECT_EQ(apply_n(t, VectorTuple(2, 2)), VectorTuple(2, 3));
}

TEST(Transpose, DiagonalAndAdjointIdentity) {
  Matrix d(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 2;
  const auto t = make(d, 1, 3);
  const auto ts = transpose(t);
  EXPECT_EQ(ts.matrix, d);
  EXPECT_DOUBLE_EQ(ts.domain.norm(std::vector<double>{1, 1}), oracle::lp({1, 1}, 1.5));
  EXPECT_DOUBLE_EQ(ts.codomain.norm(std::vector<double>{1, -3}), 3.0);
  EXPECT_EQ(transpose(transpose(t)).matrix, t.matrix);

  Rng rng = substream(43, 0);
  const auto r = make(random_matrix(rng, 3, 4), 2, 1);
  const auto rs = transpose(r);
  for (int i = 0; i < 100; ++i) {
    oracle::Vec w(4), phi(3);
    for (auto& x : w) x = uniform(rng, -1.0, 1.0);
    for (auto& x : phi) x = uniform(rng, -1.0, 1.0);
    const double lhs = oracle::dot(latcalc::apply(r, w), phi);
    const double rhs = oracle::dot(w, latcalc::apply(rs, phi));
    EXPECT_NEAR(lhs, rhs, 1e-14);
  }
}

TEST(OperatorNorm, AdjointAgreesOn3x3) {
  Rng rng = substream(44, 0);
  for (int i = 0; i < 5; ++i) {
    const auto t = make(random_matrix(rng, 3, 3), i % 2 ? 1.5 : 2.0, i % 2 ? 3.0 : 1.0);
    const double a = operator_norm(t, {}, 1).value;
    const double b = operator_norm(transpose(t), {}, 2).value;
    EXPECT_NEAR(a, b, 1e-4 * a);
  }
}

TEST(OperatorNorm, EuclideanIsLargestSingularValue) {
  Matrix a(2, 2);
  a(0, 0) = 3;
  a(0, 1) = 1;
  a(1, 0) = 1;
  a(1, 1) = 3;
  EXPECT_NEAR(operator_norm(make(a, 2, 2), {}, 1).value, 4.0, 1e-9);
}

TEST(Nnlema, Examples) {
  const FiniteLattice x(3, SeqNormFamily::lp(1.5));
  const auto y = SeqNormFamily::lp(2);
  const VectorTuple w({{1, 2, 0}, {0, -1, 1}}, SpaceTag::normed_space);
  const auto id = nnlema_check(identity_operator(x), y, w);
  EXPECT_NEAR(id.lhs, id.rhs, 1e-9 * id.rhs);
  EXPECT_EQ(id.status, CheckStatus::holds);
  const auto zero = nnlema_check(OperatorInstance(Matrix(3, 3), x, x), y, w);
  EXPECT_EQ(zero.lhs, 0.0);
  EXPECT_TRUE(zero.holds);
}

TEST(Nnlema, SeededSweep) {
  Rng rng = substream(45, 0);
  for (int i = 0; i < 20; ++i) {
    const auto t = make(random_matrix(rng, 2, 3), i % 2 ? 1.0 : 2.0, i % 3 ? 3.0 : kInfinity);
    VectorTuple w(1 + i % 3, 3, SpaceTag::normed_space);
    for (std::size_t j = 0; j < w.size(); ++j) {
      for (std::size_t k = 0; k < 3; ++k) w(j, k) = uniform(rng, -1.0, 1.0);
    }
    const auto r = nnlema_check(t, SeqNormFamily::lp(i % 2 ? 1.5 : 2.0), w, {.restarts = 8}, 3);
    EXPECT_NE(r.status, CheckStatus::violated);
  }
}

TEST(Truncated, MatchesApplyN) {
  Rng rng = substream(46, 0);
  const auto t = make(random_matrix(rng, 2, 3), 2, 2);
  VectorTuple seq({{1, 0, 2}, {0, 0, 0}, {3, -1, 1}, {0, 0, 0}}, SpaceTag::normed_space);
  const auto r = apply_truncated(t, seq);
  ASSERT_EQ(r.size(), 4u);
  const auto head = apply_n(t, seq.prefix(3));
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(vec(r.row(j)), vec(head.row(j)));
  EXPECT_EQ(vec(r.row(3)), (std::vector<double>{0, 0}));
}
