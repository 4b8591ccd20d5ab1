#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "latticecalc/finite_lattice.hpp"
#include "latticecalc/optimize.hpp"
#include "latticecalc/vector_tuple.hpp"

namespace latcalc {

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  /// Throws InputError on ragged or empty input.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> flat() const { return data_; }

  Matrix transposed() const;
  Matrix scaled(double lambda) const;
  std::vector<std::vector<double>> to_rows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// A linear map T: E = R^d -> X = R^m given by an m x d matrix, with the norm
/// of E and the lattice X.
struct OperatorInstance {
  OperatorInstance(Matrix matrix, FiniteLattice domain, FiniteLattice codomain,
                   std::string label = {});

  Matrix matrix;
  FiniteLattice domain;
  FiniteLattice codomain;
  std::string label;

  OperatorInstance scaled(double lambda) const;
};

/// Identity on `space`, viewed as a map from `space` to itself.
OperatorInstance identity_operator(const FiniteLattice& space);

std::vector<double> apply(const OperatorInstance& t, std::span<const double> w);

/// T_n(w_1, ..., w_n) = (T w_1, ..., T w_n).
VectorTuple apply_n(const OperatorInstance& t, const VectorTuple& w);

/// T* : X* -> E*, matrix transposed, norms replaced by their duals.
OperatorInstance transpose(const OperatorInstance& t,
                           const DualMethod& numeric_method = DualMethod::numeric());

struct OperatorNormEstimate {
  double value = 0.0;  // lower bound, attained by `witness`
  std::vector<double> witness;
  bool converged = false;
};

/// ||T|| = sup ||Tw||_X / ||w||_E by sphere ascent; `starts` seed the search.
OperatorNormEstimate operator_norm(const OperatorInstance& t, const AscentOptions& options,
                                   std::uint64_t seed,
                                   std::span<const std::vector<double>> starts = {});

enum class CheckStatus { holds, violated, inconclusive };

struct NnlemaReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double operator_norm = 0.0;
  int rounds = 0;
  CheckStatus status = CheckStatus::inconclusive;
  bool holds = false;
};

/// lhs = ||(||Tw_1||_X, ..., ||Tw_n||_X)||_Y, rhs = ||T|| ||w||_{E^n,Y}. The
/// rows of w start the norm search and the budget doubles (up to four
/// rounds) while the check fails, so a failure that survives is reported as
/// inconclusive rather than as a violation.
NnlemaReport nnlema_check(const OperatorInstance& t, const SeqNormFamily& y, const VectorTuple& w,
                          const AscentOptions& options = {}, std::uint64_t seed = 0);

/// The associated operator on an eventually-zero sequence: T_n applied up to
/// the last nonzero row, zero tail kept.
VectorTuple apply_truncated(const OperatorInstance& t, const VectorTuple& seq);

}  // namespace latcalc
