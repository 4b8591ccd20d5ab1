#include "latticecalc/operators.hpp"

#include <algorithm>
#include <cmath>

#include "latticecalc/error.hpp"
#include "latticecalc/mixed_norms.hpp"

namespace latcalc {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw InputError("matrix must be nonempty");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) {
      throw InputError("matrix row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                       " entries, expected " + std::to_string(m.cols_));
    }
    for (std::size_t j = 0; j < m.cols_; ++j) {
      if (!std::isfinite(rows[i][j])) throw InputError("matrix entry is not finite");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Matrix Matrix::scaled(double lambda) const {
  Matrix m = *this;
  for (auto& x : m.data_) x *= lambda;
  return m;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

OperatorInstance::OperatorInstance(Matrix m, FiniteLattice dom, FiniteLattice cod, std::string l)
    : matrix(std::move(m)), domain(std::move(dom)), codomain(std::move(cod)), label(std::move(l)) {
  if (matrix.cols() != domain.dim() || matrix.rows() != codomain.dim()) {
    throw InputError("operator matrix is " + std::to_string(matrix.rows()) + "x" +
                     std::to_string(matrix.cols()) + " but maps R^" +
                     std::to_string(domain.dim()) + " -> R^" + std::to_string(codomain.dim()));
  }
}

OperatorInstance OperatorInstance::scaled(double lambda) const {
  return OperatorInstance(matrix.scaled(lambda), domain, codomain, label);
}

OperatorInstance identity_operator(const FiniteLattice& space) {
  return OperatorInstance(Matrix::identity(space.dim()), space, space, "id");
}

std::vector<double> apply(const OperatorInstance& t, std::span<const double> w) {
  t.domain.check_dim(w, "apply");
  std::vector<double> out(t.matrix.rows(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = pairing(t.matrix.row(i), w);
  return out;
}

VectorTuple apply_n(const OperatorInstance& t, const VectorTuple& w) {
  if (w.dim() != t.domain.dim()) {
    throw InputError("apply_n: tuple rows have length " + std::to_string(w.dim()) +
                     ", operator domain is R^" + std::to_string(t.domain.dim()));
  }
  VectorTuple out(w.size(), t.codomain.dim(), SpaceTag::lattice);
  for (std::size_t j = 0; j < w.size(); ++j) {
    const auto r = apply(t, w.row(j));
    std::copy(r.begin(), r.end(), out.row(j).begin());
  }
  return out;
}

OperatorInstance transpose(const OperatorInstance& t, const DualMethod& numeric_method) {
  return OperatorInstance(t.matrix.transposed(), t.codomain.dual(numeric_method),
                          t.domain.dual(numeric_method),
                          t.label.empty() ? std::string() : t.label + "*");
}

OperatorNormEstimate operator_norm(const OperatorInstance& t, const AscentOptions& options,
                                   std::uint64_t seed, std::span<const std::vector<double>> starts) {
  const auto objective = [&](std::span<const double> w) {
    const double den = t.domain.norm(w);
    return den > 0.0 ? t.codomain.norm(apply(t, w)) / den : -kInfinity;
  };
  const AscentResult best = maximize_on_sphere(objective, t.domain.dim(), options, seed, starts);
  OperatorNormEstimate est;
  est.value = std::max(best.value, 0.0);
  est.witness = best.argmax;
  est.converged = best.converged;
  return est;
}

NnlemaReport nnlema_check(const OperatorInstance& t, const SeqNormFamily& y, const VectorTuple& w,
                          const AscentOptions& options, std::uint64_t seed) {
  const VectorTuple tw = apply_n(t, w);
  std::vector<double> image_norms(tw.size());
  for (std::size_t j = 0; j < tw.size(); ++j) image_norms[j] = t.codomain.norm(tw.row(j));

  NnlemaReport r;
  r.lhs = y.norm(image_norms);
  const double domain_norm = norm_EnY(t.domain, y, w);

  std::vector<std::vector<double>> starts;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const auto row = w.row(j);
    if (std::any_of(row.begin(), row.end(), [](double v) { return v != 0.0; })) {
      starts.emplace_back(row.begin(), row.end());
    }
  }
  AscentOptions budget = options;
  for (r.rounds = 1; r.rounds <= 4; ++r.rounds) {
    r.operator_norm = operator_norm(t, budget, seed, starts).value;
    r.rhs = r.operator_norm * domain_norm;
    if (r.lhs <= r.rhs * (1.0 + 1e-6)) {
      r.status = CheckStatus::holds;
      r.holds = true;
      return r;
    }
    budget = budget.doubled();
  }
  r.rounds = 4;
  r.status = CheckStatus::inconclusive;
  return r;
}

VectorTuple apply_truncated(const OperatorInstance& t, const VectorTuple& seq) {
  const std::size_t support = seq.support_length();
  VectorTuple out(seq.size(), t.codomain.dim(), SpaceTag::lattice);
  if (support == 0) return out;
  const VectorTuple head = apply_n(t, seq.prefix(support));
  for (std::size_t j = 0; j < support; ++j) {
    std::copy(head.row(j).begin(), head.row(j).end(), out.row(j).begin());
  }
  return out;
}

}  // namespace latcalc
