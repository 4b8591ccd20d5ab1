#include "latticecalc/vector_tuple.hpp"

#include <algorithm>
#include <string>

#include "latticecalc/error.hpp"

namespace latcalc {

VectorTuple::VectorTuple(std::size_t n, std::size_t dim, SpaceTag tag)
    : n_(n), dim_(dim), tag_(tag), data_(n * dim, 0.0) {}

VectorTuple::VectorTuple(const std::vector<std::vector<double>>& rows, SpaceTag tag) : tag_(tag) {
  if (rows.empty()) throw InputError("tuple needs at least one row");
  n_ = rows.size();
  dim_ = rows.front().size();
  if (dim_ == 0) throw InputError("tuple rows must be nonempty");
  data_.reserve(n_ * dim_);
  for (std::size_t j = 0; j < n_; ++j) {
    if (rows[j].size() != dim_) {
      throw InputError("tuple row " + std::to_string(j) + " has length " +
                       std::to_string(rows[j].size()) + ", expected " + std::to_string(dim_));
    }
    data_.insert(data_.end(), rows[j].begin(), rows[j].end());
  }
}

VectorTuple VectorTuple::from_flat(std::size_t n, std::size_t dim, std::span<const double> values,
                                   SpaceTag tag) {
  if (values.size() != n * dim) throw InputError("flat tuple data has the wrong size");
  VectorTuple t(n, dim, tag);
  t.data_.assign(values.begin(), values.end());
  return t;
}

std::vector<double> VectorTuple::column(std::size_t i) const {
  std::vector<double> c(n_);
  for (std::size_t j = 0; j < n_; ++j) c[j] = data_[j * dim_ + i];
  return c;
}

VectorTuple VectorTuple::padded(std::size_t extra_rows) const {
  VectorTuple t(n_ + extra_rows, dim_, tag_);
  std::copy(data_.begin(), data_.end(), t.data_.begin());
  return t;
}

VectorTuple VectorTuple::prefix(std::size_t k) const {
  if (k > n_) throw InputError("prefix longer than tuple");
  VectorTuple t(k, dim_, tag_);
  std::copy(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(k * dim_), t.data_.begin());
  return t;
}

VectorTuple VectorTuple::tail_from(std::size_t k) const {
  VectorTuple t = *this;
  for (std::size_t i = 0; i < std::min(k, n_) * dim_; ++i) t.data_[i] = 0.0;
  return t;
}

std::size_t VectorTuple::support_length() const {
  for (std::size_t j = n_; j > 0; --j) {
    for (double x : row(j - 1)) {
      if (x != 0.0) return j;
    }
  }
  return 0;
}

VectorTuple VectorTuple::operator+(const VectorTuple& other) const {
  if (other.n_ != n_ || other.dim_ != dim_) throw InputError("tuple shapes differ");
  VectorTuple t = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) t.data_[i] += other.data_[i];
  return t;
}

VectorTuple VectorTuple::scaled(double lambda) const {
  VectorTuple t = *this;
  for (auto& x : t.data_) x *= lambda;
  return t;
}

}  // namespace latcalc
