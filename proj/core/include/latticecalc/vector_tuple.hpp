#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace latcalc {

enum class SpaceTag { normed_space, lattice };

/// An n-tuple (x_1, ..., x_n) of vectors in R^dim, stored as an n x dim
/// row-major table. Also serves as an eventually-zero sequence whose entries
/// past row n are zero.
class VectorTuple {
 public:
  VectorTuple() = default;
  VectorTuple(std::size_t n, std::size_t dim, SpaceTag tag = SpaceTag::lattice);
  /// Throws InputError when rows have different lengths or there are none.
  explicit VectorTuple(const std::vector<std::vector<double>>& rows,
                       SpaceTag tag = SpaceTag::lattice);
  static VectorTuple from_flat(std::size_t n, std::size_t dim, std::span<const double> values,
                               SpaceTag tag = SpaceTag::lattice);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }
  SpaceTag tag() const { return tag_; }
  bool empty() const { return n_ == 0; }

  std::span<const double> row(std::size_t j) const { return {data_.data() + j * dim_, dim_}; }
  std::span<double> row(std::size_t j) { return {data_.data() + j * dim_, dim_}; }
  double operator()(std::size_t j, std::size_t i) const { return data_[j * dim_ + i]; }
  double& operator()(std::size_t j, std::size_t i) { return data_[j * dim_ + i]; }

  /// (x_1[i], ..., x_n[i]).
  std::vector<double> column(std::size_t i) const;
  std::span<const double> flat() const { return data_; }

  /// The tuple with a zero row appended.
  VectorTuple padded(std::size_t extra_rows = 1) const;
  /// First k rows.
  VectorTuple prefix(std::size_t k) const;
  /// Same length, rows before `k` zeroed: the tail {x_j}_{j >= k} in place.
  VectorTuple tail_from(std::size_t k) const;
  /// Index one past the last nonzero row (0 for the zero tuple).
  std::size_t support_length() const;

  VectorTuple operator+(const VectorTuple& other) const;
  VectorTuple scaled(double lambda) const;

  friend bool operator==(const VectorTuple&, const VectorTuple&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  SpaceTag tag_ = SpaceTag::lattice;
  std::vector<double> data_;
};

}  // namespace latcalc
