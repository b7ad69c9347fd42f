#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace sentikit::numeric {

/// Sorted (index, value) pairs with strictly increasing indices below
/// `dimension` and no stored zeros.
class SparseVector {
 public:
  struct Entry {
    std::uint32_t index;
    double value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  SparseVector() = default;
  explicit SparseVector(std::size_t dimension) : dimension_(dimension) {}

  /// Builds from unsorted entries; duplicates are summed and zeros dropped.
  static SparseVector from_entries(std::size_t dimension, std::vector<Entry> entries);

  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Value at `index`, zero if absent.
  double get(std::uint32_t index) const;

  double dot(const SparseVector& other) const;
  double dot_dense(const double* dense) const;
  double squared_norm() const;
  double norm() const;

  /// Scales in place. A zero factor empties the vector.
  void scale(double factor);

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<Entry> entries_;
};

/// Rows of SparseVector sharing one dimension.
class SparseRowMatrix {
 public:
  SparseRowMatrix() = default;
  explicit SparseRowMatrix(std::size_t cols) : cols_(cols) {}

  void push_back(SparseVector row);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const SparseVector& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<SparseVector>& row_list() const noexcept { return rows_; }

 private:
  std::size_t cols_ = 0;
  std::vector<SparseVector> rows_;
};

}  // namespace sentikit::numeric
