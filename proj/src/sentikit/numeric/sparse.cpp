#include "sentikit/numeric/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "sentikit/common/error.hpp"

namespace sentikit::numeric {

SparseVector SparseVector::from_entries(std::size_t dimension, std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  SparseVector out(dimension);
  for (const Entry& e : entries) {
    require(e.index < dimension, "sparse index out of range");
    if (!out.entries_.empty() && out.entries_.back().index == e.index) {
      out.entries_.back().value += e.value;
    } else {
      out.entries_.push_back(e);
    }
  }
  std::erase_if(out.entries_, [](const Entry& e) { return e.value == 0.0; });
  return out;
}

double SparseVector::get(std::uint32_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::uint32_t i) { return e.index < i; });
  return (it != entries_.end() && it->index == index) ? it->value : 0.0;
}

double SparseVector::dot(const SparseVector& other) const {
  double total = 0.0;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->index < b->index) {
      ++a;
    } else if (b->index < a->index) {
      ++b;
    } else {
      total += a->value * b->value;
      ++a;
      ++b;
    }
  }
  return total;
}

double SparseVector::dot_dense(const double* dense) const {
  double total = 0.0;
  for (const Entry& e : entries_) total += e.value * dense[e.index];
  return total;
}

double SparseVector::squared_norm() const {
  double total = 0.0;
  for (const Entry& e : entries_) total += e.value * e.value;
  return total;
}

double SparseVector::norm() const { return std::sqrt(squared_norm()); }

void SparseVector::scale(double factor) {
  if (factor == 0.0) {
    entries_.clear();
    return;
  }
  for (Entry& e : entries_) e.value *= factor;
}

void SparseRowMatrix::push_back(SparseVector row) {
  require(row.dimension() == cols_, "sparse row dimension does not match matrix");
  rows_.push_back(std::move(row));
}

}  // namespace sentikit::numeric
