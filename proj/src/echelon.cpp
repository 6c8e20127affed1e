#include "relfree/echelon.hpp"

#include <algorithm>

namespace relfree {

void Echelon::reduce(std::vector<std::uint32_t>& row) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::uint32_t c = row[pivots_[r]];
    if (c == 0) continue;
    const auto& basis = rows_[r];
    for (std::size_t j = pivots_[r]; j < width_; ++j) {
      if (basis[j] != 0)
        row[j] = field_.sub(row[j], field_.mul(c, basis[j]));
    }
  }
}

bool Echelon::insert(std::vector<std::uint32_t> row) {
  if (row.size() != width_) throw ArgumentError("row width mismatch");
  reduce(row);
  std::size_t pivot = width_;
  for (std::size_t j = 0; j < width_; ++j) {
    if (row[j] != 0) {
      pivot = j;
      break;
    }
  }
  if (pivot == width_) return false;

  std::uint32_t inv = field_.inv(row[pivot]);
  for (std::size_t j = pivot; j < width_; ++j)
    if (row[j] != 0) row[j] = field_.mul(row[j], inv);

  // Eliminate the new pivot column from existing rows.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::uint32_t c = rows_[r][pivot];
    if (c == 0) continue;
    for (std::size_t j = pivot; j < width_; ++j)
      if (row[j] != 0)
        rows_[r][j] = field_.sub(rows_[r][j], field_.mul(c, row[j]));
  }

  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
  pivots_.insert(pos, pivot);
  rows_.insert(rows_.begin() + static_cast<long>(idx), std::move(row));
  return true;
}

bool Echelon::contains(std::vector<std::uint32_t> row) const {
  if (row.size() != width_) throw ArgumentError("row width mismatch");
  reduce(row);
  return std::all_of(row.begin(), row.end(),
                     [](std::uint32_t v) { return v == 0; });
}

void Echelon::merge(const Echelon& other) {
  if (other.field_ != field_ || other.width_ != width_)
    throw ArgumentError("merging incompatible echelon accumulators");
  for (const auto& row : other.rows_) insert(row);
}

}  // namespace relfree
