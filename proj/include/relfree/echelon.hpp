#pragma once

#include <cstdint>
#include <vector>

#include "relfree/fp.hpp"

namespace relfree {

// Reduced row echelon accumulator over F_p with dense rows. Rows are kept
// fully reduced (unit pivots, zeros above and below) and sorted by pivot
// column, so two accumulators span the same subspace iff their row lists are
// equal. Insertion order never affects the final state.
class Echelon {
 public:
  Echelon(PrimeField field, std::size_t width)
      : field_(field), width_(width) {}

  const PrimeField& field() const { return field_; }
  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<std::uint32_t>>& rows() const { return rows_; }

  // Reduces `row` against the basis; inserts the remainder if nonzero.
  // Returns true when the rank grew.
  bool insert(std::vector<std::uint32_t> row);

  // True iff the vector lies in the current row space.
  bool contains(std::vector<std::uint32_t> row) const;

  // Merges another accumulator of the same shape into this one.
  void merge(const Echelon& other);

  bool operator==(const Echelon& o) const {
    return field_ == o.field_ && width_ == o.width_ && rows_ == o.rows_;
  }
  bool operator!=(const Echelon& o) const { return !(*this == o); }

 private:
  void reduce(std::vector<std::uint32_t>& row) const;

  PrimeField field_;
  std::size_t width_;
  std::vector<std::vector<std::uint32_t>> rows_;  // sorted by pivot column
  std::vector<std::size_t> pivots_;               // pivot column per row
};

}  // namespace relfree
