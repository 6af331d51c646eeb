#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "zloch/integer.hpp"

namespace zloch::detail {

// Sparse integer matrix that supports elimination of unit (+-1) pivots.
//
// Eliminating the pivot (r, c) with value eps subtracts eps * A[r, c'] times
// column c from every other column c' and then deletes row r and column c.
// The Smith form of the remaining block equals the Smith form of the original
// matrix with one leading unit removed, and in chain-complex terms the step is
// the reduction of the pair (row cell r, column cell c).
class SparseEliminator {
 public:
  struct Step {
    std::size_t row = 0;
    std::size_t col = 0;
    int sign = 1;
    // Column c as it stood when the pivot was taken (pivot entry included).
    std::vector<std::pair<std::size_t, Integer>> column;
  };

  SparseEliminator(std::size_t rows, std::size_t cols);

  void add(std::size_t row, std::size_t col, const Integer& value);

  // Runs until no unit entry is left. Returns the number of pivots taken.
  std::size_t eliminate_units(std::vector<Step>* record = nullptr);

  std::vector<std::size_t> alive_rows() const;
  std::vector<std::size_t> nonempty_columns() const;
  IntMatrix block(const std::vector<std::size_t>& rows,
                  const std::vector<std::size_t>& cols) const;

 private:
  bool has_unit(std::size_t col) const;
  void refresh_candidate(std::size_t col);
  void pivot(std::size_t row, std::size_t col, std::vector<Step>* record);

  std::vector<std::map<std::size_t, Integer>> cols_;
  std::vector<std::set<std::size_t>> rows_;
  std::vector<bool> row_alive_;
  std::vector<bool> col_alive_;
  // (column size, column) for live columns that contain a unit entry.
  std::set<std::pair<std::size_t, std::size_t>> candidates_;
  std::vector<std::size_t> candidate_key_;
};

}  // namespace zloch::detail
