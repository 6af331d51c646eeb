#include "zloch/detail/sparse_elimination.hpp"

#include <limits>

#include "zloch/error.hpp"

namespace zloch::detail {

namespace {
constexpr std::size_t kNoKey = std::numeric_limits<std::size_t>::max();
}

SparseEliminator::SparseEliminator(std::size_t rows, std::size_t cols)
    : cols_(cols),
      rows_(rows),
      row_alive_(rows, true),
      col_alive_(cols, true),
      candidate_key_(cols, kNoKey) {}

void SparseEliminator::add(std::size_t row, std::size_t col, const Integer& value) {
  if (row >= rows_.size() || col >= cols_.size()) {
    throw InternalError("sparse entry out of range");
  }
  if (value == 0) return;
  Integer& slot = cols_[col][row];
  slot += value;
  if (slot == 0) {
    cols_[col].erase(row);
    rows_[row].erase(col);
  } else {
    rows_[row].insert(col);
  }
  refresh_candidate(col);
}

bool SparseEliminator::has_unit(std::size_t col) const {
  for (const auto& [r, v] : cols_[col]) {
    if (v == 1 || v == -1) return true;
  }
  return false;
}

void SparseEliminator::refresh_candidate(std::size_t col) {
  if (candidate_key_[col] != kNoKey) {
    candidates_.erase({candidate_key_[col], col});
    candidate_key_[col] = kNoKey;
  }
  if (col_alive_[col] && has_unit(col)) {
    candidate_key_[col] = cols_[col].size();
    candidates_.insert({candidate_key_[col], col});
  }
}

std::size_t SparseEliminator::eliminate_units(std::vector<Step>* record) {
  std::size_t pivots = 0;
  while (!candidates_.empty()) {
    const std::size_t col = candidates_.begin()->second;
    // Among the unit entries of the column, the sparsest row (then lowest id).
    std::size_t best_row = 0;
    std::size_t best_size = kNoKey;
    for (const auto& [r, v] : cols_[col]) {
      if ((v == 1 || v == -1) && rows_[r].size() < best_size) {
        best_size = rows_[r].size();
        best_row = r;
      }
    }
    pivot(best_row, col, record);
    ++pivots;
  }
  return pivots;
}

void SparseEliminator::pivot(std::size_t row, std::size_t col, std::vector<Step>* record) {
  const Integer eps = cols_[col].at(row);
  const auto& pivot_col = cols_[col];
  std::vector<std::size_t> others;
  for (std::size_t c : rows_[row]) {
    if (c != col) others.push_back(c);
  }
  for (std::size_t c : others) {
    const Integer factor = eps * cols_[c].at(row);
    for (const auto& [r, v] : pivot_col) {
      Integer& slot = cols_[c][r];
      slot -= factor * v;
      if (slot == 0) {
        cols_[c].erase(r);
        rows_[r].erase(c);
      } else {
        rows_[r].insert(c);
      }
    }
  }
  if (record) {
    Step step;
    step.row = row;
    step.col = col;
    step.sign = eps == 1 ? 1 : -1;
    step.column.assign(pivot_col.begin(), pivot_col.end());
    record->push_back(std::move(step));
  }
  for (const auto& [r, v] : pivot_col) rows_[r].erase(col);
  cols_[col].clear();
  col_alive_[col] = false;
  row_alive_[row] = false;
  refresh_candidate(col);
  for (std::size_t c : others) refresh_candidate(c);
}

std::vector<std::size_t> SparseEliminator::alive_rows() const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < row_alive_.size(); ++r) {
    if (row_alive_[r]) out.push_back(r);
  }
  return out;
}

std::vector<std::size_t> SparseEliminator::nonempty_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cols_.size(); ++c) {
    if (col_alive_[c] && !cols_[c].empty()) out.push_back(c);
  }
  return out;
}

IntMatrix SparseEliminator::block(const std::vector<std::size_t>& rows,
                                  const std::vector<std::size_t>& cols) const {
  std::vector<std::size_t> position(rows_.size(), kNoKey);
  for (std::size_t i = 0; i < rows.size(); ++i) position[rows[i]] = i;
  IntMatrix out(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [r, v] : cols_[cols[j]]) {
      if (position[r] != kNoKey) out(position[r], j) = v;
    }
  }
  return out;
}

}  // namespace zloch::detail
