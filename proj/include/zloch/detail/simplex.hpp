#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace zloch::detail {

// min cost . x  subject to  rows x = rhs, x >= 0.
template <class T>
struct LinearProgram {
  std::size_t variables = 0;
  std::vector<std::vector<std::pair<std::size_t, T>>> rows;
  std::vector<T> rhs;
  std::vector<T> cost;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class T>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  T value{};
  std::vector<T> x;
  long long pivots = 0;
};

// Dense two-phase primal simplex in exact arithmetic. Entering columns follow
// Dantzig's rule until a run of degenerate pivots, then Bland's rule, which
// cannot cycle. Leaving rows break ratio ties by smallest basic index.
template <class T>
LpSolution<T> solve_lp(const LinearProgram<T>& lp) {
  const std::size_t m = lp.rows.size();
  const std::size_t n = lp.variables;
  const std::size_t width = n + m + 1;  // originals, artificials, rhs
  const std::size_t rhs = n + m;
  std::vector<std::vector<T>> tab(m, std::vector<T>(width, T(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = lp.rhs[i] < T(0);
    for (const auto& [j, a] : lp.rows[i]) tab[i][j] += flip ? -a : a;
    tab[i][rhs] = flip ? -lp.rhs[i] : lp.rhs[i];
    tab[i][n + i] = T(1);
    basis[i] = n + i;
  }
  LpSolution<T> out;
  std::vector<T> z(width, T(0));
  std::vector<std::size_t> nz;

  auto pivot = [&](std::size_t r, std::size_t c) {
    ++out.pivots;
    const T inv = T(1) / tab[r][c];
    nz.clear();
    for (std::size_t j = 0; j < width; ++j) {
      if (tab[r][j] != T(0)) {
        tab[r][j] *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<T>& row) {
      const T f = row[c];
      if (f == T(0)) return;
      for (std::size_t j : nz) row[j] -= f * tab[r][j];
    };
    for (std::size_t i = 0; i < m; ++i) {
      if (i != r) eliminate(tab[i]);
    }
    eliminate(z);
    basis[r] = c;
  };

  // Runs the simplex on the objective row `z` over columns [0, limit).
  auto run = [&](std::size_t limit) -> bool {
    int degenerate = 0;
    bool bland = false;
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (!(z[j] < T(0))) continue;
        if (enter == limit || (!bland && z[j] < z[enter])) enter = j;
        if (bland) break;
      }
      if (enter == limit) return true;
      std::size_t leave = m;
      T best{};
      for (std::size_t i = 0; i < m; ++i) {
        if (!(tab[i][enter] > T(0))) continue;
        const T ratio = tab[i][rhs] / tab[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return false;
      if (best == T(0)) {
        if (++degenerate > 30) bland = true;
      } else {
        degenerate = 0;
      }
      pivot(leave, enter);
    }
  };

  // Phase 1: minimize the sum of artificials.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) z[j] -= tab[i][j];
    z[rhs] -= tab[i][rhs];
  }
  run(n + m);
  if (z[rhs] != T(0)) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  // Drive zero-level artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (tab[i][j] != T(0)) {
        pivot(i, j);
        break;
      }
    }
  }
  // Phase 2.
  std::fill(z.begin(), z.end(), T(0));
  for (std::size_t j = 0; j < n; ++j) z[j] = lp.cost[j];
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= n) continue;
    const T cb = lp.cost[basis[i]];
    if (cb == T(0)) continue;
    for (std::size_t j = 0; j < width; ++j) {
      if (tab[i][j] != T(0)) z[j] -= cb * tab[i][j];
    }
  }
  if (!run(n)) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.x.assign(n, T(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) out.x[basis[i]] = tab[i][rhs];
  }
  out.value = -z[rhs];
  return out;
}

}  // namespace zloch::detail
