#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "zloch/integer.hpp"

namespace zloch {

// U * M * V == D with U, V unimodular and D diagonal, d_1 | d_2 | ... and all
// diagonal entries non-negative. `rank` counts the non-zero diagonal entries,
// which occupy the leading positions.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const;
};

// Pivot rule: the entry of smallest absolute value in the active block, ties
// broken by (row, column) lexicographic order. The output is a function of
// the input matrix alone.
SmithForm smith_normal_form(const IntMatrix& m);

// Invariant factors of a sparse matrix given as columns of (row, value)
// pairs. Unit pivots are eliminated sparsely first; the remainder goes through
// the dense algorithm.
struct InvariantFactors {
  std::size_t rank = 0;
  std::vector<Integer> nontrivial;  // factors > 1, ascending
};
InvariantFactors sparse_invariant_factors(
    std::size_t rows,
    const std::vector<std::vector<std::pair<std::size_t, long long>>>& columns);

// Row-style Hermite normal form of the lattice spanned by the rows of `m`:
// returns the non-zero rows in echelon form with positive pivots and entries
// above each pivot reduced into [0, pivot).
IntMatrix hermite_normal_form(const IntMatrix& m);

// Integer solution x of A x = b, if one exists.
std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a,
                                                  const std::vector<Integer>& b);

// Inverse of a unimodular matrix; throws InternalError otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace zloch
