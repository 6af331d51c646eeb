#include "zloch/smith.hpp"

#include <algorithm>
#include <utility>

#include "zloch/detail/sparse_elimination.hpp"
#include "zloch/error.hpp"

namespace zloch {

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> out;
  const std::size_t n = std::min(D.rows(), D.cols());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(D(i, i));
  return out;
}

namespace {

// Quotient rounded toward zero; the remainder then has smaller magnitude than
// the divisor, which is all the Euclidean steps need.
Integer trunc_div(const Integer& a, const Integer& b) { return a / b; }

struct Reducer {
  IntMatrix& a;
  IntMatrix& u;
  IntMatrix& v;

  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
  }
  void add_row(std::size_t target, std::size_t source, const Integer& f) {
    a.add_row_multiple(target, source, f);
    u.add_row_multiple(target, source, f);
  }
  void add_col(std::size_t target, std::size_t source, const Integer& f) {
    a.add_col_multiple(target, source, f);
    v.add_col_multiple(target, source, f);
  }
  void negate_row(std::size_t r) {
    a.negate_row(r);
    u.negate_row(r);
  }
};

bool smaller_magnitude(const Integer& x, const Integer& best, bool have_best) {
  return !have_best || abs(x) < abs(best);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm out;
  out.D = m;
  out.U = IntMatrix::identity(m.rows());
  out.V = IntMatrix::identity(m.cols());
  Reducer red{out.D, out.U, out.V};
  IntMatrix& a = out.D;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t steps = std::min(rows, cols);

  for (std::size_t t = 0; t < steps; ++t) {
    // Smallest non-zero entry of the active block, ties by (row, column).
    bool found = false;
    std::size_t pr = 0, pc = 0;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a(i, j) != 0 && smaller_magnitude(a(i, j), a(pr, pc), found)) {
          found = true;
          pr = i;
          pc = j;
        }
      }
    }
    if (!found) break;
    red.swap_rows(t, pr);
    red.swap_cols(t, pc);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        red.add_row(i, t, -trunc_div(a(i, t), a(t, t)));
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        red.add_col(j, t, -trunc_div(a(t, j), a(t, t)));
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // Move the smallest remainder in row t / column t onto the diagonal.
        std::size_t br = t, bc = t;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (a(i, t) != 0 && abs(a(i, t)) < abs(a(br, bc))) {
            br = i;
            bc = t;
          }
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a(t, j) != 0 && abs(a(t, j)) < abs(a(br, bc))) {
            br = t;
            bc = j;
          }
        }
        red.swap_rows(t, br);
        red.swap_cols(t, bc);
        continue;
      }
      // Divisibility: fold in the first row whose entries the pivot misses.
      bool folded = false;
      for (std::size_t i = t + 1; i < rows && !folded; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a(i, j) % a(t, t) != 0) {
            red.add_row(t, i, 1);
            folded = true;
            break;
          }
        }
      }
      if (!folded) break;
    }
    if (a(t, t) < 0) red.negate_row(t);
    out.rank = t + 1;
  }
  return out;
}

InvariantFactors sparse_invariant_factors(
    std::size_t rows,
    const std::vector<std::vector<std::pair<std::size_t, long long>>>& columns) {
  detail::SparseEliminator elim(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& [r, value] : columns[c]) elim.add(r, c, Integer(value));
  }
  InvariantFactors out;
  out.rank = elim.eliminate_units();
  IntMatrix rest = elim.block(elim.alive_rows(), elim.nonempty_columns());
  SmithForm snf = smith_normal_form(rest);
  out.rank += snf.rank;
  for (std::size_t i = 0; i < snf.rank; ++i) {
    if (snf.D(i, i) > 1) out.nontrivial.push_back(snf.D(i, i));
  }
  return out;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on column c among rows r.., leaving at most one non-zero.
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (a(i, c) != 0 && (best == rows || abs(a(i, c)) < abs(a(best, c)))) best = i;
      }
      if (best == rows) break;
      a.swap_rows(r, best);
      bool others = false;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        a.add_row_multiple(i, r, -trunc_div(a(i, c), a(r, c)));
        if (a(i, c) != 0) others = true;
      }
      if (!others) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) a.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = a(i, c) / a(r, c);
      if (a(i, c) - q * a(r, c) < 0) q -= 1;
      a.add_row_multiple(i, r, -q);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
  }
  return out;
}

std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a,
                                                  const std::vector<Integer>& b) {
  if (b.size() != a.rows()) throw InputError("right-hand side size mismatch");
  SmithForm snf = smith_normal_form(a);
  std::vector<Integer> ub = snf.U.multiply(b);
  std::vector<Integer> y(a.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < snf.rank) {
      if (ub[i] % snf.D(i, i) != 0) return std::nullopt;
      y[i] = ub[i] / snf.D(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V.multiply(y);
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InternalError("inverse of a non-square matrix");
  SmithForm snf = smith_normal_form(m);
  if (!(snf.D == IntMatrix::identity(m.rows()))) {
    throw InternalError("matrix is not unimodular");
  }
  // U M V = I  =>  M^{-1} = V U
  return snf.V * snf.U;
}

}  // namespace zloch
