#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "zloch/torus.hpp"

namespace zloch {

using SparseColumn = std::vector<std::pair<Index, long long>>;

// Finite chain complex with integer boundary matrices stored by columns.
// boundary[k][j] lists the (k-1)-cells in the boundary of k-cell j; boundary[0]
// is empty.
struct ChainComplex {
  std::vector<Index> cells;
  std::vector<std::vector<SparseColumn>> boundary;

  int top_dimension() const { return static_cast<int>(cells.size()) - 1; }
  Index count(int k) const;

  // Applies the boundary map to a k-chain.
  std::vector<long long> apply_boundary(int k, const std::vector<long long>& chain) const;

  // Exact check of d_{k-1} d_k = 0 for every k.
  bool boundary_squares_to_zero() const;
};

ChainComplex torus_complex(const Torus& torus);

// Cycle graph with n vertices and n edges (a circle).
ChainComplex circle_complex(Index n);

// Minimal CW structure on the closed orientable surface of genus g: one
// vertex, 2g loop edges a_1, b_1, ..., a_g, b_g and one face whose boundary
// word a_1 b_1 a_1^-1 b_1^-1 ... has zero cellular boundary.
ChainComplex surface_complex(int genus);

// Product of a complex with a circle subdivided into n edges, with
// d(s x t) = ds x t + (-1)^{dim s} s x dt. Cells of dimension k are ordered
// first by the dimension of the base factor (k, then k-1), then by circle
// index, then by base cell id.
ChainComplex product_with_circle(const ChainComplex& base, Index n);

// Id of the product cell (base cell s of dimension p) x (circle cell of
// dimension q at index t).
Index product_cell_id(const ChainComplex& base, Index n, int p, Index s, int q, Index t);

}  // namespace zloch
