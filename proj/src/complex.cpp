#include "zloch/complex.hpp"

#include <map>

#include "zloch/error.hpp"

namespace zloch {

Index ChainComplex::count(int k) const {
  if (k < 0 || k > top_dimension()) return 0;
  return cells[static_cast<Index>(k)];
}

std::vector<long long> ChainComplex::apply_boundary(int k,
                                                    const std::vector<long long>& chain) const {
  if (k < 1 || k > top_dimension()) throw InputError("boundary dimension out of range");
  if (chain.size() != count(k)) throw InputError("chain length does not match cell count");
  std::vector<long long> out(count(k - 1), 0);
  const auto& cols = boundary[static_cast<Index>(k)];
  for (Index j = 0; j < chain.size(); ++j) {
    if (chain[j] == 0) continue;
    for (const auto& [r, v] : cols[j]) out[r] += v * chain[j];
  }
  return out;
}

bool ChainComplex::boundary_squares_to_zero() const {
  for (int k = 2; k <= top_dimension(); ++k) {
    const auto& outer = boundary[static_cast<Index>(k)];
    const auto& inner = boundary[static_cast<Index>(k - 1)];
    for (const auto& col : outer) {
      std::map<Index, long long> acc;
      for (const auto& [r, v] : col) {
        for (const auto& [rr, vv] : inner[r]) acc[rr] += v * vv;
      }
      for (const auto& [rr, total] : acc) {
        if (total != 0) return false;
      }
    }
  }
  return true;
}

namespace {

// Merges duplicate rows so that tiny lattices (N = 1, 2) stay correct.
SparseColumn compact(const std::vector<std::pair<Index, long long>>& raw) {
  std::map<Index, long long> acc;
  for (const auto& [r, v] : raw) acc[r] += v;
  SparseColumn out;
  for (const auto& [r, v] : acc) {
    if (v != 0) out.emplace_back(r, v);
  }
  return out;
}

}  // namespace

ChainComplex torus_complex(const Torus& t) {
  ChainComplex c;
  c.cells = {t.vertex_count(), t.edge_count(), t.plaquette_count(), t.cube_count()};
  c.boundary.resize(4);
  c.boundary[1].resize(t.edge_count());
  for (Index e = 0; e < t.edge_count(); ++e) {
    c.boundary[1][e] = compact({{t.edge_head(e), 1}, {t.edge_tail(e), -1}});
  }
  c.boundary[2].resize(t.plaquette_count());
  for (Index p = 0; p < t.plaquette_count(); ++p) {
    std::vector<std::pair<Index, long long>> raw;
    for (const auto& [e, s] : t.plaquette_boundary(p)) raw.emplace_back(e, s);
    c.boundary[2][p] = compact(raw);
  }
  c.boundary[3].resize(t.cube_count());
  for (Index q = 0; q < t.cube_count(); ++q) {
    std::vector<std::pair<Index, long long>> raw;
    for (const auto& [p, s] : t.cube_boundary(q)) raw.emplace_back(p, s);
    c.boundary[3][q] = compact(raw);
  }
  return c;
}

ChainComplex circle_complex(Index n) {
  if (n < 1) throw InputError("circle needs at least one edge");
  ChainComplex c;
  c.cells = {n, n};
  c.boundary.resize(2);
  c.boundary[1].resize(n);
  for (Index e = 0; e < n; ++e) c.boundary[1][e] = compact({{(e + 1) % n, 1}, {e, -1}});
  return c;
}

ChainComplex surface_complex(int genus) {
  if (genus < 0) throw InputError("genus must be non-negative");
  const Index loops = 2 * static_cast<Index>(genus);
  ChainComplex c;
  if (genus == 0) {
    // Sphere: one vertex and one face attached along a constant map.
    c.cells = {1, 0, 1};
    c.boundary.resize(3);
    c.boundary[2].resize(1);
    return c;
  }
  c.cells = {1, loops, 1};
  c.boundary.resize(3);
  c.boundary[1].resize(loops);  // loop edges have zero boundary
  c.boundary[2].resize(1);      // a b a^-1 b^-1 words cancel
  return c;
}

Index product_cell_id(const ChainComplex& base, Index n, int p, Index s, int q, Index t) {
  // Dimension k = p + q. Cells (k-cell of base) x vertex come first, then
  // ((k-1)-cell of base) x edge.
  const int k = p + q;
  if (q == 0) return t * base.count(k) + s;
  return n * base.count(k) + t * base.count(k - 1) + s;
}

ChainComplex product_with_circle(const ChainComplex& base, Index n) {
  if (n < 1) throw InputError("circle needs at least one edge");
  const int top = base.top_dimension() + 1;
  ChainComplex c;
  c.cells.resize(static_cast<Index>(top) + 1);
  for (int k = 0; k <= top; ++k) {
    c.cells[static_cast<Index>(k)] = n * base.count(k) + n * base.count(k - 1);
  }
  c.boundary.resize(static_cast<Index>(top) + 1);
  for (int k = 1; k <= top; ++k) {
    auto& cols = c.boundary[static_cast<Index>(k)];
    cols.resize(c.cells[static_cast<Index>(k)]);
    // s x vertex_t with dim s = k
    for (Index t = 0; t < n; ++t) {
      for (Index s = 0; s < base.count(k); ++s) {
        std::vector<std::pair<Index, long long>> raw;
        for (const auto& [r, v] : base.boundary[static_cast<Index>(k)][s]) {
          raw.emplace_back(product_cell_id(base, n, k - 1, r, 0, t), v);
        }
        cols[product_cell_id(base, n, k, s, 0, t)] = compact(raw);
      }
    }
    // s x edge_t with dim s = k - 1; d(edge_t) = vertex_{t+1} - vertex_t
    const long long sign = (k - 1) % 2 == 0 ? 1 : -1;
    for (Index t = 0; t < n; ++t) {
      for (Index s = 0; s < base.count(k - 1); ++s) {
        std::vector<std::pair<Index, long long>> raw;
        if (k - 1 >= 1) {
          for (const auto& [r, v] : base.boundary[static_cast<Index>(k - 1)][s]) {
            raw.emplace_back(product_cell_id(base, n, k - 2, r, 1, t), v);
          }
        }
        raw.emplace_back(product_cell_id(base, n, k - 1, s, 0, (t + 1) % n), sign);
        raw.emplace_back(product_cell_id(base, n, k - 1, s, 0, t), -sign);
        cols[product_cell_id(base, n, k - 1, s, 1, t)] = compact(raw);
      }
    }
  }
  return c;
}

}  // namespace zloch
