#pragma once

#include <array>
#include <cstddef>
#include <utility>

namespace zloch {

using Index = std::size_t;
using Coord = std::array<int, 3>;

// Cell enumeration of the periodic cubical lattice with dims (N1, N2, N3).
//
//   vertex  v = x + N1 * (y + N2 * z)        (row-major z, y, x)
//   edge    e(v, d) = 3 v + d                runs from v to v + e_d
//   plaq    p(v, d) = 3 v + d                normal d, spanned by e_a, e_b
//                                             with a = d+1, b = d+2 (mod 3)
//   cube    c(v) = v                         [v, v + (1,1,1)]
//
// Orientation: p(v, d) is oriented by (e_a, e_b), so (e_a, e_b, e_d) is the
// right-handed frame. The dual edge through p(u, d) runs from cube u - e_d to
// cube u, i.e. along +e_d, and crosses p(u, d) with intersection sign +1.
class Torus {
 public:
  Torus() = default;
  explicit Torus(Coord dims);

  const Coord& dims() const { return dims_; }
  int dim(int d) const { return dims_[d]; }
  Index vertex_count() const { return vertices_; }
  Index edge_count() const { return 3 * vertices_; }
  Index plaquette_count() const { return 3 * vertices_; }
  Index cube_count() const { return vertices_; }

  Index vertex(Coord c) const;  // coordinates reduced periodically
  Coord coords(Index v) const;
  Index shift(Index v, int d, int step) const {
    const Index stride = strides_[d];
    const int n = dims_[d];
    const int c = static_cast<int>((v / stride) % static_cast<Index>(n));
    int moved = (c + step) % n;
    if (moved < 0) moved += n;
    return v + static_cast<Index>(moved) * stride - static_cast<Index>(c) * stride;
  }

  static Index edge(Index v, int d) { return 3 * v + static_cast<Index>(d); }
  static Index plaquette(Index v, int d) { return 3 * v + static_cast<Index>(d); }
  static Index base(Index cell) { return cell / 3; }
  static int direction(Index cell) { return static_cast<int>(cell % 3); }

  Index edge_tail(Index e) const { return base(e); }
  Index edge_head(Index e) const { return shift(base(e), direction(e), 1); }

  // Oriented boundary: four (edge, sign) pairs.
  std::array<std::pair<Index, int>, 4> plaquette_boundary(Index p) const {
    const Index v = base(p);
    const int d = direction(p);
    const int a = (d + 1) % 3;
    const int b = (d + 2) % 3;
    return {{{edge(v, a), 1}, {edge(shift(v, a, 1), b), 1}, {edge(shift(v, b, 1), a), -1}, {edge(v, b), -1}}};
  }
  // Oriented boundary: six (plaquette, sign) pairs, outward normal positive.
  std::array<std::pair<Index, int>, 6> cube_boundary(Index c) const {
    std::array<std::pair<Index, int>, 6> out;
    for (int d = 0; d < 3; ++d) {
      out[2 * d] = {plaquette(shift(c, d, 1), d), 1};
      out[2 * d + 1] = {plaquette(c, d), -1};
    }
    return out;
  }

  // Endpoints of the dual edge through plaquette p (cube ids).
  Index dual_tail(Index p) const { return shift(base(p), direction(p), -1); }
  Index dual_head(Index p) const { return base(p); }

  bool operator==(const Torus& other) const { return dims_ == other.dims_; }

 private:
  Coord dims_{0, 0, 0};
  std::array<Index, 3> strides_{1, 0, 0};
  Index vertices_ = 0;
};

}  // namespace zloch
