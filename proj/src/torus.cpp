#include "zloch/torus.hpp"

#include <string>

#include "zloch/error.hpp"

namespace zloch {

namespace {
int wrap(int value, int n) {
  int r = value % n;
  return r < 0 ? r + n : r;
}
}  // namespace

Torus::Torus(Coord dims) : dims_(dims) {
  for (int d = 0; d < 3; ++d) {
    if (dims[d] < 1) throw InputError("lattice dimension must be positive");
  }
  vertices_ = static_cast<Index>(dims[0]) * static_cast<Index>(dims[1]) *
              static_cast<Index>(dims[2]);
  strides_ = {1, static_cast<Index>(dims[0]), static_cast<Index>(dims[0]) * static_cast<Index>(dims[1])};
}

Index Torus::vertex(Coord c) const {
  const Index x = static_cast<Index>(wrap(c[0], dims_[0]));
  const Index y = static_cast<Index>(wrap(c[1], dims_[1]));
  const Index z = static_cast<Index>(wrap(c[2], dims_[2]));
  return x + static_cast<Index>(dims_[0]) * (y + static_cast<Index>(dims_[1]) * z);
}

Coord Torus::coords(Index v) const {
  const Index n0 = static_cast<Index>(dims_[0]);
  const Index n1 = static_cast<Index>(dims_[1]);
  return {static_cast<int>(v % n0), static_cast<int>((v / n0) % n1),
          static_cast<int>(v / (n0 * n1))};
}

}  // namespace zloch
