#pragma once

#include <memory>
#include <vector>

#include "zloch/torus.hpp"

namespace zloch::detail {

// Periodic lattice Poisson solver: returns psi with (-Laplacian) psi = f
// after projecting out the mean of f. Scalar fields are indexed like
// vertices. Plans are built once; solve() reuses them and is not reentrant.
class PoissonSolver {
 public:
  explicit PoissonSolver(const Torus& t);
  ~PoissonSolver();
  PoissonSolver(const PoissonSolver&) = delete;
  PoissonSolver& operator=(const PoissonSolver&) = delete;

  const Torus& torus() const { return torus_; }
  void solve(std::vector<double>& field) const;

 private:
  struct Impl;
  Torus torus_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace zloch::detail
