#pragma once

#include <vector>

#include "zloch/integer.hpp"
#include "zloch/manifold.hpp"
#include "zloch/zerolocus.hpp"

namespace zloch {

// Shortest closed integer 1-chain on the lattice 1-skeleton in a prescribed
// H_1 class: minimize sum_e length(e) |Theta(e)|.
struct FlowProgram {
  LatticeManifold manifold = LatticeManifold::torus({2, 2, 2});
  std::vector<Rational> lengths;     // per edge, > 0; empty means all 1
  std::vector<long long> target;     // free class coordinates
  long long node_limit = 20000;      // branch-and-bound nodes
};

struct ShortestFlow {
  Rational length;                // total length of the witness
  std::vector<long long> witness; // Theta per lattice edge
  bool optimal = true;            // false when the node limit cut the search
  long long nodes = 0;
  long long pivots = 0;
};

// Exact linear relaxation (Theta = p - q, p, q >= 0, conservation at every
// vertex, class fixed by the net crossing of each coordinate seam) solved by
// a rational simplex, then branch-and-bound on fractional variables. T^3
// only (CapabilityError otherwise); lattices above 512 vertices are refused
// with CapabilityError. InputError for malformed lengths or class. If the
// node limit is hit the best integral witness found so far is returned with
// optimal = false; InternalError if none was found.
ShortestFlow shortest_flow(const FlowProgram& program);

// spacing * shortest_flow length with unit edge lengths; 0 iff a = 0.
Rational hausdorff_lower_bound(const std::vector<long long>& a, const LatticeManifold& m,
                               const Rational& spacing = 1);

// sum_i N_i |a_i|: the unit-length minimum, attained by coordinate circles.
long long coordinate_circle_length(const std::vector<long long>& a, const Torus& t);

// Primal witness as a dual chain (inverse of the half-cell shift): the edge
// e(v, d) becomes the dual edge through p(v + e_d, d).
WeightedChain1 witness_as_dual_chain(const Torus& t, const std::vector<long long>& witness);

}  // namespace zloch
