#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "zloch/complex.hpp"
#include "zloch/integer.hpp"
#include "zloch/manifold.hpp"

namespace zloch {

struct HomologyGroup {
  std::size_t betti = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
};

// H_k = ker d_k / im d_{k+1}.
HomologyGroup homology(const ChainComplex& c, int k);

struct HomologyClass {
  std::vector<Integer> free;
  std::vector<Integer> torsion;  // residues in [0, modulus)
  std::vector<Integer> moduli;

  bool is_zero() const;
  std::string to_string() const;
  bool operator==(const HomologyClass& other) const {
    return free == other.free && torsion == other.torsion && moduli == other.moduli;
  }
  bool operator!=(const HomologyClass& other) const { return !(*this == other); }
};

HomologyClass make_class(const std::vector<long long>& free);
HomologyClass operator+(const HomologyClass& a, const HomologyClass& b);
HomologyClass operator-(const HomologyClass& a);
HomologyClass scale(const HomologyClass& a, const Integer& k);

// Linear functional C_1 -> H_1 valid on cycles, built once per complex.
//
// A spanning forest of the 1-skeleton identifies cycles with their
// coordinates on non-tree edges, so H_1 is the cokernel of the boundary map
// restricted to those rows. Unit pivots are eliminated sparsely and the
// residual block goes through the dense Smith form; replaying the eliminated
// pivots backwards yields the functional on every edge.
class H1Classifier {
 public:
  // `generators` (closed 1-chains) fix the free coordinates; they must form a
  // basis of the free part. Without generators the raw coordinates are used.
  H1Classifier(const ChainComplex& c, const std::vector<std::vector<long long>>& generators);

  std::size_t rank() const { return rank_; }
  const std::vector<Integer>& torsion_moduli() const { return moduli_; }

  // Class of a 1-cycle; BoundaryError listing offending vertices otherwise.
  HomologyClass classify(const std::vector<long long>& chain) const;
  // Same, for a sparse chain (edge, coefficient). Skips the boundary check
  // when `checked` is false.
  HomologyClass classify_sparse(const std::vector<std::pair<Index, long long>>& chain,
                                bool checked = true) const;

 private:
  HomologyClass finish(const std::vector<Integer>& raw) const;
  std::vector<Index> boundary_defects(const std::vector<std::pair<Index, long long>>& chain) const;

  const ChainComplex* complex_ = nullptr;
  std::vector<SparseColumn> edge_boundary_;
  Index vertex_count_ = 0;
  std::size_t rank_ = 0;
  std::vector<Integer> moduli_;
  // Per edge, a row of `width_` raw coordinates (torsion rows first).
  std::size_t width_ = 0;
  std::vector<std::vector<std::pair<std::size_t, Integer>>> functional_;
  IntMatrix free_change_;  // raw free coordinates -> published basis
};

// Class of a 1-cycle on the manifold (published generator coordinates).
HomologyClass cycle_class(const std::vector<long long>& chain, const LatticeManifold& m);

// Dual 1-cycle (coefficient per plaquette) against a primal 2-cycle
// (coefficient per plaquette) on T^3. Every dual edge meets its plaquette
// transversally, so this is sum_p n_p S_p with the orientation convention of
// the lattice. InputError if the surface is not closed.
long long intersection_number_dual(const Torus& t, const std::vector<long long>& dual_cycle,
                                   const std::vector<long long>& surface);

// Primal 1-cycle (per edge) against a primal 2-cycle (per plaquette). Such a
// pair is never transverse when the supports meet: NonTransverseError
// (suggesting a half-step shift of one of them); disjoint supports give 0.
long long intersection_number_primal(const Torus& t, const std::vector<long long>& cycle,
                                     const std::vector<long long>& surface);

// H_1 class Poincare dual to the flux vector (c_1 paired with the coordinate
// 2-tori T_23, T_31, T_12). T^3 only; CapabilityError otherwise.
HomologyClass poincare_dual(const std::vector<long long>& flux, const LatticeManifold& m);

// The coordinate 2-torus normal to `direction` at height `level`, as a primal
// 2-cycle.
std::vector<long long> coordinate_torus(const Torus& t, int direction, int level);

// Coordinate circle along `direction` through `start`, as a primal 1-cycle.
std::vector<long long> coordinate_circle(const Torus& t, int direction, Coord start);

}  // namespace zloch
