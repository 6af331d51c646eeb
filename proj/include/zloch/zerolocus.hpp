#pragma once

#include <array>
#include <complex>
#include <vector>

#include "zloch/bundle.hpp"
#include "zloch/flows.hpp"
#include "zloch/homology.hpp"

namespace zloch {

using Point3 = std::array<double, 3>;

// Degree of a closed loop of nonzero samples: (1/2pi) sum of wrapped phase
// differences, including last -> first. A wrapped jump of magnitude at least
// min(max_jump, pi - tolerance) raises UndersampledError: aliased loops such
// as z^5 on 8 samples have jumps of 3pi/4, so the pi - tol margin alone
// cannot see them. ZeroSampleError on a zero sample.
long long winding_number(const std::vector<std::complex<double>>& loop, double tolerance = 1e-3,
                         double max_jump = 1.5707963267948966);

// Integer coefficient per dual edge, i.e. per plaquette. The dual edge
// through p(u, d) runs from cube u - e_d to cube u.
struct WeightedChain1 {
  Torus torus;
  std::vector<long long> coeff;

  bool empty() const;
  // Nonzero (plaquette, coefficient) pairs in plaquette order.
  std::vector<std::pair<Index, long long>> support() const;
  // sum |n_p|: weighted length in lattice units.
  long long weighted_length() const;
  bool operator==(const WeightedChain1& other) const = default;
};

struct ExtractOptions {
  double tolerance = 1e-3;       // undersampling margin below pi
  double zero_threshold = 0.0;   // |s| <= this counts as a zero sample
  // Open chart: the lattice is a box, links across the periodic seam are
  // ignored and so are plaquettes containing them.
  bool chart = false;
};

// n_p = (1/2pi) (sum over the oriented boundary of covariant_link_delta +
// charge * curvature(p)), rounded. Errors name the first offending cell in
// id order: ZeroSampleError, UndersampledError for a link, InternalError if
// some n_p is not an integer within 1e-6.
WeightedChain1 extract_vortex_chain(const SampledSection& s, const U1Bundle& b,
                                    const ExtractOptions& options = {});

// Boundary coefficient (head minus tail) at every cube (dual vertex).
std::vector<long long> dual_boundary(const WeightedChain1& chain);
bool is_closed(const WeightedChain1& chain);

// Translation by half a cell diagonal: the dual edge through p(u, d) becomes
// the primal edge e(u - e_d, d). Preserves closedness and homology class.
std::vector<long long> shifted_primal_chain(const WeightedChain1& chain);
// H_1 class of a closed dual chain; BoundaryError if not closed.
HomologyClass chain_class(const WeightedChain1& chain, const LatticeManifold& m);

// Oriented boundary of a set of cubes, as a primal 2-cycle.
std::vector<long long> cube_cluster_boundary(const Torus& t, const std::vector<Index>& cubes);
// Signed crossing count sum_p n_p S_p of the chain with a closed surface.
// InputError if the surface has boundary.
long long surface_flow_test(const WeightedChain1& chain, const std::vector<long long>& surface);

// A closed primal 2-chain stored by its nonzero plaquettes, checked for
// closedness once on construction (InputError otherwise).
class ClosedSurface {
 public:
  ClosedSurface(const Torus& t, std::vector<std::pair<Index, long long>> cells);
  static ClosedSurface cube_boundary(const Torus& t, Index cube);
  const Torus& torus() const { return torus_; }
  const std::vector<std::pair<Index, long long>>& cells() const { return cells_; }

 private:
  Torus torus_;
  std::vector<std::pair<Index, long long>> cells_;
};

long long surface_flow_test(const WeightedChain1& chain, const ClosedSurface& surface);

// sum_e n_e (f(head) - f(tail)) for f on cubes, evaluated by parts.
double boundary_pairing(const WeightedChain1& chain, const std::vector<double>& f);
// The same for several functions; the boundary is computed once.
std::vector<double> boundary_pairings(const WeightedChain1& chain,
                                      const std::vector<std::vector<double>>& fs);

// Graph whose vertices are the dual vertices of valence != 2 (or where the
// weight changes); the maximal paths between them become edges carrying
// their common weight. A cycle without such vertices gets one vertex at its
// smallest cube. Vertex ids "v<cube>", edge ids "e<k>"; polylines run
// through cube centers (offset 0.5). BoundaryError if the chain is open.
EmbeddedGraphFlow chain_to_graph(const WeightedChain1& chain);

// Sums the fine coefficients over each coarse plaquette of a block x block x
// block coarsening. InputError unless every dimension is divisible.
WeightedChain1 coarsen_chain(const WeightedChain1& chain, int block);

struct ConeRay {
  Point3 direction{};  // unit vector
  long long multiplicity = 0;
  int orientation = 0;  // +1 leaving the point, -1 entering
};

struct TangentCone {
  Coord point{};  // cube whose center is the base point
  std::vector<int> radii;
  std::vector<std::vector<ConeRay>> per_radius;
  std::vector<ConeRay> rays;  // the stabilized cone (empty if unstable)
  bool stable = false;
};

// Crossings of the chain with the boundary of the Chebyshev box of each
// radius around the point, clustered by single linkage at 15 degrees. The
// cone is stable when at least three radii give matching clusters.
// InputError if the point is off the support or a box wraps the torus.
TangentCone tangent_cone(const WeightedChain1& chain, Coord point, const std::vector<int>& radii);

// Smooth monotone step: 0 for u <= 0, 1 for u >= 1.
double smooth_step(double u);

// Collapse of the tube |x_axis - c_axis| < lambda, rho < lambda / 2 onto its
// axis: (x_1, chi x_2, chi x_3) in axis-adapted coordinates, with chi = 0 on
// the tube and chi = 1 outside the box of half-width `outer`. InputError
// unless 0 < lambda < outer.
Point3 collapse_tube(const Point3& x, const Point3& axis_point, int axis, double lambda,
                     double outer);

// chi(|x - c|) (x - c) + c with chi = 0 on B_{(1 - 2 eps) r} and chi = 1
// outside B_{(1 - eps) r}. InputError unless 0 < eps < 1/2 and r > 0.
Point3 collapse_ball(const Point3& x, const Point3& center, double epsilon, double radius = 1.0);

}  // namespace zloch
