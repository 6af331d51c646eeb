#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <map>

#include "doctest.h"
#include "oracles/vorticity.hpp"
#include "zloch/error.hpp"
#include "zloch/synthesis.hpp"
#include "zloch/zerolocus.hpp"

using namespace zloch;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::complex<double>> power_loop(int n, int samples) {
  std::vector<std::complex<double>> loop;
  for (int i = 0; i < samples; ++i) loop.push_back(std::polar(1.0, n * 2 * kPi * i / samples));
  return loop;
}

// Straight dual line along `d` through (a, b) with coefficient w.
void add_line(WeightedChain1& c, int d, int a, int b, long long w) {
  const Torus& t = c.torus;
  for (int l = 0; l < t.dim(d); ++l) {
    Coord u{};
    u[d] = l;
    u[(d + 1) % 3] = a;
    u[(d + 2) % 3] = b;
    c.coeff[Torus::plaquette(t.vertex(u), d)] += w;
  }
}

// Dual edge from cube `from` one step along +d (sign +1) or -d (sign -1).
void add_step(WeightedChain1& c, Coord from, int d, int sign, long long w) {
  const Torus& t = c.torus;
  const Index u = t.vertex(from);
  if (sign > 0) {
    c.coeff[Torus::plaquette(t.shift(u, d, 1), d)] += w;
  } else {
    c.coeff[Torus::plaquette(u, d)] -= w;
  }
}

WeightedChain1 empty_chain(const Torus& t) { return {t, std::vector<long long>(t.plaquette_count(), 0)}; }

double polyline_length(const GraphEdge& e) {
  double len = 0.0;
  for (std::size_t i = 1; i < e.polyline.size(); ++i) {
    for (int k = 0; k < 3; ++k) len += std::abs(e.polyline[i][k] - e.polyline[i - 1][k]);
  }
  return len;
}

}  // namespace

TEST_CASE("winding numbers") {
  CHECK(winding_number(power_loop(2, 64)) == 2);
  CHECK(winding_number(std::vector<std::complex<double>>(64, {0.3, -0.2})) == 0);
  CHECK(winding_number(power_loop(-1, 64)) == -1);
  for (int n = -5; n <= 5; ++n) CHECK(winding_number(power_loop(n, 64)) == n);
  CHECK_THROWS_AS(winding_number(power_loop(5, 8)), UndersampledError);
  CHECK_THROWS_AS(winding_number(power_loop(1, 2)), UndersampledError);
  auto zero = power_loop(1, 16);
  zero[3] = 0.0;
  CHECK_THROWS_AS(winding_number(zero), ZeroSampleError);
  // Non-uniform speed is fine as long as every step is resolved.
  std::vector<std::complex<double>> uneven;
  for (int i = 0; i < 100; ++i) {
    const double s = 2 * kPi * i / 100;
    uneven.push_back(std::polar(1.0 + 0.5 * std::sin(s), -3 * (s + 0.3 * std::sin(s))));
  }
  CHECK(winding_number(uneven) == -3);
}

TEST_CASE("extraction basics and error reporting") {
  const Torus t({8, 8, 8});
  const U1Bundle flat = trivial_bundle(t);
  CHECK(extract_vortex_chain(constant_section(t), flat).empty());

  SampledSection s = constant_section(t);
  s.values[t.vertex({1, 2, 3})] = 0.0;
  CHECK_THROWS_WITH_AS(extract_vortex_chain(s, flat), doctest::Contains("(1,2,3)"), ZeroSampleError);

  s = constant_section(t);
  s.values[t.vertex({4, 4, 4})] = -1.0;
  CHECK_THROWS_AS(extract_vortex_chain(s, flat), UndersampledError);

  CHECK_THROWS_AS(extract_vortex_chain(constant_section(Torus({4, 4, 4})), flat), InputError);
}

TEST_CASE("closedness, surfaces and the boundary pairing on extracted chains") {
  const Torus t({12, 12, 12});
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5, 5);
  const U1Bundle b = constant_flux_bundle(t, {1, 1, -1});
  const SectionSynthesizer synth(b);
  for (int trial = 0; trial < 4; ++trial) {
    const WeightedChain1 chain = extract_vortex_chain(random_valid_section(synth, rng).section, b);
    CHECK(is_closed(chain));
    for (int i = 0; i < 20; ++i) {
      std::vector<double> f(t.cube_count());
      for (double& x : f) x = u(rng);
      CHECK(boundary_pairing(chain, f) == 0.0);
    }
    for (Index c = 0; c < t.cube_count(); ++c) {
      CHECK(surface_flow_test(chain, cube_cluster_boundary(t, {c})) == 0);
    }
    // Random 4x4x4 cluster against the direct crossing count.
    std::uniform_int_distribution<int> pos(0, 11);
    const Coord corner{pos(rng), pos(rng), pos(rng)};
    std::vector<Index> cubes;
    std::vector<char> inside(t.cube_count(), 0);
    for (int x = 0; x < 4; ++x) {
      for (int y = 0; y < 4; ++y) {
        for (int z = 0; z < 4; ++z) {
          const Index c = t.vertex({corner[0] + x, corner[1] + y, corner[2] + z});
          cubes.push_back(c);
          inside[c] = 1;
        }
      }
    }
    CHECK(surface_flow_test(chain, cube_cluster_boundary(t, cubes)) == 0);
    CHECK(oracle::crossing_count(t, chain.coeff, inside) == 0);
  }
  CHECK(surface_flow_test(empty_chain(t), cube_cluster_boundary(t, {0, 1, 2})) == 0);
  // A surface with boundary is rejected.
  std::vector<long long> open(t.plaquette_count(), 0);
  open[0] = 1;
  CHECK_THROWS_AS(surface_flow_test(empty_chain(t), open), InputError);
}

TEST_CASE("boundary pairing detects an open path") {
  const Torus t({8, 8, 8});
  WeightedChain1 path = empty_chain(t);
  for (int x = 1; x <= 3; ++x) add_step(path, {x, 2, 2}, 0, 1, 1);
  CHECK_FALSE(is_closed(path));
  std::vector<double> fx(t.cube_count()), one(t.cube_count(), 1.0);
  for (Index c = 0; c < fx.size(); ++c) fx[c] = t.coords(c)[0];
  CHECK(boundary_pairing(path, fx) == 3.0);  // f(4) - f(1)
  CHECK(boundary_pairing(path, one) == 0.0);
  CHECK_THROWS_AS(chain_to_graph(path), BoundaryError);
  CHECK_THROWS_AS(chain_class(path, LatticeManifold::torus({8, 8, 8})), BoundaryError);
}

TEST_CASE("sparse surfaces and batched pairings agree with the dense forms") {
  const Torus t({6, 5, 7});
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::uniform_int_distribution<Index> cube(0, t.cube_count() - 1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    // Arbitrary (mostly open) chain.
    WeightedChain1 chain = empty_chain(t);
    for (int k = 0; k < 30; ++k) chain.coeff[cube(rng) * 3 + trial % 3] += coeff(rng);
    std::vector<std::vector<double>> fs(5, std::vector<double>(t.cube_count()));
    for (auto& f : fs)
      for (double& x : f) x = u(rng);
    const auto batched = boundary_pairings(chain, fs);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      // Direct edge sum: the dual edge through p runs from dual_tail to dual_head.
      double direct = 0;
      for (Index p = 0; p < chain.coeff.size(); ++p)
        direct += chain.coeff[p] * (fs[i][t.dual_head(p)] - fs[i][t.dual_tail(p)]);
      CHECK(batched[i] == doctest::Approx(direct).epsilon(1e-12));
      CHECK(boundary_pairing(chain, fs[i]) == batched[i]);
    }
    std::vector<Index> cubes;
    for (int k = 0; k < 1 + trial; ++k) cubes.push_back(cube(rng));
    const auto dense = cube_cluster_boundary(t, cubes);
    std::vector<std::pair<Index, long long>> cells;
    for (Index p = 0; p < dense.size(); ++p)
      if (dense[p] != 0) cells.emplace_back(p, dense[p]);
    CHECK(surface_flow_test(chain, ClosedSurface(t, cells)) == surface_flow_test(chain, dense));
    CHECK(surface_flow_test(chain, ClosedSurface::cube_boundary(t, cubes[0])) ==
          surface_flow_test(chain, cube_cluster_boundary(t, {cubes[0]})));
  }
  CHECK_THROWS_AS(ClosedSurface(t, {{0, 1}}), InputError);
  CHECK_THROWS_AS(ClosedSurface::cube_boundary(t, t.cube_count()), InputError);
  CHECK_THROWS_AS(surface_flow_test(empty_chain(t), ClosedSurface::cube_boundary(Torus({4, 4, 4}), 0)),
                  InputError);
}

TEST_CASE("chain_to_graph") {
  const Torus t({8, 8, 8});
  const LatticeManifold m = LatticeManifold::torus(t.dims());
  SUBCASE("single circle") {
    WeightedChain1 c = empty_chain(t);
    add_line(c, 2, 3, 4, 1);
    const EmbeddedGraphFlow g = chain_to_graph(c);
    CHECK(g.flow.graph->vertex_count() == 1);
    CHECK(g.flow.graph->edge_count() == 1);
    CHECK(g.flow.theta == std::vector<long long>{1});
    CHECK(gamma_class(g, m) == make_class({0, 0, 1}));
  }
  SUBCASE("figure eight") {
    WeightedChain1 c = empty_chain(t);
    add_line(c, 2, 3, 4, 1);   // z line through cubes (3, 4, *)
    add_line(c, 0, 4, 5, -2);  // x line through cubes (*, 4, 5), meets at (3, 4, 5)
    REQUIRE(is_closed(c));
    const EmbeddedGraphFlow g = chain_to_graph(c);
    CHECK(g.flow.graph->vertex_count() == 1);
    CHECK(g.flow.graph->vertices()[0] == "v" + std::to_string(t.vertex({3, 4, 5})));
    CHECK(g.flow.graph->edge_count() == 2);
    CHECK(is_flow(g.flow));
    CHECK(gamma_class(g, m) == chain_class(c, m));
    CHECK(chain_class(c, m) == make_class({-2, 0, 1}));
  }
  SUBCASE("empty") {
    const EmbeddedGraphFlow g = chain_to_graph(empty_chain(t));
    CHECK(g.flow.graph->vertex_count() == 0);
    CHECK(g.flow.graph->edge_count() == 0);
  }
  SUBCASE("random extracted chains keep class and length") {
    const Torus big({12, 12, 12});
    const LatticeManifold mb = LatticeManifold::torus(big.dims());
    std::mt19937_64 rng(23);
    for (const std::array<long long, 3> k : {std::array<long long, 3>{2, 0, -1}, {1, 1, 1}}) {
      const U1Bundle b = constant_flux_bundle(big, k);
      const SectionSynthesizer synth(b);
      for (int i = 0; i < 4; ++i) {
        const WeightedChain1 c = extract_vortex_chain(random_valid_section(synth, rng).section, b);
        const EmbeddedGraphFlow g = chain_to_graph(c);
        CHECK(is_flow(g.flow));
        CHECK(gamma_class(g, mb) == chain_class(c, mb));
        double length = 0.0;
        for (std::size_t e = 0; e < g.flow.theta.size(); ++e) {
          length += std::llabs(g.flow.theta[e]) * polyline_length(g.flow.graph->edges()[e]);
        }
        CHECK(length == static_cast<double>(c.weighted_length()));
      }
    }
  }
}

TEST_CASE("coarsening keeps closedness and class") {
  const Torus t({12, 12, 12});
  std::mt19937_64 rng(31);
  const U1Bundle b = constant_flux_bundle(t, {-1, 2, 0});
  const SectionSynthesizer synth(b);
  const LatticeManifold fine = LatticeManifold::torus(t.dims());
  const LatticeManifold coarse = LatticeManifold::torus({4, 4, 4});
  for (int i = 0; i < 4; ++i) {
    const WeightedChain1 c = extract_vortex_chain(random_valid_section(synth, rng).section, b);
    const WeightedChain1 cc = coarsen_chain(c, 3);
    CHECK(is_closed(cc));
    CHECK(chain_class(cc, coarse) == chain_class(c, fine));
  }
  CHECK_THROWS_AS(coarsen_chain(empty_chain(t), 5), InputError);
}

TEST_CASE("tangent cones") {
  const Torus t({16, 16, 16});
  SUBCASE("straight weight-3 line") {
    WeightedChain1 c = empty_chain(t);
    add_line(c, 2, 7, 7, 3);
    const TangentCone cone = tangent_cone(c, {7, 7, 8}, {6, 4, 2});
    REQUIRE(cone.stable);
    REQUIRE(cone.rays.size() == 2);
    CHECK(cone.rays[0].multiplicity == 3);
    CHECK(cone.rays[1].multiplicity == 3);
    CHECK(cone.rays[0].orientation == 1);
    CHECK(cone.rays[0].direction[2] == doctest::Approx(1.0));
    CHECK(cone.rays[1].orientation == -1);
    CHECK(cone.rays[1].direction[2] == doctest::Approx(-1.0));
  }
  SUBCASE("Y junction with weights 1, 1, 2") {
    WeightedChain1 c = empty_chain(t);
    const Coord o{8, 8, 8};
    for (int s = 1; s <= 7; ++s) {
      add_step(c, {o[0] - s, o[1], o[2]}, 0, 1, 1);  // comes in along +x
      add_step(c, {o[0], o[1] - s, o[2]}, 1, 1, 1);  // comes in along +y
      add_step(c, {o[0], o[1], o[2] + s - 1}, 2, 1, 2);  // leaves along +z
    }
    const TangentCone cone = tangent_cone(c, o, {6, 5, 4});
    REQUIRE(cone.stable);
    REQUIRE(cone.rays.size() == 3);
    std::multiset<long long> mult;
    for (const auto& r : cone.rays) mult.insert(r.multiplicity * r.orientation);
    CHECK(mult == std::multiset<long long>{-1, -1, 2});
  }
  SUBCASE("large circle") {
    WeightedChain1 c = empty_chain(t);
    const Coord w{1, 4, 5};
    for (int k = 1; k <= 11; ++k) {
      add_step(c, {w[0] + k - 1, w[1], w[2]}, 0, 1, 1);
      add_step(c, {w[0] + 11, w[1] + k - 1, w[2]}, 1, 1, 1);
      add_step(c, {w[0] + 12 - k, w[1] + 11, w[2]}, 0, -1, 1);
      add_step(c, {w[0], w[1] + 12 - k, w[2]}, 1, -1, 1);
    }
    REQUIRE(is_closed(c));
    const TangentCone cone = tangent_cone(c, {7, 4, 5}, {4, 3, 2});
    REQUIRE(cone.stable);
    REQUIRE(cone.rays.size() == 2);
    CHECK(cone.rays[0].multiplicity == 1);
    CHECK(cone.rays[0].direction[0] == doctest::Approx(1.0));
    CHECK(cone.rays[1].direction[0] == doctest::Approx(-1.0));
  }
  SUBCASE("instability and input errors") {
    WeightedChain1 c = empty_chain(t);
    add_line(c, 2, 7, 7, 1);
    CHECK_FALSE(tangent_cone(c, {7, 7, 0}, {3, 2}).stable);
    CHECK_THROWS_AS(tangent_cone(c, {1, 1, 1}, {3, 2, 1}), InputError);
    CHECK_THROWS_AS(tangent_cone(c, {7, 7, 0}, {8, 2, 1}), InputError);
    // A corner between the radii changes the cone: unstable.
    WeightedChain1 bent = empty_chain(t);
    for (int s = 1; s <= 7; ++s) add_step(bent, {8, 8, 8 - s}, 2, 1, 1);
    for (int s = 0; s < 3; ++s) add_step(bent, {8, 8, 8 + s}, 2, 1, 1);
    for (int s = 0; s < 7; ++s) add_step(bent, {8 + s, 8, 11}, 0, 1, 1);
    const TangentCone cone = tangent_cone(bent, {8, 8, 8}, {6, 4, 2});
    CHECK_FALSE(cone.stable);
    CHECK(cone.rays.empty());
  }
}

TEST_CASE("collapse maps") {
  const Point3 origin{0, 0, 0};
  // Axis points stay fixed.
  for (double s : {-3.0, -0.5, 0.0, 0.2, 2.5}) {
    const Point3 x{s, 0, 0};
    CHECK(collapse_tube(x, origin, 0, 1.0, 2.0) == x);
  }
  // Identity outside the outer box.
  CHECK(collapse_tube({2.5, 0.3, 0.1}, origin, 0, 1.0, 2.0) == Point3{2.5, 0.3, 0.1});
  CHECK(collapse_tube({0.1, 2.2, 0.0}, origin, 0, 1.0, 2.0) == Point3{0.1, 2.2, 0.0});
  // The tube collapses onto the axis.
  const Point3 in = collapse_tube({0.7, 0.3, -0.2}, origin, 0, 1.0, 2.0);
  CHECK(in == Point3{0.7, 0.0, 0.0});
  // Other axes and centers.
  CHECK(collapse_tube({1, 1.2, 5.3}, {1, 1, 5}, 2, 1.0, 3.0) == Point3{1, 1, 5.3});
  CHECK_THROWS_AS(collapse_tube(origin, origin, 0, 2.0, 1.0), InputError);
  CHECK_THROWS_AS(collapse_tube(origin, origin, 3, 1.0, 2.0), InputError);

  const Point3 c{1, 2, 3};
  CHECK(collapse_ball({1.1, 2.1, 3.0}, c, 0.1) == c);
  CHECK(collapse_ball({3, 2, 3}, c, 0.1) == Point3{3, 2, 3});
  CHECK(collapse_ball({1.95, 2, 3}, c, 0.1) == Point3{1.95, 2, 3});
  CHECK_THROWS_AS(collapse_ball(c, c, 0.6), InputError);
  CHECK_THROWS_AS(collapse_ball(c, c, 0.0), InputError);

  // Continuity along a fine radial sweep and monotone radial profile.
  double last = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double r = 1.2 * i / 2000;
    const double image = collapse_ball({r, 0, 0}, origin, 0.1)[0];
    CHECK(image >= last);
    CHECK(image - last < 0.02);
    last = image;
  }
  for (int i = 0; i <= 2000; ++i) {
    const double r = 2.4 * i / 2000;
    const Point3 a = collapse_tube({0.5, r, 0}, origin, 0, 1.0, 2.0);
    const Point3 b = collapse_tube({0.5, r + 2.4 / 2000, 0}, origin, 0, 1.0, 2.0);
    CHECK(std::abs(b[1] - a[1]) < 0.01);
  }
  CHECK(smooth_step(-1) == 0.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5));
  CHECK(smooth_step(2) == 1.0);
}
