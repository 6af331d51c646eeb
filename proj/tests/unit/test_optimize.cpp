#include <random>

#include "doctest.h"
#include "oracles/shortest.hpp"
#include "zloch/error.hpp"
#include "zloch/homology.hpp"
#include "zloch/optimize.hpp"

using namespace zloch;

namespace {

ShortestFlow solve(const LatticeManifold& m, std::vector<long long> a,
                   std::vector<Rational> lengths = {}) {
  FlowProgram p;
  p.manifold = m;
  p.target = std::move(a);
  p.lengths = std::move(lengths);
  return shortest_flow(p);
}

void check_witness(const ShortestFlow& s, const LatticeManifold& m, const std::vector<long long>& a,
                   const std::vector<Rational>& lengths = {}) {
  CHECK(cycle_class(s.witness, m) == make_class(a));
  Rational total = 0;
  for (std::size_t e = 0; e < s.witness.size(); ++e) {
    total += (lengths.empty() ? Rational(1) : lengths[e]) * std::llabs(s.witness[e]);
  }
  CHECK(total == s.length);
}

}  // namespace

TEST_CASE("shortest flow examples") {
  const LatticeManifold m = LatticeManifold::torus({4, 4, 4});
  const ShortestFlow one = solve(m, {0, 0, 1});
  CHECK(one.length == 4);
  CHECK(one.optimal);
  check_witness(one, m, {0, 0, 1});
  CHECK(solve(m, {0, 0, 2}).length == 8);
  const ShortestFlow zero = solve(m, {0, 0, 0});
  CHECK(zero.length == 0);
  CHECK(std::all_of(zero.witness.begin(), zero.witness.end(), [](long long x) { return x == 0; }));
  CHECK(hausdorff_lower_bound({0, 0, 1}, m, Rational(1, 4)) == 1);
  CHECK(hausdorff_lower_bound({0, 0, 0}, m, Rational(1, 4)) == 0);
  // The dual form of the witness is closed with the same class.
  const WeightedChain1 dual = witness_as_dual_chain(m.lattice(), one.witness);
  CHECK(is_closed(dual));
  CHECK(chain_class(dual, m) == make_class({0, 0, 1}));
}

TEST_CASE("unit lengths: every class on small tori") {
  for (int n : {2, 3, 4}) {
    const LatticeManifold m = LatticeManifold::torus({n, n, n});
    for (long long a = -2; a <= 2; ++a) {
      for (long long b = -2; b <= 2; ++b) {
        for (long long c = -2; c <= 2; ++c) {
          const std::vector<long long> cls{a, b, c};
          const ShortestFlow s = solve(m, cls);
          CHECK(s.optimal);
          CHECK(s.length == coordinate_circle_length(cls, m.lattice()));
          CHECK((s.length > 0) == (a || b || c));
          check_witness(s, m, cls);
        }
      }
    }
  }
}

TEST_CASE("random lengths agree with the cover oracle") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_int_distribution<int> coord(-2, 2);
  for (const Coord dims : {Coord{2, 2, 2}, Coord{3, 2, 2}, Coord{3, 3, 3}}) {
    const LatticeManifold m = LatticeManifold::torus(dims);
    const Torus& t = m.lattice();
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<long long> plain(t.edge_count());
      std::vector<Rational> lengths(t.edge_count());
      for (std::size_t e = 0; e < plain.size(); ++e) plain[e] = len(rng), lengths[e] = plain[e];
      const std::array<long long, 3> a{coord(rng), coord(rng), coord(rng)};
      const std::vector<long long> cls(a.begin(), a.end());
      const ShortestFlow s = solve(m, cls, lengths);
      CHECK(s.optimal);
      CHECK(s.length == oracle::shortest_class_length(t, plain, a));
      check_witness(s, m, cls, lengths);
    }
  }
}

TEST_CASE("symmetry, subadditivity and refinement") {
  std::mt19937_64 rng(8);
  const LatticeManifold m = LatticeManifold::torus({3, 3, 3});
  std::vector<Rational> lengths(m.lattice().edge_count());
  std::uniform_int_distribution<int> len(1, 4);
  for (auto& l : lengths) l = Rational(len(rng), 3);
  std::uniform_int_distribution<int> coord(-1, 1);
  for (int trial = 0; trial < 8; ++trial) {
    const std::vector<long long> a{coord(rng), coord(rng), coord(rng)};
    const std::vector<long long> b{coord(rng), coord(rng), coord(rng)};
    const std::vector<long long> na{-a[0], -a[1], -a[2]};
    const std::vector<long long> ab{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
    const Rational la = solve(m, a, lengths).length;
    CHECK(solve(m, na, lengths).length == la);
    CHECK(solve(m, ab, lengths).length <= la + solve(m, b, lengths).length);
  }
  // One refinement step (N -> 2N, h -> h/2) does not increase the bound.
  for (const std::vector<long long> a : {std::vector<long long>{0, 0, 1}, {1, -1, 2}}) {
    CHECK(hausdorff_lower_bound(a, LatticeManifold::torus({4, 4, 4}), Rational(1, 2)) <=
          hausdorff_lower_bound(a, LatticeManifold::torus({2, 2, 2}), 1));
  }
}

TEST_CASE("big rational lengths fall back to arbitrary precision") {
  const LatticeManifold m = LatticeManifold::torus({2, 2, 2});
  const Rational huge = Rational(Integer("1000000000000000000000000000000"), 7);
  std::vector<Rational> lengths(m.lattice().edge_count(), huge);
  const ShortestFlow s = solve(m, {1, 0, -1}, lengths);
  CHECK(s.length == huge * 4);
  check_witness(s, m, {1, 0, -1}, lengths);
}

TEST_CASE("shortest flow input and capability errors") {
  CHECK_THROWS_AS(solve(LatticeManifold::torus({9, 9, 9}), {0, 0, 1}), CapabilityError);
  CHECK_THROWS_AS(solve(LatticeManifold::surface_times_circle(1, 3), {0, 0, 1}), CapabilityError);
  const LatticeManifold m = LatticeManifold::torus({2, 2, 2});
  CHECK_THROWS_AS(solve(m, {0, 1}), InputError);
  CHECK_THROWS_AS(solve(m, {0, 0, 1}, std::vector<Rational>(24, 0)), InputError);
  CHECK_THROWS_AS(solve(m, {0, 0, 1}, std::vector<Rational>(3, 1)), InputError);
  CHECK_THROWS_AS(hausdorff_lower_bound({0, 0, 1}, m, 0), InputError);
}
