#include <random>

#include "doctest.h"
#include "oracles/determinantal.hpp"
#include "zloch/error.hpp"
#include "zloch/homology.hpp"
#include "zloch/smith.hpp"

using namespace zloch;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  }
  return m;
}

bool certificate_holds(const IntMatrix& m, const SmithForm& s) {
  if (!(s.U * m * s.V == s.D)) return false;
  if (abs(determinant(s.U)) != 1 || abs(determinant(s.V)) != 1) return false;
  if (!s.D.is_diagonal()) return false;
  const auto d = s.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) return false;
    if (i + 1 < d.size() && d[i] != 0 && d[i + 1] % d[i] != 0) return false;
    if (i + 1 < d.size() && d[i] == 0 && d[i + 1] != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("smith form examples") {
  SUBCASE("identity") {
    const SmithForm s = smith_normal_form(IntMatrix::identity(3));
    CHECK(s.D == IntMatrix::identity(3));
    CHECK(s.rank == 3);
  }
  SUBCASE("2x2 against determinantal divisors") {
    const IntMatrix m{{2, 4}, {6, 8}};
    const SmithForm s = smith_normal_form(m);
    CHECK(certificate_holds(m, s));
    const auto expect = oracle::invariant_factors(m);
    REQUIRE(expect.size() == 2);
    CHECK(s.D(0, 0) == expect[0]);
    CHECK(s.D(1, 1) == expect[1]);
    CHECK(s.D(0, 0) == 2);
    CHECK(s.D(1, 1) == 4);
  }
  SUBCASE("zero matrix") {
    const IntMatrix m(3, 2);
    const SmithForm s = smith_normal_form(m);
    CHECK(s.D.is_zero());
    CHECK(s.U == IntMatrix::identity(3));
    CHECK(s.V == IntMatrix::identity(2));
    CHECK(s.rank == 0);
  }
}

TEST_CASE("smith certificates on random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix m = random_matrix(rng, size(rng), size(rng), -10, 10);
    const SmithForm s = smith_normal_form(m);
    REQUIRE(certificate_holds(m, s));
    if (m.rows() <= 4 && m.cols() <= 4) {
      const auto expect = oracle::invariant_factors(m);
      REQUIRE(expect.size() == s.rank);
      for (std::size_t i = 0; i < s.rank; ++i) CHECK(s.D(i, i) == expect[i]);
    }
  }
}

TEST_CASE("smith form is deterministic and handles large entries") {
  IntMatrix m{{1000000007LL, 998244353LL}, {123456789LL, 987654321LL}};
  for (int k = 0; k < 6; ++k) m = m * m;  // entries far beyond 64 bits
  const SmithForm a = smith_normal_form(m);
  const SmithForm b = smith_normal_form(m);
  CHECK(certificate_holds(m, a));
  CHECK(a.U == b.U);
  CHECK(a.V == b.V);
}

TEST_CASE("hermite form, integer solve and unimodular inverse") {
  const IntMatrix m{{2, 4}, {0, 6}, {2, 10}};
  const IntMatrix h = hermite_normal_form(m);
  REQUIRE(h.rows() == 2);
  CHECK(h(0, 0) == 2);
  CHECK(h(1, 0) == 0);
  CHECK(h(1, 1) == 6);
  CHECK(h(0, 1) >= 0);
  CHECK(h(0, 1) < 6);

  const IntMatrix a{{2, 0}, {0, 3}};
  auto x = solve_integer(a, {4, 9});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 3);
  CHECK_FALSE(solve_integer(a, {1, 0}).has_value());

  const IntMatrix u{{2, 1}, {1, 1}};
  CHECK(u * unimodular_inverse(u) == IntMatrix::identity(2));
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), InternalError);
}

TEST_CASE("sparse invariant factors agree with the dense form") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const IntMatrix m = random_matrix(rng, 6, 7, -2, 2);
    std::vector<SparseColumn> cols(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m(i, j) != 0) cols[j].emplace_back(i, static_cast<long long>(m(i, j)));
      }
    }
    const InvariantFactors f = sparse_invariant_factors(m.rows(), cols);
    const SmithForm s = smith_normal_form(m);
    CHECK(f.rank == s.rank);
    std::vector<Integer> big;
    for (std::size_t i = 0; i < s.rank; ++i) {
      if (s.D(i, i) > 1) big.push_back(s.D(i, i));
    }
    CHECK(f.nontrivial == big);
  }
}

TEST_CASE("chain complexes square to zero") {
  for (Coord dims : {Coord{1, 1, 1}, Coord{2, 3, 1}, Coord{3, 3, 3}, Coord{4, 2, 5}}) {
    CHECK(torus_complex(Torus(dims)).boundary_squares_to_zero());
  }
  CHECK(product_with_circle(surface_complex(2), 3).boundary_squares_to_zero());
  CHECK(circle_complex(5).boundary_squares_to_zero());
}

TEST_CASE("homology of the supported family") {
  const ChainComplex t = torus_complex(Torus({3, 4, 5}));
  const std::size_t expect[] = {1, 3, 3, 1};
  for (int k = 0; k <= 3; ++k) {
    const HomologyGroup h = homology(t, k);
    CHECK(h.betti == expect[k]);
    CHECK(h.torsion.empty());
  }
  CHECK(homology(circle_complex(7), 1).betti == 1);
  // Kunneth: b_1(Sigma_g x S^1) = 2g + 1, b_2 = 2g + 1.
  for (int g = 1; g <= 3; ++g) {
    const ChainComplex c = product_with_circle(surface_complex(g), 4);
    CHECK(homology(c, 1).betti == static_cast<std::size_t>(2 * g + 1));
    CHECK(homology(c, 2).betti == static_cast<std::size_t>(2 * g + 1));
    CHECK(homology(c, 3).betti == 1);
  }
  CHECK_THROWS_AS(homology(t, 4), InputError);
  CHECK_THROWS_AS(homology(t, -1), InputError);
}

TEST_CASE("torsion is detected") {
  // Cell structure of RP^2: one vertex, one loop a, one face with boundary 2a.
  ChainComplex c;
  c.cells = {1, 1, 1};
  c.boundary.resize(3);
  c.boundary[1].resize(1);
  c.boundary[2] = {{{0, 2}}};
  const HomologyGroup h = homology(c, 1);
  CHECK(h.betti == 0);
  REQUIRE(h.torsion.size() == 1);
  CHECK(h.torsion[0] == 2);
  H1Classifier cls(c, {});
  CHECK(cls.torsion_moduli() == std::vector<Integer>{2});
  const HomologyClass a = cls.classify({1});
  CHECK(a.torsion[0] == 1);
  CHECK(cls.classify({2}).is_zero());
}

TEST_CASE("cycle classes on the 3-torus") {
  const LatticeManifold m = LatticeManifold::torus({4, 4, 4});
  const Torus& t = m.lattice();
  CHECK(cycle_class(coordinate_circle(t, 2, {1, 2, 0}), m) == make_class({0, 0, 1}));
  CHECK(cycle_class(coordinate_circle(t, 0, {0, 3, 3}), m) == make_class({1, 0, 0}));

  // Boundary of a plaquette is null-homologous.
  std::vector<long long> w(t.plaquette_count(), 0);
  w[Torus::plaquette(t.vertex({1, 1, 1}), 0)] = 1;
  CHECK(cycle_class(m.complex().apply_boundary(2, w), m).is_zero());

  // Non-closed chain.
  std::vector<long long> open(t.edge_count(), 0);
  open[Torus::edge(0, 0)] = 1;
  CHECK_THROWS_AS(cycle_class(open, m), BoundaryError);

  // Invariance under random boundaries.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coeff(-2, 2);
  const auto base = coordinate_circle(t, 1, {2, 0, 1});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long long> two(t.plaquette_count());
    for (auto& v : two) v = coeff(rng);
    auto z = m.complex().apply_boundary(2, two);
    for (Index e = 0; e < z.size(); ++e) z[e] += base[e];
    CHECK(cycle_class(z, m) == make_class({0, 1, 0}));
  }
}

TEST_CASE("homologous circles differ by an explicit boundary") {
  const LatticeManifold m = LatticeManifold::torus({2, 2, 2});
  const Torus& t = m.lattice();
  auto z = coordinate_circle(t, 2, {0, 0, 0});
  const auto other = coordinate_circle(t, 2, {1, 1, 0});
  for (Index e = 0; e < z.size(); ++e) z[e] += other[e];
  const auto doubled = coordinate_circle(t, 2, {0, 1, 0});
  for (Index e = 0; e < z.size(); ++e) z[e] -= 2 * doubled[e];
  CHECK(cycle_class(z, m).is_zero());

  // Oracle: an integer 2-chain w with d w = z exists.
  const ChainComplex& c = m.complex();
  IntMatrix d2(c.count(1), c.count(2));
  for (Index j = 0; j < c.count(2); ++j) {
    for (auto [r, v] : c.boundary[2][j]) d2(r, j) += v;
  }
  std::vector<Integer> rhs(z.begin(), z.end());
  const auto w = solve_integer(d2, rhs);
  REQUIRE(w.has_value());
  CHECK(d2.multiply(*w) == rhs);
}

TEST_CASE("Sigma_g x S^1 classes") {
  const LatticeManifold m = LatticeManifold::surface_times_circle(2, 3);
  CHECK(m.classifier().rank() == 5);
  for (std::size_t g = 0; g < m.h1_generators().size(); ++g) {
    HomologyClass c = cycle_class(m.h1_generators()[g], m);
    std::vector<long long> expect(5, 0);
    expect[g] = 1;
    CHECK(c == make_class(expect));
  }
  CHECK_THROWS_AS(poincare_dual({0, 0, 1}, m), CapabilityError);
}

TEST_CASE("intersection numbers and Poincare duality") {
  const Torus t({4, 4, 4});
  const LatticeManifold m = LatticeManifold::torus({4, 4, 4});
  // Dual circle along e_3: dual edges through p(u, 2) for fixed (x, y).
  auto dual_circle = [&](int d, int a, int b) {
    std::vector<long long> n(t.plaquette_count(), 0);
    for (int s = 0; s < t.dim(d); ++s) {
      Coord c{};
      c[d] = s;
      c[(d + 1) % 3] = a;
      c[(d + 2) % 3] = b;
      n[Torus::plaquette(t.vertex(c), d)] = 1;
    }
    return n;
  };
  const auto torus12 = coordinate_torus(t, 2, 1);
  CHECK(intersection_number_dual(t, dual_circle(2, 0, 0), torus12) == 1);
  CHECK(intersection_number_dual(t, dual_circle(2, 3, 2), coordinate_torus(t, 2, 3)) == 1);
  auto doubled = dual_circle(2, 1, 1);
  for (auto& v : doubled) v *= 2;
  CHECK(intersection_number_dual(t, doubled, torus12) == 2);
  CHECK(intersection_number_dual(t, dual_circle(0, 0, 0), torus12) == 0);

  std::vector<long long> open = torus12;
  open[Torus::plaquette(t.vertex({0, 0, 1}), 2)] = 0;
  CHECK_THROWS_AS(intersection_number_dual(t, doubled, open), InputError);

  CHECK_THROWS_AS(intersection_number_primal(t, coordinate_circle(t, 2, {0, 0, 0}), torus12),
                  NonTransverseError);

  // Poincare duality pairing oracle.
  for (std::vector<long long> k :
       {std::vector<long long>{1, 2, 3}, {0, 0, 0}, {0, 0, 5}, {-2, 1, 3}}) {
    const HomologyClass pd = poincare_dual(k, m);
    for (int i = 0; i < 3; ++i) {
      // Represent PD(k) by dual circles and pair with each basis torus.
      std::vector<long long> cyc(t.plaquette_count(), 0);
      for (int d = 0; d < 3; ++d) {
        const auto circ = dual_circle(d, 1, 2);
        for (Index p = 0; p < cyc.size(); ++p) cyc[p] += static_cast<long long>(pd.free[d]) * circ[p];
      }
      CHECK(intersection_number_dual(t, cyc, coordinate_torus(t, i, 2)) == k[i]);
    }
  }
}
