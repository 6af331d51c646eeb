#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles/sphere.hpp"
#include "zloch/error.hpp"
#include "zloch/spinor.hpp"

using namespace zloch;
using cd = std::complex<double>;

namespace {

Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cd(g(rng), g(rng));
  return m;
}

Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_matrix(rng, n, n));
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

SpinorValue random_spinor(std::mt19937_64& rng) { return random_matrix(rng, 2, 1).col(0); }

// Independent mu: entrywise sums, no matrix products.
Eigen::Matrix2cd mu_oracle(const Eigen::MatrixXcd& b) {
  Eigen::Matrix2cd m;
  double total = 0;
  for (int j = 0; j < b.cols(); ++j) total += std::norm(b(0, j)) + std::norm(b(1, j));
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      cd s = 0;
      for (int j = 0; j < b.cols(); ++j) s += b(r, j) * std::conj(b(c, j));
      m(r, c) = s - (r == c ? 0.5 * total : 0.0);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("mu examples and structure") {
  CHECK(mu(Eigen::MatrixXcd::Identity(2, 2)).norm() == 0);
  SpinorHom d = SpinorHom::Zero(2, 2);
  d(0, 0) = 1;
  const MuValue m = mu(d);
  CHECK(m(0, 0) == cd(0.5));
  CHECK(m(1, 1) == cd(-0.5));
  CHECK(m(0, 1) == cd(0));
  for (int n = 2; n <= 5; ++n) {
    SpinorHom proj = SpinorHom::Zero(2, n);
    proj(0, 0) = proj(1, 1) = 1;
    CHECK(mu(proj).norm() == 0);
    CHECK(is_mu_null(proj));
  }
  SpinorHom parallel = SpinorHom::Zero(2, 2);
  parallel(0, 0) = parallel(1, 0) = 1;
  CHECK_FALSE(is_mu_null(parallel));
  CHECK_THROWS_AS(mu(SpinorHom::Zero(3, 2)), InputError);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    const SpinorHom b = random_matrix(rng, 2, n);
    const MuValue v = mu(b);
    CHECK((v - v.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(v.trace()) <= 1e-12);
    CHECK((v - mu_oracle(b)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("mu equivariance") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    const SpinorHom b = random_matrix(rng, 2, n);
    const Eigen::MatrixXcd a = random_unitary(rng, n);
    CHECK((mu(b * a.adjoint()) - mu(b)).cwiseAbs().maxCoeff() <= 1e-12);
    Eigen::Matrix2cd g = random_unitary(rng, 2);
    g /= std::sqrt(g.determinant());
    CHECK(std::abs(g.determinant() - cd(1)) < 1e-12);
    CHECK((mu(g * b) - g * mu(b) * g.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("quaternionic structure and paired tuples") {
  CHECK(quaternionic_J(SpinorValue(1, 0)) == SpinorValue(0, 1));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const SpinorValue v = random_spinor(rng);
    const SpinorValue jv = quaternionic_J(v);
    CHECK((quaternionic_J(jv) + v).norm() <= 1e-15);
    CHECK(std::abs(v.dot(jv)) <= 1e-15);
    CHECK(std::abs(jv.norm() - v.norm()) <= 1e-15);
    // Antilinear: J(c v) = conj(c) J(v).
    const cd c(0.3, -1.2);
    CHECK((quaternionic_J(c * v) - std::conj(c) * jv).norm() <= 1e-14);
  }
  const SpinorHom one = pair_tuple({SpinorValue(1, 0)});
  CHECK(one == (SpinorHom(2, 2) << 1, 0, 0, 1).finished());
  CHECK(mu(one).norm() == 0);
  const SpinorHom zero = pair_tuple({SpinorValue(0, 0), SpinorValue(0, 0)});
  CHECK(zero.norm() == 0);
  CHECK(mu(zero).norm() == 0);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<SpinorValue> psis;
    double norms = 0;
    for (int j = 0; j < 1 + trial % 4; ++j) {
      psis.push_back(random_spinor(rng));
      norms += psis.back().squaredNorm();
    }
    const SpinorHom b = pair_tuple(psis);
    worst = std::max(worst, mu_oracle(b).cwiseAbs().maxCoeff());
    CHECK(is_mu_null(b));
    CHECK(std::abs(b.squaredNorm() - 2 * norms) <= 1e-12 * (1 + norms));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("mu-null predicate equals orthogonal rows of equal norm") {
  std::mt19937_64 rng(11);
  int agree_true = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const SpinorHom b = random_matrix(rng, 2, 2 + trial % 4);
    CHECK(is_mu_null(b) == rows_orthogonal_equal_norm(b));
  }
  std::uniform_real_distribution<double> scale(0.1, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    // Two orthonormal rows, scaled; every fourth one perturbed off the set.
    SpinorHom b = scale(rng) * random_unitary(rng, n).topRows(2);
    if (trial % 4 == 3) b(1, 0) += 1e-3;
    const bool expected = trial % 4 != 3;
    CHECK(is_mu_null(b) == expected);
    CHECK(rows_orthogonal_equal_norm(b) == expected);
    agree_true += expected;
  }
  CHECK(agree_true == 75);
}

TEST_CASE("kernel frames") {
  SpinorHom b = SpinorHom::Zero(2, 3);
  b(0, 0) = b(1, 1) = 1;
  const GrassFrame f = kernel_frame(b);
  CHECK(f.rows() == 3);
  CHECK(f.cols() == 1);
  CHECK(std::abs(std::abs(f(2, 0)) - 1) < 1e-14);

  std::mt19937_64 rng(13);
  CHECK(kernel_frame(random_matrix(rng, 2, 2)).cols() == 0);

  for (int trial = 0; trial < 50; ++trial) {
    const SpinorHom m = random_matrix(rng, 2, 2 + trial % 5);
    const GrassFrame k = kernel_frame(m);
    CHECK((k.adjoint() * k - Eigen::MatrixXcd::Identity(k.cols(), k.cols())).norm() < 1e-10);
    CHECK((m * k).norm() < 1e-10);
    CHECK(kernel_frame(m) == k);  // deterministic representative
  }

  // psi_1 = (w, 0), psi_2 = (w^2, 0): kernel spanned by (-w, 0, 1, 0) and
  // (0, -conj w, 0, 1), which are already orthogonal.
  const cd w(0.4, -0.7);
  const SpinorHom t = pair_tuple({SpinorValue(w, 0), SpinorValue(w * w, 0)});
  GrassFrame expected(4, 2);
  expected << -w, 0, 0, -std::conj(w), 1, 0, 0, 1;
  expected.col(0).normalize();
  expected.col(1).normalize();
  CHECK(grassmann_distance(kernel_frame(t), expected) < 1e-12);

  // Joint phase rotation psi_j -> e^{i a} psi_j rotates J psi_j by e^{-i a},
  // so the kernel is carried along by diag(e^{-i a}, e^{i a}, ...). A common
  // phase on all columns, and a common sign on the psi_j, fix it.
  std::vector<SpinorValue> psis{random_spinor(rng), random_spinor(rng), random_spinor(rng)};
  std::vector<SpinorValue> rotated, negated;
  for (const auto& p : psis) rotated.push_back(std::polar(1.0, 0.83) * p), negated.push_back(-p);
  const GrassFrame k0 = kernel_frame(pair_tuple(psis));
  Eigen::VectorXcd carry(6);
  for (int j = 0; j < 3; ++j) carry(2 * j) = std::polar(1.0, -0.83), carry(2 * j + 1) = std::polar(1.0, 0.83);
  CHECK(grassmann_distance(carry.asDiagonal() * k0, kernel_frame(pair_tuple(rotated))) < 1e-10);
  CHECK(grassmann_distance(k0, kernel_frame(pair_tuple(rotated))) > 1e-3);
  CHECK(grassmann_distance(k0, kernel_frame(pair_tuple(negated))) < 1e-10);
  CHECK(grassmann_distance(k0, kernel_frame(std::polar(1.0, 2.1) * pair_tuple(psis))) < 1e-10);

  SpinorHom rank_one = SpinorHom::Zero(2, 3);
  rank_one(0, 0) = rank_one(1, 0) = 1;
  CHECK_THROWS_AS(kernel_frame(rank_one), NotSurjectiveError);
  CHECK_THROWS_AS(kernel_frame(SpinorHom::Zero(2, 4)), NotSurjectiveError);
}

TEST_CASE("principal angles") {
  GrassFrame a = GrassFrame::Zero(3, 1), b = GrassFrame::Zero(3, 1);
  a(0, 0) = 1;
  b(0, 0) = std::cos(0.3);
  b(1, 0) = cd(0, std::sin(0.3));
  CHECK(grassmann_distance(a, b) == doctest::Approx(0.3).epsilon(1e-14));
  b(0, 0) = std::cos(1e-9);
  b(1, 0) = std::sin(1e-9);
  CHECK(grassmann_distance(a, b) == doctest::Approx(1e-9).epsilon(1e-6));
  CHECK(grassmann_distance(a, a * std::polar(1.0, 2.0)) < 1e-15);
  CHECK_THROWS_AS(principal_angles(a, GrassFrame::Zero(3, 2)), InputError);
}

TEST_CASE("pullback Chern numbers") {
  std::mt19937_64 rng(17);
  const GrassFrame c = kernel_frame(random_matrix(rng, 2, 4));
  CHECK(pullback_detS_chern(std::vector<GrassFrame>(64, c), 8, 8) == 0);
  CHECK(pullback_detS_chern(std::vector<GrassFrame>(12, GrassFrame(2, 0)), 3, 4) == 0);

  auto direction = [](int p_dim, int q_dim) {
    return [=](int p, int q) {
      const double s = 2 * std::numbers::pi * p / p_dim, t = 2 * std::numbers::pi * q / q_dim;
      return Eigen::Vector3d(std::sin(s), std::sin(t), std::cos(s) + std::cos(t) - 1).normalized();
    };
  };
  for (int m : {16, 64, 128}) {
    CHECK(oracle::sphere_degree(direction(m, m), m, m) == 1);
    CHECK(pullback_detS_chern(cp1_frame_field(m, m), m, m) == -1);
  }
  // The frame field really is the +1 eigenline of the oracle's map.
  const auto frames = cp1_frame_field(16, 16);
  const auto n = direction(16, 16)(3, 5);
  Eigen::Matrix2cd h;
  h << n(2), cd(n(0), -n(1)), cd(n(0), n(1)), -n(2);
  CHECK((h * frames[3 + 16 * 5] - frames[3 + 16 * 5]).norm() < 1e-12);

  // Right U(k) gauge and a lift into Gr_1(C^3) leave the number unchanged.
  std::vector<GrassFrame> gauged, lifted;
  std::uniform_real_distribution<double> phase(-3, 3);
  for (const auto& f : cp1_frame_field(64, 64)) {
    gauged.push_back(f * std::polar(1.0, phase(rng)));
    GrassFrame g = GrassFrame::Zero(3, 2);
    g.topLeftCorner(2, 1) = f;
    g(2, 1) = 1;
    lifted.push_back(g * random_unitary(rng, 2));
  }
  CHECK(pullback_detS_chern(gauged, 64, 64) == -1);
  CHECK(pullback_detS_chern(lifted, 64, 64) == -1);

  // Reversing the grid orientation flips the sign.
  std::vector<GrassFrame> flipped(64 * 64);
  const auto base = cp1_frame_field(64, 64);
  for (int q = 0; q < 64; ++q)
    for (int p = 0; p < 64; ++p) flipped[p + 64 * q] = base[q + 64 * p];
  CHECK(pullback_detS_chern(flipped, 64, 64) == 1);

  CHECK_THROWS_AS(pullback_detS_chern(cp1_frame_field(3, 3), 3, 3, 0.9), RoughFrameError);
  CHECK_THROWS_AS(pullback_detS_chern(base, 64, 63), InputError);
}

TEST_CASE("obstruction arithmetic") {
  CHECK(obstruction_a({}) == 0);
  CHECK(obstruction_a({0, 0, 0}) == 0);
  CHECK(obstruction_a({2}) == 4);
  CHECK(obstruction_a({1, -1}) == 2);
  CHECK(obstruction_a({3, -4}) == 25);
  CHECK_THROWS_AS(obstruction_a({4000000000LL}), InputError);
}

TEST_CASE("model harmonic spinors") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<Point3> points(100);
  for (auto& p : points) p = {u(rng), u(rng), u(rng)};
  for (int n = 1; n <= 4; ++n) {
    const PolynomialSpinor psi = model_harmonic_spinor(n);
    CHECK(dirac_residual(psi, points) == 0);
    CHECK(psi.vanishing_order() == n);
    std::vector<cd> loop;
    for (int k = 0; k < 64; ++k) loop.push_back(psi({std::cos(2 * std::numbers::pi * k / 64),
                                                     std::sin(2 * std::numbers::pi * k / 64), 0.3})(0));
    CHECK(winding_number(loop) == n);
  }
  const PolynomialSpinor split = model_harmonic_spinor(3, {cd(0.5, 0.5), cd(-0.5, -0.5), cd(0.5, -0.5)});
  CHECK(dirac_residual(split, points) == 0);
  CHECK(split.vanishing_order() == 0);
  CHECK(std::abs(split({0.5, -0.5, 7})(0)) < 1e-15);

  // Non-harmonic fields are detected: (conj w, 0) has D = (0, 2).
  PolynomialSpinor bad;
  bad.components[0].push_back({1.0, 0, 1, 0});
  CHECK(dirac_residual(bad, points) == doctest::Approx(2.0));
  // (x3, 0) has D = (1, 0); (0, w) has D = (2, 0).
  PolynomialSpinor x3;
  x3.components[0].push_back({1.0, 0, 0, 1});
  CHECK(dirac(x3)(Point3{1, 2, 3}).isApprox(SpinorValue(1, 0)));
  PolynomialSpinor gw;
  gw.components[1].push_back({1.0, 1, 0, 0});
  CHECK(dirac(gw)(Point3{1, 2, 3}).isApprox(SpinorValue(2, 0)));
  // (x3 w, ... ) mixed: D(x3 conj w, x3 w) = (2 x3 + x3 conj w, 2 x3 - w).
  PolynomialSpinor mixed;
  mixed.components[0].push_back({1.0, 0, 1, 1});
  mixed.components[1].push_back({1.0, 1, 0, 1});
  const cd w(0.3, 0.9);
  const double z = -1.1;
  CHECK(dirac(mixed)(Point3{0.3, 0.9, z}).isApprox(SpinorValue(2 * z + std::conj(w), 2 * z - w)));

  CHECK_THROWS_AS(model_harmonic_spinor(0), InputError);
  CHECK_THROWS_AS(model_harmonic_spinor(2, {cd(0)}), InputError);
}

TEST_CASE("extension of the kernel map across the axis") {
  const auto w1 = model_harmonic_spinor(1);
  const auto w2 = model_harmonic_spinor(2);
  const ExtensionCheck pair = phi0_extension_check({w1, w2});
  CHECK(pair.converged);
  CHECK(pair.oscillation < 1e-4);
  GrassFrame e34 = GrassFrame::Zero(4, 2);
  e34(2, 0) = e34(3, 1) = 1;
  CHECK(grassmann_distance(pair.limit, e34) < 1e-6);

  const ExtensionCheck single = phi0_extension_check({w1});
  CHECK(single.converged);
  CHECK(single.limit.cols() == 0);

  // (w, 0) with (0, conj w): the kernel is spanned by (1, 0, 0, 1) and
  // (0, 1, -1, 0) at every point off the axis.
  PolynomialSpinor anti;
  anti.components[1].push_back({1.0, 0, 1, 0});
  const ExtensionCheck mixed = phi0_extension_check({w1, anti});
  CHECK(mixed.converged);
  CHECK(mixed.oscillation < 1e-10);

  // With the higher-order spinor first, frames rotate with the angle at a
  // fixed radius and do not converge.
  const ExtensionCheck swapped = phi0_extension_check({w2, w1}, {1e-1, 1e-2, 1e-3});
  CHECK_FALSE(swapped.converged);
  CHECK(swapped.oscillation > 1e-2);
}

TEST_CASE("local model sections on a chart") {
  const std::vector<cd> cluster{cd(0.5, 0.5), cd(-0.5, -0.5), cd(0.5, -0.5)};
  const Torus t({24, 24, 24});
  const U1Bundle b = trivial_bundle(t);
  for (int n = 1; n <= 3; ++n) {
    const PolynomialSpinor psi =
        model_harmonic_spinor(n, std::vector<cd>(cluster.begin(), cluster.begin() + n));
    const SampledSection s = sample_first_component(psi, t, {-12.0, -12.0, -12.0});
    ExtractOptions opts;
    opts.chart = true;
    const WeightedChain1 chain = extract_vortex_chain(s, b, opts);
    // Flux through every horizontal layer is n.
    for (int z = 0; z < 24; ++z) {
      long long flux = 0;
      for (int y = 0; y < 24; ++y)
        for (int x = 0; x < 24; ++x) flux += chain.coeff[Torus::plaquette(t.vertex({x, y, z}), 2)];
      CHECK(flux == n);
    }
    CHECK(chain.weighted_length() == 24 * n);
    const TangentCone cone = tangent_cone(chain, {12, 12, 12}, {6, 8, 10});
    REQUIRE(cone.stable);
    REQUIRE(cone.rays.size() == 2);
    for (const auto& ray : cone.rays) {
      CHECK(ray.multiplicity == n);
      CHECK(std::abs(std::abs(ray.direction[2]) - 1) < 0.05);
    }
    CHECK(cone.rays[0].direction[2] * cone.rays[1].direction[2] < 0);
  }
}
