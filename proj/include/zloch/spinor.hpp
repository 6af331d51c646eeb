#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "zloch/bundle.hpp"
#include "zloch/zerolocus.hpp"

namespace zloch {

// Conventions: J(z1, z2) = (-conj z2, conj z1); standard Pauli matrices;
// <u, v> = sum conj(u_i) v_i.
using SpinorValue = Eigen::Vector2cd;
using SpinorHom = Eigen::MatrixXcd;   // 2 x n
using MuValue = Eigen::Matrix2cd;
using GrassFrame = Eigen::MatrixXcd;  // n x k, orthonormal columns

// B B^* - (1/2) |B|^2 Id, |.| the Frobenius norm. InputError unless B has 2 rows.
MuValue mu(const SpinorHom& b);

// B B^* = (1/2)|B|^2 Id within `tolerance` (max entry of the difference).
bool is_mu_null(const SpinorHom& b, double tolerance = 1e-10);

// The two rows are orthogonal and of equal norm within `tolerance`.
bool rows_orthogonal_equal_norm(const SpinorHom& b, double tolerance = 1e-10);

SpinorValue quaternionic_J(const SpinorValue& v);

// Columns psi_1, J psi_1, psi_2, J psi_2, ...: a 2 x 2k matrix with mu = 0.
SpinorHom pair_tuple(const std::vector<SpinorValue>& psis);

// Orthonormal basis of ker B, n x (n - 2). The projector I - B^+ B is
// orthonormalized by Gram-Schmidt with column pivoting (largest remaining
// norm, lowest index on ties), so equal input gives an equal frame.
// NotSurjectiveError if the smaller singular value of B is <= tolerance.
GrassFrame kernel_frame(const SpinorHom& b, double tolerance = 1e-10);

// Principal angles between the spans of two frames, ascending.
// InputError on mismatched shapes.
std::vector<double> principal_angles(const GrassFrame& a, const GrassFrame& b);
// Largest principal angle; 0 for two empty frames.
double grassmann_distance(const GrassFrame& a, const GrassFrame& b);

// First Chern number of the pullback of det S (S tautological) along a
// frame field on a periodic P x Q grid, vertex (p, q) at index p + P q, the
// grid oriented by (p, q). Per plaquette the holonomy of det S is
// arg prod det(F_j^* F_i) over the edges i -> j of the counterclockwise
// boundary; the total over 2 pi is rounded. RoughFrameError if an overlap
// determinant has modulus below `min_overlap`, InternalError if the total
// misses an integer by more than 1e-6.
long long pullback_detS_chern(const std::vector<GrassFrame>& frames, int p_dim, int q_dim,
                              double min_overlap = 1e-6);

// Degree-one map from the P x Q grid to CP^1 = Gr_1(C^2): the +1
// eigenline of n . sigma for n = d / |d|, d = (sin s, sin t, cos s + cos t - 1),
// s = 2 pi p / P, t = 2 pi q / Q.
std::vector<GrassFrame> cp1_frame_field(int p_dim, int q_dim);

// sum a_i^2. InputError on overflow.
long long obstruction_a(const std::vector<long long>& degrees);

// c w^a conj(w)^b x3^c with w = x1 + i x2.
struct Monomial {
  std::complex<double> coeff;
  int w = 0;
  int wbar = 0;
  int x3 = 0;
};

// C^2-valued polynomial field on a flat R^3 chart.
struct PolynomialSpinor {
  std::array<std::vector<Monomial>, 2> components;
  SpinorValue operator()(const Point3& x) const;
  // Smallest total degree in (w, conj w) of a nonzero term; -1 if zero.
  int vanishing_order() const;
};

// (w^N, 0), or (prod_j (w - c_j), 0) when N zeros are given. Both are
// harmonic; the second splits the order-N zero along the x3-axis into N
// simple zero lines. InputError unless N >= 1 and zeros is empty or has N
// entries.
PolynomialSpinor model_harmonic_spinor(int n, const std::vector<std::complex<double>>& zeros = {});

// sigma_1 d_1 + sigma_2 d_2 + sigma_3 d_3 applied symbolically, like terms
// merged and zero terms dropped.
PolynomialSpinor dirac(const PolynomialSpinor& psi);
// max over points of |D psi|.
double dirac_residual(const PolynomialSpinor& psi, const std::vector<Point3>& points);

struct ExtensionCheck {
  bool converged = false;
  double oscillation = 0;  // largest distance to the limit frame
  GrassFrame limit;        // frame at the first sample of the smallest radius
};

// Kernel frames of pair_tuple on circles of the given radii around the
// x3-axis (at x3 = 0, `samples` points each); B is normalized before the
// kernel is taken. Converged iff every frame lies within `tolerance`
// (largest principal angle) of the limit.
ExtensionCheck phi0_extension_check(const std::vector<PolynomialSpinor>& psis,
                                    const std::vector<double>& radii = {1e-5, 1e-6, 1e-7},
                                    int samples = 16, double tolerance = 1e-4);

// First component of psi at the vertices of t, vertex v at origin +
// spacing * coords(v). Trivial-bundle section of charge 1.
SampledSection sample_first_component(const PolynomialSpinor& psi, const Torus& t,
                                      const Point3& origin, double spacing = 1.0);

}  // namespace zloch
