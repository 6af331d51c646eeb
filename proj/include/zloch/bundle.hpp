#pragma once

#include <array>
#include <complex>
#include <vector>

#include "zloch/torus.hpp"

namespace zloch {

// Representative in (-pi, pi].
double wrap_angle(double a);

// U(1) connection on the periodic lattice: one phase per link, stored along
// the reference direction (tail -> head); the reversed link carries -theta.
class U1Bundle {
 public:
  U1Bundle() = default;
  // Phases indexed by edge id; wrapped into (-pi, pi] on construction.
  U1Bundle(const Torus& t, std::vector<double> phases);

  const Torus& torus() const { return torus_; }
  const std::vector<double>& phases() const { return phases_; }
  double phase(Index edge) const { return phases_[edge]; }
  double link_phase(Index edge, int sign) const { return sign > 0 ? phases_[edge] : -phases_[edge]; }

  // Wrapped oriented sum of the four link phases, in (-pi, pi].
  double curvature(Index plaquette) const;
  std::vector<double> curvatures() const;

 private:
  Torus torus_;
  std::vector<double> phases_;
};

U1Bundle trivial_bundle(const Torus& t);

// Uniform flux 2 pi k_d / (N_a N_b) through every plaquette normal to d, in a
// Landau gauge with one twist seam per direction:
//   theta_b(v) += 2 pi k_d v_a / (N_a N_b)
//   theta_a(v) -= 2 pi k_d v_b / N_b      on the seam v_a = N_a - 1
// with a = d + 1, b = d + 2 (mod 3). Requires 2 |k_d| < N_a N_b so the flux
// per plaquette stays below pi; UndersampledError otherwise.
U1Bundle constant_flux_bundle(const Torus& t, const std::array<long long, 3>& k);

struct ChernCoordinates {
  std::array<long long, 3> k{0, 0, 0};
  double residual = 0.0;  // max distance of a slice flux / 2 pi from k_d
};

// (1 / 2 pi) * curvature summed over every coordinate slice normal to each
// direction. All slices of a direction must agree on one integer within
// `tolerance`; NonIntegralFluxError otherwise.
ChernCoordinates chern_coordinates(const U1Bundle& b, double tolerance = 1e-6);

// Net number of 2 pi wraps leaving a cube (a lattice monopole); 0 for every
// cube of a smooth bundle, which is what makes the flux telescope.
long long cube_monopole_charge(const U1Bundle& b, Index cube);
// Floating sum of curvature over the oriented cube boundary.
double cube_flux_sum(const U1Bundle& b, Index cube);

struct SampledSection {
  Torus torus;
  std::vector<std::complex<double>> values;  // by vertex id
  int charge = 1;
};

struct LinkDelta {
  double angle = 0.0;
  bool undersampled = false;  // |angle| >= pi - tol
};

// wrap(arg s_head - arg s_tail - charge * theta). ZeroSampleError if either
// endpoint sample vanishes (|s| <= zero_threshold).
LinkDelta covariant_link_delta(const SampledSection& s, const U1Bundle& b, Index edge,
                               double tolerance = 1e-3, double zero_threshold = 0.0);

// Gauge transformation by lambda (one angle per vertex):
//   s -> s exp(i q lambda),  theta_e -> theta_e + lambda_head - lambda_tail.
U1Bundle gauge_transform(const U1Bundle& b, const std::vector<double>& lambda);
SampledSection gauge_transform(const SampledSection& s, const std::vector<double>& lambda);

}  // namespace zloch
