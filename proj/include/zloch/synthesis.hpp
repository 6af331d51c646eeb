#pragma once

#include <complex>
#include <limits>
#include <memory>
#include <random>
#include <vector>

#include "zloch/bundle.hpp"

namespace zloch {

namespace detail {
class PoissonSolver;
}

// A straight closed dual line along `direction` through the plaquettes
// p(u, direction) with u_a = a, u_b = b (a = direction + 1, b = direction + 2
// mod 3). Multiplicity m is realized as |m| adjacent unit lines at
// a, a + 1, ..., a + |m| - 1, all oriented by the sign of m.
struct VortexSeed {
  int direction = 2;
  int a = 0;
  int b = 0;
  int multiplicity = 1;
};

// Per-plaquette vorticity of the seeds. InputError if two seeds come closer
// than 3 lattice units (periodic Chebyshev distance between the dual lines).
std::vector<long long> seed_vorticity(const Torus& t, const std::vector<VortexSeed>& seeds);

// Constant section `value` everywhere.
SampledSection constant_section(const Torus& t, std::complex<double> value = 1.0, int charge = 1);

// Builds sections with a prescribed closed vorticity on a fixed bundle.
//
// The covariant phase increment is j + c where j = d* Delta^{-1} R solves
// dj = R = 2 pi omega - q F on plaquettes (FFT Poisson solve per component)
// and c is a constant per direction that makes the holonomy around the
// coordinate circles a multiple of 2 pi. The phase is integrated along a
// spanning tree. The modulus is tanh(0.7 + hop distance to the nearest
// vortex plaquette corner), optionally multiplied by a positive scale field.
class SectionSynthesizer {
 public:
  SectionSynthesizer(const U1Bundle& b, int charge = 1);
  ~SectionSynthesizer();

  const U1Bundle& bundle() const { return bundle_; }
  int charge() const { return charge_; }
  // charge * Chern coordinates: the class every vorticity must carry.
  const std::array<long long, 3>& target_class() const { return target_; }

  // FluxMismatchError unless omega is closed with class charge * k. The
  // largest intended covariant phase step |j + c + d(extra_phase)| is
  // written to `max_step`: below pi - tol the section realizes omega exactly.
  // If that step reaches `give_up` no values are built and the returned
  // section is empty.
  SampledSection synthesize(const std::vector<long long>& omega,
                            const std::vector<double>* extra_phase = nullptr,
                            const std::vector<double>* modulus_scale = nullptr,
                            double* max_step = nullptr,
                            double give_up = std::numeric_limits<double>::infinity()) const;

 private:
  U1Bundle bundle_;
  int charge_;
  std::array<long long, 3> target_{};
  std::unique_ptr<detail::PoissonSolver> solver_;
  std::vector<double> bundle_current_;  // d* Delta^{-1}(-q F), per edge
  std::vector<double> solve_current(const std::vector<double>& r) const;
};

// UndersampledError if the seeds force a covariant phase step within
// `tolerance` of pi.
SampledSection vortex_section(const U1Bundle& b, const std::vector<VortexSeed>& seeds,
                              int charge = 1, double tolerance = 1e-3);

struct RandomSection {
  SampledSection section;
  std::vector<long long> vorticity;  // ground truth per plaquette
};

// Random valid section: random class-consistent seeds (with optional
// cancelling pairs), contractible square vortex rings, a bounded random
// phase field and a random modulus scale. Every link delta stays below
// pi - tolerance; draws that violate it are discarded and redrawn.
RandomSection random_valid_section(const SectionSynthesizer& synth, std::mt19937_64& rng,
                                   double tolerance = 1e-3);

}  // namespace zloch
