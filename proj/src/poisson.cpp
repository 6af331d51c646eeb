#include "zloch/detail/poisson.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "zloch/error.hpp"

namespace zloch::detail {

namespace {
// Planner calls are not thread safe in FFTW.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct PoissonSolver::Impl {
  double* real = nullptr;
  fftw_complex* spectrum = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::vector<double> inverse_eigen;  // 1 / (V * lambda(k)), 0 at k = 0
  std::size_t spectrum_size = 0;
};

PoissonSolver::PoissonSolver(const Torus& t) : torus_(t), impl_(std::make_unique<Impl>()) {
  const int n1 = t.dim(0), n2 = t.dim(1), n3 = t.dim(2);
  const int h1 = n1 / 2 + 1;
  impl_->spectrum_size = static_cast<std::size_t>(n3) * n2 * h1;
  impl_->real = fftw_alloc_real(t.vertex_count());
  impl_->spectrum = fftw_alloc_complex(impl_->spectrum_size);
  if (!impl_->real || !impl_->spectrum) throw InternalError("FFT buffer allocation failed");
  {
    std::lock_guard lock(planner_mutex());
    impl_->forward = fftw_plan_dft_r2c_3d(n3, n2, n1, impl_->real, impl_->spectrum, FFTW_ESTIMATE);
    impl_->backward = fftw_plan_dft_c2r_3d(n3, n2, n1, impl_->spectrum, impl_->real, FFTW_ESTIMATE);
  }
  const double two_pi = 2.0 * std::numbers::pi;
  const double volume = static_cast<double>(t.vertex_count());
  impl_->inverse_eigen.resize(impl_->spectrum_size);
  std::size_t i = 0;
  for (int z = 0; z < n3; ++z) {
    for (int y = 0; y < n2; ++y) {
      for (int x = 0; x < h1; ++x, ++i) {
        const double lambda = (2.0 - 2.0 * std::cos(two_pi * x / n1)) +
                              (2.0 - 2.0 * std::cos(two_pi * y / n2)) +
                              (2.0 - 2.0 * std::cos(two_pi * z / n3));
        impl_->inverse_eigen[i] = (x == 0 && y == 0 && z == 0) ? 0.0 : 1.0 / (volume * lambda);
      }
    }
  }
}

PoissonSolver::~PoissonSolver() {
  std::lock_guard lock(planner_mutex());
  if (impl_->forward) fftw_destroy_plan(impl_->forward);
  if (impl_->backward) fftw_destroy_plan(impl_->backward);
  fftw_free(impl_->real);
  fftw_free(impl_->spectrum);
}

void PoissonSolver::solve(std::vector<double>& field) const {
  if (field.size() != torus_.vertex_count()) throw InternalError("Poisson field has wrong size");
  std::copy(field.begin(), field.end(), impl_->real);
  fftw_execute(impl_->forward);
  for (std::size_t i = 0; i < impl_->spectrum_size; ++i) {
    impl_->spectrum[i][0] *= impl_->inverse_eigen[i];
    impl_->spectrum[i][1] *= impl_->inverse_eigen[i];
  }
  fftw_execute(impl_->backward);
  std::copy(impl_->real, impl_->real + field.size(), field.begin());
}

}  // namespace zloch::detail
