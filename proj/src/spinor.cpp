#include "zloch/spinor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "zloch/error.hpp"

namespace zloch {

namespace {

using cd = std::complex<double>;

cd ipow(cd z, int k) {
  cd out = 1.0;
  for (int i = 0; i < k; ++i) out *= z;
  return out;
}

double ipow(double x, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

cd evaluate(const std::vector<Monomial>& terms, const Point3& x) {
  const cd w(x[0], x[1]);
  cd total = 0.0;
  for (const auto& m : terms) {
    total += m.coeff * ipow(w, m.w) * ipow(std::conj(w), m.wbar) * ipow(x[2], m.x3);
  }
  return total;
}

using Key = std::tuple<int, int, int>;

void accumulate(std::map<Key, cd>& acc, const Monomial& m) {
  if (m.coeff != cd(0.0)) acc[{m.w, m.wbar, m.x3}] += m.coeff;
}

std::vector<Monomial> collect(const std::map<Key, cd>& acc) {
  std::vector<Monomial> out;
  for (const auto& [k, c] : acc) {
    if (c == cd(0.0)) continue;
    out.push_back({c, std::get<0>(k), std::get<1>(k), std::get<2>(k)});
  }
  return out;
}

void check_two_rows(const SpinorHom& b) {
  if (b.rows() != 2) throw InputError("a spinor homomorphism has exactly 2 rows");
}

}  // namespace

MuValue mu(const SpinorHom& b) {
  check_two_rows(b);
  MuValue out = b * b.adjoint();
  const double half = 0.5 * b.squaredNorm();
  out(0, 0) -= half;
  out(1, 1) -= half;
  return out;
}

bool is_mu_null(const SpinorHom& b, double tolerance) {
  return mu(b).cwiseAbs().maxCoeff() <= tolerance;
}

bool rows_orthogonal_equal_norm(const SpinorHom& b, double tolerance) {
  check_two_rows(b);
  const cd inner = b.row(0).conjugate().dot(b.row(1).conjugate());
  const double gap = b.row(0).squaredNorm() - b.row(1).squaredNorm();
  return std::abs(inner) <= tolerance && std::abs(gap) <= tolerance;
}

SpinorValue quaternionic_J(const SpinorValue& v) {
  return SpinorValue(-std::conj(v(1)), std::conj(v(0)));
}

SpinorHom pair_tuple(const std::vector<SpinorValue>& psis) {
  SpinorHom b(2, 2 * static_cast<Eigen::Index>(psis.size()));
  for (std::size_t j = 0; j < psis.size(); ++j) {
    b.col(2 * j) = psis[j];
    b.col(2 * j + 1) = quaternionic_J(psis[j]);
  }
  return b;
}

GrassFrame kernel_frame(const SpinorHom& b, double tolerance) {
  check_two_rows(b);
  const Eigen::Index n = b.cols();
  const Eigen::Matrix2cd gram = b * b.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(gram, Eigen::EigenvaluesOnly);
  const double smallest = std::sqrt(std::max(0.0, eig.eigenvalues()(0)));
  if (n < 2 || !(smallest > tolerance)) {
    throw NotSurjectiveError("homomorphism is not surjective: smallest singular value " +
                             std::to_string(smallest));
  }
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(n, n) - b.adjoint() * gram.inverse() * b;
  GrassFrame frame(n, n - 2);
  std::vector<bool> used(n, false);
  for (Eigen::Index k = 0; k < n - 2; ++k) {
    Eigen::Index pivot = -1;
    double best = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double norm = proj.col(j).norm();
      if (norm > best) best = norm, pivot = j;
    }
    used[pivot] = true;
    const Eigen::VectorXcd q = proj.col(pivot) / best;
    frame.col(k) = q;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!used[j]) proj.col(j) -= q * q.dot(proj.col(j));
    }
  }
  return frame;
}

std::vector<double> principal_angles(const GrassFrame& a, const GrassFrame& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError("principal angles need frames of equal shape");
  }
  const Eigen::Index k = a.cols();
  if (k == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXcd> cos_svd(a.adjoint() * b);
  const Eigen::MatrixXcd residual = b - a * (a.adjoint() * b);
  Eigen::JacobiSVD<Eigen::MatrixXcd> sin_svd(residual);
  // Cosines come out descending, sines descending too: pair the largest
  // cosine with the smallest sine.
  std::vector<double> out(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double c = std::min(1.0, cos_svd.singularValues()(i));
    const double s = std::min(1.0, sin_svd.singularValues()(k - 1 - i));
    out[i] = std::atan2(s, c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double grassmann_distance(const GrassFrame& a, const GrassFrame& b) {
  const auto angles = principal_angles(a, b);
  return angles.empty() ? 0.0 : angles.back();
}

long long pullback_detS_chern(const std::vector<GrassFrame>& frames, int p_dim, int q_dim,
                              double min_overlap) {
  if (p_dim < 1 || q_dim < 1 || frames.size() != static_cast<std::size_t>(p_dim) * q_dim) {
    throw InputError("frame field needs P * Q frames");
  }
  for (const auto& f : frames) {
    if (f.rows() != frames[0].rows() || f.cols() != frames[0].cols()) {
      throw InputError("frames of a field must share one shape");
    }
  }
  if (frames[0].cols() == 0) return 0;
  auto at = [&](int p, int q) -> const GrassFrame& {
    return frames[((p % p_dim) + p_dim) % p_dim + p_dim * (((q % q_dim) + q_dim) % q_dim)];
  };
  double total = 0;
  for (int q = 0; q < q_dim; ++q) {
    for (int p = 0; p < p_dim; ++p) {
      const std::array<std::pair<int, int>, 5> loop{
          {{p, q}, {p + 1, q}, {p + 1, q + 1}, {p, q + 1}, {p, q}}};
      cd holonomy = 1.0;
      for (int i = 0; i < 4; ++i) {
        const GrassFrame& from = at(loop[i].first, loop[i].second);
        const GrassFrame& to = at(loop[i + 1].first, loop[i + 1].second);
        const cd det = (to.adjoint() * from).determinant();
        if (std::abs(det) < min_overlap) {
          throw RoughFrameError("frame field too rough: overlap determinant " +
                                std::to_string(std::abs(det)) + " at plaquette (" +
                                std::to_string(p) + ", " + std::to_string(q) + ")");
        }
        holonomy *= det / std::abs(det);
      }
      total += std::arg(holonomy);
    }
  }
  const double c = total / (2 * std::numbers::pi);
  const double rounded = std::round(c);
  if (std::abs(c - rounded) > 1e-6) {
    throw InternalError("pullback Chern number is not an integer: " + std::to_string(c));
  }
  return static_cast<long long>(rounded);
}

std::vector<GrassFrame> cp1_frame_field(int p_dim, int q_dim) {
  if (p_dim < 1 || q_dim < 1) throw InputError("grid dimensions must be positive");
  std::vector<GrassFrame> out;
  out.reserve(static_cast<std::size_t>(p_dim) * q_dim);
  for (int q = 0; q < q_dim; ++q) {
    for (int p = 0; p < p_dim; ++p) {
      const double s = 2 * std::numbers::pi * p / p_dim;
      const double t = 2 * std::numbers::pi * q / q_dim;
      Eigen::Vector3d d(std::sin(s), std::sin(t), std::cos(s) + std::cos(t) - 1);
      d.normalize();
      Eigen::Matrix2cd h;
      h << d(2), cd(d(0), -d(1)), cd(d(0), d(1)), -d(2);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(h);
      out.push_back(eig.eigenvectors().col(1));
    }
  }
  return out;
}

long long obstruction_a(const std::vector<long long>& degrees) {
  long long total = 0;
  for (long long a : degrees) {
    long long sq;
    if (__builtin_mul_overflow(a, a, &sq) || __builtin_add_overflow(total, sq, &total)) {
      throw InputError("obstruction overflows 64-bit integers");
    }
  }
  return total;
}

SpinorValue PolynomialSpinor::operator()(const Point3& x) const {
  return SpinorValue(evaluate(components[0], x), evaluate(components[1], x));
}

int PolynomialSpinor::vanishing_order() const {
  int order = -1;
  for (const auto& comp : components) {
    for (const auto& m : comp) {
      if (m.coeff == cd(0.0)) continue;
      const int deg = m.w + m.wbar;
      if (order < 0 || deg < order) order = deg;
    }
  }
  return order;
}

PolynomialSpinor model_harmonic_spinor(int n, const std::vector<std::complex<double>>& zeros) {
  if (n < 1) throw InputError("model spinor order must be positive");
  PolynomialSpinor psi;
  if (zeros.empty()) {
    psi.components[0].push_back({1.0, n, 0, 0});
    return psi;
  }
  if (zeros.size() != static_cast<std::size_t>(n)) {
    throw InputError("need exactly N zeros to split an order-N model spinor");
  }
  // Coefficients of prod (w - c_j), lowest degree first.
  std::vector<cd> poly{1.0};
  for (const cd& c : zeros) {
    std::vector<cd> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= c * poly[i];
    }
    poly = std::move(next);
  }
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly[i] != cd(0.0)) psi.components[0].push_back({poly[i], static_cast<int>(i), 0, 0});
  }
  return psi;
}

PolynomialSpinor dirac(const PolynomialSpinor& psi) {
  // D(f, g) = (2 d_w g + d_3 f, 2 d_wbar f - d_3 g).
  std::array<std::map<Key, cd>, 2> acc;
  const auto& f = psi.components[0];
  const auto& g = psi.components[1];
  for (const auto& m : g) {
    if (m.w > 0) accumulate(acc[0], {2.0 * m.coeff * double(m.w), m.w - 1, m.wbar, m.x3});
    if (m.x3 > 0) accumulate(acc[1], {-m.coeff * double(m.x3), m.w, m.wbar, m.x3 - 1});
  }
  for (const auto& m : f) {
    if (m.x3 > 0) accumulate(acc[0], {m.coeff * double(m.x3), m.w, m.wbar, m.x3 - 1});
    if (m.wbar > 0) accumulate(acc[1], {2.0 * m.coeff * double(m.wbar), m.w, m.wbar - 1, m.x3});
  }
  PolynomialSpinor out;
  out.components[0] = collect(acc[0]);
  out.components[1] = collect(acc[1]);
  return out;
}

double dirac_residual(const PolynomialSpinor& psi, const std::vector<Point3>& points) {
  const PolynomialSpinor d = dirac(psi);
  double worst = 0;
  for (const auto& x : points) worst = std::max(worst, d(x).norm());
  return worst;
}

ExtensionCheck phi0_extension_check(const std::vector<PolynomialSpinor>& psis,
                                    const std::vector<double>& radii, int samples,
                                    double tolerance) {
  if (psis.empty()) throw InputError("need at least one spinor");
  if (radii.empty() || samples < 1) throw InputError("need radii and samples");
  for (double r : radii) {
    if (!(r > 0)) throw InputError("radii must be positive");
  }
  const double r_min = *std::min_element(radii.begin(), radii.end());
  auto frame_at = [&](double r, int k) {
    const double angle = 2 * std::numbers::pi * k / samples;
    const Point3 x{r * std::cos(angle), r * std::sin(angle), 0.0};
    std::vector<SpinorValue> values;
    for (const auto& psi : psis) values.push_back(psi(x));
    SpinorHom b = pair_tuple(values);
    const double norm = b.norm();
    if (norm == 0) throw ZeroSampleError("all spinors vanish at a sample point off the axis");
    b /= norm;
    return kernel_frame(b);
  };
  ExtensionCheck out;
  out.limit = frame_at(r_min, 0);
  for (double r : radii) {
    for (int k = 0; k < samples; ++k) {
      out.oscillation = std::max(out.oscillation, grassmann_distance(out.limit, frame_at(r, k)));
    }
  }
  out.converged = out.oscillation < tolerance;
  return out;
}

SampledSection sample_first_component(const PolynomialSpinor& psi, const Torus& t,
                                      const Point3& origin, double spacing) {
  if (!(spacing > 0)) throw InputError("spacing must be positive");
  SampledSection s{t, std::vector<cd>(t.vertex_count()), 1};
  for (Index v = 0; v < t.vertex_count(); ++v) {
    const Coord c = t.coords(v);
    const Point3 x{origin[0] + spacing * c[0], origin[1] + spacing * c[1],
                   origin[2] + spacing * c[2]};
    s.values[v] = evaluate(psi.components[0], x);
  }
  return s;
}

}  // namespace zloch
