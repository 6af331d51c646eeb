#include "zloch/bundle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "zloch/error.hpp"

namespace zloch {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double wrap_angle(double a) {
  if (a > -kPi && a <= kPi) return a;
  double r = std::remainder(a, kTwoPi);  // [-pi, pi]
  if (r <= -kPi) r += kTwoPi;
  return r;
}

U1Bundle::U1Bundle(const Torus& t, std::vector<double> phases)
    : torus_(t), phases_(std::move(phases)) {
  if (phases_.size() != t.edge_count()) {
    throw InputError("bundle needs " + std::to_string(t.edge_count()) + " link phases, got " +
                     std::to_string(phases_.size()));
  }
  for (double& p : phases_) {
    if (!std::isfinite(p)) throw InputError("link phase is not finite");
    p = wrap_angle(p);
  }
}

double U1Bundle::curvature(Index p) const {
  double sum = 0.0;
  for (const auto& [e, s] : torus_.plaquette_boundary(p)) sum += s * phases_[e];
  return wrap_angle(sum);
}

std::vector<double> U1Bundle::curvatures() const {
  std::vector<double> out(torus_.plaquette_count());
  for (Index p = 0; p < out.size(); ++p) out[p] = curvature(p);
  return out;
}

U1Bundle trivial_bundle(const Torus& t) { return U1Bundle(t, std::vector<double>(t.edge_count(), 0.0)); }

U1Bundle constant_flux_bundle(const Torus& t, const std::array<long long, 3>& k) {
  std::vector<double> theta(t.edge_count(), 0.0);
  for (int d = 0; d < 3; ++d) {
    if (k[d] == 0) continue;
    const int a = (d + 1) % 3;
    const int b = (d + 2) % 3;
    const long long area = static_cast<long long>(t.dim(a)) * t.dim(b);
    if (2 * std::llabs(k[d]) >= area) {
      std::ostringstream os;
      os << "undersampled bundle: flux " << k[d] << " through a " << t.dim(a) << "x" << t.dim(b)
         << " slice needs at least pi per plaquette";
      throw UndersampledError(os.str());
    }
    const double kd = static_cast<double>(k[d]);
    for (Index v = 0; v < t.vertex_count(); ++v) {
      const Coord c = t.coords(v);
      theta[Torus::edge(v, b)] += kTwoPi * kd * c[a] / static_cast<double>(area);
      if (c[a] == t.dim(a) - 1) theta[Torus::edge(v, a)] -= kTwoPi * kd * c[b] / t.dim(b);
    }
  }
  return U1Bundle(t, std::move(theta));
}

ChernCoordinates chern_coordinates(const U1Bundle& bundle, double tolerance) {
  const Torus& t = bundle.torus();
  ChernCoordinates out;
  const std::vector<double> f = bundle.curvatures();
  for (int d = 0; d < 3; ++d) {
    std::vector<double> slice(static_cast<Index>(t.dim(d)), 0.0);
    for (Index v = 0; v < t.vertex_count(); ++v) {
      slice[static_cast<Index>(t.coords(v)[d])] += f[Torus::plaquette(v, d)];
    }
    const double first = slice[0] / kTwoPi;
    const long long k = std::llround(first);
    for (Index l = 0; l < slice.size(); ++l) {
      const double value = slice[l] / kTwoPi;
      const double residual = std::abs(value - static_cast<double>(k));
      out.residual = std::max(out.residual, residual);
      if (residual > tolerance) {
        std::ostringstream os;
        os.precision(12);
        os << "non-integral flux: slice " << l << " normal to direction " << d + 1
           << " carries " << value << " flux quanta, slice 0 carries " << first;
        throw NonIntegralFluxError(os.str());
      }
    }
    out.k[d] = k;
  }
  return out;
}

double cube_flux_sum(const U1Bundle& b, Index cube) {
  double sum = 0.0;
  for (const auto& [p, s] : b.torus().cube_boundary(cube)) sum += s * b.curvature(p);
  return sum;
}

long long cube_monopole_charge(const U1Bundle& b, Index cube) {
  return std::llround(cube_flux_sum(b, cube) / kTwoPi);
}

LinkDelta covariant_link_delta(const SampledSection& s, const U1Bundle& b, Index edge,
                               double tolerance, double zero_threshold) {
  const Torus& t = b.torus();
  const Index tail = t.edge_tail(edge);
  const Index head = t.edge_head(edge);
  for (Index v : {tail, head}) {
    if (std::abs(s.values[v]) <= zero_threshold) {
      const Coord c = t.coords(v);
      throw ZeroSampleError("zero sample at vertex (" + std::to_string(c[0]) + "," +
                            std::to_string(c[1]) + "," + std::to_string(c[2]) + ")");
    }
  }
  LinkDelta out;
  out.angle = wrap_angle(std::arg(s.values[head]) - std::arg(s.values[tail]) -
                         s.charge * b.phase(edge));
  out.undersampled = std::abs(out.angle) >= kPi - tolerance;
  return out;
}

U1Bundle gauge_transform(const U1Bundle& b, const std::vector<double>& lambda) {
  const Torus& t = b.torus();
  if (lambda.size() != t.vertex_count()) throw InputError("gauge needs one angle per vertex");
  std::vector<double> theta = b.phases();
  for (Index e = 0; e < theta.size(); ++e) {
    theta[e] += lambda[t.edge_head(e)] - lambda[t.edge_tail(e)];
  }
  return U1Bundle(t, std::move(theta));
}

SampledSection gauge_transform(const SampledSection& s, const std::vector<double>& lambda) {
  if (lambda.size() != s.values.size()) throw InputError("gauge needs one angle per vertex");
  SampledSection out = s;
  for (Index v = 0; v < lambda.size(); ++v) {
    out.values[v] *= std::polar(1.0, s.charge * lambda[v]);
  }
  return out;
}

}  // namespace zloch
