#include "zloch/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

#include "zloch/detail/poisson.hpp"
#include "zloch/error.hpp"

namespace zloch {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// A connected piece of vorticity: plaquettes with signs. Distances are
// measured between plaquette centers in doubled integer coordinates.
struct Component {
  std::vector<std::pair<Index, int>> cells;
  std::vector<Coord> centers;  // doubled, filled by finish()
};

Coord doubled_center(const Torus& t, Index p) {
  const Coord u = t.coords(Torus::base(p));
  const int d = Torus::direction(p);
  Coord c{2 * u[0], 2 * u[1], 2 * u[2]};
  c[(d + 1) % 3] += 1;
  c[(d + 2) % 3] += 1;
  return c;
}

Component finish(const Torus& t, Component c) {
  c.centers.reserve(c.cells.size());
  for (const auto& cell : c.cells) c.centers.push_back(doubled_center(t, cell.first));
  return c;
}

// Periodic Chebyshev distance >= `gap` between every pair of cells.
bool separated(const Torus& t, const Component& x, const Component& y, int gap) {
  const int limit = 2 * gap;
  const std::array<int, 3> period{2 * t.dim(0), 2 * t.dim(1), 2 * t.dim(2)};
  for (const Coord& a : x.centers) {
    for (const Coord& b : y.centers) {
      bool far = false;
      for (int d = 0; d < 3 && !far; ++d) {
        const int delta = std::abs(a[d] - b[d]);  // both already reduced
        far = std::min(delta, period[d] - delta) >= limit;
      }
      if (!far) return false;
    }
  }
  return true;
}

Component seed_component(const Torus& t, const VortexSeed& s) {
  if (s.direction < 0 || s.direction > 2) throw InputError("seed direction must be 0, 1 or 2");
  Component c;
  const int d = s.direction;
  const int sign = s.multiplicity > 0 ? 1 : -1;
  for (int j = 0; j < std::abs(s.multiplicity); ++j) {
    for (int level = 0; level < t.dim(d); ++level) {
      Coord u{};
      u[d] = level;
      u[(d + 1) % 3] = s.a + j;
      u[(d + 2) % 3] = s.b;
      c.cells.emplace_back(Torus::plaquette(t.vertex(u), d), sign);
    }
  }
  return finish(t, std::move(c));
}

// Dual square loop in the plane of directions (a, b) through cube w, sides
// la and lb. Closed and null-homologous.
Component ring_component(const Torus& t, int normal, Coord w, int la, int lb, int sign) {
  const int a = (normal + 1) % 3;
  const int b = (normal + 2) % 3;
  Component c;
  auto at = [&](int sa, int sb) {
    Coord u = w;
    u[a] += sa;
    u[b] += sb;
    return t.vertex(u);
  };
  for (int k = 1; k <= la; ++k) {
    c.cells.emplace_back(Torus::plaquette(at(k, 0), a), sign);
    c.cells.emplace_back(Torus::plaquette(at(k, lb), a), -sign);
  }
  for (int k = 1; k <= lb; ++k) {
    c.cells.emplace_back(Torus::plaquette(at(la, k), b), sign);
    c.cells.emplace_back(Torus::plaquette(at(0, k), b), -sign);
  }
  return finish(t, std::move(c));
}

std::vector<long long> to_vorticity(const Torus& t, const std::vector<Component>& comps) {
  std::vector<long long> omega(t.plaquette_count(), 0);
  for (const auto& c : comps) {
    for (const auto& [p, s] : c.cells) omega[p] += s;
  }
  return omega;
}

}  // namespace

std::vector<long long> seed_vorticity(const Torus& t, const std::vector<VortexSeed>& seeds) {
  std::vector<Component> comps;
  for (const auto& s : seeds) {
    if (s.multiplicity == 0) continue;
    Component c = seed_component(t, s);
    for (const auto& other : comps) {
      if (!separated(t, c, other, 3)) {
        std::ostringstream os;
        os << "seed at direction " << s.direction << " position (" << s.a << "," << s.b
           << ") is closer than 3 lattice units to another seed";
        throw InputError(os.str());
      }
    }
    comps.push_back(std::move(c));
  }
  return to_vorticity(t, comps);
}

SampledSection constant_section(const Torus& t, std::complex<double> value, int charge) {
  return SampledSection{t, std::vector<std::complex<double>>(t.vertex_count(), value), charge};
}

SectionSynthesizer::SectionSynthesizer(const U1Bundle& b, int charge)
    : bundle_(b), charge_(charge), solver_(std::make_unique<detail::PoissonSolver>(b.torus())) {
  const ChernCoordinates k = chern_coordinates(b);
  for (int d = 0; d < 3; ++d) target_[d] = charge * k.k[d];
  std::vector<double> r = b.curvatures();
  for (double& x : r) x *= -charge;
  bundle_current_ = solve_current(r);
}

SectionSynthesizer::~SectionSynthesizer() = default;

std::vector<double> SectionSynthesizer::solve_current(const std::vector<double>& r) const {
  const Torus& t = bundle_.torus();
  std::vector<double> psi(t.plaquette_count());
  std::vector<double> field(t.vertex_count());
  for (int d = 0; d < 3; ++d) {
    for (Index v = 0; v < field.size(); ++v) field[v] = r[Torus::plaquette(v, d)];
    solver_->solve(field);
    for (Index v = 0; v < field.size(); ++v) psi[Torus::plaquette(v, d)] = field[v];
  }
  std::vector<double> j(t.edge_count(), 0.0);
  for (Index p = 0; p < psi.size(); ++p) {
    if (psi[p] == 0.0) continue;
    for (const auto& [e, s] : t.plaquette_boundary(p)) j[e] += s * psi[p];
  }
  return j;
}

SampledSection SectionSynthesizer::synthesize(const std::vector<long long>& omega,
                                              const std::vector<double>* extra_phase,
                                              const std::vector<double>* modulus_scale,
                                              double* max_step, double give_up) const {
  const Torus& t = bundle_.torus();
  if (omega.size() != t.plaquette_count()) throw InputError("vorticity needs one entry per plaquette");
  for (Index u = 0; u < t.cube_count(); ++u) {
    long long defect = 0;
    for (int d = 0; d < 3; ++d) {
      defect += omega[Torus::plaquette(u, d)] - omega[Torus::plaquette(t.shift(u, d, 1), d)];
    }
    if (defect != 0) throw InputError("vorticity is not closed at cube " + std::to_string(u));
  }
  for (int d = 0; d < 3; ++d) {
    long long flux = 0;
    for (int a = 0; a < t.dim((d + 1) % 3); ++a) {
      for (int b = 0; b < t.dim((d + 2) % 3); ++b) {
        Coord u{};
        u[(d + 1) % 3] = a;
        u[(d + 2) % 3] = b;
        flux += omega[Torus::plaquette(t.vertex(u), d)];
      }
    }
    if (flux != target_[d]) {
      std::ostringstream os;
      os << "flux mismatch: vortex lines carry " << flux << " through the slice normal to direction "
         << d + 1 << " but charge * flux is " << target_[d];
      throw FluxMismatchError(os.str());
    }
  }

  std::vector<double> r(t.plaquette_count(), 0.0);
  bool any = false;
  for (Index p = 0; p < r.size(); ++p) {
    if (omega[p] != 0) r[p] = kTwoPi * static_cast<double>(omega[p]), any = true;
  }
  std::vector<double> inc = bundle_current_;
  if (any) {
    const std::vector<double> j = solve_current(r);
    for (Index e = 0; e < inc.size(); ++e) inc[e] += j[e];
  }
  for (Index e = 0; e < inc.size(); ++e) inc[e] += charge_ * bundle_.phase(e);

  // Holonomy of the coordinate circles through the origin.
  std::array<double, 3> shift{};
  for (int d = 0; d < 3; ++d) {
    double h = 0.0;
    Index v = 0;
    for (int s = 0; s < t.dim(d); ++s) {
      h += inc[Torus::edge(v, d)];
      v = t.shift(v, d, 1);
    }
    shift[d] = (kTwoPi * std::round(h / kTwoPi) - h) / t.dim(d);
  }

  if (max_step) {
    double worst = 0.0;
    for (Index e = 0; e < inc.size(); ++e) {
      double step = inc[e] - charge_ * bundle_.phase(e) + shift[Torus::direction(e)];
      if (extra_phase) step += (*extra_phase)[t.edge_head(e)] - (*extra_phase)[t.edge_tail(e)];
      worst = std::max(worst, std::abs(step));
    }
    *max_step = worst;
    if (worst >= give_up) return SampledSection{t, {}, charge_};
  }

  // Spanning tree: x row, then y columns, then z columns.
  std::vector<double> alpha(t.vertex_count(), 0.0);
  const Coord& n = t.dims();
  for (int x = 1; x < n[0]; ++x) {
    const Index prev = t.vertex({x - 1, 0, 0});
    alpha[t.vertex({x, 0, 0})] = alpha[prev] + inc[Torus::edge(prev, 0)] + shift[0];
  }
  for (int x = 0; x < n[0]; ++x) {
    for (int y = 1; y < n[1]; ++y) {
      const Index prev = t.vertex({x, y - 1, 0});
      alpha[t.vertex({x, y, 0})] = alpha[prev] + inc[Torus::edge(prev, 1)] + shift[1];
    }
  }
  for (int x = 0; x < n[0]; ++x) {
    for (int y = 0; y < n[1]; ++y) {
      for (int z = 1; z < n[2]; ++z) {
        const Index prev = t.vertex({x, y, z - 1});
        alpha[t.vertex({x, y, z})] = alpha[prev] + inc[Torus::edge(prev, 2)] + shift[2];
      }
    }
  }

  // Modulus: hop distance from the corners of vortex plaquettes.
  std::vector<double> rho(t.vertex_count(), 1.0);
  if (any) {
    std::vector<int> hops(t.vertex_count(), -1);
    std::deque<Index> queue;
    for (Index p = 0; p < omega.size(); ++p) {
      if (omega[p] == 0) continue;
      for (const auto& [e, s] : t.plaquette_boundary(p)) {
        const Index v = t.edge_tail(e);
        if (hops[v] < 0) hops[v] = 0, queue.push_back(v);
      }
    }
    while (!queue.empty()) {
      const Index v = queue.front();
      queue.pop_front();
      for (int d = 0; d < 3; ++d) {
        for (int step : {-1, 1}) {
          const Index w = t.shift(v, d, step);
          if (hops[w] < 0) hops[w] = hops[v] + 1, queue.push_back(w);
        }
      }
    }
    std::vector<double> table;
    for (Index v = 0; v < rho.size(); ++v) {
      while (static_cast<int>(table.size()) <= hops[v]) table.push_back(std::tanh(0.7 + table.size()));
      rho[v] = table[hops[v]];
    }
  }

  SampledSection out{t, std::vector<std::complex<double>>(t.vertex_count()), charge_};
  for (Index v = 0; v < out.values.size(); ++v) {
    double a = alpha[v];
    double m = rho[v];
    if (extra_phase) a += (*extra_phase)[v];
    if (modulus_scale) m *= (*modulus_scale)[v];
    out.values[v] = std::polar(m, a);
  }
  return out;
}

SampledSection vortex_section(const U1Bundle& b, const std::vector<VortexSeed>& seeds, int charge,
                              double tolerance) {
  const std::vector<long long> omega = seed_vorticity(b.torus(), seeds);
  double step = 0.0;
  SampledSection s = SectionSynthesizer(b, charge).synthesize(omega, nullptr, nullptr, &step);
  if (step >= std::numbers::pi - tolerance) {
    throw UndersampledError("undersampled section: the seeds need a covariant phase step of " +
                            std::to_string(step) + " on some link");
  }
  return s;
}

namespace {

// Random placement of the class-carrying seeds, optional cancelling pairs
// and contractible rings. Returns false if the layout did not fit.
bool random_layout(const Torus& t, const std::array<long long, 3>& target, bool minimal,
                   std::mt19937_64& rng, std::vector<Component>& comps) {
  comps.clear();
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution pair(0.35);
  std::vector<VortexSeed> seeds;
  for (int d = 0; d < 3; ++d) {
    const int sign = target[d] >= 0 ? 1 : -1;
    long long remaining = std::llabs(target[d]);
    while (remaining > 0) {
      const int size = (remaining >= 2 && (minimal || coin(rng))) ? 2 : 1;
      seeds.push_back({d, 0, 0, sign * size});
      remaining -= size;
    }
    if (!minimal && pair(rng)) {
      seeds.push_back({d, 0, 0, 1});
      seeds.push_back({d, 0, 0, -1});
    }
  }
  for (auto& s : seeds) {
    const int na = t.dim((s.direction + 1) % 3);
    const int nb = t.dim((s.direction + 2) % 3);
    bool placed = false;
    for (int attempt = 0; attempt < 60 && !placed; ++attempt) {
      s.a = std::uniform_int_distribution<int>(0, na - 1)(rng);
      s.b = std::uniform_int_distribution<int>(0, nb - 1)(rng);
      Component c = seed_component(t, s);
      if (std::all_of(comps.begin(), comps.end(),
                      [&](const Component& o) { return separated(t, c, o, 3); })) {
        comps.push_back(std::move(c));
        placed = true;
      }
    }
    if (!placed) return false;
  }
  if (minimal) return true;
  const int rings = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int r = 0; r < rings; ++r) {
    const int normal = std::uniform_int_distribution<int>(0, 2)(rng);
    const int na = t.dim((normal + 1) % 3);
    const int nb = t.dim((normal + 2) % 3);
    if (na < 6 || nb < 6) continue;
    for (int attempt = 0; attempt < 30; ++attempt) {
      const int la = std::uniform_int_distribution<int>(3, std::min(5, na - 3))(rng);
      const int lb = std::uniform_int_distribution<int>(3, std::min(5, nb - 3))(rng);
      Coord w{};
      for (int d = 0; d < 3; ++d) w[d] = std::uniform_int_distribution<int>(0, t.dim(d) - 1)(rng);
      Component c = ring_component(t, normal, w, la, lb, coin(rng) ? 1 : -1);
      if (std::all_of(comps.begin(), comps.end(),
                      [&](const Component& o) { return separated(t, c, o, 3); })) {
        comps.push_back(std::move(c));
        break;
      }
    }
  }
  return true;
}

}  // namespace

RandomSection random_valid_section(const SectionSynthesizer& synth, std::mt19937_64& rng,
                                   double tolerance) {
  const Torus& t = synth.bundle().torus();
  std::uniform_real_distribution<double> noise(-0.1, 0.1);
  std::uniform_real_distribution<double> scale(0.5, 1.5);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Component> comps;
    bool ok = false;
    for (int layout = 0; layout < 100 && !ok; ++layout) {
      ok = random_layout(t, synth.target_class(), layout >= 50, rng, comps);
    }
    if (!ok) throw InputError("lattice too small to place vortex lines 3 units apart");

    // Phase noise whose link differences stay below 0.4 in magnitude.
    const int axis = std::uniform_int_distribution<int>(0, 2)(rng);
    const double amplitude = 0.2 * t.dim(axis) / kTwoPi;
    const double offset = phase(rng);
    std::vector<double> chi(t.vertex_count());
    std::vector<double> mod(t.vertex_count());
    for (Index v = 0; v < chi.size(); ++v) {
      const double x = t.coords(v)[axis];
      chi[v] = amplitude * std::sin(kTwoPi * x / t.dim(axis) + offset) + noise(rng);
      mod[v] = scale(rng);
    }
    RandomSection out;
    out.vorticity = to_vorticity(t, comps);
    double step = 0.0;
    const double limit = std::numbers::pi - tolerance;
    out.section = synth.synthesize(out.vorticity, &chi, &mod, &step, limit);
    if (step < limit) return out;
  }
  throw InternalError("could not draw a resolved random section in 100 attempts");
}

}  // namespace zloch
