#include "zloch/zerolocus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "zloch/error.hpp"
#include "zloch/parallel.hpp"

namespace zloch {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string coord_string(const Coord& c) {
  return "(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) + ")";
}

std::string direction_name(int d) { return std::string(1, static_cast<char>('x' + d)); }

// Plaquette p(v, d) spans the periodic seam when v_a or v_b is the last layer.
bool crosses_seam(const Torus& t, Index p) {
  const Coord v = t.coords(Torus::base(p));
  const int d = Torus::direction(p);
  const int a = (d + 1) % 3;
  const int b = (d + 2) % 3;
  return v[a] == t.dim(a) - 1 || v[b] == t.dim(b) - 1;
}

}  // namespace

long long winding_number(const std::vector<std::complex<double>>& loop, double tolerance,
                         double max_jump) {
  if (loop.empty()) return 0;
  const double limit = std::min(max_jump, kPi - tolerance);
  double sum = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    if (loop[i] == 0.0) throw ZeroSampleError("zero sample at loop index " + std::to_string(i));
  }
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const std::size_t next = (i + 1) % loop.size();
    const double jump = wrap_angle(std::arg(loop[next]) - std::arg(loop[i]));
    if (std::abs(jump) >= limit) {
      std::ostringstream os;
      os << "undersampled loop: phase jump " << jump << " between samples " << i << " and " << next;
      throw UndersampledError(os.str());
    }
    sum += jump;
  }
  return std::llround(sum / kTwoPi);
}

bool WeightedChain1::empty() const {
  return std::all_of(coeff.begin(), coeff.end(), [](long long c) { return c == 0; });
}

std::vector<std::pair<Index, long long>> WeightedChain1::support() const {
  std::vector<std::pair<Index, long long>> out;
  for (Index p = 0; p < coeff.size(); ++p) {
    if (coeff[p] != 0) out.emplace_back(p, coeff[p]);
  }
  return out;
}

long long WeightedChain1::weighted_length() const {
  long long total = 0;
  for (long long c : coeff) total += std::llabs(c);
  return total;
}

WeightedChain1 extract_vortex_chain(const SampledSection& s, const U1Bundle& b,
                                    const ExtractOptions& options) {
  const Torus& t = b.torus();
  if (!(s.torus == t)) throw InputError("section and bundle live on different lattices");
  if (s.values.size() != t.vertex_count()) throw InputError("section needs one value per vertex");

  for (Index v = 0; v < t.vertex_count(); ++v) {
    const std::complex<double> x = s.values[v];
    if ((x.real() == 0.0 && x.imag() == 0.0) ||
        (options.zero_threshold > 0.0 && std::abs(x) <= options.zero_threshold)) {
      throw ZeroSampleError("zero sample at vertex " + coord_string(t.coords(v)));
    }
  }
  std::vector<double> arg(t.vertex_count());
  parallel_for(arg.size(), [&](Index begin, Index end) {
    for (Index v = begin; v < end; ++v) arg[v] = std::arg(s.values[v]);
  });

  const double limit = kPi - options.tolerance;
  std::vector<double> delta(t.edge_count());
  parallel_for(delta.size(), [&](Index begin, Index end) {
    for (Index e = begin; e < end; ++e) {
      delta[e] = wrap_angle(arg[t.edge_head(e)] - arg[t.edge_tail(e)] - s.charge * b.phase(e));
    }
  });
  for (Index e = 0; e < delta.size(); ++e) {
    if (std::abs(delta[e]) < limit) continue;
    const int d = Torus::direction(e);
    const Coord c = t.coords(Torus::base(e));
    if (options.chart && c[d] == t.dim(d) - 1) continue;
    std::ostringstream os;
    os << "undersampled section: covariant phase jump " << delta[e] << " on the "
       << direction_name(d) << "-link at " << coord_string(c);
    throw UndersampledError(os.str());
  }

  WeightedChain1 out{t, std::vector<long long>(t.plaquette_count(), 0)};
  std::vector<double> residual(t.plaquette_count(), 0.0);
  parallel_for(out.coeff.size(), [&](Index begin, Index end) {
    for (Index p = begin; p < end; ++p) {
      if (options.chart && crosses_seam(t, p)) continue;
      double sum = 0.0;
      double flux = 0.0;
      for (const auto& [e, sign] : t.plaquette_boundary(p)) {
        sum += sign * delta[e];
        flux += sign * b.phase(e);
      }
      const double value = (sum + s.charge * wrap_angle(flux)) / kTwoPi;
      const long long n = std::llround(value);
      residual[p] = std::abs(value - static_cast<double>(n));
      out.coeff[p] = n;
    }
  });
  for (Index p = 0; p < residual.size(); ++p) {
    if (residual[p] > 1e-6) {
      std::ostringstream os;
      os << "internal inconsistency: vorticity of the " << direction_name(Torus::direction(p))
         << "-plaquette at " << coord_string(t.coords(Torus::base(p))) << " is off an integer by "
         << residual[p];
      throw InternalError(os.str());
    }
  }
  return out;
}

std::vector<long long> dual_boundary(const WeightedChain1& chain) {
  const Torus& t = chain.torus;
  std::vector<long long> out(t.cube_count(), 0);
  for (Index u = 0; u < out.size(); ++u) {
    long long sum = 0;
    for (int d = 0; d < 3; ++d) {
      sum += chain.coeff[Torus::plaquette(u, d)] - chain.coeff[Torus::plaquette(t.shift(u, d, 1), d)];
    }
    out[u] = sum;
  }
  return out;
}

bool is_closed(const WeightedChain1& chain) {
  const auto b = dual_boundary(chain);
  return std::all_of(b.begin(), b.end(), [](long long x) { return x == 0; });
}

std::vector<long long> shifted_primal_chain(const WeightedChain1& chain) {
  const Torus& t = chain.torus;
  std::vector<long long> out(t.edge_count(), 0);
  for (Index p = 0; p < chain.coeff.size(); ++p) {
    if (chain.coeff[p] == 0) continue;
    const int d = Torus::direction(p);
    out[Torus::edge(t.shift(Torus::base(p), d, -1), d)] = chain.coeff[p];
  }
  return out;
}

HomologyClass chain_class(const WeightedChain1& chain, const LatticeManifold& m) {
  if (!(m.lattice() == chain.torus)) throw InputError("chain and manifold have different lattices");
  const Torus& t = chain.torus;
  std::vector<std::pair<Index, long long>> sparse;
  for (const auto& [p, c] : chain.support()) {
    const int d = Torus::direction(p);
    sparse.emplace_back(Torus::edge(t.shift(Torus::base(p), d, -1), d), c);
  }
  return m.classifier().classify_sparse(sparse, true);
}

std::vector<long long> cube_cluster_boundary(const Torus& t, const std::vector<Index>& cubes) {
  std::vector<long long> out(t.plaquette_count(), 0);
  const std::set<Index> unique(cubes.begin(), cubes.end());
  for (Index c : unique) {
    if (c >= t.cube_count()) throw InputError("cube id out of range");
    for (const auto& [p, s] : t.cube_boundary(c)) out[p] += s;
  }
  return out;
}

long long surface_flow_test(const WeightedChain1& chain, const std::vector<long long>& surface) {
  return intersection_number_dual(chain.torus, chain.coeff, surface);
}

ClosedSurface::ClosedSurface(const Torus& t, std::vector<std::pair<Index, long long>> cells)
    : torus_(t) {
  std::map<Index, long long> merged;
  for (const auto& [p, c] : cells) {
    if (p >= t.plaquette_count()) throw InputError("surface plaquette id out of range");
    merged[p] += c;
  }
  std::map<Index, long long> boundary;
  for (const auto& [p, c] : merged) {
    if (c == 0) continue;
    cells_.emplace_back(p, c);
    for (const auto& [e, s] : t.plaquette_boundary(p)) boundary[e] += s * c;
  }
  for (const auto& [e, b] : boundary) {
    if (b != 0) throw InputError("surface is not closed (boundary at edge " + std::to_string(e) + ")");
  }
}

ClosedSurface ClosedSurface::cube_boundary(const Torus& t, Index cube) {
  if (cube >= t.cube_count()) throw InputError("cube id out of range");
  std::vector<std::pair<Index, long long>> cells;
  for (const auto& [p, s] : t.cube_boundary(cube)) cells.emplace_back(p, s);
  return ClosedSurface(t, std::move(cells));
}

long long surface_flow_test(const WeightedChain1& chain, const ClosedSurface& surface) {
  if (!(surface.torus() == chain.torus)) throw InputError("chain and surface live on different lattices");
  long long total = 0;
  for (const auto& [p, c] : surface.cells()) total += chain.coeff[p] * c;
  return total;
}

namespace {

// Nonzero entries of the dual boundary, by cube id.
std::vector<std::pair<Index, long long>> sparse_boundary(const WeightedChain1& chain) {
  const Torus& t = chain.torus;
  std::vector<std::pair<Index, long long>> raw;
  for (Index p = 0; p < chain.coeff.size(); ++p) {
    const long long c = chain.coeff[p];
    if (c == 0) continue;
    raw.emplace_back(t.dual_head(p), c);
    raw.emplace_back(t.dual_tail(p), -c);
  }
  std::sort(raw.begin(), raw.end());
  std::vector<std::pair<Index, long long>> out;
  for (const auto& [u, c] : raw) {
    if (!out.empty() && out.back().first == u) {
      out.back().second += c;
    } else {
      out.emplace_back(u, c);
    }
  }
  std::erase_if(out, [](const auto& x) { return x.second == 0; });
  return out;
}

}  // namespace

double boundary_pairing(const WeightedChain1& chain, const std::vector<double>& f) {
  return boundary_pairings(chain, {f}).front();
}

std::vector<double> boundary_pairings(const WeightedChain1& chain,
                                      const std::vector<std::vector<double>>& fs) {
  const Torus& t = chain.torus;
  for (const auto& f : fs) {
    if (f.size() != t.cube_count()) throw InputError("function needs one value per cube");
  }
  // Summation by parts: sum_e n_e (f(head) - f(tail)) = sum_u f(u) (dn)(u).
  // The integer boundary makes the result exactly 0 for closed chains.
  const auto boundary = sparse_boundary(chain);
  std::vector<double> out;
  out.reserve(fs.size());
  for (const auto& f : fs) {
    double sum = 0.0;
    for (const auto& [u, b] : boundary) sum += static_cast<double>(b) * f[u];
    out.push_back(sum);
  }
  return out;
}

namespace {

// Nonzero dual edges at cube u, in a fixed order: for each direction the
// incoming edge p(u, d), then the outgoing edge p(u + e_d, d).
std::vector<Index> incident(const WeightedChain1& chain, Index u) {
  const Torus& t = chain.torus;
  std::vector<Index> out;
  for (int d = 0; d < 3; ++d) {
    const Index in = Torus::plaquette(u, d);
    const Index outgoing = Torus::plaquette(t.shift(u, d, 1), d);
    if (chain.coeff[in] != 0) out.push_back(in);
    if (chain.coeff[outgoing] != 0 && outgoing != in) out.push_back(outgoing);
  }
  return out;
}

}  // namespace

EmbeddedGraphFlow chain_to_graph(const WeightedChain1& chain) {
  const Torus& t = chain.torus;
  const auto boundary = dual_boundary(chain);
  for (Index u = 0; u < boundary.size(); ++u) {
    if (boundary[u] != 0) {
      throw BoundaryError("chain is not closed: boundary " + std::to_string(boundary[u]) +
                          " at cube " + coord_string(t.coords(u)));
    }
  }

  std::vector<char> branch(t.cube_count(), 0);
  for (Index u = 0; u < t.cube_count(); ++u) {
    const auto inc = incident(chain, u);
    if (!inc.empty() && inc.size() != 2) branch[u] = 1;
  }

  std::vector<char> used(t.plaquette_count(), 0);
  std::vector<Index> vertex_cubes;
  struct Path {
    Index from, to;
    long long theta;
    std::vector<std::vector<double>> polyline;
  };
  std::vector<Path> paths;

  // Walks from cube `u` along dual edge `p` until a branch cube (or `stop`).
  auto walk = [&](Index u, Index p, Index stop) {
    Path path;
    path.from = u;
    const Coord c0 = t.coords(u);
    std::vector<double> pos{c0[0] + 0.5, c0[1] + 0.5, c0[2] + 0.5};
    path.polyline.push_back(pos);
    int last_dir = -1;
    Index cur = u;
    Index edge = p;
    bool first = true;
    for (;;) {
      used[edge] = 1;
      const int d = Torus::direction(edge);
      const bool forward = t.dual_tail(edge) == cur;
      const long long theta = forward ? chain.coeff[edge] : -chain.coeff[edge];
      if (first) path.theta = theta, first = false;
      pos[d] += forward ? 1.0 : -1.0;
      if (d == last_dir) {
        path.polyline.back() = pos;
      } else {
        path.polyline.push_back(pos);
      }
      last_dir = d;
      cur = forward ? t.dual_head(edge) : t.dual_tail(edge);
      if (branch[cur] || cur == stop) break;
      Index next = edge;
      for (Index q : incident(chain, cur)) {
        if (!used[q]) next = q;
      }
      if (next == edge) throw InternalError("dual path lost at cube " + coord_string(t.coords(cur)));
      edge = next;
    }
    path.to = cur;
    paths.push_back(std::move(path));
  };

  for (Index u = 0; u < t.cube_count(); ++u) {
    if (!branch[u]) continue;
    vertex_cubes.push_back(u);
    for (Index p : incident(chain, u)) {
      if (!used[p]) walk(u, p, u);
    }
  }
  // Remaining cycles carry no branch cube.
  for (Index p = 0; p < t.plaquette_count(); ++p) {
    if (chain.coeff[p] == 0 || used[p]) continue;
    Index start = t.dual_tail(p);
    {
      Index cur = start, edge = p;
      std::set<Index> seen{p};
      for (;;) {
        cur = t.dual_tail(edge) == cur ? t.dual_head(edge) : t.dual_tail(edge);
        start = std::min(start, cur);
        Index next = edge;
        for (Index q : incident(chain, cur)) {
          if (!seen.count(q)) next = q;
        }
        if (next == edge) break;
        seen.insert(next);
        edge = next;
      }
    }
    vertex_cubes.push_back(start);
    // Walk the cycle along its orientation so the edge carries Theta > 0.
    const auto inc = incident(chain, start);
    Index first = inc.front();
    for (Index q : inc) {
      const bool out = t.dual_tail(q) == start;
      if ((out && chain.coeff[q] > 0) || (!out && chain.coeff[q] < 0)) {
        first = q;
        break;
      }
    }
    walk(start, first, start);
  }
  std::sort(vertex_cubes.begin(), vertex_cubes.end());

  std::vector<std::string> vertices;
  for (Index u : vertex_cubes) vertices.push_back("v" + std::to_string(u));
  std::vector<GraphEdge> edges;
  std::vector<long long> theta;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    edges.push_back(GraphEdge{"e" + std::to_string(k), "v" + std::to_string(paths[k].from),
                              "v" + std::to_string(paths[k].to), paths[k].polyline});
    theta.push_back(paths[k].theta);
  }
  auto graph = std::make_shared<const Graph>(std::move(vertices), std::move(edges));
  return EmbeddedGraphFlow{Flow{graph, std::move(theta)}, 0.5};
}

WeightedChain1 coarsen_chain(const WeightedChain1& chain, int block) {
  const Torus& t = chain.torus;
  if (block < 1) throw InputError("block size must be positive");
  Coord coarse_dims{};
  for (int d = 0; d < 3; ++d) {
    if (t.dim(d) % block != 0) throw InputError("lattice dimensions must be divisible by the block size");
    coarse_dims[d] = t.dim(d) / block;
  }
  const Torus coarse(coarse_dims);
  WeightedChain1 out{coarse, std::vector<long long>(coarse.plaquette_count(), 0)};
  for (Index p = 0; p < chain.coeff.size(); ++p) {
    if (chain.coeff[p] == 0) continue;
    const int d = Torus::direction(p);
    const Coord u = t.coords(Torus::base(p));
    if (u[d] % block != 0) continue;  // interior fine faces are not on a coarse face
    const Coord cu{u[0] / block, u[1] / block, u[2] / block};
    out.coeff[Torus::plaquette(coarse.vertex(cu), d)] += chain.coeff[p];
  }
  return out;
}

namespace {

constexpr double kClusterAngle = 15.0 * std::numbers::pi / 180.0;

double angle_between(const Point3& a, const Point3& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (int i = 0; i < 3; ++i) dot += a[i] * b[i], na += a[i] * a[i], nb += b[i] * b[i];
  return std::acos(std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0));
}

std::vector<ConeRay> cone_at_radius(const WeightedChain1& chain, Index base, int r) {
  const Torus& t = chain.torus;
  struct Crossing {
    Point3 dir;
    long long flow;
  };
  std::vector<Crossing> crossings;
  const Coord c = t.coords(base);
  for (int dz = -r; dz <= r; ++dz) {
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        const Coord delta{dx, dy, dz};
        const Index u = t.vertex({c[0] + dx, c[1] + dy, c[2] + dz});
        for (int d = 0; d < 3; ++d) {
          for (int step : {-1, 1}) {
            if (std::abs(delta[d] + step) <= r) continue;
            // Dual edge between u and its neighbour outside the box.
            const Index p = step > 0 ? Torus::plaquette(t.shift(u, d, 1), d) : Torus::plaquette(u, d);
            const long long n = chain.coeff[p];
            if (n == 0) continue;
            Point3 dir{static_cast<double>(dx), static_cast<double>(dy), static_cast<double>(dz)};
            dir[d] += 0.5 * step;
            crossings.push_back({dir, step > 0 ? n : -n});
          }
        }
      }
    }
  }
  // Single linkage clustering.
  std::vector<std::size_t> parent(crossings.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    for (std::size_t j = i + 1; j < crossings.size(); ++j) {
      if (angle_between(crossings[i].dir, crossings[j].dir) < kClusterAngle) parent[find(i)] = find(j);
    }
  }
  std::vector<ConeRay> rays;
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    if (find(i) == i) roots.push_back(i);
  }
  for (std::size_t root : roots) {
    long long sum = 0;
    Point3 mean{0, 0, 0};
    for (std::size_t i = 0; i < crossings.size(); ++i) {
      if (find(i) != root) continue;
      sum += crossings[i].flow;
      const double len = std::sqrt(crossings[i].dir[0] * crossings[i].dir[0] +
                                   crossings[i].dir[1] * crossings[i].dir[1] +
                                   crossings[i].dir[2] * crossings[i].dir[2]);
      for (int k = 0; k < 3; ++k) mean[k] += std::llabs(crossings[i].flow) * crossings[i].dir[k] / len;
    }
    if (sum == 0) continue;
    const double norm = std::sqrt(mean[0] * mean[0] + mean[1] * mean[1] + mean[2] * mean[2]);
    for (double& x : mean) x /= norm;
    rays.push_back({mean, std::llabs(sum), sum > 0 ? 1 : -1});
  }
  std::sort(rays.begin(), rays.end(), [](const ConeRay& a, const ConeRay& b) {
    if (a.orientation != b.orientation) return a.orientation > b.orientation;
    return a.direction > b.direction;
  });
  return rays;
}

bool cones_match(const std::vector<ConeRay>& a, const std::vector<ConeRay>& b) {
  if (a.size() != b.size()) return false;
  std::vector<char> taken(b.size(), 0);
  for (const auto& ray : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size() && !found; ++j) {
      if (taken[j] || b[j].multiplicity != ray.multiplicity || b[j].orientation != ray.orientation) continue;
      if (angle_between(ray.direction, b[j].direction) < kClusterAngle) taken[j] = 1, found = true;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TangentCone tangent_cone(const WeightedChain1& chain, Coord point, const std::vector<int>& radii) {
  const Torus& t = chain.torus;
  const Index base = t.vertex(point);
  if (incident(chain, base).empty()) {
    throw InputError("point " + coord_string(point) + " is not on the support of the chain");
  }
  TangentCone cone;
  cone.point = t.coords(base);
  cone.radii = radii;
  for (int r : radii) {
    if (r < 1) throw InputError("cone radii must be positive");
    for (int d = 0; d < 3; ++d) {
      if (2 * r + 2 > t.dim(d)) {
        throw InputError("radius " + std::to_string(r) + " box wraps around the lattice");
      }
    }
    cone.per_radius.push_back(cone_at_radius(chain, base, r));
  }
  cone.stable = cone.per_radius.size() >= 3;
  for (std::size_t i = 1; i < cone.per_radius.size() && cone.stable; ++i) {
    cone.stable = cones_match(cone.per_radius[i - 1], cone.per_radius[i]);
  }
  if (cone.stable) cone.rays = cone.per_radius.back();
  return cone;
}

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double f = std::exp(-1.0 / u);
  const double g = std::exp(-1.0 / (1.0 - u));
  return f / (f + g);
}

Point3 collapse_tube(const Point3& x, const Point3& axis_point, int axis, double lambda,
                     double outer) {
  if (axis < 0 || axis > 2) throw InputError("axis must be 0, 1 or 2");
  if (!(lambda > 0.0) || !(outer > lambda)) {
    throw InputError("collapse profile must rise from the tube (lambda) to the outer box (outer > lambda > 0)");
  }
  const int a = (axis + 1) % 3;
  const int b = (axis + 2) % 3;
  const double along = std::abs(x[axis] - axis_point[axis]);
  const double ta = x[a] - axis_point[a];
  const double tb = x[b] - axis_point[b];
  const double rho = std::hypot(ta, tb);
  const double s1 = smooth_step((along - lambda) / (outer - lambda));
  const double s2 = smooth_step((rho - 0.5 * lambda) / (outer - 0.5 * lambda));
  const double chi = 1.0 - (1.0 - s1) * (1.0 - s2);
  Point3 out = x;
  out[a] = axis_point[a] + chi * ta;
  out[b] = axis_point[b] + chi * tb;
  return out;
}

Point3 collapse_ball(const Point3& x, const Point3& center, double epsilon, double radius) {
  if (!(epsilon > 0.0 && epsilon < 0.5) || !(radius > 0.0)) {
    throw InputError("collapse radii must satisfy 0 < 1 - 2 eps < 1 - eps < 1");
  }
  const Point3 rel{x[0] - center[0], x[1] - center[1], x[2] - center[2]};
  const double r = std::sqrt(rel[0] * rel[0] + rel[1] * rel[1] + rel[2] * rel[2]) / radius;
  const double chi = smooth_step((r - (1.0 - 2.0 * epsilon)) / epsilon);
  return {center[0] + chi * rel[0], center[1] + chi * rel[1], center[2] + chi * rel[2]};
}

}  // namespace zloch
