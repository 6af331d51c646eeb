#include "zloch/flows.hpp"

#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "zloch/error.hpp"
#include "zloch/smith.hpp"

namespace zloch {

namespace {

struct Forest {
  std::vector<std::size_t> parent;
  explicit Forest(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

long long checked_add(long long a, long long b) {
  long long out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw InputError("flow weight overflow");
  return out;
}

long long checked_mul(long long a, long long b) {
  long long out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw InputError("flow weight overflow");
  return out;
}

}  // namespace

Graph::Graph(std::vector<std::string> vertices, std::vector<GraphEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!vertex_ids_.emplace(vertices_[i], i).second) {
      throw InputError("duplicate vertex id '" + vertices_[i] + "'");
    }
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const GraphEdge& edge = edges_[e];
    if (!edge_ids_.emplace(edge.id, e).second) {
      throw InputError("duplicate edge id '" + edge.id + "'");
    }
    auto t = vertex_ids_.find(edge.tail);
    auto h = vertex_ids_.find(edge.head);
    if (t == vertex_ids_.end() || h == vertex_ids_.end()) {
      throw InputError("edge '" + edge.id + "' has an unknown endpoint");
    }
    tails_.push_back(t->second);
    heads_.push_back(h->second);
  }
}

std::size_t Graph::vertex_index(const std::string& id) const {
  auto it = vertex_ids_.find(id);
  if (it == vertex_ids_.end()) throw InputError("unknown vertex id '" + id + "'");
  return it->second;
}

std::size_t Graph::edge_index(const std::string& id) const {
  auto it = edge_ids_.find(id);
  if (it == edge_ids_.end()) throw InputError("unknown edge id '" + id + "'");
  return it->second;
}

std::size_t Graph::component_count() const {
  Forest f(vertices_.size());
  std::size_t components = vertices_.size();
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (f.unite(tails_[e], heads_[e])) --components;
  }
  return components;
}

bool Graph::operator==(const Graph& other) const {
  if (vertices_ != other.vertices_ || edges_.size() != other.edges_.size()) return false;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].id != other.edges_[e].id || edges_[e].tail != other.edges_[e].tail ||
        edges_[e].head != other.edges_[e].head) {
      return false;
    }
  }
  return true;
}

long long Flow::at(const std::string& edge_id) const { return theta[graph->edge_index(edge_id)]; }

Flow make_flow(std::shared_ptr<const Graph> g, const std::map<std::string, long long>& theta) {
  Flow f;
  f.theta.assign(g->edge_count(), 0);
  for (const auto& [id, v] : theta) f.theta[g->edge_index(id)] = v;
  f.graph = std::move(g);
  return f;
}

Flow zero_flow(std::shared_ptr<const Graph> g) {
  Flow f;
  f.theta.assign(g->edge_count(), 0);
  f.graph = std::move(g);
  return f;
}

std::vector<std::size_t> conservation_defects(const Graph& g, const std::vector<long long>& theta) {
  if (theta.size() != g.edge_count()) throw InputError("flow does not cover every edge");
  std::vector<long long> net(g.vertex_count(), 0);
  for (std::size_t e = 0; e < theta.size(); ++e) {
    if (g.tail(e) == g.head(e)) continue;
    net[g.head(e)] = checked_add(net[g.head(e)], theta[e]);
    net[g.tail(e)] = checked_add(net[g.tail(e)], -theta[e]);
  }
  std::vector<std::size_t> bad;
  for (std::size_t v = 0; v < net.size(); ++v) {
    if (net[v] != 0) bad.push_back(v);
  }
  return bad;
}

bool is_flow(const Graph& g, const std::map<std::string, long long>& theta) {
  std::vector<long long> dense(g.edge_count(), 0);
  std::vector<bool> seen(g.edge_count(), false);
  for (const auto& [id, v] : theta) {
    const std::size_t e = g.edge_index(id);
    dense[e] = v;
    seen[e] = true;
  }
  for (std::size_t e = 0; e < seen.size(); ++e) {
    if (!seen[e]) throw InputError("no weight given for edge '" + g.edges()[e].id + "'");
  }
  return conservation_defects(g, dense).empty();
}

bool is_flow(const Flow& f) { return conservation_defects(*f.graph, f.theta).empty(); }

namespace {
void require_same_graph(const Flow& a, const Flow& b) {
  if (!a.graph || !b.graph) throw InputError("flow without a graph");
  if (a.graph != b.graph && !(*a.graph == *b.graph)) {
    throw InputError("flows live on different graphs");
  }
}
}  // namespace

Flow flow_add(const Flow& a, const Flow& b) {
  require_same_graph(a, b);
  Flow out = a;
  for (std::size_t e = 0; e < out.theta.size(); ++e) out.theta[e] = checked_add(a.theta[e], b.theta[e]);
  return out;
}

Flow flow_neg(const Flow& a) {
  Flow out = a;
  for (auto& v : out.theta) v = checked_mul(v, -1);
  return out;
}

OrientedWeight oriented_weight(long long theta) {
  if (theta == 0) return {0, 0};
  if (theta > 0) return {theta, 1};
  return {checked_mul(theta, -1), -1};
}

long long signed_weight(OrientedWeight w) { return w.orientation < 0 ? -w.weight : w.weight; }

OrientedWeight add_oriented(OrientedWeight a, OrientedWeight b) {
  if (a.weight == 0) return b;
  if (b.weight == 0) return a;
  if (a.orientation == b.orientation) return {checked_add(a.weight, b.weight), a.orientation};
  if (a.weight == b.weight) return {0, 0};
  if (a.weight > b.weight) return {a.weight - b.weight, a.orientation};
  return {b.weight - a.weight, b.orientation};
}

std::vector<Flow> flow_basis(std::shared_ptr<const Graph> gp) {
  const Graph& g = *gp;
  const std::size_t n = g.vertex_count();
  Forest forest(n);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (neighbor, edge)
  std::vector<std::size_t> nontree;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (g.tail(e) != g.head(e) && forest.unite(g.tail(e), g.head(e))) {
      adj[g.tail(e)].push_back({g.head(e), e});
      adj[g.head(e)].push_back({g.tail(e), e});
    } else {
      nontree.push_back(e);
    }
  }
  // Root every tree at its smallest vertex.
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(n, none), parent_edge(n, none), depth(n, 0);
  std::vector<bool> visited(n, false);
  for (std::size_t r = 0; r < n; ++r) {
    if (visited[r]) continue;
    std::queue<std::size_t> q;
    q.push(r);
    visited[r] = true;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (auto [w, e] : adj[v]) {
        if (visited[w]) continue;
        visited[w] = true;
        parent[w] = v;
        parent_edge[w] = e;
        depth[w] = depth[v] + 1;
        q.push(w);
      }
    }
  }
  std::vector<Flow> basis;
  for (std::size_t e : nontree) {
    Flow f = zero_flow(gp);
    f.theta[e] = 1;
    // Return from head to tail through the tree.
    std::size_t u = g.head(e), v = g.tail(e);
    while (u != v) {
      if (depth[u] >= depth[v]) {
        const std::size_t pe = parent_edge[u];
        // Travel u -> parent(u).
        f.theta[pe] += g.tail(pe) == u ? 1 : -1;
        u = parent[u];
      } else {
        const std::size_t pe = parent_edge[v];
        // Travel parent(v) -> v.
        f.theta[pe] += g.head(pe) == v ? 1 : -1;
        v = parent[v];
      }
    }
    basis.push_back(std::move(f));
  }

  // Certificate: each element is a flow, the kernel has the expected rank
  // and the basis spans a saturated sublattice (all invariant factors 1).
  std::vector<SparseColumn> cols;
  for (const Flow& f : basis) {
    if (!is_flow(f)) throw InternalError("fundamental cycle violates conservation");
    SparseColumn col;
    for (std::size_t e = 0; e < f.theta.size(); ++e) {
      if (f.theta[e] != 0) col.emplace_back(e, f.theta[e]);
    }
    cols.push_back(std::move(col));
  }
  const InvariantFactors span = sparse_invariant_factors(g.edge_count(), cols);
  std::vector<SparseColumn> incidence(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (g.tail(e) != g.head(e)) incidence[e] = {{g.head(e), 1}, {g.tail(e), -1}};
  }
  const InvariantFactors inc = sparse_invariant_factors(n, incidence);
  if (span.rank != basis.size() || !span.nontrivial.empty() ||
      basis.size() != g.edge_count() - inc.rank) {
    throw InternalError("flow basis failed its Smith-form certificate");
  }
  return basis;
}

std::vector<Integer> flow_coordinates(const Flow& f, const std::vector<Flow>& basis) {
  const std::size_t edges = f.theta.size();
  std::vector<Integer> coords(basis.size());
  bool pivots_found = true;
  for (std::size_t i = 0; i < basis.size() && pivots_found; ++i) {
    bool found = false;
    for (std::size_t e = 0; e < edges && !found; ++e) {
      if (basis[i].theta[e] != 1) continue;
      bool alone = true;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (j != i && basis[j].theta[e] != 0) alone = false;
      }
      if (alone) {
        coords[i] = f.theta[e];
        found = true;
      }
    }
    pivots_found = found;
  }
  if (!pivots_found) {
    IntMatrix b(edges, basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t e = 0; e < edges; ++e) b(e, i) = basis[i].theta[e];
    }
    auto x = solve_integer(b, std::vector<Integer>(f.theta.begin(), f.theta.end()));
    if (!x) throw InputError("weights are not an integer combination of the basis");
    return *x;
  }
  for (std::size_t e = 0; e < edges; ++e) {
    Integer total = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) total += coords[i] * basis[i].theta[e];
    if (total != f.theta[e]) throw InputError("weights are not an integer combination of the basis");
  }
  return coords;
}

namespace {

std::vector<long long> snap(const std::vector<double>& point, double offset, double tolerance,
                            const std::string& edge_id) {
  std::vector<long long> out(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double shifted = point[i] - offset;
    const double r = std::round(shifted);
    if (!std::isfinite(shifted) || std::abs(shifted - r) > tolerance) {
      std::ostringstream os;
      os << "edge '" << edge_id << "': point coordinate " << point[i]
         << " is off the lattice (tolerance " << tolerance << ")";
      throw EmbeddingError(os.str());
    }
    out[i] = static_cast<long long>(r);
  }
  return out;
}

std::string point_string(const std::vector<long long>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

}  // namespace

std::vector<EdgePath> embed_edges(const Graph& g, const LatticeManifold& m, double offset,
                                  double tolerance) {
  const std::size_t dim = static_cast<std::size_t>(m.polyline_dimension());
  std::vector<EdgePath> paths;
  std::vector<std::optional<std::vector<long long>>> position(g.vertex_count());
  auto pin = [&](std::size_t v, const std::vector<long long>& p, const std::string& edge_id) {
    if (!position[v]) {
      position[v] = p;
    } else if (*position[v] != p) {
      throw EmbeddingError("edge '" + edge_id + "' places vertex '" + g.vertices()[v] + "' at " +
                           point_string(p) + " but another edge uses " +
                           point_string(*position[v]));
    }
  };
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const GraphEdge& edge = g.edges()[e];
    if (edge.polyline.empty()) throw EmbeddingError("edge '" + edge.id + "' has no polyline");
    EdgePath path;
    std::vector<long long> cur;
    for (std::size_t k = 0; k < edge.polyline.size(); ++k) {
      if (edge.polyline[k].size() != dim) {
        throw EmbeddingError("edge '" + edge.id + "': point has " +
                             std::to_string(edge.polyline[k].size()) + " coordinates, expected " +
                             std::to_string(dim));
      }
      std::vector<long long> next = snap(edge.polyline[k], offset, tolerance, edge.id);
      if (k == 0) {
        cur = next;
        path.start = m.reduce_point(cur);
        path.points.push_back(path.start);
        continue;
      }
      int axis = -1;
      for (std::size_t i = 0; i < dim; ++i) {
        if (next[i] == cur[i]) continue;
        if (axis >= 0) {
          throw EmbeddingError("edge '" + edge.id + "': segment " + point_string(cur) + " -> " +
                               point_string(next) + " is not along a lattice axis");
        }
        axis = static_cast<int>(i);
      }
      if (axis < 0) continue;
      const int sign = next[axis] > cur[axis] ? 1 : -1;
      while (cur[axis] != next[axis]) {
        path.steps.push_back(m.step_edge(cur, axis, sign));
        cur[axis] += sign;
        path.points.push_back(m.reduce_point(cur));
      }
    }
    path.end = m.reduce_point(cur);
    pin(g.tail(e), path.start, edge.id);
    pin(g.head(e), path.end, edge.id);
    paths.push_back(std::move(path));
  }
  return paths;
}

void validate_disjoint(const Graph& g, const std::vector<EdgePath>& paths) {
  std::map<std::vector<long long>, std::size_t> vertex_at;
  for (std::size_t e = 0; e < paths.size(); ++e) {
    for (auto [v, p] : {std::pair{g.tail(e), &paths[e].start}, std::pair{g.head(e), &paths[e].end}}) {
      auto [it, fresh] = vertex_at.emplace(*p, v);
      if (!fresh && it->second != v) {
        throw EmbeddingError("vertices '" + g.vertices()[it->second] + "' and '" +
                             g.vertices()[v] + "' sit at the same point " + point_string(*p));
      }
    }
  }
  std::map<std::vector<long long>, std::size_t> interior_owner;
  for (std::size_t e = 0; e < paths.size(); ++e) {
    const auto& pts = paths[e].points;
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
      if (vertex_at.count(pts[k])) {
        throw EmbeddingError("edge '" + g.edges()[e].id + "' passes through the vertex at " +
                             point_string(pts[k]));
      }
      auto [it, fresh] = interior_owner.emplace(pts[k], e);
      if (!fresh) {
        throw EmbeddingError("edges '" + g.edges()[it->second].id + "' and '" + g.edges()[e].id +
                             "' meet at " + point_string(pts[k]));
      }
    }
  }
}

std::vector<long long> flow_chain(const Flow& f, const std::vector<EdgePath>& paths,
                                  Index edge_count) {
  std::vector<long long> chain(edge_count, 0);
  for (std::size_t e = 0; e < paths.size(); ++e) {
    if (f.theta[e] == 0) continue;
    for (const auto& [id, sign] : paths[e].steps) {
      chain[id] = checked_add(chain[id], checked_mul(sign, f.theta[e]));
    }
  }
  return chain;
}

HomologyClass gamma_class(const EmbeddedGraphFlow& egf, const LatticeManifold& m) {
  const auto paths = embed_edges(*egf.flow.graph, m, egf.offset, egf.tolerance);
  return cycle_class(flow_chain(egf.flow, paths, m.complex().count(1)), m);
}

bool ClassLattice::contains(const std::vector<Integer>& c) const {
  for (const auto& v : residue(c)) {
    if (v != 0) return false;
  }
  return true;
}

std::vector<Integer> ClassLattice::residue(const std::vector<Integer>& c) const {
  if (c.size() != ambient_rank) throw InputError("class has the wrong number of coordinates");
  std::vector<Integer> r = c;
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    std::size_t p = 0;
    while (p < basis.cols() && basis(i, p) == 0) ++p;
    if (p == basis.cols()) continue;
    Integer q = r[p] / basis(i, p);
    if (r[p] - q * basis(i, p) < 0) q -= 1;
    for (std::size_t j = 0; j < basis.cols(); ++j) r[j] -= q * basis(i, j);
  }
  return r;
}

std::optional<std::vector<Integer>> ClassLattice::coefficients(const std::vector<Integer>& c) const {
  if (c.size() != ambient_rank) throw InputError("class has the wrong number of coordinates");
  if (basis.rows() == 0) {
    for (const auto& v : c) {
      if (v != 0) return std::nullopt;
    }
    return std::vector<Integer>{};
  }
  return solve_integer(basis.transpose(), c);
}

ClassLattice lattice_from_generators(std::size_t ambient_rank,
                                     const std::vector<std::vector<Integer>>& generators) {
  ClassLattice out;
  out.ambient_rank = ambient_rank;
  IntMatrix m(generators.size(), ambient_rank);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != ambient_rank) throw InputError("generator has the wrong rank");
    for (std::size_t j = 0; j < ambient_rank; ++j) m(i, j) = generators[i][j];
  }
  out.basis = hermite_normal_form(m);
  return out;
}

ClassLattice lambda_image(std::shared_ptr<const Graph> g, const LatticeManifold& m, double offset,
                          double tolerance) {
  const auto basis = flow_basis(g);
  const auto paths = embed_edges(*g, m, offset, tolerance);
  std::vector<std::vector<Integer>> images;
  for (const Flow& f : basis) {
    images.push_back(cycle_class(flow_chain(f, paths, m.complex().count(1)), m).free);
  }
  return lattice_from_generators(m.classifier().rank(), images);
}

}  // namespace zloch
