#include "zloch/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "zloch/error.hpp"

namespace zloch::io {

namespace {

std::string where(const Torus& t, Index v) {
  const Coord c = t.coords(v);
  return "vertex (" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
         std::to_string(c[2]) + ")";
}

const Json& field(const Json& j, const char* key, const std::string& context) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(context + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

long long integer(const Json& j, const std::string& context) {
  if (!j.is_number_integer()) throw InputError(context + " must be an integer");
  return j.get<long long>();
}

double real(const Json& j, const std::string& context) {
  if (!j.is_number()) throw InputError(context + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw InputError(context + " is not finite");
  return x;
}

std::complex<double> complex_value(const Json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2) throw InputError(context + " must be a [re, im] pair");
  return {real(j[0], context + " real part"), real(j[1], context + " imaginary part")};
}

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Torus dims_from(const Json& j, const std::string& context) {
  const Json& d = field(j, "dims", context);
  if (!d.is_array() || d.size() != 3) throw InputError(context + ": dims must have 3 entries");
  Coord c{};
  for (int i = 0; i < 3; ++i) {
    const long long n = integer(d[i], context + ": dims[" + std::to_string(i) + "]");
    if (n < 1 || n > 1024) throw InputError(context + ": dims entries must lie in [1, 1024]");
    c[i] = static_cast<int>(n);
  }
  return Torus(c);
}

std::string text(const Json& j, const std::string& context) {
  if (!j.is_string()) throw InputError(context + " must be a string");
  return j.get<std::string>();
}

}  // namespace

Json coord_json(const Coord& c) { return Json::array({c[0], c[1], c[2]}); }

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": invalid JSON: " + e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  const std::string body = j.dump(2) + "\n";
  if (path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << body;
}

Json bundle_to_json(const U1Bundle& b) {
  const Torus& t = b.torus();
  Json phases = Json::object();
  const char* names[3] = {"x", "y", "z"};
  for (int d = 0; d < 3; ++d) {
    Json list = Json::array();
    for (Index v = 0; v < t.vertex_count(); ++v) list.push_back(b.phase(Torus::edge(v, d)));
    phases[names[d]] = std::move(list);
  }
  return Json{{"dims", coord_json(t.dims())}, {"link_phases", std::move(phases)}};
}

U1Bundle bundle_from_json(const Json& j) {
  const Torus t = dims_from(j, "bundle");
  const Json& phases = field(j, "link_phases", "bundle");
  std::vector<double> out(t.edge_count());
  const char* names[3] = {"x", "y", "z"};
  for (int d = 0; d < 3; ++d) {
    const std::string ctx = std::string("bundle: link_phases.") + names[d];
    const Json& list = field(phases, names[d], "bundle: link_phases");
    if (!list.is_array() || list.size() != t.vertex_count()) {
      throw InputError(ctx + " must have " + std::to_string(t.vertex_count()) + " entries");
    }
    for (Index v = 0; v < t.vertex_count(); ++v) {
      out[Torus::edge(v, d)] = real(list[v], ctx + " at " + where(t, v));
    }
  }
  return U1Bundle(t, std::move(out));
}

Json section_to_json(const SampledSection& s) {
  Json values = Json::array();
  for (const auto& z : s.values) values.push_back(complex_json(z));
  return Json{{"dims", coord_json(s.torus.dims())}, {"values", std::move(values)}, {"charge", s.charge}};
}

SampledSection section_from_json(const Json& j) {
  const Torus t = dims_from(j, "section");
  const Json& values = field(j, "values", "section");
  if (!values.is_array() || values.size() != t.vertex_count()) {
    throw InputError("section: values must have " + std::to_string(t.vertex_count()) + " entries");
  }
  SampledSection s{t, std::vector<std::complex<double>>(t.vertex_count()), 1};
  for (Index v = 0; v < t.vertex_count(); ++v) {
    s.values[v] = complex_value(values[v], "section: value at " + where(t, v));
  }
  if (j.contains("charge")) {
    const long long q = integer(j.at("charge"), "section: charge");
    if (q == 0 || std::llabs(q) > 1000) throw InputError("section: charge must be a nonzero integer");
    s.charge = static_cast<int>(q);
  }
  return s;
}

Json chain_to_json(const WeightedChain1& chain) {
  Json edges = Json::array();
  for (const auto& [p, c] : chain.support()) edges.push_back(Json{{"plaquette_id", p}, {"coeff", c}});
  return Json{{"dims", coord_json(chain.torus.dims())}, {"dual_edges", std::move(edges)}};
}

WeightedChain1 chain_from_json(const Json& j) {
  const Torus t = dims_from(j, "chain");
  WeightedChain1 chain{t, std::vector<long long>(t.plaquette_count(), 0)};
  const Json& edges = field(j, "dual_edges", "chain");
  if (!edges.is_array()) throw InputError("chain: dual_edges must be an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string ctx = "chain: dual_edges[" + std::to_string(i) + "]";
    const long long p = integer(field(edges[i], "plaquette_id", ctx), ctx + ".plaquette_id");
    if (p < 0 || static_cast<Index>(p) >= t.plaquette_count()) {
      throw InputError(ctx + ": plaquette id out of range");
    }
    chain.coeff[p] += integer(field(edges[i], "coeff", ctx), ctx + ".coeff");
  }
  return chain;
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back(Json{{"id", e.id}, {"tail", e.tail}, {"head", e.head}, {"polyline", e.polyline}});
  }
  return Json{{"vertices", g.vertices()}, {"edges", std::move(edges)}};
}

std::shared_ptr<const Graph> graph_from_json(const Json& j) {
  const Json& vs = field(j, "vertices", "graph");
  const Json& es = field(j, "edges", "graph");
  if (!vs.is_array() || !es.is_array()) throw InputError("graph: vertices and edges must be arrays");
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    vertices.push_back(text(vs[i], "graph: vertices[" + std::to_string(i) + "]"));
  }
  std::vector<GraphEdge> edges;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string ctx = "graph: edges[" + std::to_string(i) + "]";
    GraphEdge e;
    e.id = text(field(es[i], "id", ctx), ctx + ".id");
    e.tail = text(field(es[i], "tail", ctx), ctx + ".tail");
    e.head = text(field(es[i], "head", ctx), ctx + ".head");
    if (es[i].contains("polyline")) {
      const Json& pl = es[i].at("polyline");
      if (!pl.is_array()) throw InputError(ctx + ".polyline must be an array");
      for (std::size_t k = 0; k < pl.size(); ++k) {
        const std::string pctx = ctx + ".polyline[" + std::to_string(k) + "]";
        if (!pl[k].is_array()) throw InputError(pctx + " must be an array of coordinates");
        std::vector<double> point;
        for (const auto& x : pl[k]) point.push_back(real(x, pctx));
        e.polyline.push_back(std::move(point));
      }
    }
    edges.push_back(std::move(e));
  }
  return std::make_shared<const Graph>(std::move(vertices), std::move(edges));
}

Json flow_to_json(const Flow& f) {
  Json theta = Json::object();
  for (std::size_t e = 0; e < f.theta.size(); ++e) theta[f.graph->edges()[e].id] = f.theta[e];
  return Json{{"theta", std::move(theta)}};
}

Flow flow_from_json(const Json& j, std::shared_ptr<const Graph> g) {
  const Json& theta = field(j, "theta", "flow");
  if (!theta.is_object()) throw InputError("flow: theta must be an object");
  std::map<std::string, long long> values;
  for (const auto& [id, v] : theta.items()) values[id] = integer(v, "flow: theta." + id);
  return make_flow(std::move(g), values);
}

Json frames_to_json(const std::vector<GrassFrame>& frames, int p_dim, int q_dim) {
  if (frames.size() != static_cast<std::size_t>(p_dim) * q_dim || frames.empty()) {
    throw InputError("frame field needs P * Q frames");
  }
  Json list = Json::array();
  for (const auto& f : frames) {
    Json entries = Json::array();
    for (Eigen::Index c = 0; c < f.cols(); ++c)
      for (Eigen::Index r = 0; r < f.rows(); ++r) entries.push_back(complex_json(f(r, c)));
    list.push_back(std::move(entries));
  }
  return Json{{"surface_dims", Json::array({p_dim, q_dim})},
              {"shape", Json::array({frames[0].rows(), frames[0].cols()})},
              {"frames", std::move(list)}};
}

FrameField frames_from_json(const Json& j) {
  FrameField out;
  const Json& dims = field(j, "surface_dims", "frames");
  if (!dims.is_array() || dims.size() != 2) throw InputError("frames: surface_dims must be [P, Q]");
  const long long p = integer(dims[0], "frames: surface_dims[0]");
  const long long q = integer(dims[1], "frames: surface_dims[1]");
  if (p < 1 || q < 1 || p * q > 1 << 22) throw InputError("frames: surface_dims out of range");
  out.p_dim = static_cast<int>(p);
  out.q_dim = static_cast<int>(q);
  const Json& shape = field(j, "shape", "frames");
  if (!shape.is_array() || shape.size() != 2) throw InputError("frames: shape must be [n, k]");
  const long long n = integer(shape[0], "frames: shape[0]");
  const long long k = integer(shape[1], "frames: shape[1]");
  if (n < 1 || k < 0 || k > n || n > 64) throw InputError("frames: shape out of range");
  const Json& list = field(j, "frames", "frames");
  if (!list.is_array() || static_cast<long long>(list.size()) != p * q) {
    throw InputError("frames: need P * Q frames");
  }
  for (long long v = 0; v < p * q; ++v) {
    const std::string ctx = "frames: vertex (" + std::to_string(v % p) + "," + std::to_string(v / p) + ")";
    if (!list[v].is_array() || static_cast<long long>(list[v].size()) != n * k) {
      throw InputError(ctx + " needs n * k entries");
    }
    GrassFrame f(n, k);
    for (long long c = 0; c < k; ++c)
      for (long long r = 0; r < n; ++r) f(r, c) = complex_value(list[v][c * n + r], ctx);
    out.frames.push_back(std::move(f));
  }
  return out;
}

}  // namespace zloch::io
