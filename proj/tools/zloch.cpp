// Command-line front end. Every command builds a JSON report; the text on
// standard output is rendered from that report.
//
// Exit codes: 0 verified, 1 falsified, 2 invalid input, 3 internal error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "zloch/error.hpp"
#include "zloch/io.hpp"
#include "zloch/optimize.hpp"
#include "zloch/parallel.hpp"
#include "zloch/spinor.hpp"
#include "zloch/synthesis.hpp"

using namespace zloch;
using io::Json;

namespace {

struct Common {
  int threads = 1;
  std::optional<double> tolerance;
  std::string report;
  bool json = false;
  bool timing = false;
  unsigned long long seed = 1;

  double tol() const {
    if (tolerance) return *tolerance;
    if (const char* env = std::getenv("ZLOCH_TOLERANCE")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0' || !(v > 0) || !(v < 1)) {
        throw InputError("ZLOCH_TOLERANCE must be a number in (0, 1)");
      }
      return v;
    }
    return 1e-3;
  }
};

using Clock = std::chrono::steady_clock;

std::vector<long long> parse_ints(const std::string& s, std::size_t count, const char* what) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InputError(std::string(what) + ": not an integer list");
    out.push_back(v);
  }
  if (count && out.size() != count) {
    throw InputError(std::string(what) + " needs " + std::to_string(count) + " comma-separated integers");
  }
  return out;
}

Coord parse_dims(const std::string& s) {
  const auto v = parse_ints(s, 3, "--dims");
  Coord c{};
  for (int i = 0; i < 3; ++i) {
    if (v[i] < 1 || v[i] > 1024) throw InputError("--dims entries must lie in [1, 1024]");
    c[i] = static_cast<int>(v[i]);
  }
  return c;
}

Rational parse_rational(const std::string& s) {
  try {
    const Rational r(s);
    return r;
  } catch (const std::exception&) {
    throw InputError("not a rational number: " + s);
  }
}

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Json integers(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) {
    if (x > Integer(INT64_MAX) || x < Integer(INT64_MIN)) {
      out.push_back(x.str());
    } else {
      out.push_back(x.convert_to<long long>());
    }
  }
  return out;
}

Json class_json(const HomologyClass& c) {
  Json out = integers(c.free);
  return out;
}

// Text rendering of a report: one "path: value" line per scalar, short
// scalar arrays inline, long arrays summarized by their length.
void render(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render(v, prefix.empty() ? k : prefix + "." + k, os);
    return;
  }
  if (j.is_array()) {
    const bool scalars = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    const std::string inline_text = j.dump();
    if (inline_text.size() <= 72) {
      os << prefix << ": " << inline_text << "\n";
    } else if (scalars && j.size() <= 12) {
      os << prefix << ": " << j.dump() << "\n";
    } else if (scalars) {
      os << prefix << ": (" << j.size() << " entries)\n";
    } else {
      os << prefix << ": (" << j.size() << " items)\n";
    }
    return;
  }
  os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

int finish(const Common& c, Json report, bool verified, Clock::time_point start) {
  report["verified"] = verified;
  if (c.timing) {
    report["timing_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
  if (!c.report.empty()) io::write_json(c.report, report);
  if (c.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    render(report, "", std::cout);
  }
  return verified ? 0 : 1;
}

std::vector<std::vector<double>> random_functions(const Torus& t, int count, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> fs(count, std::vector<double>(t.cube_count()));
  for (auto& f : fs)
    for (double& x : f) x = u(rng);
  return fs;
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const Common& c, const std::string& section_path, const std::string& bundle_path,
                const std::string& chain_out, const std::string& graph_out, int pairings) {
  const auto start = Clock::now();
  const U1Bundle b = io::bundle_from_json(io::read_json(bundle_path));
  const SampledSection s = io::section_from_json(io::read_json(section_path));
  if (!(s.torus == b.torus())) throw InputError("section and bundle have different dims");
  const Torus& t = b.torus();
  const LatticeManifold m = LatticeManifold::torus(t.dims());

  const ChernCoordinates k = chern_coordinates(b);
  ExtractOptions opts;
  opts.tolerance = c.tol();
  const WeightedChain1 chain = extract_vortex_chain(s, b, opts);
  if (!chain_out.empty()) io::write_json(chain_out, io::chain_to_json(chain));

  Json report;
  report["command"] = "analyze";
  report["inputs"] = Json{{"dims", io::coord_json(t.dims())},
                          {"charge", s.charge},
                          {"chern_coordinates", Json::array({k.k[0], k.k[1], k.k[2]})}};

  const bool closed = is_closed(chain);
  Json summary{{"support_size", chain.support().size()},
               {"weighted_length", chain.weighted_length()},
               {"closed", closed}};

  // Conservation suite: cube boundaries and pairings with random functions.
  long long cube_failures = 0;
  for (Index u = 0; u < t.cube_count(); ++u) {
    if (surface_flow_test(chain, ClosedSurface::cube_boundary(t, u)) != 0) ++cube_failures;
  }
  const auto values = boundary_pairings(chain, random_functions(t, pairings, c.seed));
  double worst = 0;
  for (double v : values) worst = std::max(worst, std::abs(v));
  const bool conserved = closed && cube_failures == 0 && worst == 0.0;
  Json conservation{{"cube_boundaries_tested", t.cube_count()},
                    {"cube_boundary_failures", cube_failures},
                    {"pairings_tested", pairings},
                    {"pairing_max_abs", worst},
                    {"passed", conserved}};

  std::array<long long, 3> scaled{};
  for (int d = 0; d < 3; ++d) scaled[d] = s.charge * k.k[d];
  const HomologyClass pd = poincare_dual({scaled[0], scaled[1], scaled[2]}, m);
  report["pd_c1"] = class_json(pd);

  bool equal = false;
  if (closed) {
    const HomologyClass cls = chain_class(chain, m);
    const EmbeddedGraphFlow egf = chain_to_graph(chain);
    const Graph& g = *egf.flow.graph;
    std::vector<int> valence(g.vertex_count(), 0);
    for (std::size_t e = 0; e < g.edge_count(); ++e) ++valence[g.tail(e)], ++valence[g.head(e)];
    summary["graph_vertices"] = g.vertex_count();
    summary["graph_edges"] = g.edge_count();
    summary["branch_vertices"] = std::count_if(valence.begin(), valence.end(), [](int v) { return v != 2; });
    if (!graph_out.empty()) {
      Json gj = io::graph_to_json(g);
      gj["offset"] = egf.offset;
      gj["flow"] = io::flow_to_json(egf.flow)["theta"];
      io::write_json(graph_out, gj);
    }
    report["chain"] = summary;
    report["class"] = class_json(cls);
    equal = cls == pd;
    const ClassLattice lam = lambda_image(egf.flow.graph, m, egf.offset, egf.tolerance);
    report["lambda"] = Json{{"rank", lam.basis.rows()}, {"pd_in_lambda", lam.contains(pd.free)}};
  } else {
    report["chain"] = summary;
    report["class"] = nullptr;
  }
  report["class_equals_pd"] = equal;
  report["conservation"] = conservation;
  return finish(c, report, equal && conserved, start);
}

// ------------------------------------------------------------- obstruction

int cmd_obstruction(const Common& c, const std::string& graph_path, const std::string& dims,
                    int genus, int circle, const std::string& cls, std::optional<double> offset) {
  const auto start = Clock::now();
  const Json gj = io::read_json(graph_path);
  const auto g = io::graph_from_json(gj);
  // Graphs written by analyze sit on the dual lattice and record their offset.
  if (!offset) {
    const auto it = gj.find("offset");
    if (it != gj.end() && !it->is_number()) throw InputError("graph: offset must be a number");
    offset = it == gj.end() ? 0.0 : it->get<double>();
  }
  const LatticeManifold m = genus > 0 ? LatticeManifold::surface_times_circle(genus, circle)
                                      : LatticeManifold::torus(parse_dims(dims));
  const std::size_t rank = m.h1_generators().size();
  const auto raw = parse_ints(cls, rank, "--class");
  std::vector<Integer> target(raw.begin(), raw.end());
  const ClassLattice lam = lambda_image(g, m, *offset);
  Json basis = Json::array();
  for (std::size_t r = 0; r < lam.basis.rows(); ++r) {
    std::vector<Integer> row;
    for (std::size_t col = 0; col < lam.basis.cols(); ++col) row.push_back(lam.basis(r, col));
    basis.push_back(integers(row));
  }
  const bool member = lam.contains(target);
  Json report;
  report["command"] = "obstruction";
  report["manifold"] = m.family_name();
  report["generators"] = m.generator_names();
  report["graph"] = Json{{"vertices", g->vertex_count()}, {"edges", g->edge_count()},
                         {"flow_basis_size", flow_basis(g).size()}};
  report["pd_c1"] = integers(target);
  report["lambda_basis"] = basis;
  report["member"] = member;
  report["obstruction_witness"] = member ? Json(nullptr) : integers(lam.residue(target));
  return finish(c, report, member, start);
}

// ----------------------------------------------------------- shortest-flow

int cmd_shortest_flow(const Common& c, const std::string& dims, const std::string& cls,
                      const std::string& spacing, const std::string& witness_out, long long nodes) {
  const auto start = Clock::now();
  FlowProgram p;
  p.manifold = LatticeManifold::torus(parse_dims(dims));
  p.target = parse_ints(cls, 3, "--class");
  p.node_limit = nodes;
  const Rational h = parse_rational(spacing);
  if (!(h > 0)) throw InputError("--spacing must be positive");
  const ShortestFlow s = shortest_flow(p);
  const WeightedChain1 w = witness_as_dual_chain(p.manifold.lattice(), s.witness);
  if (!witness_out.empty()) io::write_json(witness_out, io::chain_to_json(w));
  const Rational value = s.length * h;
  Json report;
  report["command"] = "shortest-flow";
  report["dims"] = io::coord_json(p.manifold.lattice().dims());
  report["class"] = p.target;
  report["spacing"] = rational_text(h);
  report["lattice_length"] = rational_text(s.length);
  report["value"] = rational_text(value);
  report["value_float"] = value.convert_to<double>();
  report["optimal"] = s.optimal;
  report["nodes"] = s.nodes;
  report["witness_support"] = w.support().size();
  report["witness_class"] = class_json(chain_class(w, p.manifold));
  return finish(c, report, s.optimal, start);
}

// ---------------------------------------------------------------- mu-check

int cmd_mu_check(const Common& c, int count, int max_spinors) {
  const auto start = Clock::now();
  if (count < 1 || max_spinors < 1) throw InputError("--count and --max-spinors must be positive");
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> g;
  double worst = 0;
  long long null_count = 0;
  for (int i = 0; i < count; ++i) {
    std::vector<SpinorValue> psis(1 + i % max_spinors);
    for (auto& p : psis) p = SpinorValue(std::complex<double>(g(rng), g(rng)), std::complex<double>(g(rng), g(rng)));
    const SpinorHom b = pair_tuple(psis);
    worst = std::max(worst, mu(b).cwiseAbs().maxCoeff());
    null_count += is_mu_null(b) && rows_orthogonal_equal_norm(b);
  }
  Json report;
  report["command"] = "mu-check";
  report["tuples"] = count;
  report["max_mu_residual"] = worst;
  report["mu_null_and_orthonormal_rows"] = null_count;
  return finish(c, report, worst <= 1e-12 && null_count == count, start);
}

// --------------------------------------------------------------- model-lab

int cmd_model_lab(const Common& c, int order, int points, int chart) {
  const auto start = Clock::now();
  if (order < 1 || order > 3) throw InputError("--order must lie in [1, 3]");
  if (chart < 24 || chart > 64) throw InputError("--chart must lie in [24, 64]");
  const PolynomialSpinor psi = model_harmonic_spinor(order);
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<Point3> pts(points);
  for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
  std::vector<std::complex<double>> loop;
  for (int k = 0; k < 64; ++k) {
    const double a = 2 * std::numbers::pi * k / 64;
    loop.push_back(psi({std::cos(a), std::sin(a), 0.0})(0));
  }
  Json report;
  report["command"] = "model-lab";
  report["order"] = order;
  report["dirac_residual"] = dirac_residual(psi, pts);
  report["vanishing_order"] = psi.vanishing_order();
  report["winding"] = winding_number(loop, c.tol());

  // Lattice chart: the order-N zero split into N simple zeros in adjacent
  // plaquettes around the axis.
  const std::vector<std::complex<double>> cluster{{0.5, 0.5}, {-0.5, -0.5}, {0.5, -0.5}};
  const PolynomialSpinor split =
      model_harmonic_spinor(order, std::vector<std::complex<double>>(cluster.begin(), cluster.begin() + order));
  const Torus t({chart, chart, chart});
  const double half = chart / 2;
  ExtractOptions opts;
  opts.tolerance = c.tol();
  opts.chart = true;
  const WeightedChain1 chain =
      extract_vortex_chain(sample_first_component(split, t, {-half, -half, -half}), trivial_bundle(t), opts);
  long long flux = 0;
  for (int y = 0; y < chart; ++y)
    for (int x = 0; x < chart; ++x) flux += chain.coeff[Torus::plaquette(t.vertex({x, y, chart / 2}), 2)];
  const TangentCone cone = tangent_cone(chain, {chart / 2, chart / 2, chart / 2}, {6, 8, 10});
  Json rays = Json::array();
  for (const auto& r : cone.rays) {
    rays.push_back(Json{{"direction", Json::array({r.direction[0], r.direction[1], r.direction[2]})},
                        {"multiplicity", r.multiplicity},
                        {"orientation", r.orientation}});
  }
  report["chart"] = Json{{"dims", chart}, {"split_dirac_residual", dirac_residual(split, pts)},
                         {"layer_flux", flux}, {"cone_stable", cone.stable}, {"cone_rays", rays}};

  const ExtensionCheck ext = phi0_extension_check({model_harmonic_spinor(order), model_harmonic_spinor(order + 1)});
  Json limit = Json::array();
  for (Eigen::Index col = 0; col < ext.limit.cols(); ++col) {
    Json column = Json::array();
    for (Eigen::Index r = 0; r < ext.limit.rows(); ++r) {
      const auto z = ext.limit(r, col);
      column.push_back(Json::array({std::abs(z.real()) < 1e-12 ? 0.0 : z.real(),
                                    std::abs(z.imag()) < 1e-12 ? 0.0 : z.imag()}));
    }
    limit.push_back(column);
  }
  report["extension"] = Json{{"pair_orders", Json::array({order, order + 1})},
                             {"converged", ext.converged},
                             {"oscillation", ext.oscillation},
                             {"limit_frame", limit}};
  const bool single_line = cone.stable && cone.rays.size() == 2 &&
                           std::all_of(cone.rays.begin(), cone.rays.end(),
                                       [&](const ConeRay& r) { return r.multiplicity == order; });
  const bool ok = report["dirac_residual"].get<double>() == 0.0 && report["winding"].get<long long>() == order &&
                  flux == order && single_line && ext.converged;
  return finish(c, report, ok, start);
}

// -------------------------------------------------------------------- dets

int cmd_dets(const Common& c, const std::vector<std::string>& paths, double min_overlap) {
  const auto start = Clock::now();
  std::vector<long long> degrees;
  Json per = Json::array();
  for (const auto& path : paths) {
    const io::FrameField f = io::frames_from_json(io::read_json(path));
    const long long a = pullback_detS_chern(f.frames, f.p_dim, f.q_dim, min_overlap);
    degrees.push_back(a);
    per.push_back(Json{{"file", path}, {"surface_dims", Json::array({f.p_dim, f.q_dim})}, {"degree", a}});
  }
  Json report;
  report["command"] = "dets";
  report["surfaces"] = per;
  report["degrees"] = degrees;
  const long long a = obstruction_a(degrees);
  report["obstruction_a"] = a;
  report["unobstructed"] = a == 0;
  return finish(c, report, a == 0, start);
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string kind;
  std::string dims = "16,16,16";
  std::string cls = "0,0,0";
  std::string bundle;
  std::string out = "-";
  long long perturb_edge = -1;
  double perturb = 0;
  std::vector<std::string> seeds;  // direction,a,b,multiplicity
  int charge = 1;
  int surface = 64;
};

int cmd_generate(const Common& c, const GenerateArgs& g) {
  if (g.kind == "bundle") {
    const Torus t(parse_dims(g.dims));
    const auto k = parse_ints(g.cls, 3, "--class");
    U1Bundle b = constant_flux_bundle(t, {k[0], k[1], k[2]});
    if (g.perturb_edge >= 0) {
      if (static_cast<Index>(g.perturb_edge) >= t.edge_count()) throw InputError("--perturb-edge out of range");
      std::vector<double> phases = b.phases();
      phases[g.perturb_edge] += g.perturb;
      b = U1Bundle(t, phases);
    }
    io::write_json(g.out, io::bundle_to_json(b));
    return 0;
  }
  if (g.kind == "section" || g.kind == "vortex" || g.kind == "constant") {
    if (g.bundle.empty()) throw InputError("--bundle is required");
    const U1Bundle b = io::bundle_from_json(io::read_json(g.bundle));
    SampledSection s;
    if (g.kind == "constant") {
      s = constant_section(b.torus(), 1.0, g.charge);
    } else if (g.kind == "vortex") {
      std::vector<VortexSeed> seeds;
      for (const auto& text : g.seeds) {
        const auto v = parse_ints(text, 4, "--seed-line");
        seeds.push_back({static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]),
                         static_cast<int>(v[3])});
      }
      s = vortex_section(b, seeds, g.charge, c.tol());
    } else {
      std::mt19937_64 rng(c.seed);
      s = random_valid_section(SectionSynthesizer(b, g.charge), rng, c.tol()).section;
    }
    io::write_json(g.out, io::section_to_json(s));
    return 0;
  }
  if (g.kind == "frames") {
    io::write_json(g.out, io::frames_to_json(cp1_frame_field(g.surface, g.surface), g.surface, g.surface));
    return 0;
  }
  throw InputError("unknown fixture kind: " + g.kind + " (bundle, section, vortex, constant, frames)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero loci of sampled sections: flows, homology classes and obstructions"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", common.threads, "worker threads")->check(CLI::Range(1, 256));
    sub->add_option("--tolerance", common.tolerance, "undersampling margin below pi (env ZLOCH_TOLERANCE)");
    sub->add_option("--report", common.report, "write the JSON report to PATH");
    sub->add_flag("--json", common.json, "print the JSON report instead of the text summary");
    sub->add_flag("--timing", common.timing, "include wall time in the report");
    sub->add_option("--seed", common.seed, "random seed");
  };

  std::string section, bundle, chain_out, graph_out;
  int pairings = 100;
  auto* analyze = app.add_subcommand("analyze", "extract the zero locus and compare its class with PD(c1)");
  analyze->add_option("--section", section, "section.json")->required();
  analyze->add_option("--bundle", bundle, "bundle.json")->required();
  analyze->add_option("--chain-out", chain_out, "write the extracted chain.json");
  analyze->add_option("--graph-out", graph_out, "write the extracted graph with its flow");
  analyze->add_option("--pairings", pairings, "random functions for the boundary pairing")->check(CLI::Range(0, 100000));
  add_common(analyze);

  std::string graph, dims = "4,4,4", cls;
  int genus = 0, circle = 4;
  std::optional<double> offset;
  auto* obstruction = app.add_subcommand("obstruction", "test PD(c1) for membership in the image of the flow lattice");
  obstruction->add_option("--graph", graph, "graph.json")->required();
  obstruction->add_option("--dims", dims, "T^3 lattice N1,N2,N3");
  obstruction->add_option("--genus", genus, "use Sigma_g x S^1 instead of T^3")->check(CLI::Range(1, 64));
  obstruction->add_option("--circle", circle, "circle subdivisions on Sigma_g x S^1")->check(CLI::Range(1, 1024));
  obstruction->add_option("--class", cls, "coordinates of PD(c1) in the generator basis")->required();
  obstruction->add_option("--offset", offset, "lattice offset of the polylines (default: the file's \"offset\" or 0)");
  add_common(obstruction);

  std::string sf_dims = "4,4,4", sf_class, spacing = "1", witness;
  long long nodes = 20000;
  auto* sflow = app.add_subcommand("shortest-flow", "shortest lattice cycle in a class (Hausdorff lower bound)");
  sflow->add_option("--dims", sf_dims, "lattice N1,N2,N3");
  sflow->add_option("--class", sf_class, "class a1,a2,a3")->required();
  sflow->add_option("--spacing", spacing, "lattice spacing h (rational, e.g. 1/4)");
  sflow->add_option("--witness", witness, "write the witness chain.json");
  sflow->add_option("--node-limit", nodes, "branch-and-bound node limit")->check(CLI::Range(1LL, 100000000LL));
  add_common(sflow);

  int count = 1000, max_spinors = 4;
  auto* mucheck = app.add_subcommand("mu-check", "moment map of random paired tuples");
  mucheck->add_option("--count", count, "number of tuples");
  mucheck->add_option("--max-spinors", max_spinors, "largest tuple size");
  add_common(mucheck);

  int order = 1, points = 100, chart = 24;
  auto* model = app.add_subcommand("model-lab", "local model (w^N, 0) around a zero line");
  model->add_option("--order", order, "N")->required();
  model->add_option("--points", points, "random points for the Dirac residual")->check(CLI::Range(1, 1000000));
  model->add_option("--chart", chart, "chart lattice size");
  add_common(model);

  std::vector<std::string> frames;
  double min_overlap = 1e-6;
  auto* dets = app.add_subcommand("dets", "degrees of the pulled-back det S on surfaces and the obstruction sum a_i^2");
  dets->add_option("--frames", frames, "frames.json, one per boundary surface")->required();
  dets->add_option("--min-overlap", min_overlap, "smallest admissible overlap determinant");
  add_common(dets);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "write fixtures");
  generate->add_option("kind", gen.kind, "bundle | section | vortex | constant | frames")->required();
  generate->add_option("--dims", gen.dims, "lattice N1,N2,N3");
  generate->add_option("--class", gen.cls, "Chern coordinates k1,k2,k3 (bundle)");
  generate->add_option("--bundle", gen.bundle, "bundle.json (sections)");
  generate->add_option("--out", gen.out, "output path, - for stdout");
  generate->add_option("--perturb-edge", gen.perturb_edge, "edge id to perturb (bundle)");
  generate->add_option("--perturb", gen.perturb, "phase added to that edge");
  generate->add_option("--seed-line", gen.seeds, "vortex line direction,a,b,multiplicity (repeatable)");
  generate->add_option("--charge", gen.charge, "section charge");
  generate->add_option("--surface", gen.surface, "grid size (frames)")->check(CLI::Range(2, 4096));
  add_common(generate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_thread_count(common.threads);
    common.tolerance = common.tol();
    if (!(*common.tolerance > 0) || !(*common.tolerance < 1)) throw InputError("--tolerance must lie in (0, 1)");
    if (*analyze) return cmd_analyze(common, section, bundle, chain_out, graph_out, pairings);
    if (*obstruction) return cmd_obstruction(common, graph, dims, genus, circle, cls, offset);
    if (*sflow) return cmd_shortest_flow(common, sf_dims, sf_class, spacing, witness, nodes);
    if (*mucheck) return cmd_mu_check(common, count, max_spinors);
    if (*model) return cmd_model_lab(common, order, points, chart);
    if (*dets) return cmd_dets(common, frames, min_overlap);
    if (*generate) return cmd_generate(common, gen);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const NonIntegralFluxError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
