#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zloch/error.hpp"
#include "zloch/io.hpp"
#include "zloch/optimize.hpp"
#include "zloch/spinor.hpp"
#include "zloch/synthesis.hpp"

namespace py = pybind11;
using namespace zloch;

namespace {

std::vector<long long> to_longs(const std::vector<Integer>& v) {
  std::vector<long long> out;
  for (const auto& x : v) out.push_back(x.convert_to<long long>());
  return out;
}

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_zloch, m) {
  m.doc() = "Zero loci of lattice line-bundle sections, flows and the moment-map algebra";

  auto base = py::register_exception<Error>(m, "ZlochError");
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<UndersampledError>(m, "UndersampledError", base.ptr());
  py::register_exception<NonIntegralFluxError>(m, "NonIntegralFluxError", base.ptr());
  py::register_exception<CapabilityError>(m, "CapabilityError", base.ptr());
  py::register_exception<InternalError>(m, "InternalError", base.ptr());

  py::class_<Torus>(m, "Torus")
      .def(py::init<Coord>(), py::arg("dims"))
      .def_property_readonly("dims", &Torus::dims)
      .def_property_readonly("vertex_count", &Torus::vertex_count)
      .def_property_readonly("edge_count", &Torus::edge_count)
      .def_property_readonly("plaquette_count", &Torus::plaquette_count)
      .def("vertex", &Torus::vertex)
      .def("coords", &Torus::coords);

  py::class_<LatticeManifold>(m, "LatticeManifold")
      .def_static("torus", &LatticeManifold::torus, py::arg("dims"))
      .def_static("surface_times_circle", &LatticeManifold::surface_times_circle, py::arg("genus"),
                  py::arg("n"))
      .def_property_readonly("family", &LatticeManifold::family_name)
      .def_property_readonly("generator_names", &LatticeManifold::generator_names);

  py::class_<U1Bundle>(m, "U1Bundle")
      .def(py::init<const Torus&, std::vector<double>>(), py::arg("torus"), py::arg("phases"))
      .def_property_readonly("torus", &U1Bundle::torus)
      .def_property_readonly("phases", &U1Bundle::phases)
      .def("curvatures", &U1Bundle::curvatures);
  m.def("trivial_bundle", &trivial_bundle, py::arg("torus"));
  m.def("constant_flux_bundle", &constant_flux_bundle, py::arg("torus"), py::arg("k"));
  m.def(
      "chern_coordinates", [](const U1Bundle& b) { return chern_coordinates(b).k; }, py::arg("bundle"));

  py::class_<SampledSection>(m, "SampledSection")
      .def_readonly("torus", &SampledSection::torus)
      .def_readonly("values", &SampledSection::values)
      .def_readonly("charge", &SampledSection::charge);

  py::class_<VortexSeed>(m, "VortexSeed")
      .def(py::init([](int direction, int a, int b, int multiplicity) {
             return VortexSeed{direction, a, b, multiplicity};
           }),
           py::arg("direction"), py::arg("a"), py::arg("b"), py::arg("multiplicity") = 1);
  m.def("constant_section", &constant_section, py::arg("torus"), py::arg("value") = std::complex<double>(1.0),
        py::arg("charge") = 1);
  m.def("vortex_section", &vortex_section, py::arg("bundle"), py::arg("seeds"), py::arg("charge") = 1,
        py::arg("tolerance") = 1e-3);
  m.def(
      "random_section",
      [](const U1Bundle& b, unsigned long long seed, int charge) {
        std::mt19937_64 rng(seed);
        const RandomSection rs = random_valid_section(SectionSynthesizer(b, charge), rng);
        return py::make_tuple(rs.section, rs.vorticity);
      },
      py::arg("bundle"), py::arg("seed"), py::arg("charge") = 1,
      "Seeded random valid section; returns (section, ground-truth vorticity).");

  py::class_<WeightedChain1>(m, "WeightedChain1")
      .def_readonly("torus", &WeightedChain1::torus)
      .def_readonly("coeff", &WeightedChain1::coeff)
      .def("support", &WeightedChain1::support)
      .def("weighted_length", &WeightedChain1::weighted_length)
      .def("is_empty", &WeightedChain1::empty);
  m.def(
      "extract_vortex_chain",
      [](const SampledSection& s, const U1Bundle& b, double tolerance) {
        ExtractOptions o;
        o.tolerance = tolerance;
        return extract_vortex_chain(s, b, o);
      },
      py::arg("section"), py::arg("bundle"), py::arg("tolerance") = 1e-3);
  m.def("is_closed", &is_closed, py::arg("chain"));
  m.def(
      "chain_class", [](const WeightedChain1& c, const LatticeManifold& mf) { return to_longs(chain_class(c, mf).free); },
      py::arg("chain"), py::arg("manifold"));
  m.def(
      "poincare_dual",
      [](const std::vector<long long>& flux, const LatticeManifold& mf) { return to_longs(poincare_dual(flux, mf).free); },
      py::arg("flux"), py::arg("manifold"));
  m.def("winding_number", &winding_number, py::arg("loop"), py::arg("tolerance") = 1e-3,
        py::arg("max_jump") = 1.5707963267948966);

  m.def(
      "lambda_contains",
      [](const std::string& graph_json, const LatticeManifold& mf, const std::vector<long long>& cls, double offset) {
        const auto g = io::graph_from_json(io::Json::parse(graph_json));
        return lambda_image(g, mf, offset).contains(std::vector<Integer>(cls.begin(), cls.end()));
      },
      py::arg("graph_json"), py::arg("manifold"), py::arg("pd_class"), py::arg("offset") = 0.0,
      "Whether the class lies in the image of the flows on the graph given as graph.json text.");

  m.def(
      "shortest_flow",
      [](Coord dims, const std::vector<long long>& cls) {
        FlowProgram p;
        p.manifold = LatticeManifold::torus(dims);
        p.target = cls;
        const ShortestFlow s = shortest_flow(p);
        return py::make_tuple(rational_text(s.length), s.optimal, s.witness);
      },
      py::arg("dims"), py::arg("pd_class"), "Returns (length as a rational string, optimal, witness).");

  m.def("mu", &mu, py::arg("b"));
  m.def("is_mu_null", &is_mu_null, py::arg("b"), py::arg("tol") = 1e-10);
  m.def("rows_orthogonal_equal_norm", &rows_orthogonal_equal_norm, py::arg("b"), py::arg("tol") = 1e-10);
  m.def("quaternionic_J", &quaternionic_J, py::arg("psi"));
  m.def("pair_tuple", &pair_tuple, py::arg("psis"));
  m.def("kernel_frame", &kernel_frame, py::arg("b"), py::arg("tol") = 1e-10);
  m.def("grassmann_distance", &grassmann_distance, py::arg("a"), py::arg("b"));
  m.def("cp1_frame_field", &cp1_frame_field, py::arg("p"), py::arg("q"));
  m.def("pullback_detS_chern", &pullback_detS_chern, py::arg("frames"), py::arg("p"), py::arg("q"),
        py::arg("min_overlap") = 1e-6);
  m.def("obstruction_a", &obstruction_a, py::arg("degrees"));
}
