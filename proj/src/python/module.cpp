#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "implicitize/io.hpp"
#include "implicitize/membership.hpp"

namespace py = pybind11;
using namespace implicitize;

namespace {

std::vector<std::vector<Complex>> to_nested(const std::vector<Eigen::VectorXcd>& points) {
  std::vector<std::vector<Complex>> out;
  out.reserve(points.size());
  for (const auto& p : points) out.emplace_back(p.data(), p.data() + p.size());
  return out;
}

Eigen::VectorXcd to_vector(const std::vector<Complex>& values) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
  return v;
}

/// Problem plus its lazily built source witness; the witness construction is
/// the one-time cost every query shares.
struct Session {
  ProblemSpec spec;
  ConeMap cone;
  std::uint64_t witness_seed = 0;
  std::optional<SourceWitness> witness;

  const SourceWitness& get_witness(std::uint64_t seed) {
    if (!witness || witness_seed != seed) {
      witness = build_source_witness(spec, Rng::child_seed(seed, 1));
      witness_seed = seed;
    }
    return *witness;
  }
};

Session make_session(const std::vector<std::string>& variables,
                     const std::vector<std::string>& ideal, const std::vector<std::string>& map,
                     bool homogeneous) {
  std::vector<Polynomial> gens;
  for (const auto& text : ideal) gens.push_back(parse_polynomial(text, variables));
  std::vector<Polynomial> comps;
  for (const auto& text : map) comps.push_back(parse_polynomial(text, variables));
  Session s;
  s.spec = ProblemSpec::make(variables, std::move(gens), PolynomialMap(std::move(comps)),
                             homogeneous);
  s.cone = make_cone_map(s.spec);
  return s;
}

Session session_from_json(const std::string& text) {
  Session s;
  s.spec = problem_from_json(Json::parse(text));
  s.cone = make_cone_map(s.spec);
  return s;
}

}  // namespace

PYBIND11_MODULE(_implicitize, m) {
  m.doc() = "Numerical invariants of images of polynomial maps: dimension, Hilbert function "
            "values, degree, implicit equations, and point membership.";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<Session>(m, "Problem")
      .def(py::init(&make_session), py::arg("variables"), py::arg("ideal"), py::arg("map"),
           py::arg("homogeneous") = false)
      .def_static("from_json", &session_from_json, py::arg("text"))
      .def_property_readonly("variables", [](const Session& s) { return s.spec.variables; })
      .def_property_readonly("num_vars", [](const Session& s) { return s.spec.num_vars(); })
      .def_property_readonly("target_dim", [](const Session& s) { return s.spec.target_dim(); })
      .def_property_readonly("homogeneous", [](const Session& s) { return s.spec.homogeneous; })
      .def_property_readonly("cone_ambient_dim",
                             [](const Session& s) { return s.cone.ambient_dim(); });

  py::class_<NumericalInterpolationTable>(m, "InterpolationTable")
      .def_property_readonly("degree",
                             [](const NumericalInterpolationTable& t) { return t.degree_argument; })
      .def_property_readonly("hilbert_value",
                             [](const NumericalInterpolationTable& t) { return t.hilbert_value; })
      .def_property_readonly("num_monomials",
                             [](const NumericalInterpolationTable& t) { return t.num_monomials; })
      .def_property_readonly("singular_values",
                             [](const NumericalInterpolationTable& t) {
                               return std::vector<double>(
                                   t.singular_values.data(),
                                   t.singular_values.data() + t.singular_values.size());
                             })
      .def_property_readonly("points",
                             [](const NumericalInterpolationTable& t) {
                               return to_nested(t.sample_points);
                             })
      .def("equations", [](const NumericalInterpolationTable& t) {
        return to_nested(extract_image_equations(t));
      });

  py::class_<PseudoWitnessSet>(m, "PseudoWitnessSet")
      .def_property_readonly("degree", &PseudoWitnessSet::degree)
      .def_property_readonly("is_complete",
                             [](const PseudoWitnessSet& w) { return w.is_complete; })
      .def_property_readonly("loop_log", [](const PseudoWitnessSet& w) { return w.loop_log; })
      .def_property_readonly("cone_dim", [](const PseudoWitnessSet& w) { return w.cone_dim; })
      .def("to_json", [](const PseudoWitnessSet& w) { return witness_to_json(w).dump(); })
      .def("save", [](const PseudoWitnessSet& w, const std::string& path) {
        save_witness_file(w, path);
      });

  m.def(
      "numerical_source_sample",
      [](Session& s, int count, std::uint64_t seed) {
        return to_nested(
            numerical_source_sample(s.get_witness(seed), count, Rng::child_seed(seed, 2)));
      },
      py::arg("problem"), py::arg("count"), py::arg("seed") = 0);

  m.def(
      "numerical_image_sample",
      [](Session& s, int count, std::uint64_t seed) {
        return to_nested(numerical_image_sample(s.get_witness(seed), s.cone, count,
                                                Rng::child_seed(seed, 2)));
      },
      py::arg("problem"), py::arg("count"), py::arg("seed") = 0);

  m.def(
      "numerical_image_dim",
      [](Session& s, std::uint64_t seed, double threshold) {
        return numerical_image_dim(s.spec, s.get_witness(seed), Rng::child_seed(seed, 2),
                                   threshold);
      },
      py::arg("problem"), py::arg("seed") = 0, py::arg("threshold") = kDefaultGapThreshold);

  m.def(
      "numerical_hilbert_function",
      [](Session& s, int degree, std::uint64_t seed, double threshold, int threads) {
        return numerical_hilbert_function(s.spec, s.get_witness(seed), s.cone, degree, threshold,
                                          Rng::child_seed(seed, 2), {}, threads);
      },
      py::arg("problem"), py::arg("degree"), py::arg("seed") = 0,
      py::arg("threshold") = kDefaultGapThreshold, py::arg("threads") = 1);

  m.def(
      "numerical_image_degree",
      [](Session& s, std::uint64_t seed, int max_loops, int max_trace_tests, int threads,
         const std::optional<std::function<void(int)>>& progress) {
        DegreeOptions options;
        options.max_repetitive_monodromies = max_loops;
        options.max_trace_tests = max_trace_tests;
        options.threads = threads;
        if (progress) options.progress = *progress;
        PseudoWitnessSet pws = numerical_image_degree(s.spec, s.get_witness(seed), s.cone,
                                                      Rng::child_seed(seed, 2), options);
        pws.seed = seed;
        return pws;
      },
      py::arg("problem"), py::arg("seed") = 0, py::arg("max_loops") = 4,
      py::arg("max_trace_tests") = 10, py::arg("threads") = 1,
      py::arg("progress") = py::none());

  m.def(
      "is_on_image",
      [](const PseudoWitnessSet& pws, const std::vector<Complex>& point, double tolerance,
         std::uint64_t seed, int threads) {
        return is_on_image(pws, to_vector(point), tolerance, Rng::child_seed(seed, 2), {},
                           threads);
      },
      py::arg("witness"), py::arg("point"), py::arg("tolerance") = kImageMatchTolerance,
      py::arg("seed") = 0, py::arg("threads") = 1);

  m.def("load_witness", &load_witness_file, py::arg("path"));

  m.def(
      "monomial_basis",
      [](int degree, int num_vars) { return monomial_basis(degree, num_vars); },
      py::arg("degree"), py::arg("num_vars"),
      "Exponent vectors of total degree d in graded-lexicographic order; this is the column "
      "order of interpolation matrices and extracted equations.");
}
