#include "implicitize/io.hpp"

#include <fstream>

namespace implicitize {

Json complex_to_json(Complex z) {
  if (z.imag() == 0.0) return Json(z.real());
  return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw InputError("expected a number or a [re, im] pair: " + j.dump());
}

Json complex_vector_to_json(const Eigen::VectorXcd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

Eigen::VectorXcd complex_vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of complex numbers");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return v;
}

Json polynomial_to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back(Json::array({Json(e), c.real(), c.imag()}));
  }
  return Json{{"n", p.num_vars()}, {"terms", terms}};
}

Polynomial polynomial_from_json(const Json& j) {
  Polynomial p(j.at("n").get<int>());
  for (const auto& term : j.at("terms")) {
    p.add_term(term.at(0).get<std::vector<int>>(),
               Complex(term.at(1).get<double>(), term.at(2).get<double>()));
  }
  return p;
}

ProblemSpec problem_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("problem file must be a JSON object");
  const auto variables = j.at("variables").get<std::vector<std::string>>();
  auto parse_list = [&](const char* key, bool required) {
    std::vector<Polynomial> polys;
    if (!j.contains(key)) {
      if (required) throw InputError(std::string("problem file is missing '") + key + "'");
      return polys;
    }
    for (const auto& entry : j.at(key)) {
      const std::string text = entry.get<std::string>();
      try {
        polys.push_back(parse_polynomial(text, variables));
      } catch (const ParseError& e) {
        throw InputError(std::string("in '") + key + "' entry \"" + text + "\": " + e.what());
      }
    }
    return polys;
  };
  std::vector<Polynomial> ideal = parse_list("ideal", false);
  std::vector<Polynomial> map_polys = parse_list("map", true);
  const bool homogeneous = j.value("homogeneous", false);
  return ProblemSpec::make(variables, std::move(ideal), PolynomialMap(std::move(map_polys)),
                           homogeneous);
}

ProblemSpec load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw InputError("problem file is not valid JSON: " + std::string(e.what()));
  }
  return problem_from_json(j);
}

namespace {

Json form_to_json(const AffineForm& f) {
  return Json{{"coefficients", complex_vector_to_json(f.coefficients)},
              {"constant", Json::array({f.constant.real(), f.constant.imag()})}};
}

AffineForm form_from_json(const Json& j) {
  AffineForm f;
  f.coefficients = complex_vector_from_json(j.at("coefficients"));
  f.constant = complex_from_json(j.at("constant"));
  return f;
}

Json spec_to_json(const ProblemSpec& spec) {
  Json ideal = Json::array();
  for (const auto& g : spec.ideal_generators) ideal.push_back(polynomial_to_json(g));
  Json map = Json::array();
  for (const auto& f : spec.map.components) map.push_back(polynomial_to_json(f));
  return Json{{"variables", spec.variables},
              {"ideal", ideal},
              {"map", map},
              {"homogeneous", spec.homogeneous}};
}

ProblemSpec spec_from_json(const Json& j) {
  std::vector<Polynomial> ideal;
  for (const auto& g : j.at("ideal")) ideal.push_back(polynomial_from_json(g));
  std::vector<Polynomial> map;
  for (const auto& f : j.at("map")) map.push_back(polynomial_from_json(f));
  return ProblemSpec::make(j.at("variables").get<std::vector<std::string>>(), std::move(ideal),
                           PolynomialMap(std::move(map)), j.at("homogeneous").get<bool>());
}

}  // namespace

Json witness_to_json(const PseudoWitnessSet& pws) {
  Json slice = Json::array();
  for (const auto& f : pws.slice.forms) slice.push_back(form_to_json(f));
  Json extra = Json::array();
  for (const auto& f : pws.extra_source_forms) extra.push_back(form_to_json(f));
  Json pairs = Json::array();
  for (const auto& pair : pws.pairs) {
    pairs.push_back(Json{{"source", complex_vector_to_json(pair.source)},
                         {"image", complex_vector_to_json(pair.image)}});
  }
  return Json{{"kind", "pseudo_witness_set"},
              {"problem", spec_to_json(pws.spec)},
              {"cone_dim", pws.cone_dim},
              {"slice", slice},
              {"extra_source_forms", extra},
              {"pairs", pairs},
              {"degree", pws.degree()},
              {"is_complete", pws.is_complete},
              {"loop_log", pws.loop_log},
              {"seed", pws.seed}};
}

PseudoWitnessSet witness_from_json(const Json& j) {
  if (j.value("kind", "") != std::string("pseudo_witness_set"))
    throw InputError("not a pseudo-witness-set file");
  PseudoWitnessSet pws;
  pws.spec = spec_from_json(j.at("problem"));
  pws.cone = make_cone_map(pws.spec);
  pws.cone_dim = j.at("cone_dim").get<int>();
  for (const auto& f : j.at("slice")) pws.slice.forms.push_back(form_from_json(f));
  for (const auto& f : j.at("extra_source_forms"))
    pws.extra_source_forms.push_back(form_from_json(f));
  for (const auto& pair : j.at("pairs")) {
    pws.pairs.push_back({complex_vector_from_json(pair.at("source")),
                         complex_vector_from_json(pair.at("image"))});
  }
  pws.is_complete = j.at("is_complete").get<bool>();
  pws.loop_log = j.at("loop_log").get<std::vector<int>>();
  pws.seed = j.at("seed").get<std::uint64_t>();
  return pws;
}

void save_witness_file(const PseudoWitnessSet& pws, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write witness file: " + path);
  out << witness_to_json(pws).dump(2) << "\n";
}

PseudoWitnessSet load_witness_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open witness file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw InputError("witness file is not valid JSON: " + std::string(e.what()));
  }
  return witness_from_json(j);
}

Json table_to_json(const NumericalInterpolationTable& table, bool include_matrix) {
  Json points = Json::array();
  for (const auto& p : table.sample_points) points.push_back(complex_vector_to_json(p));
  Json singular = Json::array();
  for (Eigen::Index i = 0; i < table.singular_values.size(); ++i)
    singular.push_back(table.singular_values[i]);
  Json out{{"degree", table.degree_argument},
           {"num_monomials", table.num_monomials},
           {"hilbert_value", table.hilbert_value},
           {"gap_threshold", table.gap_threshold},
           {"singular_values", singular},
           {"points", points}};
  if (include_matrix) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < table.interpolation_matrix.rows(); ++i) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < table.interpolation_matrix.cols(); ++c) {
        const Complex z = table.interpolation_matrix(i, c);
        row.push_back(Json::array({z.real(), z.imag()}));
      }
      rows.push_back(std::move(row));
    }
    out["matrix"] = std::move(rows);
  }
  return out;
}

Json make_envelope(const std::string& command, std::uint64_t seed, Json settings,
                   double wall_time_seconds, Json payload) {
  return Json{{"command", command},
              {"seed", seed},
              {"settings", std::move(settings)},
              {"wall_time_s", wall_time_seconds},
              {"payload", std::move(payload)}};
}

}  // namespace implicitize
