#pragma once

#include <string>

#include <json.hpp>

#include "implicitize/interpolation.hpp"
#include "implicitize/monodromy.hpp"

namespace implicitize {

using Json = nlohmann::json;

// --- complex values: a number is real, a [re, im] pair is complex ---
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json complex_vector_to_json(const Eigen::VectorXcd& v);
Eigen::VectorXcd complex_vector_from_json(const Json& j);

// --- polynomials (structural, exact round trip) ---
Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

// --- problem files: variables, ideal, map as polynomial text ---
ProblemSpec problem_from_json(const Json& j);
ProblemSpec load_problem_file(const std::string& path);

// --- pseudo-witness sets ---
Json witness_to_json(const PseudoWitnessSet& pws);
PseudoWitnessSet witness_from_json(const Json& j);
void save_witness_file(const PseudoWitnessSet& pws, const std::string& path);
PseudoWitnessSet load_witness_file(const std::string& path);

// --- interpolation tables ---
Json table_to_json(const NumericalInterpolationTable& table, bool include_matrix = false);

// --- CLI result envelope ---
Json make_envelope(const std::string& command, std::uint64_t seed, Json settings,
                   double wall_time_seconds, Json payload);

}  // namespace implicitize
