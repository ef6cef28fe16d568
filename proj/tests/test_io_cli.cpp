#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "implicitize/io.hpp"
#include "implicitize/membership.hpp"

using namespace implicitize;

namespace {

#ifndef IMPLICITIZE_CLI_PATH
#define IMPLICITIZE_CLI_PATH "implicitize"
#endif

std::string temp_path(const std::string& name) {
  return std::string("/tmp/implicitize_test_") + std::to_string(::getpid()) + "_" + name;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << contents;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  const std::string out_path = temp_path("stdout");
  const std::string err_path = temp_path("stderr");
  const std::string command = std::string(IMPLICITIZE_CLI_PATH) + " " + args + " > " + out_path +
                              " 2> " + err_path;
  const int raw = std::system(command.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = read_file(out_path);
  r.err = read_file(err_path);
  return r;
}

const char* kTwistedCubicJson = R"({
  "variables": ["s", "t"],
  "ideal": [],
  "map": ["s^3", "s^2*t", "s*t^2", "t^3"],
  "homogeneous": true
})";

}  // namespace

TEST_CASE("problem files parse into validated specs") {
  const ProblemSpec spec = problem_from_json(Json::parse(kTwistedCubicJson));
  CHECK(spec.num_vars() == 2);
  CHECK(spec.target_dim() == 4);
  CHECK(spec.homogeneous);
  CHECK(spec.ideal_generators.empty());

  CHECK_THROWS_AS(problem_from_json(Json::parse(R"({"variables": ["x"]})")), InputError);
  CHECK_THROWS_AS(
      problem_from_json(Json::parse(R"({"variables": ["x"], "map": ["x + q"]})")), InputError);
  CHECK_THROWS_AS(
      problem_from_json(Json::parse(
          R"({"variables": ["x"], "map": ["x", "x^2"], "homogeneous": true})")),
      InputError);
}

TEST_CASE("complex vectors and polynomials round-trip through JSON exactly") {
  Eigen::VectorXcd v(3);
  v << Complex(1.25, -0.5), Complex(0.0, 1e-17), Complex(-3.0, 0.0);
  const Eigen::VectorXcd back = complex_vector_from_json(complex_vector_to_json(v));
  CHECK(back == v);

  const std::vector<std::string> xy{"x", "y"};
  const Polynomial p = parse_polynomial("(0.1+2i)*x^3*y - y^2 + 0.25", xy);
  CHECK(polynomial_from_json(polynomial_to_json(p)) == p);
}

TEST_CASE("pseudo-witness sets survive a save/load round trip") {
  const ProblemSpec spec = problem_from_json(Json::parse(kTwistedCubicJson));
  const SourceWitness witness = build_source_witness(spec, 1);
  const ConeMap cone = make_cone_map(spec);
  PseudoWitnessSet pws = numerical_image_degree(spec, witness, cone, 2);
  REQUIRE(pws.is_complete);
  pws.seed = 2;

  const std::string path = temp_path("witness.json");
  save_witness_file(pws, path);
  const PseudoWitnessSet loaded = load_witness_file(path);
  CHECK(loaded.degree() == pws.degree());
  CHECK(loaded.is_complete == pws.is_complete);
  CHECK(loaded.cone_dim == pws.cone_dim);
  CHECK(loaded.loop_log == pws.loop_log);
  CHECK(loaded.seed == pws.seed);
  for (std::size_t i = 0; i < pws.pairs.size(); ++i) {
    CHECK(loaded.pairs[i].source == pws.pairs[i].source);
    CHECK(loaded.pairs[i].image == pws.pairs[i].image);
  }

  // The loaded witness answers membership without recomputation.
  const auto samples = numerical_image_sample(witness, cone, 2, 3);
  for (const auto& y : samples) CHECK(is_on_image(loaded, y, kImageMatchTolerance, 4));
}

TEST_CASE("cli: dim on the twisted cubic") {
  const std::string problem = temp_path("tc.json");
  write_file(problem, kTwistedCubicJson);
  const CliResult r = run_cli("dim " + problem + " --seed 7");
  REQUIRE(r.exit_code == 0);
  const Json env = Json::parse(r.out);
  CHECK(env.at("command") == "dim");
  CHECK(env.at("seed") == 7);
  CHECK(env.at("payload").at("dimension") == 2);
}

TEST_CASE("cli: degree with witness persistence, progress stream, and membership") {
  const std::string problem = temp_path("tc2.json");
  const std::string witness_path = temp_path("tc2_witness.json");
  write_file(problem, kTwistedCubicJson);
  const std::string before = read_file(problem);

  const CliResult degree =
      run_cli("degree " + problem + " --seed 11 --witness-out " + witness_path);
  REQUIRE(degree.exit_code == 0);
  const Json env = Json::parse(degree.out);
  CHECK(env.at("payload").at("degree") == 3);
  CHECK(env.at("payload").at("is_complete") == true);

  // Progress events mirror the persisted loop log.
  std::vector<int> counts;
  std::istringstream err(degree.err);
  std::string line;
  while (std::getline(err, line)) {
    if (line.empty()) continue;
    const Json event = Json::parse(line);
    if (event.value("event", "") == "points_found") counts.push_back(event.at("count"));
  }
  const Json saved = Json::parse(read_file(witness_path));
  CHECK(saved.at("loop_log").get<std::vector<int>>() == counts);
  CHECK(read_file(problem) == before);  // input never mutated

  // Member: a sampled image point and a far-away point.
  const CliResult sample = run_cli("sample " + problem + " --which image --count 1 --seed 3");
  REQUIRE(sample.exit_code == 0);
  const Json pt = Json::parse(sample.out).at("payload").at("points").at(0);
  const std::string pt_path = temp_path("pt.json");
  write_file(pt_path, pt.dump());
  const CliResult yes = run_cli("member @" + pt_path + " --witness-in " + witness_path);
  REQUIRE(yes.exit_code == 0);
  CHECK(Json::parse(yes.out).at("payload").at("is_member") == true);

  const CliResult no = run_cli(std::string("member \"[[5,0],[4,1],[3,2],[2,3]]\" ") +
                               "--witness-in " + witness_path);
  REQUIRE(no.exit_code == 0);
  CHECK(Json::parse(no.out).at("payload").at("is_member") == false);
}

TEST_CASE("cli: hilbert on the conic with a table file") {
  const std::string problem = temp_path("conic.json");
  write_file(problem, R"({
    "variables": ["s", "t"],
    "map": ["s^2", "s*t", "t^2"],
    "homogeneous": true
  })");
  const std::string table_path = temp_path("table.json");
  const CliResult r = run_cli("hilbert " + problem + " --degree-arg 2 --seed 5 --table-out " +
                              table_path + " --quiet");
  REQUIRE(r.exit_code == 0);
  CHECK(r.err.empty());
  const Json env = Json::parse(r.out);
  CHECK(env.at("payload").at("hilbert_value") == 1);
  CHECK(env.at("payload").at("num_monomials") == 6);
  const Json table = Json::parse(read_file(table_path));
  CHECK(table.at("hilbert_value") == 1);
  CHECK(table.at("singular_values").size() == 6);
  CHECK_FALSE(table.contains("matrix"));

  const CliResult with_matrix = run_cli("hilbert " + problem +
                                        " --degree-arg 2 --seed 5 --table-out " + table_path +
                                        " --include-matrix --quiet");
  REQUIRE(with_matrix.exit_code == 0);
  CHECK(Json::parse(read_file(table_path)).at("matrix").size() == 6);
}

TEST_CASE("cli: sample answers are byte-identical for a fixed seed") {
  const std::string problem = temp_path("circle.json");
  write_file(problem, R"({
    "variables": ["x", "y"],
    "ideal": ["x^2 + y^2 - 1"],
    "map": ["x", "y"],
    "homogeneous": false
  })");
  const CliResult a = run_cli("sample " + problem + " --count 4 --which source --seed 99");
  const CliResult b = run_cli("sample " + problem + " --count 4 --which source --seed 99");
  REQUIRE(a.exit_code == 0);
  CHECK(Json::parse(a.out).at("payload").dump() == Json::parse(b.out).at("payload").dump());

  // Residual check on the emitted points.
  const std::vector<std::string> xy{"x", "y"};
  const Polynomial circle = parse_polynomial("x^2 + y^2 - 1", xy);
  for (const auto& point : Json::parse(a.out).at("payload").at("points")) {
    CHECK(std::abs(circle.evaluate(complex_vector_from_json(point))) <= 1e-8);
  }
}

TEST_CASE("cli: a strangled degree run exits with the lower-bound code") {
  const std::string problem = temp_path("tc3.json");
  write_file(problem, kTwistedCubicJson);
  const CliResult r =
      run_cli("degree " + problem + " --max-loops 1 --max-trace-tests 1 --seed 2 --quiet");
  CHECK(r.exit_code == 4);
  const Json env = Json::parse(r.out);
  CHECK(env.at("payload").at("is_complete") == false);
  CHECK(env.at("payload").at("degree").get<int>() < 3);
}

TEST_CASE("cli: exit codes for bad input") {
  const CliResult missing = run_cli("dim /tmp/definitely_missing_problem.json");
  CHECK(missing.exit_code != 0);

  const std::string bad = temp_path("bad.json");
  write_file(bad, "{\"variables\": [\"x\"], \"map\": [\"x + q\"]}");
  const CliResult parse_fail = run_cli("dim " + bad);
  CHECK(parse_fail.exit_code == 2);
}
