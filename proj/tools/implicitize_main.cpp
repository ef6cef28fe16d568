#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "implicitize/io.hpp"
#include "implicitize/membership.hpp"

namespace {

using namespace implicitize;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitNumericalFailure = 3;
constexpr int kExitIncomplete = 4;

struct CommonOptions {
  std::string problem_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double threshold = kDefaultGapThreshold;
  int threads = 1;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_problem = true) {
  if (with_problem)
    cmd->add_option("problem", opt.problem_path, "problem description (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
  cmd->add_option("--seed", opt.seed, "random seed; omitted seeds are drawn and echoed")
      ->each([&opt](const std::string&) { opt.seed_given = true; });
  cmd->add_option("--threshold", opt.threshold, "SVD gap threshold")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", opt.threads, "worker threads for path tracking")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--quiet", opt.quiet, "suppress progress output");
}

std::uint64_t effective_seed(CommonOptions& opt) {
  if (!opt.seed_given) {
    std::random_device rd;
    opt.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  return opt.seed;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const Json& envelope) { std::cout << envelope.dump(2) << std::endl; }

void progress_event(bool quiet, const std::string& event, const Json& data) {
  if (quiet) return;
  Json line = data;
  line["event"] = event;
  std::cerr << line.dump() << std::endl;
}

int run_dim(CommonOptions& opt) {
  const std::uint64_t seed = effective_seed(opt);
  Stopwatch clock;
  const ProblemSpec spec = load_problem_file(opt.problem_path);
  const SourceWitness witness = build_source_witness(spec, Rng::child_seed(seed, 1), {}, opt.threads);
  const int dim = numerical_image_dim(spec, witness, Rng::child_seed(seed, 2), opt.threshold);
  emit(make_envelope("dim", seed, Json{{"threshold", opt.threshold}}, clock.seconds(),
                     Json{{"dimension", dim}}));
  return kExitOk;
}

int run_hilbert(CommonOptions& opt, int degree_arg, const std::string& table_out,
                bool include_matrix) {
  const std::uint64_t seed = effective_seed(opt);
  Stopwatch clock;
  const ProblemSpec spec = load_problem_file(opt.problem_path);
  const SourceWitness witness = build_source_witness(spec, Rng::child_seed(seed, 1), {}, opt.threads);
  const ConeMap cone = make_cone_map(spec);
  progress_event(opt.quiet, "sampling_image_points", {{"count", 0}});
  const NumericalInterpolationTable table = numerical_hilbert_function(
      spec, witness, cone, degree_arg, opt.threshold, Rng::child_seed(seed, 2), {}, opt.threads);
  if (!table_out.empty()) {
    std::ofstream out(table_out);
    if (!out) throw InputError("cannot write table file: " + table_out);
    out << table_to_json(table, include_matrix).dump(2) << "\n";
  }
  emit(make_envelope("hilbert", seed,
                     Json{{"threshold", opt.threshold}, {"degree_arg", degree_arg}},
                     clock.seconds(), table_to_json(table, false)));
  return kExitOk;
}

int run_degree(CommonOptions& opt, int max_loops, int max_trace_tests,
               const std::string& witness_out) {
  const std::uint64_t seed = effective_seed(opt);
  Stopwatch clock;
  const ProblemSpec spec = load_problem_file(opt.problem_path);
  const SourceWitness witness = build_source_witness(spec, Rng::child_seed(seed, 1), {}, opt.threads);
  const ConeMap cone = make_cone_map(spec);
  DegreeOptions options;
  options.max_repetitive_monodromies = max_loops;
  options.max_trace_tests = max_trace_tests;
  options.gap_threshold = opt.threshold;
  options.threads = opt.threads;
  options.progress = [&](int count) {
    progress_event(opt.quiet, "points_found", {{"count", count}});
  };
  const PseudoWitnessSet pws =
      numerical_image_degree(spec, witness, cone, Rng::child_seed(seed, 2), options);
  if (!witness_out.empty()) {
    PseudoWitnessSet persisted = pws;
    persisted.seed = seed;
    save_witness_file(persisted, witness_out);
  }
  emit(make_envelope("degree", seed,
                     Json{{"threshold", opt.threshold},
                          {"max_loops", max_loops},
                          {"max_trace_tests", max_trace_tests}},
                     clock.seconds(),
                     Json{{"degree", pws.degree()},
                          {"is_complete", pws.is_complete},
                          {"loop_log", pws.loop_log}}));
  return pws.is_complete ? kExitOk : kExitIncomplete;
}

int run_member(CommonOptions& opt, const std::string& witness_in, const std::string& point_text) {
  const std::uint64_t seed = effective_seed(opt);
  Stopwatch clock;
  const PseudoWitnessSet pws = load_witness_file(witness_in);
  std::string text = point_text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw InputError("cannot open point file: " + text.substr(1));
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  Json parsed;
  try {
    parsed = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("query point is not valid JSON: " + std::string(e.what()));
  }
  const Eigen::VectorXcd point = complex_vector_from_json(parsed);
  MembershipReport report;
  const bool member = is_on_image(pws, point, kImageMatchTolerance, Rng::child_seed(seed, 2), {},
                                  opt.threads, &report);
  Json payload{{"is_member", member}};
  if (!report.all_paths_tracked)
    payload["warning"] = "some witness paths were lost; the answer may be incomplete";
  emit(make_envelope("member", seed, Json{{"tolerance", kImageMatchTolerance}}, clock.seconds(),
                     payload));
  return kExitOk;
}

int run_sample(CommonOptions& opt, int count, const std::string& which) {
  const std::uint64_t seed = effective_seed(opt);
  Stopwatch clock;
  const ProblemSpec spec = load_problem_file(opt.problem_path);
  const SourceWitness witness = build_source_witness(spec, Rng::child_seed(seed, 1), {}, opt.threads);
  Json points = Json::array();
  if (which == "source") {
    for (const auto& p :
         numerical_source_sample(witness, count, Rng::child_seed(seed, 2), {}, opt.threads))
      points.push_back(complex_vector_to_json(p));
  } else {
    const ConeMap cone = make_cone_map(spec);
    for (const auto& p : numerical_image_sample(witness, cone, count, Rng::child_seed(seed, 2),
                                                {}, opt.threads))
      points.push_back(complex_vector_to_json(p));
  }
  emit(make_envelope("sample", seed, Json{{"count", count}, {"which", which}}, clock.seconds(),
                     Json{{"points", points}}));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical invariants of images of polynomial maps"};
  app.require_subcommand(1);

  CommonOptions dim_opt;
  CLI::App* dim_cmd = app.add_subcommand("dim", "dimension of the closure of the image");
  add_common(dim_cmd, dim_opt);

  CommonOptions hilbert_opt;
  int degree_arg = 0;
  std::string table_out;
  bool include_matrix = false;
  CLI::App* hilbert_cmd =
      app.add_subcommand("hilbert", "Hilbert function value of the projective closure");
  add_common(hilbert_cmd, hilbert_opt);
  hilbert_cmd->add_option("--degree-arg", degree_arg, "degree argument d")
      ->required()
      ->check(CLI::NonNegativeNumber);
  hilbert_cmd->add_option("--table-out", table_out, "write the interpolation table (JSON)");
  hilbert_cmd->add_flag("--include-matrix", include_matrix,
                        "include the interpolation matrix in the table file");

  CommonOptions degree_opt;
  int max_loops = 4;
  int max_trace_tests = 10;
  std::string witness_out;
  CLI::App* degree_cmd = app.add_subcommand("degree", "degree of the projective closure");
  add_common(degree_cmd, degree_opt);
  degree_cmd->add_option("--max-loops", max_loops,
                         "consecutive empty monodromy rounds before the trace test")
      ->check(CLI::PositiveNumber);
  degree_cmd->add_option("--max-trace-tests", max_trace_tests,
                         "failed trace tests before giving up with a lower bound")
      ->check(CLI::PositiveNumber);
  degree_cmd->add_option("--witness-out", witness_out, "persist the pseudo-witness set (JSON)");

  CommonOptions member_opt;
  std::string witness_in;
  std::string point_text;
  CLI::App* member_cmd = app.add_subcommand("member", "point membership in the image");
  member_cmd->add_option("point", point_text,
                         "query point as a JSON vector (numbers or [re,im] pairs); @file reads "
                         "the vector from a file")
      ->required();
  member_cmd->add_option("--witness-in", witness_in, "pseudo-witness set produced by 'degree'")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(member_cmd, member_opt, /*with_problem=*/false);

  CommonOptions sample_opt;
  int count = 1;
  std::string which = "source";
  CLI::App* sample_cmd = app.add_subcommand("sample", "general points on the source or image");
  add_common(sample_cmd, sample_opt);
  sample_cmd->add_option("--count", count, "number of points")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--which", which, "source or image")
      ->check(CLI::IsMember({"source", "image"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (dim_cmd->parsed()) return run_dim(dim_opt);
    if (hilbert_cmd->parsed())
      return run_hilbert(hilbert_opt, degree_arg, table_out, include_matrix);
    if (degree_cmd->parsed())
      return run_degree(degree_opt, max_loops, max_trace_tests, witness_out);
    if (member_cmd->parsed()) return run_member(member_opt, witness_in, point_text);
    if (sample_cmd->parsed()) return run_sample(sample_opt, count, which);
  } catch (const implicitize::InputError& e) {
    std::cerr << "input error: " << e.what() << std::endl;
    return kExitInputError;
  } catch (const implicitize::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << std::endl;
    return kExitNumericalFailure;
  }
  return kExitInputError;
}
