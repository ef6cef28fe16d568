#include "implicitize/sampler.hpp"

#include <string>

#include "implicitize/linalg.hpp"
#include "implicitize/rng.hpp"

namespace implicitize {

namespace {

Eigen::MatrixXcd evaluate_poly_matrix(const std::vector<std::vector<Polynomial>>& rows,
                                      const Eigen::VectorXcd& x) {
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = r == 0 ? 0 : static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXcd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[i][j].evaluate(x);
  }
  return m;
}

std::vector<Polynomial> sliced_system(const ProblemSpec& spec,
                                      const std::vector<AffineForm>& slice) {
  std::vector<Polynomial> system = spec.ideal_generators;
  for (const auto& form : slice) system.push_back(form.to_polynomial());
  return system;
}

Eigen::VectorXcd random_tuple(int n, Rng& rng) {
  Eigen::VectorXcd x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.annulus(0.5, 1.5);
  return x;
}

double generator_residual(const ProblemSpec& spec, const Eigen::VectorXcd& x) {
  double res = 0.0;
  for (const auto& g : spec.ideal_generators)
    res = std::max(res, std::abs(g.evaluate(x)));
  return res;
}

/// The ideal's Jacobian must have rank r at a smooth point of the complete
/// intersection. Points where the rank drops sit on degenerate loci (every
/// generator can vanish identically on an extra component together with its
/// differentials) and carry no sampling value.
bool jacobian_rank_ok(const std::vector<std::vector<Polynomial>>& jac_rows, int expected_rank,
                      const Eigen::VectorXcd& x) {
  const int n = static_cast<int>(x.size());
  const Eigen::MatrixXcd jac = precondition_rows(evaluate_poly_matrix(jac_rows, x));
  return n - numerical_kernel_dim(jac) == expected_rank;
}

}  // namespace

std::vector<AffineForm> random_affine_forms(int num_vars, int count, Rng& rng) {
  std::vector<AffineForm> forms;
  forms.reserve(count);
  for (int k = 0; k < count; ++k) {
    AffineForm f;
    f.coefficients.resize(num_vars);
    for (int i = 0; i < num_vars; ++i) f.coefficients[i] = rng.annulus(0.5, 1.5);
    f.constant = rng.annulus(0.5, 1.5);
    forms.push_back(std::move(f));
  }
  return forms;
}

SourceWitness build_source_witness(const ProblemSpec& spec, std::uint64_t seed,
                                   const TrackSettings& settings, int threads) {
  SourceWitness w;
  w.spec = spec;
  const int n = spec.num_vars();
  const int r = static_cast<int>(spec.ideal_generators.size());
  if (r >= n) throw InputError("the ideal has at least as many generators as variables");
  w.source_dim = n - r;
  if (r == 0) return w;

  const auto jac_rows = jacobian(spec.ideal_generators);
  std::string last_failure = "no finite solutions found";
  for (int attempt = 0; attempt < 5; ++attempt) {
    Rng rng(Rng::child_seed(seed, attempt));
    std::vector<AffineForm> slice = random_affine_forms(n, n - r, rng);
    std::vector<TrackedPoint> sols;
    try {
      sols = solve_total_degree(sliced_system(spec, slice), settings, rng.raw(), threads);
    } catch (const NumericalError&) {
      continue;
    }
    std::vector<Eigen::VectorXcd> kept;
    bool rank_failure = false;
    for (const auto& tp : sols) {
      if (generator_residual(spec, tp.coordinates) > kSampleResidualTolerance) continue;
      if (!jacobian_rank_ok(jac_rows, r, tp.coordinates)) {
        rank_failure = true;
        continue;
      }
      kept.push_back(tp.coordinates);
    }
    if (!kept.empty()) {
      w.slice = std::move(slice);
      w.points = std::move(kept);
      return w;
    }
    last_failure = rank_failure
                       ? "the ideal's Jacobian rank differs from the generator count at every "
                         "witness point; the generators do not cut a complete intersection there"
                       : "no finite solutions found on the sliced source variety";
  }
  throw NumericalError("witness construction failed: " + last_failure);
}

std::vector<Eigen::VectorXcd> numerical_source_sample(const SourceWitness& witness, int count,
                                                      std::uint64_t seed,
                                                      const TrackSettings& settings, int threads) {
  if (count <= 0) throw InputError("sample count must be positive");
  const ProblemSpec& spec = witness.spec;
  const int n = spec.num_vars();
  std::vector<Eigen::VectorXcd> samples;
  samples.reserve(count);

  if (witness.trivial()) {
    for (int k = 0; k < count; ++k) {
      Rng rng(Rng::child_seed(seed, k));
      samples.push_back(random_tuple(n, rng));
    }
    return samples;
  }

  (void)threads;  // per-sample tracks are short; parallelism lives in callers
  const std::vector<Polynomial> start_system = sliced_system(spec, witness.slice);
  const int r = static_cast<int>(spec.ideal_generators.size());
  const auto jac_rows = jacobian(spec.ideal_generators);
  const std::size_t witness_count = witness.points.size();

  for (int k = 0; k < count; ++k) {
    bool found = false;
    for (int retry = 0; retry < 5 && !found; ++retry) {
      Rng rng(Rng::child_seed(seed, static_cast<std::uint64_t>(k) * 8 + retry));
      const std::vector<AffineForm> fresh = random_affine_forms(n, n - r, rng);
      Homotopy h(start_system, sliced_system(spec, fresh), rng.unit_circle());
      for (std::size_t w = 0; w < witness_count && !found; ++w) {
        const auto& start = witness.points[(static_cast<std::size_t>(k) + w) % witness_count];
        const TrackedPoint tp = track_path(h, start, settings);
        if (tp.ok() && generator_residual(spec, tp.coordinates) <= kSampleResidualTolerance &&
            jacobian_rank_ok(jac_rows, r, tp.coordinates)) {
          samples.push_back(tp.coordinates);
          found = true;
        }
      }
    }
    if (!found)
      throw NumericalError("source sampling failed: every track to a fresh slice was lost");
  }
  return samples;
}

std::vector<ConeSample> sample_cone_points(const SourceWitness& witness, const ConeMap& cone,
                                           int count, std::uint64_t seed,
                                           const TrackSettings& settings, int threads) {
  const std::vector<Eigen::VectorXcd> sources =
      numerical_source_sample(witness, count, Rng::child_seed(seed, 0x501ce), settings, threads);
  std::vector<ConeSample> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    ConeSample s;
    s.source = sources[k];
    if (cone.lambda_augmented) {
      Rng rng(Rng::child_seed(seed, 0x1a3bda + k));
      s.cone_source.resize(s.source.size() + 1);
      s.cone_source[0] = rng.annulus(0.5, 1.5);
      s.cone_source.tail(s.source.size()) = s.source;
    } else {
      s.cone_source = s.source;
    }
    s.image = cone.map.evaluate(s.cone_source);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Eigen::VectorXcd> numerical_image_sample(const SourceWitness& witness,
                                                     const ConeMap& cone, int count,
                                                     std::uint64_t seed,
                                                     const TrackSettings& settings, int threads) {
  std::vector<Eigen::VectorXcd> images;
  images.reserve(count);
  for (auto& s : sample_cone_points(witness, cone, count, seed, settings, threads))
    images.push_back(std::move(s.image));
  return images;
}

}  // namespace implicitize
