#include "implicitize/monodromy.hpp"

#include <algorithm>

#include "implicitize/rng.hpp"

namespace implicitize {

Eigen::MatrixXcd Slice::coefficient_matrix() const {
  const Eigen::Index rows = static_cast<Eigen::Index>(forms.size());
  const Eigen::Index cols = rows == 0 ? 0 : forms.front().coefficients.size();
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) m.row(i) = forms[i].coefficients.transpose();
  return m;
}

Eigen::VectorXcd Slice::constant_vector() const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(forms.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = forms[i].constant;
  return v;
}

namespace {

AffineForm unit_form_through(int num_vars, const Eigen::VectorXcd* through, Rng& rng) {
  AffineForm f;
  f.coefficients.resize(num_vars);
  for (int i = 0; i < num_vars; ++i) f.coefficients[i] = rng.annulus(0.5, 1.5);
  f.coefficients /= f.coefficients.norm();
  if (through) {
    f.constant = -(f.coefficients.transpose() * (*through)).value();
  } else {
    f.constant = rng.annulus(0.5, 1.5);
  }
  return f;
}

Slice random_slice(int ambient, int count, Rng& rng, const Eigen::VectorXcd* through = nullptr) {
  Slice s;
  s.forms.reserve(count);
  for (int k = 0; k < count; ++k) s.forms.push_back(unit_form_through(ambient, through, rng));
  return s;
}

std::vector<Polynomial> lifted_generators(const PseudoWitnessSet& pws) {
  std::vector<Polynomial> gens = pws.spec.ideal_generators;
  if (pws.cone.lambda_augmented) {
    for (auto& g : gens) g = g.prepend_variable();
  }
  return gens;
}

Polynomial compose_with_cone(const AffineForm& form, const PolynomialMap& cone_map) {
  Polynomial p = Polynomial::constant(cone_map.num_vars(), form.constant);
  for (Eigen::Index i = 0; i < form.coefficients.size(); ++i) {
    if (form.coefficients[i] != Complex(0.0, 0.0))
      p += cone_map.components[i] * form.coefficients[i];
  }
  return p;
}

/// The square system tracked in the source: lifted ideal generators, the
/// slice pulled back through the cone map (optionally scaled by a unit
/// factor), and the fixed extra source forms.
std::vector<Polynomial> tracked_system(const PseudoWitnessSet& pws, const Slice& slice,
                                       Complex slice_scale = Complex(1.0, 0.0)) {
  std::vector<Polynomial> system = lifted_generators(pws);
  for (const auto& form : slice.forms)
    system.push_back(compose_with_cone(form, pws.cone.map) * slice_scale);
  for (const auto& extra : pws.extra_source_forms) system.push_back(extra.to_polynomial());
  return system;
}

double slice_residual(const Slice& slice, const Eigen::VectorXcd& image) {
  double res = 0.0;
  for (const auto& form : slice.forms) res = std::max(res, std::abs(form.evaluate(image)));
  return res;
}

double generator_residual(const PseudoWitnessSet& pws, const Eigen::VectorXcd& cone_source) {
  const Eigen::VectorXcd x =
      pws.cone.lambda_augmented ? cone_source.tail(cone_source.size() - 1).eval() : cone_source;
  double res = 0.0;
  for (const auto& g : pws.spec.ideal_generators) res = std::max(res, std::abs(g.evaluate(x)));
  return res;
}

/// Endpoints on degenerate loci of the source (where the ideal's Jacobian
/// rank drops) satisfy all residuals yet carry no witness information; they
/// are filtered the same way the sampler filters its witness points.
bool source_rank_ok(const PseudoWitnessSet& pws, const Eigen::VectorXcd& cone_source,
                    double gap_threshold) {
  const int r = static_cast<int>(pws.spec.ideal_generators.size());
  if (r == 0) return true;
  const Eigen::VectorXcd x =
      pws.cone.lambda_augmented ? cone_source.tail(cone_source.size() - 1).eval() : cone_source;
  return tangent_space_dim(pws.spec.ideal_generators, x, gap_threshold) ==
         static_cast<int>(x.size()) - r;
}

}  // namespace

bool images_match(const PseudoWitnessSet& pws, const Eigen::VectorXcd& a,
                  const Eigen::VectorXcd& b, double tolerance) {
  if (!pws.spec.homogeneous)
    return (a - b).lpNorm<Eigen::Infinity>() <= tolerance;
  // Homogeneous input: compare projective classes by scaling the first
  // significant coordinate to 1.
  auto normalize = [](const Eigen::VectorXcd& y) {
    const double floor = 1e-8 * y.lpNorm<Eigen::Infinity>();
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (std::abs(y[i]) > floor) return (y / y[i]).eval();
    }
    return y.eval();
  };
  return (normalize(a) - normalize(b)).lpNorm<Eigen::Infinity>() <= tolerance;
}

PseudoWitnessSet initial_witness_pair(const ProblemSpec& spec, const SourceWitness& witness,
                                      const ConeMap& cone, std::uint64_t seed,
                                      const DegreeOptions& options) {
  PseudoWitnessSet pws;
  pws.spec = spec;
  pws.cone = cone;
  pws.seed = seed;
  pws.cone_dim = numerical_cone_dim(spec, cone, witness, Rng::child_seed(seed, 0xd1a0),
                                    options.gap_threshold, options.tracking);
  if (pws.cone_dim < 1)
    throw InputError("the image has dimension zero; there is no slice to intersect");

  const ConeSample sample =
      sample_cone_points(witness, cone, 1, Rng::child_seed(seed, 0x9a1e), options.tracking)
          .front();

  Rng rng(Rng::child_seed(seed, 0x57a7));
  pws.slice = random_slice(cone.ambient_dim(), pws.cone_dim, rng, &sample.image);

  const int r = static_cast<int>(spec.ideal_generators.size());
  const int extra = cone.cone_source_dim - r - pws.cone_dim;
  if (extra < 0)
    throw NumericalError("the pulled-back slice system is overdetermined; the computed cone "
                         "dimension looks wrong");
  for (int k = 0; k < extra; ++k)
    pws.extra_source_forms.push_back(
        unit_form_through(cone.cone_source_dim, &sample.cone_source, rng));

  const SystemEvaluator check(tracked_system(pws, pws.slice));
  if (check.max_residual(sample.cone_source) > kSampleResidualTolerance)
    throw NumericalError("the initial witness pair does not satisfy its own slice");
  pws.pairs.push_back({sample.cone_source, sample.image});
  return pws;
}

void monodromy_loop(PseudoWitnessSet& pws, std::uint64_t seed, const DegreeOptions& options) {
  if (pws.pairs.empty()) throw InputError("monodromy needs at least one witness pair");
  Rng rng(seed);
  const Slice fresh = random_slice(pws.cone.ambient_dim(), pws.cone_dim, rng);
  const Complex gamma0 = rng.unit_circle();
  const Complex gamma1 = rng.unit_circle();

  // Loop from the base slice out to the fresh one and back, each leg twisted
  // by its own unit factor; the ideal rows appear in both systems and stay
  // pinned along the way.
  Homotopy out_leg(tracked_system(pws, pws.slice), tracked_system(pws, fresh, gamma1),
                   Complex(1.0, 0.0));
  Homotopy back_leg(tracked_system(pws, fresh), tracked_system(pws, pws.slice, gamma0),
                    Complex(1.0, 0.0));

  std::vector<Eigen::VectorXcd> starts;
  starts.reserve(pws.pairs.size());
  for (const auto& pair : pws.pairs) starts.push_back(pair.source);

  const std::vector<TrackedPoint> mid =
      track_many(out_leg, starts, options.tracking, options.threads);
  std::vector<Eigen::VectorXcd> mid_points;
  mid_points.reserve(mid.size());
  for (const auto& tp : mid) {
    if (tp.ok()) mid_points.push_back(tp.coordinates);
  }
  if (!mid_points.empty()) {
    const std::vector<TrackedPoint> back =
        track_many(back_leg, mid_points, options.tracking, options.threads);
    // Merge in path order so runs are reproducible whatever the thread count.
    for (const auto& tp : back) {
      if (!tp.ok()) continue;
      const Eigen::VectorXcd image = pws.cone.map.evaluate(tp.coordinates);
      if (generator_residual(pws, tp.coordinates) > kSampleResidualTolerance) continue;
      if (slice_residual(pws.slice, image) > kSliceResidualTolerance) continue;
      if (!source_rank_ok(pws, tp.coordinates, options.gap_threshold)) continue;
      bool known = false;
      for (const auto& pair : pws.pairs) {
        if (images_match(pws, pair.image, image)) {
          known = true;
          break;
        }
      }
      if (!known) pws.pairs.push_back({tp.coordinates, image});
    }
  }
  pws.loop_log.push_back(pws.degree());
}

bool trace_test(const PseudoWitnessSet& pws, std::uint64_t seed, const DegreeOptions& options) {
  if (pws.pairs.empty()) throw InputError("trace test needs at least one witness pair");
  Rng rng(seed);
  const Complex epsilon = kTraceStepModulus * rng.unit_circle();

  Slice step1 = pws.slice;
  step1.forms[0].constant += epsilon;
  Slice step2 = pws.slice;
  step2.forms[0].constant += 2.0 * epsilon;

  Homotopy to_step1(tracked_system(pws, pws.slice), tracked_system(pws, step1),
                    Complex(1.0, 0.0));
  Homotopy to_step2(tracked_system(pws, step1), tracked_system(pws, step2), Complex(1.0, 0.0));

  std::vector<Eigen::VectorXcd> starts;
  starts.reserve(pws.pairs.size());
  for (const auto& pair : pws.pairs) starts.push_back(pair.source);

  const int ambient = pws.cone.ambient_dim();
  Eigen::VectorXcd trace0 = Eigen::VectorXcd::Zero(ambient);
  for (const auto& pair : pws.pairs) trace0 += pair.image;

  const std::vector<TrackedPoint> at1 = track_many(to_step1, starts, options.tracking,
                                                   options.threads);
  Eigen::VectorXcd trace1 = Eigen::VectorXcd::Zero(ambient);
  std::vector<Eigen::VectorXcd> mid;
  mid.reserve(at1.size());
  for (const auto& tp : at1) {
    if (!tp.ok()) return false;  // a lost pair leaves the trace unusable
    trace1 += pws.cone.map.evaluate(tp.coordinates);
    mid.push_back(tp.coordinates);
  }

  const std::vector<TrackedPoint> at2 = track_many(to_step2, mid, options.tracking,
                                                   options.threads);
  Eigen::VectorXcd trace2 = Eigen::VectorXcd::Zero(ambient);
  for (const auto& tp : at2) {
    if (!tp.ok()) return false;
    trace2 += pws.cone.map.evaluate(tp.coordinates);
  }

  const double second_difference = (trace0 - 2.0 * trace1 + trace2).lpNorm<Eigen::Infinity>();
  const double magnitude = std::max({trace0.lpNorm<Eigen::Infinity>(),
                                     trace1.lpNorm<Eigen::Infinity>(),
                                     trace2.lpNorm<Eigen::Infinity>()});
  if (magnitude <= 1e-12) return true;
  return second_difference <= kTraceTolerance * magnitude;
}

void move_to_slice(PseudoWitnessSet& pws, const Slice& fresh, std::uint64_t seed,
                   const DegreeOptions& options) {
  Rng rng(seed);
  Homotopy move(tracked_system(pws, pws.slice), tracked_system(pws, fresh, rng.unit_circle()),
                Complex(1.0, 0.0));
  std::vector<Eigen::VectorXcd> starts;
  starts.reserve(pws.pairs.size());
  for (const auto& pair : pws.pairs) starts.push_back(pair.source);

  const std::vector<TrackedPoint> moved = track_many(move, starts, options.tracking,
                                                     options.threads);
  std::vector<WitnessPair> pairs;
  pairs.reserve(moved.size());
  for (const auto& tp : moved) {
    if (!tp.ok()) continue;
    const Eigen::VectorXcd image = pws.cone.map.evaluate(tp.coordinates);
    if (slice_residual(fresh, image) > kSliceResidualTolerance) continue;
    bool duplicate = false;
    for (const auto& kept : pairs) {
      if (images_match(pws, kept.image, image)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) pairs.push_back({tp.coordinates, image});
  }
  if (pairs.empty())
    throw NumericalError("every witness pair was lost while moving to a fresh slice");
  pws.slice = fresh;
  pws.pairs = std::move(pairs);
}

PseudoWitnessSet numerical_image_degree(const ProblemSpec& spec, const SourceWitness& witness,
                                        const ConeMap& cone, std::uint64_t seed,
                                        const DegreeOptions& options) {
  PseudoWitnessSet pws = initial_witness_pair(spec, witness, cone, Rng::child_seed(seed, 0), options);
  std::uint64_t stream = 1;
  int stale_rounds = 0;
  int failed_traces = 0;
  while (true) {
    const int before = pws.degree();
    monodromy_loop(pws, Rng::child_seed(seed, stream++), options);
    if (options.progress) options.progress(pws.degree());
    stale_rounds = pws.degree() > before ? 0 : stale_rounds + 1;
    if (stale_rounds < options.max_repetitive_monodromies) continue;

    if (trace_test(pws, Rng::child_seed(seed, stream++), options)) {
      pws.is_complete = true;
      return pws;
    }
    if (++failed_traces >= options.max_trace_tests) {
      pws.is_complete = false;  // the pair count is only a lower bound
      return pws;
    }
    Rng rng(Rng::child_seed(seed, stream++));
    const Slice fresh = random_slice(cone.ambient_dim(), pws.cone_dim, rng);
    move_to_slice(pws, fresh, rng.raw(), options);
    stale_rounds = 0;
  }
}

}  // namespace implicitize
