#include <doctest.h>

#include "implicitize/monodromy.hpp"
#include "oracles.hpp"

using namespace implicitize;

namespace {

ProblemSpec rational_normal_curve_spec(int degree) {
  const std::vector<std::string> st{"s", "t"};
  std::vector<Polynomial> comps;
  for (int k = 0; k <= degree; ++k) {
    std::string text;
    if (degree - k > 0) text += "s^" + std::to_string(degree - k);
    if (k > 0) {
      if (!text.empty()) text += "*";
      text += "t^" + std::to_string(k);
    }
    comps.push_back(parse_polynomial(text, st));
  }
  return ProblemSpec::make(st, {}, PolynomialMap(std::move(comps)), true);
}

ProblemSpec veronese2_spec() {
  const std::vector<std::string> names{"x", "y", "z"};
  std::vector<Polynomial> monos;
  for (const char* text : {"x^2", "x*y", "x*z", "y^2", "y*z", "z^2"})
    monos.push_back(parse_polynomial(text, names));
  return ProblemSpec::make(names, {}, PolynomialMap(std::move(monos)), true);
}

struct Pipeline {
  ProblemSpec spec;
  SourceWitness witness;
  ConeMap cone;
};

Pipeline prepare(ProblemSpec spec, std::uint64_t seed) {
  Pipeline p{spec, build_source_witness(spec, seed), make_cone_map(spec)};
  return p;
}

/// Independent count of |slice ∩ cone| for maps with a two-variable source:
/// pull the slice back through the map and count the distinct images of the
/// resultant-based solutions of the resulting bivariate system.
int slice_point_count_via_resultant(const PseudoWitnessSet& pws) {
  REQUIRE(pws.cone.cone_source_dim == 2);
  REQUIRE(pws.slice.size() == 2);
  std::vector<Polynomial> pulled;
  for (const auto& form : pws.slice.forms) {
    Polynomial p = Polynomial::constant(2, form.constant);
    for (Eigen::Index i = 0; i < form.coefficients.size(); ++i)
      p += pws.cone.map.components[i] * form.coefficients[i];
    pulled.push_back(std::move(p));
  }
  const auto sols = oracles::solve_bivariate(pulled[0], pulled[1], 1e-7);
  std::vector<Eigen::VectorXcd> images;
  for (const auto& z : sols) {
    Eigen::VectorXcd x(2);
    x << z[0], z[1];
    const Eigen::VectorXcd y = pws.cone.map.evaluate(x);
    bool known = false;
    for (const auto& img : images) {
      if (images_match(pws, img, y)) {
        known = true;
        break;
      }
    }
    if (!known) images.push_back(y);
  }
  return static_cast<int>(images.size());
}

void check_invariants(const PseudoWitnessSet& pws) {
  for (const auto& pair : pws.pairs) {
    const Eigen::VectorXcd source = pws.cone.lambda_augmented
                                        ? pair.source.tail(pair.source.size() - 1).eval()
                                        : pair.source;
    for (const auto& g : pws.spec.ideal_generators)
      CHECK(std::abs(g.evaluate(source)) <= 1e-8);
    for (const auto& form : pws.slice.forms)
      CHECK(std::abs(form.evaluate(pair.image)) <= 1e-6);
  }
  for (std::size_t i = 0; i < pws.pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pws.pairs.size(); ++j)
      CHECK_FALSE(images_match(pws, pws.pairs[i].image, pws.pairs[j].image));
  }
  int previous = 0;
  for (int count : pws.loop_log) {
    CHECK(count >= previous);
    previous = count;
  }
}

}  // namespace

TEST_CASE("initial witness pair: slice and extra forms pass through the sample") {
  const Pipeline p = prepare(rational_normal_curve_spec(3), 1);
  const PseudoWitnessSet pws = initial_witness_pair(p.spec, p.witness, p.cone, 5);
  CHECK(pws.cone_dim == 2);
  CHECK(pws.slice.size() == 2);
  CHECK(pws.extra_source_forms.empty());
  REQUIRE(pws.pairs.size() == 1);
  for (const auto& form : pws.slice.forms) {
    CHECK(std::abs(form.evaluate(pws.pairs[0].image)) <= 1e-10);
    CHECK(std::abs(form.coefficients.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("twisted cubic: monodromy grows the witness set to degree three") {
  const Pipeline p = prepare(rational_normal_curve_spec(3), 2);
  PseudoWitnessSet pws = initial_witness_pair(p.spec, p.witness, p.cone, 11);
  for (int round = 0; round < 20 && pws.degree() < 3; ++round)
    monodromy_loop(pws, 100 + round);
  CHECK(pws.degree() == 3);
  check_invariants(pws);
  CHECK(slice_point_count_via_resultant(pws) == 3);

  // A complete set is a fixed point of the loop.
  const int before = pws.degree();
  monodromy_loop(pws, 4242);
  CHECK(pws.degree() == before);
}

TEST_CASE("trace test: true on the full set, false on every proper subset") {
  const Pipeline p = prepare(rational_normal_curve_spec(3), 3);
  PseudoWitnessSet pws = initial_witness_pair(p.spec, p.witness, p.cone, 21);
  for (int round = 0; round < 20 && pws.degree() < 3; ++round)
    monodromy_loop(pws, 300 + round);
  REQUIRE(pws.degree() == 3);
  CHECK(trace_test(pws, 1));
  CHECK(trace_test(pws, 2));

  for (int drop = 0; drop < 3; ++drop) {
    PseudoWitnessSet partial = pws;
    partial.pairs.erase(partial.pairs.begin() + drop);
    CHECK_FALSE(trace_test(partial, 5 + drop));
  }
  PseudoWitnessSet single = pws;
  single.pairs.resize(1);
  CHECK_FALSE(trace_test(single, 9));
}

TEST_CASE("trace test: a linear image is complete with one point") {
  const std::vector<std::string> xy{"x", "y"};
  ProblemSpec linear = ProblemSpec::make(
      xy, {}, PolynomialMap({parse_polynomial("x", xy), parse_polynomial("y", xy)}), true);
  const Pipeline p = prepare(linear, 4);
  const PseudoWitnessSet pws = initial_witness_pair(p.spec, p.witness, p.cone, 31);
  REQUIRE(pws.degree() == 1);
  CHECK(trace_test(pws, 17));
}

TEST_CASE("numerical_image_degree: rational normal curves and the Veronese surface") {
  struct Expectation {
    ProblemSpec spec;
    int degree;
  };
  const std::vector<Expectation> cases{
      {rational_normal_curve_spec(3), 3},
      {rational_normal_curve_spec(4), 4},
      {veronese2_spec(), 4},
  };
  for (const auto& [spec, expected] : cases) {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      const Pipeline p = prepare(spec, seed);
      const PseudoWitnessSet pws = numerical_image_degree(p.spec, p.witness, p.cone, seed);
      CHECK(pws.is_complete);
      CHECK(pws.degree() == expected);
      check_invariants(pws);
    }
  }
}

TEST_CASE("numerical_image_degree: rational quartic slice count matches the resultant oracle") {
  const Pipeline p = prepare(rational_normal_curve_spec(4), 5);
  const PseudoWitnessSet pws = numerical_image_degree(p.spec, p.witness, p.cone, 8);
  REQUIRE(pws.is_complete);
  CHECK(pws.degree() == 4);
  CHECK(slice_point_count_via_resultant(pws) == 4);
}

TEST_CASE("numerical_image_degree: degree stays below the Bezout bound of the tracked system") {
  const Pipeline p = prepare(veronese2_spec(), 6);
  const PseudoWitnessSet pws = numerical_image_degree(p.spec, p.witness, p.cone, 9);
  REQUIRE(pws.is_complete);
  // Tracked system: three pulled-back slice quadrics in three variables.
  CHECK(pws.degree() <= 8);
}

TEST_CASE("monodromy loop emits a nondecreasing log and a progress stream") {
  const Pipeline p = prepare(veronese2_spec(), 7);
  DegreeOptions options;
  std::vector<int> seen;
  options.progress = [&](int count) { seen.push_back(count); };
  const PseudoWitnessSet pws = numerical_image_degree(p.spec, p.witness, p.cone, 10, options);
  CHECK(pws.is_complete);
  CHECK(seen == pws.loop_log);
  check_invariants(pws);
}

TEST_CASE("a strangled loop budget exits with a lower bound") {
  const Pipeline p = prepare(rational_normal_curve_spec(3), 2);
  DegreeOptions options;
  options.max_repetitive_monodromies = 1;
  options.max_trace_tests = 1;
  const PseudoWitnessSet pws = numerical_image_degree(p.spec, p.witness, p.cone, 2, options);
  CHECK_FALSE(pws.is_complete);
  CHECK(pws.degree() >= 1);
  CHECK(pws.degree() < 3);
}

TEST_CASE("move_to_slice keeps the pair count and lands on the new slice") {
  const Pipeline p = prepare(rational_normal_curve_spec(3), 8);
  PseudoWitnessSet pws = numerical_image_degree(p.spec, p.witness, p.cone, 12);
  REQUIRE(pws.degree() == 3);
  Rng rng(77);
  Slice fresh;
  for (int k = 0; k < pws.cone_dim; ++k) {
    AffineForm f;
    f.coefficients.resize(p.cone.ambient_dim());
    for (int i = 0; i < p.cone.ambient_dim(); ++i) f.coefficients[i] = rng.annulus(0.5, 1.5);
    f.coefficients /= f.coefficients.norm();
    f.constant = rng.annulus(0.5, 1.5);
    fresh.forms.push_back(std::move(f));
  }
  move_to_slice(pws, fresh, 99);
  CHECK(pws.degree() == 3);
  check_invariants(pws);
  CHECK(trace_test(pws, 13));
}
