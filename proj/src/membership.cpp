#include "implicitize/membership.hpp"

#include "implicitize/rng.hpp"

namespace implicitize {

namespace {

// Mirrors the square system the degree computation tracks; membership must
// move exactly the same system to a slice through the query point.
std::vector<Polynomial> pulled_back_system(const PseudoWitnessSet& pws, const Slice& slice,
                                           Complex slice_scale) {
  std::vector<Polynomial> system = pws.spec.ideal_generators;
  if (pws.cone.lambda_augmented) {
    for (auto& g : system) g = g.prepend_variable();
  }
  for (const auto& form : slice.forms) {
    Polynomial p = Polynomial::constant(pws.cone.map.num_vars(), form.constant);
    for (Eigen::Index i = 0; i < form.coefficients.size(); ++i) {
      if (form.coefficients[i] != Complex(0.0, 0.0))
        p += pws.cone.map.components[i] * form.coefficients[i];
    }
    system.push_back(p * slice_scale);
  }
  for (const auto& extra : pws.extra_source_forms) system.push_back(extra.to_polynomial());
  return system;
}

}  // namespace

bool is_on_image(const PseudoWitnessSet& pws, const Eigen::VectorXcd& point, double tolerance,
                 std::uint64_t seed, const TrackSettings& settings, int threads,
                 MembershipReport* report) {
  if (!pws.is_complete)
    throw InputError("membership needs a complete pseudo-witness set; this one holds only a "
                     "lower bound");

  const int ambient = pws.cone.ambient_dim();
  Eigen::VectorXcd lifted;
  if (pws.cone.lambda_augmented) {
    if (point.size() != ambient - 1)
      throw InputError("membership query must be an affine point of the target space");
    lifted.resize(ambient);
    lifted[0] = Complex(1.0, 0.0);
    lifted.tail(ambient - 1) = point;
  } else {
    if (point.size() != ambient)
      throw InputError("membership query must have the cone's ambient dimension");
    lifted = point;
  }

  std::vector<Eigen::VectorXcd> starts;
  starts.reserve(pws.pairs.size());
  for (const auto& pair : pws.pairs) starts.push_back(pair.source);

  // The answer is only conclusive when every witness path survives the move.
  // A lost path means the slice through the query drew unlucky geometry, so
  // retry the whole move with a fresh slice before settling for a partial
  // answer.
  MembershipReport local;
  for (int attempt = 0; attempt < 3; ++attempt) {
    Rng rng(Rng::child_seed(seed, attempt));
    Slice through;
    through.forms.reserve(pws.cone_dim);
    for (int k = 0; k < pws.cone_dim; ++k) {
      AffineForm f;
      f.coefficients.resize(ambient);
      for (int i = 0; i < ambient; ++i) f.coefficients[i] = rng.annulus(0.5, 1.5);
      f.coefficients /= f.coefficients.norm();
      f.constant = -(f.coefficients.transpose() * lifted).value();
      through.forms.push_back(std::move(f));
    }

    // Straight-line move of the slice data, with the unit factor on the start
    // side so the path through parameter space stays generic while the target
    // slice is hit exactly.
    Homotopy move(pulled_back_system(pws, pws.slice, rng.unit_circle()),
                  pulled_back_system(pws, through, Complex(1.0, 0.0)), Complex(1.0, 0.0));
    const std::vector<TrackedPoint> tracked = track_many(move, starts, settings, threads);

    local = MembershipReport{};
    for (const auto& tp : tracked) {
      local.statuses.push_back(tp.status);
      if (!tp.ok()) {
        local.all_paths_tracked = false;
        continue;
      }
      const Eigen::VectorXcd image = pws.cone.map.evaluate(tp.coordinates);
      if (images_match(pws, image, lifted, tolerance)) ++local.matched_paths;
    }
    local.on_image = local.matched_paths > 0;
    if (local.on_image || local.all_paths_tracked) break;
  }
  if (report) *report = local;
  return local.on_image;
}

}  // namespace implicitize
