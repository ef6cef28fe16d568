#pragma once

#include <cstdint>

#include "implicitize/linalg.hpp"
#include "implicitize/sampler.hpp"

namespace implicitize {

/// Dimension of the tangent space of V(generators) at x: the numerical kernel
/// of the ideal's Jacobian there. An empty generator list gives the full
/// ambient dimension.
int tangent_space_dim(const std::vector<Polynomial>& generators, const Eigen::VectorXcd& x,
                      double gap_threshold = kDefaultGapThreshold);

/// Dimension of the closure of the image: dim T_x X minus the kernel
/// dimension of the stacked Jacobian [Jac(I); Jac(F)] at a general point.
/// Two independent sample points must agree; one retry is allowed before the
/// computation fails.
int numerical_image_dim(const ProblemSpec& spec, const SourceWitness& witness, std::uint64_t seed,
                        double gap_threshold = kDefaultGapThreshold,
                        const TrackSettings& settings = {});

/// Dimension of the closure of the cone parametrization's image, computed the
/// same way on the cone map. This is the number of affine-linear slices that
/// cut the cone down to finitely many points.
int numerical_cone_dim(const ProblemSpec& spec, const ConeMap& cone, const SourceWitness& witness,
                       std::uint64_t seed, double gap_threshold = kDefaultGapThreshold,
                       const TrackSettings& settings = {});

}  // namespace implicitize
