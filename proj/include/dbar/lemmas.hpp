#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dbar/domain.hpp"
#include "dbar/kernel.hpp"

namespace dbar {

/// Outcome of one sampled inequality. slack = lhs - rhs, so a violation is slack < -tolerance.
struct PredicateSummary {
  std::string name;
  long samples = 0;
  long violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  double tolerance = 0.0;
  std::string note;
  bool passed() const { return samples > 0 && violations == 0; }
};

/// x -> psi(|x|^2) has positive semidefinite finite-difference Hessian on |x| <= radius.
PredicateSummary lemma2_convexity_check(int samples, std::uint64_t seed, double psi_eps = 0.1, double radius = 3.0,
                                        double h = 1e-3);

/// Three-point inequalities for phi(., alpha): returns inequality A, inequality B, and the hypothesis audit
/// (phi'' >= 0 and phi''' >= 0 at every sampled midpoint). With negated = true phi is replaced
/// by the concave probe -phi, which must make the checks fail.
std::vector<PredicateSummary> lemma3_check(double alpha, int samples, std::uint64_t seed, bool negated = false);

/// phi''(t) >= C exp(-t^{-alpha/2}) t^{-(2+alpha)} on (0, t_max] with C from phi2_lower_bound_constant.
PredicateSummary phi2_lower_bound_check(double alpha, int samples, std::uint64_t seed);

/// Re F <= 0 on random pairs z in the closed domain, zeta on the boundary.
PredicateSummary support_plane_check(const DomainSpec& spec, int samples, std::uint64_t seed);

/// |Re F| >= C' |z - zeta|^2 on the ball with C' calibrated on an independent sample.
PredicateSummary strongly_convex_check(const DomainSpec& ball, int samples, std::uint64_t seed,
                                       StronglyConvexBound* calibration = nullptr);

/// |Re F| >= the stated lower bound on random pairs inside the validity region of the case.
PredicateSummary flat_point_check(ReFCase c, const DomainSpec& spec, int samples, std::uint64_t seed,
                                  const ReFNeighborhood& nb = {});

}  // namespace dbar
