#pragma once

#include <cstdint>
#include <string>

#include "dbar/charts.hpp"
#include "dbar/domain.hpp"
#include "dbar/forms.hpp"

namespace dbar {

/// omega(zbar) ^ omega(zeta) = dzb1 ^ dzb2 ^ dz1 ^ dz2 = 4 dV in the orientation dx1 dy1 dx2 dy2.
inline constexpr double kVolumeForm = 4.0;

/// u = boundary * (boundary Henkin integral) + interior * (Bochner-Martinelli volume integral).
struct Normalization {
  double boundary;
  double interior;
};

/// The normalization that solves dbar u = f with outward-oriented boundary charts.
Normalization henkin_normalization();

/// F(z, zeta) = rho_{zeta1}(z1 - zeta1) + rho_{zeta2}(z2 - zeta2).
Complex leray_F(const WirtingerGradient& g, const CPoint2& z, const CPoint2& zeta);
Complex leray_F(const DomainSpec& spec, const CPoint2& z, const CPoint2& zeta);

/// [rho_1 (zb2 - z̄2) - rho_2 (zb1 - z̄1)] / (F |zeta - z|^2), the coefficient of f ^ omega(zeta)
/// in the boundary term. Throws SingularityHit when zeta = z or F = 0.
Complex henkin_kernel(const WirtingerGradient& g, const CPoint2& z, const CPoint2& zeta);

/// (dzb_j ^ dz1 ^ dz2)(t1, t2, t3) for the chart tangent vectors, j = 1, 2.
struct WedgePullback {
  Complex zb1;
  Complex zb2;
};
WedgePullback wedge_pullback(const Mat43& tangents);

/// Boundary integrand per unit parameter volume, including orientation and chart weight.
Complex henkin_boundary_density(const DomainSpec& spec, const CPoint2& z, const ZeroOneForm& f,
                                const BoundarySample& sample);
/// Same integrand with an explicit gradient of a local defining function at zeta.
Complex henkin_boundary_density(const WirtingerGradient& g, const CPoint2& z, const ZeroOneForm& f,
                                const BoundarySample& sample);

/// |K_H| dsigma per unit parameter volume: the L1 surrogate density.
double henkin_abs_density(const DomainSpec& spec, const CPoint2& z, const BoundarySample& sample);

/// [f1 (zb1 - z̄1) + f2 (zb2 - z̄2)] / |zeta - z|^4 * kVolumeForm, per unit of Lebesgue measure.
Complex bm_interior_density(const CPoint2& z, const CPoint2& zeta, const ZeroOneForm& f);

/// Lower bounds for |Re F| near a flat point, as stated for each domain family.
enum class ReFCase { Omega1Abs, Omega2Re, Example1Torus };

struct ReFNeighborhood {
  double delta = 0.2;
};

/// Throws OutOfNeighborhood when (z, zeta) is outside the validity region of the case.
double reF_lower_bound(ReFCase c, const DomainSpec& spec, const CPoint2& z, const CPoint2& zeta,
                       const ReFNeighborhood& nb = {});

/// |Re F| >= C' |z - zeta|^2 on strongly convex boundary pieces, C' calibrated by sampling.
struct StronglyConvexBound {
  double c_prime = 0.0;
  double delta = 0.5;
  double calibration_floor = 0.0;
  int samples = 0;
};

enum class ConvexPiece { Ball, Example1Cap };

StronglyConvexBound calibrate_strongly_convex(const DomainSpec& spec, ConvexPiece piece, int samples,
                                              std::uint64_t seed, double delta = 0.5);
bool strongly_convex_reF_holds(const StronglyConvexBound& b, const DomainSpec& spec, const CPoint2& z,
                               const CPoint2& zeta);

/// Random point of the strongly convex piece and a random point of the closed domain near it.
struct PointPair {
  CPoint2 z;
  CPoint2 zeta;
};

}  // namespace dbar
