#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dbar/domain.hpp"

namespace dbar {

enum class ChartLabel { P1, P2, P3, Face1, Face2, Sphere, Flat, Radial };
std::string to_string(ChartLabel label);

struct ChartAxis {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;
  /// Interior mesh lines the quadrature must respect.
  std::vector<double> breaks;
};

/// Embedded point, tangent vectors d(zeta)/ds_k as columns, and an outward normal (any length).
struct ChartGeometry {
  CPoint2 point;
  Mat43 tangents;
  Vec4 normal;
};

/// A 3-parameter piece of the boundary. The integrand of a chart is multiplied by weight(point),
/// which lets overlapping charts form a partition of unity.
struct BoundaryChart {
  ChartLabel label = ChartLabel::Sphere;
  std::array<ChartAxis, 3> axes;
  std::function<ChartGeometry(const Vec3&)> geometry;
  std::function<double(const CPoint2&)> weight;

  CPoint2 embed(const Vec3& s) const { return geometry(s).point; }
  double jacobian(const Vec3& s) const;
};

/// Everything a boundary density needs at one parameter point.
struct BoundarySample {
  Vec3 s;
  CPoint2 point;
  Mat43 tangents;
  Vec4 normal;
  double jacobian = 0.0;     // sqrt(det(T^T T)), the surface measure per unit parameter volume
  double orientation = 1.0;  // sign of det[normal, t1, t2, t3]
  double weight = 1.0;
};

BoundarySample sample_chart(const BoundaryChart& chart, const Vec3& s);

/// Charts covering the boundary. For the Ball and radial charts `focus` (if given) rotates the
/// angular frame so that the boundary point nearest to it sits away from coordinate singularities.
std::vector<BoundaryChart> boundary_charts(const DomainSpec& spec, const std::optional<CPoint2>& focus = {});

/// A bidisc face written in polar coordinates about `center` inside the disc factor:
/// Face1 = {|zeta1| = 1, zeta2 = center + s A(theta) e^{i theta}}, Face2 symmetric.
BoundaryChart bidisc_face(ChartLabel face, Complex center);

/// Sphere of given center and radius, Hopf angles in a rotated frame Q.
BoundaryChart sphere_chart(const CPoint2& center, double radius, const Mat4& frame);

/// Orthogonal frame mapping hopf_direction(pi/4, 0, 0) to the unit vector `target`.
Mat4 frame_toward(const Vec4& target);

/// Parameter point of the chart nearest to z among points with positive weight,
/// found by a coarse search and Gauss-Newton refinement.
struct NearestParam {
  Vec3 s;
  double distance;
};
NearestParam nearest_parameter(const BoundaryChart& chart, const CPoint2& z);

/// Distance from the center c to the boundary of {|w| < 1} along e^{i theta}.
double disc_reach(Complex c, double theta);

}  // namespace dbar
