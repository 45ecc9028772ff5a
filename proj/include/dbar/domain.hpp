#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "dbar/profiles.hpp"
#include "dbar/types.hpp"

namespace dbar {

enum class DomainKind { Bidisc, Ball, Omega1, Omega2, Example1, Example2 };

std::string to_string(DomainKind kind);
DomainKind parse_domain_kind(const std::string& name);

/// User-facing parameters. NaN for eps and M <= 0 mean "choose automatically".
struct DomainParams {
  DomainKind kind = DomainKind::Ball;
  double alpha = 0.5;
  double a = 0.1;
  double eps = std::numeric_limits<double>::quiet_NaN();
  double eta = 0.01;
  double M = 0.0;
  double radius = 2.0;
  double eps_patch = 0.1;
};

/// An immutable domain. Profiles and automatic constants are resolved at construction,
/// so params() always reports the values actually in use.
class DomainSpec {
 public:
  static DomainSpec bidisc();
  static DomainSpec ball(double radius);
  static DomainSpec omega1(double alpha, double eps_patch = 0.1, double M = 0.0);
  static DomainSpec omega2(double alpha, double eps_patch = 0.1, double M = 0.0);
  static DomainSpec example1(double alpha, double a = 0.1,
                             double eps = std::numeric_limits<double>::quiet_NaN(), double eta = 0.01);
  static DomainSpec example2(double alpha, double a = 0.1);
  static DomainSpec from_params(const DomainParams& params);

  DomainKind kind() const { return params_.kind; }
  const DomainParams& params() const { return params_; }
  std::string label() const;

  const ExtendedPhi& omega_profile() const { return omega_profile_; }
  const ChiExample1& chi1() const { return chi1_; }
  const ChiExample2& chi2() const { return chi2_; }

  /// A fixed point well inside the domain, used as the center of radial charts.
  const CPoint2& interior_center() const { return center_; }
  /// Rough diameter used to bracket ray exits.
  double scale() const { return scale_; }

 private:
  DomainParams params_;
  ExtendedPhi omega_profile_;
  ChiExample1 chi1_;
  ChiExample2 chi2_;
  CPoint2 center_;
  double scale_ = 1.0;
};

/// Where the Omega profiles switch from phi to its quadratic continuation (inside phi's convex range).
double omega_profile_junction(double alpha);

/// Wirtinger derivatives (d rho / d z1, d rho / d z2).
struct WirtingerGradient {
  Complex d1;
  Complex d2;
};

double rho(const DomainSpec& spec, const CPoint2& z);
bool contains(const DomainSpec& spec, const CPoint2& z);

/// Throws UnsupportedSmoothOperation for the bidisc.
WirtingerGradient grad_rho(const DomainSpec& spec, const CPoint2& z);
/// Real gradient in (x1, y1, x2, y2): d/dx = 2 Re rho_z, d/dy = -2 Im rho_z.
Vec4 real_gradient(const WirtingerGradient& g);
Vec4 real_gradient(const DomainSpec& spec, const CPoint2& z);
/// Real Hessian, closed form for every smooth kind.
Mat4 hessian_rho(const DomainSpec& spec, const CPoint2& z);
double hessian_min_eigenvalue(const DomainSpec& spec, const CPoint2& z);

/// Distance R > 0 along the unit direction dir at which the ray from z leaves the domain.
double ray_exit(const DomainSpec& spec, const CPoint2& z, const Vec4& dir);
/// Derivative-safeguarded bisection for a convex sublevel set {f < 0} with f(z) < 0.
double ray_exit_generic(const std::function<double(const CPoint2&)>& f,
                        const std::function<double(const CPoint2&, const Vec4&)>& directional_derivative,
                        const CPoint2& z, const Vec4& dir, double scale);

/// Values of the Hopf polar angle where the exit distance from z is not smooth
/// for fixed (theta1, theta2); only the bidisc has such kinks.
std::vector<double> ray_kinks(const DomainSpec& spec, const CPoint2& z, double theta1, double theta2);

/// Euclidean distance to the boundary; closed form where available, else minimized over rays.
double distance_to_boundary(const DomainSpec& spec, const CPoint2& z);

struct Box {
  Vec4 lo;
  Vec4 hi;
  double volume() const { return (hi - lo).prod(); }
};
Box bounding_box(const DomainSpec& spec);

/// Unit vector of R^4 in Hopf coordinates: (cos p e^{i t1}, sin p e^{i t2}).
Vec4 hopf_direction(double p, double t1, double t2);

}  // namespace dbar
