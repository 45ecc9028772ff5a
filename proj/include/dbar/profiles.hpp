#pragma once

#include <cmath>

namespace dbar {

/// Value and first three derivatives of a one-variable profile.
struct Jet3 {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

/// phi(t) = exp(-t^(-alpha/2)) for t > 0 and 0 otherwise. Flat to infinite order at 0.
template <typename Real>
Real phi(Real t, Real alpha) {
  using std::exp;
  using std::pow;
  if (!(t > Real(0))) return Real(0);
  return exp(-pow(t, -alpha / Real(2)));
}

Jet3 phi_jet(double t, double alpha);

/// Zero of phi'' (phi is convex on [0, t]).
double phi_convexity_limit(double alpha);

/// Smallest positive zero of phi''' (phi''' >= 0 on [0, t]); also where phi' peaks.
double phi_third_derivative_limit(double alpha);

/// Smallest t > 0 with phi'(t) = slope, or +inf if phi' never reaches it.
double phi_slope_point(double alpha, double slope);

/// Largest C with phi''(t) >= C exp(-t^{-alpha/2}) t^{-(2+alpha)} on (0, t_max], by sampling.
double phi2_lower_bound_constant(double alpha, double t_max, int samples);

/// psi(t) = exp(-1/(t - eps^2)) (t^2 - eps^4) for t > eps^2, else 0.
Jet3 psi_jet(double t, double eps);
inline double psi_bump(double t, double eps) { return psi_jet(t, eps).value; }

/// phi on [0, t0] continued by its second order Taylor polynomial at t0.
/// Convex with nonnegative third derivative everywhere when t0 <= phi_third_derivative_limit.
class ExtendedPhi {
 public:
  ExtendedPhi() = default;
  ExtendedPhi(double alpha, double t0);

  Jet3 jet(double t) const;
  double operator()(double t) const { return jet(t).value; }
  double alpha() const { return alpha_; }
  double junction() const { return t0_; }

 private:
  double alpha_ = 0.5;
  double t0_ = 0.0;
  Jet3 at_t0_;
};

/// The Example 1 profile: 1 for t <= 1, 1 + phi(t - 1) on (1, 1 + eps],
/// a convex C^2 bridge on (1 + eps, 1 + a], and t - eta beyond.
class ChiExample1 {
 public:
  ChiExample1() = default;
  ChiExample1(double alpha, double a, double eps, double eta);

  /// Jet at t = 1 + x; passing the offset avoids cancellation near t = 1.
  Jet3 jet_offset(double x) const;
  Jet3 jet(double t) const { return jet_offset(t - 1.0); }
  double operator()(double t) const { return jet(t).value; }

  double alpha() const { return alpha_; }
  double a() const { return a_; }
  double eps() const { return eps_; }
  double eta() const { return eta_; }
  /// Width of the steep layer at the start of the bridge, in t.
  double bridge_layer() const { return layer_; }

  /// Largest eps for which the exponential branch can be joined convexly for this alpha.
  static double largest_admissible_eps(double alpha);
  static double default_eps(double alpha, double eta);

 private:
  double bridge_g(double s) const;
  double bridge_dg(double s) const;
  double bridge_G1(double s) const;
  double bridge_G2(double s) const;

  double alpha_ = 0.5, a_ = 0.1, eps_ = 0.0, eta_ = 0.01;
  double L_ = 0.0, chi_left_ = 0.0, slope_left_ = 0.0, curv_left_ = 0.0;
  double kappa_ = 1.0, lambda1_ = 0.0, lambda2_ = 0.0;
  int m_ = 4;
  double layer_ = 0.0;
};

/// The Example 2 profile of |z_j|: 1 - a for t <= 1 - a, else k phi(t^2 - (1-a)^2) + 1 - a,
/// with k chosen so that chi(1) = 1.
class ChiExample2 {
 public:
  ChiExample2() = default;
  ChiExample2(double alpha, double a);
  Jet3 jet(double t) const;
  double operator()(double t) const { return jet(t).value; }
  double k() const { return k_; }

 private:
  double alpha_ = 0.5, a_ = 0.1, k_ = 1.0;
};

}  // namespace dbar
