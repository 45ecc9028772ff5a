#include "dbar/profiles.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "dbar/quadrature.hpp"
#include "dbar/types.hpp"

namespace dbar {

namespace {

// t^{-k} exp(-t^{-beta}) evaluated in log space so tiny t never produces 0 * inf.
double scaled_phi(double log_t, double s, double k) {
  const double e = -s - k * log_t;
  return e < -745.0 ? 0.0 : std::exp(e);
}

}  // namespace

Jet3 phi_jet(double t, double alpha) {
  Jet3 j;
  if (!(t > 0.0)) return j;
  const double b = alpha / 2.0;
  const double lt = std::log(t);
  const double s = std::exp(-b * lt);
  j.value = scaled_phi(lt, s, 0.0);
  j.d1 = b * scaled_phi(lt, s, b + 1.0);
  j.d2 = b * b * scaled_phi(lt, s, 2.0 * b + 2.0) - b * (b + 1.0) * scaled_phi(lt, s, b + 2.0);
  j.d3 = b * b * b * scaled_phi(lt, s, 3.0 * b + 3.0) -
         3.0 * b * b * (b + 1.0) * scaled_phi(lt, s, 2.0 * b + 3.0) +
         b * (b + 1.0) * (b + 2.0) * scaled_phi(lt, s, b + 3.0);
  return j;
}

double phi_convexity_limit(double alpha) {
  const double b = alpha / 2.0;
  return std::pow(b / (1.0 + b), 1.0 / b);
}

double phi_third_derivative_limit(double alpha) {
  // phi''' = phi b t^{-b-3} (b^2 s^2 - 3b(b+1) s + (b+1)(b+2)) with s = t^{-b}.
  const double b = alpha / 2.0;
  const double s_plus = (3.0 * (b + 1.0) + std::sqrt((b + 1.0) * (5.0 * b + 1.0))) / (2.0 * b);
  return std::pow(s_plus, -1.0 / b);
}

double phi_slope_point(double alpha, double slope) {
  const double t3 = phi_third_derivative_limit(alpha);
  if (phi_jet(t3, alpha).d1 < slope) return std::numeric_limits<double>::infinity();
  double lo = std::log(t3) - 700.0;
  double hi = std::log(t3);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (phi_jet(std::exp(mid), alpha).d1 < slope)
      lo = mid;
    else
      hi = mid;
  }
  return std::exp(hi);
}

double phi2_lower_bound_constant(double alpha, double t_max, int samples) {
  const double b = alpha / 2.0;
  double c = std::numeric_limits<double>::infinity();
  const double lo = std::log(t_max) - 60.0;
  const double hi = std::log(t_max);
  for (int i = 0; i <= samples; ++i) {
    const double t = std::exp(lo + (hi - lo) * i / samples);
    // phi''(t) / (phi(t) t^{-(2+alpha)}) in closed form.
    c = std::min(c, b * b - b * (b + 1.0) * std::pow(t, b));
  }
  return c;
}

Jet3 psi_jet(double t, double eps) {
  Jet3 j;
  const double d = t - eps * eps;
  if (!(d > 0.0) || 1.0 / d > 700.0) return j;
  const double E = std::exp(-1.0 / d);
  const double i1 = 1.0 / d;
  const double i2 = i1 * i1, i3 = i2 * i1, i4 = i2 * i2, i5 = i4 * i1, i6 = i3 * i3;
  const double E1 = E * i2;
  const double E2 = E * (i4 - 2.0 * i3);
  const double E3 = E * (i6 - 6.0 * i5 + 6.0 * i4);
  const double q = t * t - eps * eps * eps * eps;
  j.value = E * q;
  j.d1 = E1 * q + 2.0 * t * E;
  j.d2 = E2 * q + 4.0 * t * E1 + 2.0 * E;
  j.d3 = E3 * q + 6.0 * t * E2 + 6.0 * E1;
  return j;
}

ExtendedPhi::ExtendedPhi(double alpha, double t0) : alpha_(alpha), t0_(t0), at_t0_(phi_jet(t0, alpha)) {}

Jet3 ExtendedPhi::jet(double t) const {
  if (t <= t0_) return phi_jet(t, alpha_);
  const double dt = t - t0_;
  return {at_t0_.value + at_t0_.d1 * dt + 0.5 * at_t0_.d2 * dt * dt, at_t0_.d1 + at_t0_.d2 * dt, at_t0_.d2, 0.0};
}

namespace {

// Integrals of e^{-kappa u} u^n over [0, s] for n = 0, 1, 2.
std::array<double, 3> exp_moments(double kappa, double s) {
  const double e = std::exp(-kappa * s);
  const double ks = kappa * s;
  return {-std::expm1(-ks) / kappa, (1.0 - e * (1.0 + ks)) / (kappa * kappa),
          (2.0 - e * (ks * ks + 2.0 * ks + 2.0)) / (kappa * kappa * kappa)};
}

}  // namespace

ChiExample1::ChiExample1(double alpha, double a, double eps, double eta)
    : alpha_(alpha), a_(a), eps_(eps), eta_(eta) {
  if (!(alpha > 0.0) || !(a > 0.0) || !(eps > 0.0) || !(eps < a) || !(eta > 0.0) || !(eta < a))
    throw Error(ErrorKind::InvalidDomain, "Example 1 needs alpha > 0, 0 < eps < a and 0 < eta < a");
  if (eps > phi_third_derivative_limit(alpha) * (1.0 + 1e-12))
    throw Error(ErrorKind::InvalidDomain,
                "eps lies beyond the zero of phi''' for this alpha; chi''' would change sign on the exp branch");
  const Jet3 left = phi_jet(eps, alpha);
  L_ = a - eps;
  chi_left_ = 1.0 + left.value;
  slope_left_ = left.d1;
  curv_left_ = left.d2;
  const double chi_right = 1.0 + a - eta;
  if (!(slope_left_ < 1.0)) throw Error(ErrorKind::InvalidDomain, "phi'(eps) >= 1, no convex join to slope 1");
  const double A = (1.0 - slope_left_) / L_;
  const double B = (chi_right - chi_left_ - slope_left_ * L_) / (L_ * L_);
  if (!(B > 0.0) || !(B < A))
    throw Error(ErrorKind::InvalidDomain, "no convex C^2 bridge exists for these (alpha, a, eps, eta)");

  kappa_ = std::max(4.0, 4.0 * curv_left_ / A);
  const auto mom = exp_moments(kappa_, 1.0);
  const double m0 = mom[0] - mom[1];
  const double m1 = mom[0] - 2.0 * mom[1] + mom[2];
  const double Ar = A - curv_left_ * m0;
  const double Br = B - curv_left_ * m1;
  bool found = false;
  for (int m : {2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256, 384, 512}) {
    const double a1 = 1.0 / ((m + 1.0) * (m + 2.0));
    const double c1 = 1.0 / ((m + 2.0) * (m + 3.0));
    const double a2 = a1;
    const double c2 = 2.0 / ((m + 1.0) * (m + 2.0) * (m + 3.0));
    const double det = a1 * c2 - a2 * c1;
    const double l1 = (Ar * c2 - a2 * Br) / det;
    const double l2 = (a1 * Br - c1 * Ar) / det;
    if (l1 >= 0.0 && l2 >= 0.0) {
      m_ = m;
      lambda1_ = l1;
      lambda2_ = l2;
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorKind::InvalidDomain, "bridge moment conditions have no nonnegative solution");
  layer_ = L_ * std::min(0.5, std::max(10.0 / kappa_, 10.0 / m_));
}

double ChiExample1::bridge_g(double s) const {
  const double u = 1.0 - s;
  return curv_left_ * std::exp(-kappa_ * s) * u + lambda1_ * s * std::pow(u, m_) + lambda2_ * std::pow(s, m_) * u;
}

double ChiExample1::bridge_dg(double s) const {
  const double u = 1.0 - s;
  return curv_left_ * std::exp(-kappa_ * s) * (-kappa_ * u - 1.0) +
         lambda1_ * (std::pow(u, m_) - m_ * s * std::pow(u, m_ - 1)) +
         lambda2_ * (m_ * std::pow(s, m_ - 1) * u - std::pow(s, m_));
}

double ChiExample1::bridge_G1(double s) const {
  const auto e = exp_moments(kappa_, s);
  const auto& rule = gauss_legendre(24);
  double poly = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double sig = 0.5 * s * (rule.nodes[i] + 1.0);
    const double u = 1.0 - sig;
    poly += rule.weights[i] * (lambda1_ * sig * std::pow(u, m_) + lambda2_ * std::pow(sig, m_) * u);
  }
  return curv_left_ * (e[0] - e[1]) + 0.5 * s * poly;
}

double ChiExample1::bridge_G2(double s) const {
  const auto e = exp_moments(kappa_, s);
  const auto& rule = gauss_legendre(24);
  double poly = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double sig = 0.5 * s * (rule.nodes[i] + 1.0);
    const double u = 1.0 - sig;
    poly += rule.weights[i] * (s - sig) * (lambda1_ * sig * std::pow(u, m_) + lambda2_ * std::pow(sig, m_) * u);
  }
  return curv_left_ * (s * (e[0] - e[1]) - (e[1] - e[2])) + 0.5 * s * poly;
}

Jet3 ChiExample1::jet_offset(double x) const {
  if (x <= 0.0) return {1.0, 0.0, 0.0, 0.0};
  if (x <= eps_) {
    Jet3 j = phi_jet(x, alpha_);
    j.value += 1.0;
    return j;
  }
  if (x >= a_) return {1.0 + x - eta_, 1.0, 0.0, 0.0};
  const double s = (x - eps_) / L_;
  return {chi_left_ + slope_left_ * L_ * s + L_ * L_ * bridge_G2(s), slope_left_ + L_ * bridge_G1(s), bridge_g(s),
          bridge_dg(s) / L_};
}

double ChiExample1::largest_admissible_eps(double alpha) {
  return std::min(phi_third_derivative_limit(alpha), phi_slope_point(alpha, 0.5));
}

double ChiExample1::default_eps(double alpha, double eta) {
  // A convex chi lies above its tangent t - eta at 1 + a, which forces eps - phi(eps) < eta.
  return std::min({0.05, 0.9 * largest_admissible_eps(alpha), 0.5 * eta});
}

ChiExample2::ChiExample2(double alpha, double a) : alpha_(alpha), a_(a) {
  if (!(alpha > 0.0) || !(a > 0.0) || !(a < 1.0)) throw Error(ErrorKind::InvalidDomain, "Example 2 needs 0 < a < 1");
  k_ = a * std::exp(std::pow(2.0 * a - a * a, -alpha / 2.0));
}

Jet3 ChiExample2::jet(double t) const {
  const double b = 1.0 - a_;
  if (t <= b) return {b, 0.0, 0.0, 0.0};
  const Jet3 p = phi_jet(t * t - b * b, alpha_);
  return {k_ * p.value + b, k_ * 2.0 * t * p.d1, k_ * (4.0 * t * t * p.d2 + 2.0 * p.d1),
          k_ * (8.0 * t * t * t * p.d3 + 12.0 * t * p.d2)};
}

}  // namespace dbar
