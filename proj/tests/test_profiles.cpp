#include <doctest.h>

#include <cmath>
#include <random>

#include "dbar/profiles.hpp"
#include "dbar/types.hpp"

using namespace dbar;

namespace {

// Central differences of a scalar function, used as the oracle for every closed-form jet.
template <typename F>
double fd1(F f, double t, double h) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

template <typename F>
double fd2(F f, double t, double h) {
  return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

}  // namespace

TEST_CASE("phi closed values") {
  CHECK(phi(0.0, 0.5) == 0.0);
  CHECK(phi(-1.0, 0.5) == 0.0);
  CHECK(phi(1.0, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(phi(0.25, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(phi_jet(0.25, 1.0).value == doctest::Approx(0.1353352832366127).epsilon(1e-14));
}

TEST_CASE("phi jet matches finite differences") {
  for (double alpha : {0.25, 0.5, 0.75, 1.5}) {
    auto f = [&](double t) { return phi(t, alpha); };
    for (double t : {0.05, 0.1, 0.3, 0.7}) {
      const Jet3 j = phi_jet(t, alpha);
      const double h = 1e-4 * t;
      CHECK(j.d1 == doctest::Approx(fd1(f, t, h)).epsilon(1e-6));
      CHECK(j.d2 == doctest::Approx(fd2(f, t, 1e-3 * t)).epsilon(1e-4));
      auto d2 = [&](double s) { return phi_jet(s, alpha).d2; };
      CHECK(j.d3 == doctest::Approx(fd1(d2, t, h)).epsilon(1e-6));
    }
  }
}

TEST_CASE("phi jet has no overflow or NaN at tiny arguments") {
  for (double t : {1e-300, 1e-100, 1e-30, 1e-12}) {
    const Jet3 j = phi_jet(t, 0.5);
    CHECK(std::isfinite(j.d1));
    CHECK(std::isfinite(j.d2));
    CHECK(std::isfinite(j.d3));
    CHECK(j.d3 >= 0.0);
  }
}

TEST_CASE("thresholds are the zeros of phi'' and phi'''") {
  for (double alpha : {0.25, 0.5, 0.75, 1.0, 1.5}) {
    const double t2 = phi_convexity_limit(alpha);
    const double t3 = phi_third_derivative_limit(alpha);
    CHECK(t3 < t2);
    CHECK(phi_jet(t2 * (1 - 1e-6), alpha).d2 > 0.0);
    CHECK(phi_jet(t2 * (1 + 1e-6), alpha).d2 < 0.0);
    CHECK(phi_jet(t3 * (1 - 1e-6), alpha).d3 > 0.0);
    CHECK(phi_jet(t3 * (1 + 1e-6), alpha).d3 < 0.0);
  }
  // alpha = 0.5: beta = 1/4, t2 = (1/5)^4.
  CHECK(phi_convexity_limit(0.5) == doctest::Approx(0.0016).epsilon(1e-12));
}

TEST_CASE("phi slope point") {
  const double t = phi_slope_point(0.5, 0.5);
  CHECK(phi_jet(t, 0.5).d1 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::isinf(phi_slope_point(0.5, 1e6)));
}

TEST_CASE("phi'' lower bound constant") {
  const double alpha = 0.5, b = alpha / 2;
  const double tmax = 0.5 * phi_convexity_limit(alpha);
  const double c = phi2_lower_bound_constant(alpha, tmax, 2000);
  // The ratio b^2 - b(b+1) t^b is decreasing in t, so the minimum sits at t_max.
  CHECK(c == doctest::Approx(b * b - b * (b + 1) * std::pow(tmax, b)).epsilon(1e-12));
  CHECK(c > 0.0);
}

TEST_CASE("psi bump values") {
  const double eps = 0.1;
  CHECK(psi_bump(eps * eps / 2, eps) == 0.0);
  CHECK(psi_bump(eps * eps, eps) == 0.0);
  // Independent evaluation: exp(-1) ((1.01)^2 - (0.01)^2).
  CHECK(psi_bump(eps * eps + 1.0, eps) == doctest::Approx(std::exp(-1.0) * (1.01 * 1.01 - 1e-4)).epsilon(1e-14));
  CHECK(psi_bump(eps * eps + 1.0, eps) == doctest::Approx(0.3751).epsilon(1e-4));
}

TEST_CASE("psi jet matches finite differences") {
  const double eps = 0.1;
  auto f = [&](double t) { return psi_bump(t, eps); };
  for (double t : {0.03, 0.1, 0.5, 2.0}) {
    const Jet3 j = psi_jet(t, eps);
    CHECK(j.d1 == doctest::Approx(fd1(f, t, 1e-5)).epsilon(1e-6));
    CHECK(j.d2 == doctest::Approx(fd2(f, t, 1e-4)).epsilon(1e-4));
    auto d2 = [&](double s) { return psi_jet(s, eps).d2; };
    CHECK(j.d3 == doctest::Approx(fd1(d2, t, 1e-5)).epsilon(1e-5));
  }
}

TEST_CASE("extended phi is C2 and convex") {
  const double alpha = 0.5;
  const ExtendedPhi p(alpha, 0.9 * phi_convexity_limit(alpha));
  const double t0 = p.junction();
  const Jet3 l = p.jet(t0), r = p.jet(t0 * (1 + 1e-12));
  CHECK(r.value == doctest::Approx(l.value).epsilon(1e-9));
  CHECK(r.d1 == doctest::Approx(l.d1).epsilon(1e-9));
  CHECK(r.d2 == doctest::Approx(l.d2).epsilon(1e-9));
  for (double t : {0.5 * t0, t0, 2 * t0, 1.0, 5.0}) CHECK(p.jet(t).d2 >= 0.0);
  CHECK(p(0.3 * t0) == phi(0.3 * t0, alpha));
}

TEST_CASE("chi example 1 branch values") {
  const double alpha = 0.5, a = 0.1, eta = 0.01;
  const ChiExample1 chi(alpha, a, ChiExample1::default_eps(alpha, eta), eta);
  CHECK(chi(0.5) == 1.0);
  CHECK(chi(1.0) == 1.0);
  CHECK(chi(1 + a + 0.1) == doctest::Approx(1 + a + 0.09).epsilon(1e-14));
  // Inside the exp branch chi = 1 + phi(t - 1).
  const double x = 0.5 * chi.eps();
  CHECK(chi.jet_offset(x).value == doctest::Approx(1.0 + phi(x, alpha)).epsilon(1e-15));
  // The exp branch evaluator at offset 1e-4 for alpha = 0.5 gives 1 + exp(-10).
  CHECK(1.0 + phi(1e-4, 0.5) == doctest::Approx(1.0000453999).epsilon(1e-10));
}

TEST_CASE("chi example 1 admissibility") {
  // eps beyond the zero of phi''' cannot carry a convex exp branch.
  CHECK_THROWS_AS(ChiExample1(0.5, 0.1, 1e-4, 0.01), Error);
  // eps = 0.05 violates eps - phi(eps) < eta.
  CHECK_THROWS_AS(ChiExample1(1.5, 0.1, 0.05, 0.01), Error);
  CHECK_THROWS_AS(ChiExample1(0.5, 0.1, 0.2, 0.01), Error);
  CHECK(ChiExample1::default_eps(0.5, 0.01) == doctest::Approx(5.09e-5).epsilon(1e-2));
  CHECK(ChiExample1::default_eps(1.5, 0.01) == doctest::Approx(0.005));
  for (double alpha : {0.25, 0.5, 0.75, 1.0, 1.5, 2.0})
    CHECK_NOTHROW(ChiExample1(alpha, 0.1, ChiExample1::default_eps(alpha, 0.01), 0.01));
}

TEST_CASE("chi example 1 is C2, monotone and convex") {
  for (double alpha : {0.25, 0.5, 1.5}) {
    const ChiExample1 chi(alpha, 0.1, ChiExample1::default_eps(alpha, 0.01), 0.01);
    const double e = chi.eps(), a = chi.a();
    // Junctions: left and right limits agree.
    for (double x : {e, a}) {
      const Jet3 l = chi.jet_offset(x * (1 - 1e-12)), r = chi.jet_offset(x * (1 + 1e-12));
      CHECK(std::abs(l.value - r.value) <= 1e-6);
      CHECK(std::abs(l.d1 - r.d1) <= 1e-6 * std::max(1.0, std::abs(l.d1)));
      CHECK(std::abs(l.d2 - r.d2) <= 1e-6 * std::max(1.0, std::abs(l.d2)));
    }
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
      const double x = e + (a - e) * U(rng);
      const Jet3 j = chi.jet_offset(x);
      CHECK(j.d1 > 0.0);
      CHECK(j.d1 <= 1.0 + 1e-12);
      CHECK(j.d2 > 0.0);
    }
    // Finite-difference check of the closed-form derivatives on the bridge away from the steep layer.
    const double x = e + 0.5 * (a - e);
    auto f = [&](double s) { return chi.jet_offset(s).value; };
    CHECK(chi.jet_offset(x).d1 == doctest::Approx(fd1(f, x, 1e-6)).epsilon(1e-6));
  }
}

TEST_CASE("chi example 2 meets 1 at t = 1") {
  for (double alpha : {0.5, 1.5}) {
    const ChiExample2 chi(alpha, 0.1);
    CHECK(chi(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(chi(0.5) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(chi.k() == doctest::Approx(0.1 * std::exp(1.0 / std::pow(0.2 - 0.01, alpha / 2))).epsilon(1e-12));
  }
}
