#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "dbar/charts.hpp"
#include "dbar/kernel.hpp"
#include "dbar/lemmas.hpp"
#include "dbar/quadrature.hpp"

using namespace dbar;

namespace {

const DomainSpec& omega1() {
  static const DomainSpec s = DomainSpec::omega1(0.5);
  return s;
}

const DomainSpec& omega2() {
  static const DomainSpec s = DomainSpec::omega2(0.5);
  return s;
}

// Independent evaluation of the boundary integrand. Tangents come from differencing the embedding,
// the gradient from differencing rho, and the 3-form from the Leibniz expansion over permutations.
Complex reference_density(const DomainSpec& spec, const BoundaryChart& chart, const Vec3& s, const CPoint2& z,
                          const ZeroOneForm& f) {
  const CPoint2 zeta = chart.embed(s);
  std::array<Vec4, 3> T;
  for (int k = 0; k < 3; ++k) {
    const double h = 1e-7;
    Vec3 sp = s, sm = s;
    sp[k] += h;
    sm[k] -= h;
    T[k] = (chart.embed(sp) - chart.embed(sm)) / (2 * h);
  }
  Vec4 grad;
  for (int k = 0; k < 4; ++k) {
    Vec4 e = Vec4::Zero();
    e[k] = 1e-7;
    grad[k] = (rho(spec, zeta + e) - rho(spec, zeta - e)) / 2e-7;
  }
  // rho_{zeta_j} = (d/dx - i d/dy) rho / 2.
  const Complex r1(0.5 * grad[0], -0.5 * grad[1]);
  const Complex r2(0.5 * grad[2], -0.5 * grad[3]);
  const Complex d1 = zeta.z1() - z.z1(), d2 = zeta.z2() - z.z2();
  const Complex F = -(r1 * d1 + r2 * d2);
  const double r = std::norm(d1) + std::norm(d2);
  const Complex K = (r1 * std::conj(d2) - r2 * std::conj(d1)) / (F * r);

  auto dz = [&](int j, int k) { return Complex(T[k][2 * j], T[k][2 * j + 1]); };
  auto oneform = [&](int which, int k) {
    // which: 0 = dzb1, 1 = dzb2, 2 = dz1, 3 = dz2
    return which < 2 ? std::conj(dz(which, k)) : dz(which - 2, k);
  };
  auto wedge3 = [&](int a, int b, int c) {
    const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    const double sign[6] = {1, 1, 1, -1, -1, -1};
    Complex sum = 0.0;
    for (int p = 0; p < 6; ++p)
      sum += sign[p] * oneform(a, perm[p][0]) * oneform(b, perm[p][1]) * oneform(c, perm[p][2]);
    return sum;
  };
  const Complex form = f.f1(zeta) * wedge3(0, 2, 3) + f.f2(zeta) * wedge3(1, 2, 3);

  Mat4 D;
  D.col(0) = grad;
  for (int k = 0; k < 3; ++k) D.col(k + 1) = T[k];
  const double orient = D.determinant() > 0 ? 1.0 : -1.0;
  const double w = chart.weight ? chart.weight(zeta) : 1.0;
  return orient * w * K * form;
}

}  // namespace

TEST_CASE("Leray denominator examples") {
  const DomainSpec ball = DomainSpec::ball(2.0);
  const CPoint2 zeta(Complex(1.2, 0.4), Complex(0.3, std::sqrt(4 - 1.44 - 0.16 - 0.09)));
  CHECK(std::abs(leray_F(ball, zeta, zeta)) == 0.0);
  CHECK(leray_F(ball, CPoint2(0.0, 0.0), CPoint2(2.0, 0.0)) == Complex(-4.0, 0.0));
}

TEST_CASE("Re F is half the difference of squared norms on the ball") {
  const DomainSpec ball = DomainSpec::ball(2.0);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  for (int i = 0; i < 1000; ++i) {
    const Vec4 u = Vec4(n(rng), n(rng), n(rng), n(rng)).normalized();
    const Vec4 v = Vec4(n(rng), n(rng), n(rng), n(rng)).normalized();
    const CPoint2 zeta(Vec4(2.0 * u));
    const CPoint2 z(Vec4(1.9 * std::abs(n(rng)) / 3.0 * v));
    const double lhs = leray_F(ball, z, zeta).real();
    const double rhs = 0.5 * (z.squared_norm() - zeta.squared_norm() - (z - zeta).squaredNorm());
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1));
    CHECK(lhs <= -0.5 * (z - zeta).squaredNorm() + 1e-12);
  }
}

TEST_CASE("support-plane sign on every convex domain") {
  for (const auto* spec : {&omega1(), &omega2()}) {
    const PredicateSummary s = support_plane_check(*spec, 10000, 21);
    CHECK_MESSAGE(s.passed(), s.name, " ", s.note);
  }
  for (const auto& spec : {DomainSpec::ball(2.0), DomainSpec::example1(0.5), DomainSpec::example1(1.5),
                           DomainSpec::example2(1.5)}) {
    const PredicateSummary s = support_plane_check(spec, 10000, 22);
    CHECK_MESSAGE(s.passed(), s.name, " ", s.note);
  }
}

TEST_CASE("the literal Example 2 profile is not convex for small alpha") {
  // k phi(t^2 - (1-a)^2) reaches past the inflection point of phi when 2a - a^2 exceeds it,
  // so the rounded bidisc loses convexity and the support-plane sign fails somewhere.
  const ChiExample2 chi(0.5, 0.1);
  double min_d2 = 0.0;
  for (int i = 1; i < 1000; ++i) min_d2 = std::min(min_d2, chi.jet(0.9 + 0.1 * i / 1000.0).d2);
  CHECK(min_d2 < 0.0);
  CHECK_FALSE(support_plane_check(DomainSpec::example2(0.5), 10000, 22).passed());
}

TEST_CASE("densities vanish for f = 0 and are linear in f") {
  const DomainSpec spec = DomainSpec::example1(0.5);
  const auto charts = boundary_charts(spec);
  const ZeroOneForm zero = form_from_catalog("zero");
  const ZeroOneForm f = form_from_catalog("zbar-pair");
  const ZeroOneForm g = custom_form("z1*zb1 + (0,2)*zb2", "(0,2)*zb1 + 3*z2");
  const ZeroOneForm fg = f + g;
  const CPoint2 z(Complex(0.4, 0.1), Complex(0.5, -1.0));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(0.1, 0.9);
  for (const auto& chart : charts) {
    for (int i = 0; i < 50; ++i) {
      Vec3 s;
      for (int k = 0; k < 3; ++k) s[k] = chart.axes[k].lo + (chart.axes[k].hi - chart.axes[k].lo) * U(rng);
      const BoundarySample b = sample_chart(chart, s);
      CHECK(henkin_boundary_density(spec, z, zero, b) == Complex(0.0, 0.0));
      const Complex a = henkin_boundary_density(spec, z, f, b), c = henkin_boundary_density(spec, z, g, b);
      const Complex ac = henkin_boundary_density(spec, z, fg, b);
      CHECK(std::abs(ac - (a + c)) <= 1e-12 * std::max(1.0, std::abs(ac)));
    }
  }
  const CPoint2 zeta(Complex(0.1, 0.2), Complex(0.3, 0.1));
  CHECK(bm_interior_density(z, zeta, zero) == Complex(0.0, 0.0));
  const Complex a = bm_interior_density(z, zeta, f), c = bm_interior_density(z, zeta, g);
  CHECK(std::abs(bm_interior_density(z, zeta, fg) - (a + c)) <= 1e-12 * std::abs(a + c));
}

TEST_CASE("interior density example") {
  const ZeroOneForm one = custom_form("1", "0");
  const CPoint2 z(Complex(0.2, 0.1), Complex(-0.3, 0.0));
  const CPoint2 zeta = z + Vec4(1.0, 0.0, 0.0, 0.0);
  CHECK(bm_interior_density(z, zeta, one) == Complex(kVolumeForm, 0.0));
  CHECK_THROWS_AS(bm_interior_density(z, z, one), Error);
}

TEST_CASE("boundary term cancels at the ball center") {
  const DomainSpec ball = DomainSpec::ball(2.0);
  const BoundaryChart chart = boundary_charts(ball)[0];
  const ZeroOneForm f = form_from_catalog("zbar-pair");
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Vec3 s(1.5 * U(rng), 6.2 * U(rng), 6.2 * U(rng));
    const BoundarySample b = sample_chart(chart, s);
    CHECK(std::abs(henkin_boundary_density(ball, CPoint2(), f, b)) < 1e-15);
    CHECK(henkin_abs_density(ball, CPoint2(), b) < 1e-15);
  }
}

TEST_CASE("singularity hit at zeta = z") {
  const DomainSpec ball = DomainSpec::ball(2.0);
  const CPoint2 zeta(2.0, 0.0);
  try {
    henkin_kernel(grad_rho(ball, zeta), zeta, zeta);
    FAIL("expected SingularityHit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularityHit);
  }
}

TEST_CASE("dual evaluation of the boundary density on Example 1") {
  const DomainSpec spec = DomainSpec::example1(0.5);
  const auto charts = boundary_charts(spec);
  const ZeroOneForm f = form_from_catalog("zbar-pair");
  const CPoint2 z(Complex(0.99, 0.0), Complex(1.70, 0.05));
  REQUIRE(contains(spec, z));
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(0.05, 0.95);
  int compared = 0;
  for (const auto& chart : charts) {
    for (int i = 0; i < 40; ++i) {
      Vec3 s;
      for (int k = 0; k < 3; ++k) s[k] = chart.axes[k].lo + (chart.axes[k].hi - chart.axes[k].lo) * U(rng);
      // Stay clear of the steep layer of the bridge, where differencing the embedding is inaccurate.
      if (chart.label == ChartLabel::P2 && s[0] < spec.chi1().eps() + spec.chi1().bridge_layer()) continue;
      const Complex mine = henkin_boundary_density(spec, z, f, sample_chart(chart, s));
      const Complex ref = reference_density(spec, chart, s, z, f);
      CHECK_MESSAGE(std::abs(mine - ref) <= 1e-5 * std::max(1.0, std::abs(ref)), to_string(chart.label));
      ++compared;
    }
  }
  CHECK(compared > 80);
}

TEST_CASE("dual evaluation on the exp branch of P2") {
  const DomainSpec spec = DomainSpec::example1(1.5);
  const BoundaryChart p2 = boundary_charts(spec)[1];
  const ZeroOneForm f = form_from_catalog("zbar-pair");
  const CPoint2 z(Complex(1.0, 0.0), Complex(1.72, 0.0));
  REQUIRE(contains(spec, z));
  for (double frac : {0.3, 0.6, 0.9}) {
    const Vec3 s(frac * spec.chi1().eps(), 0.2, 0.4);
    const Complex mine = henkin_boundary_density(spec, z, f, sample_chart(p2, s));
    const Complex ref = reference_density(spec, p2, s, z, f);
    CHECK(std::abs(mine - ref) <= 1e-4 * std::abs(ref));
  }
}

TEST_CASE("interior density shell average scales like r^-3") {
  // For f = dzbar1 the density is 4 |zeta1 - z1| / r^4 = 4 cos(p) / r^3 in Hopf coordinates about z,
  // whose average over the 3-sphere (measure cos p sin p dp dt1 dt2) is (8/3) r^-3.
  const ZeroOneForm one = custom_form("1", "0");
  const CPoint2 z(Complex(0.5, 0.2), Complex(-0.3, 0.4));
  const Rule1D& g = gauss_legendre(16);
  for (double r : {1e-1, 1e-2, 1e-3}) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double p = 0.25 * M_PI * (g.nodes[i] + 1.0), wp = 0.25 * M_PI * g.weights[i];
      for (int j = 0; j < 7; ++j)
        for (int k = 0; k < 5; ++k) {
          const Vec4 d = hopf_direction(p, 2 * M_PI * j / 7.0, 2 * M_PI * k / 5.0);
          const double w = wp * std::cos(p) * std::sin(p);
          num += w * std::abs(bm_interior_density(z, z + Vec4(r * d), one));
          den += w;
        }
    }
    CHECK(num / den * r * r * r == doctest::Approx(8.0 / 3.0).epsilon(1e-9));
  }
}

TEST_CASE("strongly convex bound on the ball") {
  const DomainSpec ball = DomainSpec::ball(2.0);
  const StronglyConvexBound b = calibrate_strongly_convex(ball, ConvexPiece::Ball, 10000, 5);
  CHECK(b.calibration_floor >= 0.5 - 1e-9);
  CHECK(b.c_prime >= 0.49);
  const StronglyConvexBound fixed{0.49, 0.5, 0.5, 0};
  const CPoint2 zeta(2.0, 0.0);
  CHECK(strongly_convex_reF_holds(fixed, ball, zeta, zeta));
  StronglyConvexBound cal;
  const PredicateSummary s = strongly_convex_check(ball, 10000, 6, &cal);
  CHECK(s.passed());
  CHECK(cal.c_prime >= 0.49);
}

TEST_CASE("Re F lower bound cases on Example 1") {
  const DomainSpec spec = DomainSpec::example1(1.5);
  const double eps = spec.params().eps, alpha = 1.5;
  const double x = 0.5 * eps;
  const CPoint2 zeta(std::sqrt(1 + x), std::sqrt(4 - spec.chi1().jet_offset(x).value));
  REQUIRE(std::abs(rho(spec, zeta)) < 1e-12);

  SUBCASE("y <= 0: bound is phi''(x/2) (x/2)^2") {
    const CPoint2 z(Complex(0.999, 0.0), Complex(1.7, 0.0));
    const double b = reF_lower_bound(ReFCase::Example1Torus, spec, z, zeta, {0.3});
    const double h = 0.5 * x;
    CHECK(b == doctest::Approx(phi_jet(h, alpha).d2 * h * h).epsilon(1e-14));
    CHECK(std::abs(leray_F(spec, z, zeta).real()) >= b);
  }
  SUBCASE("y = x gives phi(0) = 0") {
    const CPoint2 z(std::sqrt(1 + x), 1.7);
    CHECK(reF_lower_bound(ReFCase::Example1Torus, spec, z, zeta, {0.3}) == 0.0);
  }
  SUBCASE("pairs away from the torus are rejected") {
    try {
      reF_lower_bound(ReFCase::Example1Torus, spec, CPoint2(0.0, 0.0), zeta, {0.3});
      FAIL("expected OutOfNeighborhood");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::OutOfNeighborhood);
    }
  }
}

TEST_CASE("flat-point predicates hold on their validity regions") {
  const PredicateSummary a = flat_point_check(ReFCase::Omega1Abs, omega1(), 2000, 41);
  CHECK_MESSAGE(a.passed(), a.note);
  const PredicateSummary b = flat_point_check(ReFCase::Omega2Re, omega2(), 2000, 42);
  CHECK_MESSAGE(b.passed(), b.note);
  const PredicateSummary c = flat_point_check(ReFCase::Example1Torus, DomainSpec::example1(0.5), 2000, 43, {0.3});
  CHECK_MESSAGE(c.passed(), c.note);
}
