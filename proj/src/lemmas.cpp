#include "dbar/lemmas.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "dbar/charts.hpp"
#include "dbar/patch.hpp"
#include "dbar/profiles.hpp"

namespace dbar {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void record(PredicateSummary& s, double slack) {
  ++s.samples;
  s.worst_slack = std::min(s.worst_slack, slack);
  if (slack < -s.tolerance) ++s.violations;
}

// Half the draws uniform on [0, hi], half log-uniform on [hi 1e-8, hi] so the flat end is visited.
double mixed_draw(std::mt19937_64& rng, double hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < 0.5) return hi * u(rng);
  return hi * std::pow(10.0, -8.0 * u(rng));
}

Vec4 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return Vec4(n(rng), n(rng), n(rng), n(rng)).normalized();
}

}  // namespace

PredicateSummary lemma2_convexity_check(int samples, std::uint64_t seed, double psi_eps, double radius, double h) {
  PredicateSummary out;
  out.name = "lemma2-convexity";
  out.tolerance = 1e-8;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto f = [&](const CPoint2& w) { return psi_bump(w.real().squaredNorm(), psi_eps); };
  for (int i = 0; i < samples; ++i) {
    // Uniform in the 4-ball: radius ~ U^{1/4}.
    const CPoint2 x(Vec4(radius * std::pow(u(rng), 0.25) * random_unit(rng)));
    const Mat4 H = fd_hessian(f, x, h);
    Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (H + H.transpose()), Eigen::EigenvaluesOnly);
    record(out, es.eigenvalues().minCoeff());
  }
  return out;
}

std::vector<PredicateSummary> lemma3_check(double alpha, int samples, std::uint64_t seed, bool negated) {
  const double sign = negated ? -1.0 : 1.0;
  auto jet = [&](double t) {
    Jet3 j = phi_jet(t, alpha);
    return Jet3{sign * j.value, sign * j.d1, sign * j.d2, sign * j.d3};
  };
  const double top = std::min(0.25, phi_third_derivative_limit(alpha));

  PredicateSummary a, b, hyp;
  a.name = "lemma3-A";
  b.name = "lemma3-B";
  hyp.name = "lemma3-hypotheses";
  a.tolerance = b.tolerance = 1e-12;
  hyp.tolerance = 0.0;
  const std::string range = "alpha=" + num(alpha) + " sampled on [0, " + num(top) + "]";
  a.note = b.note = hyp.note = range + (negated ? " with the concave probe -phi" : "");

  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    double p = mixed_draw(rng, top), q = mixed_draw(rng, top);
    if (p > q) std::swap(p, q);
    // A: 0 <= p <= q.
    {
      const Jet3 jp = jet(p);
      record(a, jet(q).value - jp.value - jp.d1 * (q - p) - jet(q - p).value);
      const Jet3 mid = jet(0.5 * (p + q));
      record(hyp, std::min(mid.d2, mid.d3));
    }
    // B: roles swapped so that the base point is the larger one.
    if (q > p) {
      const double P = q, Q = p;
      const Jet3 jP = jet(P);
      const double h = 0.5 * (P - Q);
      record(b, jet(Q).value - jP.value - jP.d1 * (Q - P) - jet(0.5 * (P + Q)).d2 * h * h);
    }
  }
  return {a, b, hyp};
}

PredicateSummary phi2_lower_bound_check(double alpha, int samples, std::uint64_t seed) {
  PredicateSummary out;
  out.name = "phi2-lower-bound";
  const double t_max = 0.5 * phi_convexity_limit(alpha);
  const double C = phi2_lower_bound_constant(alpha, t_max, 4096);
  out.note = "C=" + num(C) + " on (0, " + num(t_max) + "]";
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    const double t = mixed_draw(rng, t_max);
    if (!(t > 0.0)) continue;
    const Jet3 j = phi_jet(t, alpha);
    const double rhs = C * j.value * std::pow(t, -(2.0 + alpha));
    // Relative slack; both sides underflow together for tiny t.
    const double scale = std::max(std::abs(rhs), 1e-300);
    out.tolerance = 1e-12;
    record(out, (j.d2 - rhs) / scale);
  }
  return out;
}

PredicateSummary support_plane_check(const DomainSpec& spec, int samples, std::uint64_t seed) {
  PredicateSummary out;
  out.name = "support-plane:" + spec.label();
  out.tolerance = 1e-12;
  const auto charts = boundary_charts(spec);
  const Box box = bounding_box(spec);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, charts.size() - 1);
  int guard = 0;
  while (out.samples < samples && guard++ < 100 * samples) {
    const BoundaryChart& c = charts[pick(rng)];
    Vec3 s;
    for (int k = 0; k < 3; ++k) s[k] = c.axes[k].lo + (c.axes[k].hi - c.axes[k].lo) * u(rng);
    const BoundarySample zeta = sample_chart(c, s);
    if (!(zeta.weight > 0.0)) continue;
    // Half the z near zeta, half anywhere in the box.
    CPoint2 z;
    if (u(rng) < 0.5) {
      z = zeta.point + 0.3 * std::pow(u(rng), 2.0) * random_unit(rng);
    } else {
      Vec4 x;
      for (int k = 0; k < 4; ++k) x[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * u(rng);
      z = CPoint2(x);
    }
    if (rho(spec, z) > 0.0) continue;
    record(out, -leray_F(spec, z, zeta.point).real());
  }
  return out;
}

PredicateSummary strongly_convex_check(const DomainSpec& ball, int samples, std::uint64_t seed,
                                       StronglyConvexBound* calibration) {
  const StronglyConvexBound b = calibrate_strongly_convex(ball, ConvexPiece::Ball, samples, seed);
  if (calibration) *calibration = b;
  PredicateSummary out;
  out.name = "strongly-convex-ReF:" + ball.label();
  out.tolerance = 0.0;
  out.note = "C'=" + num(b.c_prime) + " (calibration floor " + num(b.calibration_floor) + ")";
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double R = ball.params().radius;
  while (out.samples < samples) {
    const CPoint2 zeta(Vec4(R * random_unit(rng)));
    const CPoint2 z = zeta + b.delta * std::pow(u(rng), 3.0) * random_unit(rng);
    if (rho(ball, z) > 0.0 || (z - zeta).squaredNorm() == 0.0) continue;
    record(out, std::abs(leray_F(ball, z, zeta).real()) - b.c_prime * (z - zeta).squaredNorm());
  }
  return out;
}

namespace {

struct Pair {
  CPoint2 z, zeta;
};

Pair sample_omega_pair(const DomainSpec& spec, const ReFNeighborhood& nb, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double reach = std::min(nb.delta, spec.params().eps_patch);
  const double T = std::min(phi_third_derivative_limit(spec.params().alpha), 0.25 * reach * reach);
  const double w = 0.4 * reach;
  const bool abs_case = spec.kind() == DomainKind::Omega1;
  const ExtendedPhi& prof = spec.omega_profile();
  auto first = [&](double t) {
    // A z1 with |z1|^2 = t (Omega1) or (Re z1)^2 = t (Omega2).
    const double r = std::sqrt(t);
    if (abs_case) {
      const double th = 2.0 * kPi * u(rng);
      return Complex(r * std::cos(th), r * std::sin(th));
    }
    return Complex(u(rng) < 0.5 ? r : -r, w * (2.0 * u(rng) - 1.0));
  };
  Pair out;
  const double p = mixed_draw(rng, T);
  const Complex zeta1 = first(p);
  out.zeta = CPoint2(zeta1, Complex(-prof(p), w * (2.0 * u(rng) - 1.0)));
  const double q = mixed_draw(rng, T);
  const Complex z1 = first(q);
  const double depth = u(rng) < 0.25 ? 0.0 : mixed_draw(rng, 0.5 * w);
  out.z = CPoint2(z1, Complex(-prof(q) - depth, w * (2.0 * u(rng) - 1.0)));
  return out;
}

Pair sample_torus_pair(const DomainSpec& spec, const ReFNeighborhood& nb, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double eps = spec.params().eps;
  const double alpha = spec.params().alpha;
  const double span = 0.5 * nb.delta;
  auto polar = [](double r, double th) { return Complex(r * std::cos(th), r * std::sin(th)); };
  Pair out;
  const double x = mixed_draw(rng, eps);
  const double th1 = 2.0 * kPi * u(rng), th2 = 2.0 * kPi * u(rng);
  out.zeta = CPoint2(polar(std::sqrt(1.0 + x), th1), polar(std::sqrt(3.0 - phi(x, alpha)), th2));
  // z1: |z1|^2 - 1 in [-span, eps], angle near th1 at mixed scales.
  const double s1 = u(rng) < 0.5 ? mixed_draw(rng, eps) : -mixed_draw(rng, span);
  const double r1 = std::sqrt(1.0 + s1);
  const double dth1 = (u(rng) < 0.5 ? 1.0 : -1.0) * mixed_draw(rng, span);
  const double r2max = std::sqrt(4.0 - spec.chi1()(r1 * r1));
  const double r2 = r2max - (u(rng) < 0.25 ? 0.0 : mixed_draw(rng, span));
  const double dth2 = (u(rng) < 0.5 ? 1.0 : -1.0) * mixed_draw(rng, span);
  out.z = CPoint2(polar(r1, th1 + dth1), polar(r2, th2 + dth2));
  return out;
}

}  // namespace

PredicateSummary flat_point_check(ReFCase c, const DomainSpec& spec, int samples, std::uint64_t seed,
                                  const ReFNeighborhood& nb) {
  PredicateSummary out;
  out.name = c == ReFCase::Omega1Abs   ? "ReF-omega1"
             : c == ReFCase::Omega2Re  ? "ReF-omega2"
                                       : "ReF-example1-torus";
  out.tolerance = 1e-12;
  out.note = spec.label() + " delta=" + num(nb.delta);
  std::mt19937_64 rng(seed);
  long skipped = 0;
  while (out.samples < samples) {
    const Pair pr = c == ReFCase::Example1Torus ? sample_torus_pair(spec, nb, rng) : sample_omega_pair(spec, nb, rng);
    if (rho(spec, pr.z) > 0.0) {
      ++skipped;
      continue;
    }
    double bound;
    try {
      bound = reF_lower_bound(c, spec, pr.z, pr.zeta, nb);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OutOfNeighborhood) throw;
      ++skipped;
      continue;
    }
    record(out, std::abs(leray_F(spec, pr.z, pr.zeta).real()) - bound);
  }
  out.note += " rejected=" + num(skipped);
  return out;
}

}  // namespace dbar
