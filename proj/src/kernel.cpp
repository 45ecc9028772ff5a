#include "dbar/kernel.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace dbar {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Normalization henkin_normalization() {
  const double c = 1.0 / (4.0 * kPi * kPi);
  return {c, -c};
}

Complex leray_F(const WirtingerGradient& g, const CPoint2& z, const CPoint2& zeta) {
  return g.d1 * (z.z1() - zeta.z1()) + g.d2 * (z.z2() - zeta.z2());
}

Complex leray_F(const DomainSpec& spec, const CPoint2& z, const CPoint2& zeta) {
  return leray_F(grad_rho(spec, zeta), z, zeta);
}

Complex henkin_kernel(const WirtingerGradient& g, const CPoint2& z, const CPoint2& zeta) {
  const double r2 = (zeta - z).squaredNorm();
  const Complex F = leray_F(g, z, zeta);
  if (r2 == 0.0 || F == 0.0) throw Error(ErrorKind::SingularityHit, "zeta coincides with z");
  const Complex num = g.d1 * std::conj(zeta.z2() - z.z2()) - g.d2 * std::conj(zeta.z1() - z.z1());
  return num / (F * r2);
}

WedgePullback wedge_pullback(const Mat43& T) {
  Complex a[3], b[3], c1[3], c2[3];
  for (int k = 0; k < 3; ++k) {
    a[k] = Complex(T(0, k), T(1, k));   // dz1
    b[k] = Complex(T(2, k), T(3, k));   // dz2
    c1[k] = std::conj(a[k]);            // dzb1
    c2[k] = std::conj(b[k]);            // dzb2
  }
  auto det3 = [&](const Complex* r0) {
    return r0[0] * (a[1] * b[2] - a[2] * b[1]) - r0[1] * (a[0] * b[2] - a[2] * b[0]) +
           r0[2] * (a[0] * b[1] - a[1] * b[0]);
  };
  return {det3(c1), det3(c2)};
}

Complex henkin_boundary_density(const WirtingerGradient& g, const CPoint2& z, const ZeroOneForm& f,
                                const BoundarySample& s) {
  if (s.weight == 0.0) return 0.0;
  const WedgePullback w = wedge_pullback(s.tangents);
  const Complex form = f.f1(s.point) * w.zb1 + f.f2(s.point) * w.zb2;
  return s.orientation * s.weight * henkin_kernel(g, z, s.point) * form;
}

Complex henkin_boundary_density(const DomainSpec& spec, const CPoint2& z, const ZeroOneForm& f,
                                const BoundarySample& s) {
  if (s.weight == 0.0) return 0.0;
  return henkin_boundary_density(grad_rho(spec, s.point), z, f, s);
}

double henkin_abs_density(const DomainSpec& spec, const CPoint2& z, const BoundarySample& s) {
  if (s.weight == 0.0) return 0.0;
  return std::abs(henkin_kernel(grad_rho(spec, s.point), z, s.point)) * s.jacobian * s.weight;
}

Complex bm_interior_density(const CPoint2& z, const CPoint2& zeta, const ZeroOneForm& f) {
  const double r2 = (zeta - z).squaredNorm();
  if (r2 == 0.0) throw Error(ErrorKind::SingularityHit, "zeta coincides with z");
  const Complex num = f.f1(zeta) * std::conj(zeta.z1() - z.z1()) + f.f2(zeta) * std::conj(zeta.z2() - z.z2());
  return kVolumeForm * num / (r2 * r2);
}

namespace {

// The two-case bound shared by the Omega families: p from zeta, q from z.
double flat_profile_bound(const ExtendedPhi& prof, double p, double q) {
  if (q >= p) return 0.5 * prof(q - p);
  const double h = 0.5 * (p - q);
  return 0.5 * prof.jet(0.5 * (p + q)).d2 * h * h;
}

double torus_distance(const CPoint2& w) {
  return std::hypot(std::abs(w.z1()) - 1.0, std::abs(w.z2()) - std::sqrt(3.0));
}

}  // namespace

double reF_lower_bound(ReFCase c, const DomainSpec& spec, const CPoint2& z, const CPoint2& zeta,
                       const ReFNeighborhood& nb) {
  switch (c) {
    case ReFCase::Omega1Abs:
    case ReFCase::Omega2Re: {
      const DomainKind want = c == ReFCase::Omega1Abs ? DomainKind::Omega1 : DomainKind::Omega2;
      if (spec.kind() != want) throw Error(ErrorKind::OutOfNeighborhood, "case does not match the domain");
      const double t3 = phi_third_derivative_limit(spec.params().alpha);
      const double reach = std::min(nb.delta, spec.params().eps_patch);
      double p, q;
      if (c == ReFCase::Omega1Abs) {
        p = std::norm(zeta.z1());
        q = std::norm(z.z1());
      } else {
        p = zeta.z1().real() * zeta.z1().real();
        q = z.z1().real() * z.z1().real();
      }
      if (z.norm() >= reach || zeta.norm() >= reach || p > t3 || q > t3)
        throw Error(ErrorKind::OutOfNeighborhood, "pair outside the flat-point neighborhood");
      return flat_profile_bound(spec.omega_profile(), p, q);
    }
    case ReFCase::Example1Torus: {
      if (spec.kind() != DomainKind::Example1) throw Error(ErrorKind::OutOfNeighborhood, "case needs Example 1");
      const double eps = spec.params().eps;
      const double x = std::norm(zeta.z1()) - 1.0;
      if (x < 0.0 || x > eps || std::norm(z.z1()) - 1.0 > eps || torus_distance(z) >= nb.delta ||
          torus_distance(zeta) >= nb.delta)
        throw Error(ErrorKind::OutOfNeighborhood, "pair outside the torus neighborhood");
      const double y = (std::conj(zeta.z1()) * z.z1()).real() - 1.0;
      const double alpha = spec.params().alpha;
      if (y >= x) return phi(y - x, alpha);
      if (y >= 0.0) {
        const double h = 0.5 * (x - y);
        return phi_jet(h, alpha).d2 * h * h;
      }
      const double h = 0.5 * x;
      return phi_jet(h, alpha).d2 * h * h;
    }
  }
  return 0.0;
}

namespace {

template <typename Rng>
Vec4 unit_vector(Rng& rng) {
  std::normal_distribution<double> n;
  Vec4 v(n(rng), n(rng), n(rng), n(rng));
  return v.normalized();
}

}  // namespace

StronglyConvexBound calibrate_strongly_convex(const DomainSpec& spec, ConvexPiece piece, int samples,
                                              std::uint64_t seed, double delta) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  StronglyConvexBound b;
  b.delta = delta;
  double floor = std::numeric_limits<double>::infinity();
  int count = 0;
  while (count < samples) {
    CPoint2 zeta;
    if (piece == ConvexPiece::Ball) {
      if (spec.kind() != DomainKind::Ball) throw Error(ErrorKind::InvalidDomain, "Ball piece needs a ball");
      zeta = CPoint2(Vec4(spec.params().radius * unit_vector(rng)));
    } else {
      if (spec.kind() != DomainKind::Example1) throw Error(ErrorKind::InvalidDomain, "cap piece needs Example 1");
      const double R = std::sqrt(4.0 + spec.params().eta);
      const Vec4 w = R * unit_vector(rng);
      if (w[0] * w[0] + w[1] * w[1] < 1.0 + spec.params().a) continue;
      zeta = CPoint2(w);
    }
    // Uniform-in-radius displacement so that pairs close to the diagonal are well represented.
    const double r = delta * std::pow(u01(rng), 3.0);
    const CPoint2 z = zeta + r * unit_vector(rng);
    if (!(rho(spec, z) <= 0.0) || r == 0.0) continue;
    floor = std::min(floor, std::abs(leray_F(spec, z, zeta).real()) / (z - zeta).squaredNorm());
    ++count;
  }
  b.samples = count;
  b.calibration_floor = floor;
  b.c_prime = 0.98 * floor;
  return b;
}

bool strongly_convex_reF_holds(const StronglyConvexBound& b, const DomainSpec& spec, const CPoint2& z,
                               const CPoint2& zeta) {
  const double d2 = (z - zeta).squaredNorm();
  return std::abs(leray_F(spec, z, zeta).real()) >= b.c_prime * d2;
}

}  // namespace dbar
