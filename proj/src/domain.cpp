#include "dbar/domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dbar/patch.hpp"

namespace dbar {

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedSmoothOperation: return "unsupported-smooth-operation";
    case ErrorKind::SingularityHit: return "singularity-hit";
    case ErrorKind::OutOfNeighborhood: return "out-of-neighborhood";
    case ErrorKind::AuditFailure: return "audit-failure";
    case ErrorKind::StencilOutsideDomain: return "stencil-outside-domain";
    case ErrorKind::InvalidDomain: return "invalid-domain";
    case ErrorKind::NotClosed: return "not-closed";
    case ErrorKind::ConfigError: return "config-error";
  }
  return "unknown";
}

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::Bidisc: return "bidisc";
    case DomainKind::Ball: return "ball";
    case DomainKind::Omega1: return "omega1";
    case DomainKind::Omega2: return "omega2";
    case DomainKind::Example1: return "example1";
    case DomainKind::Example2: return "example2";
  }
  return "unknown";
}

DomainKind parse_domain_kind(const std::string& name) {
  for (DomainKind k : {DomainKind::Bidisc, DomainKind::Ball, DomainKind::Omega1, DomainKind::Omega2,
                       DomainKind::Example1, DomainKind::Example2})
    if (to_string(k) == name) return k;
  throw Error(ErrorKind::ConfigError, "unknown domain kind '" + name + "'");
}

Vec4 hopf_direction(double p, double t1, double t2) {
  const double c = std::cos(p), s = std::sin(p);
  return {c * std::cos(t1), c * std::sin(t1), s * std::cos(t2), s * std::sin(t2)};
}

double omega_profile_junction(double alpha) { return 0.9 * phi_convexity_limit(alpha); }

namespace {

double omega_profile_argument(const DomainSpec& spec, const CPoint2& z) {
  const Vec4& x = z.real();
  return spec.kind() == DomainKind::Omega1 ? x[0] * x[0] + x[1] * x[1] : x[0] * x[0];
}

CPoint2 omega_center(const DomainSpec& spec) {
  // Depth of the domain along -Re z2 from the flat point, halved.
  double lo = 0.0, hi = 1e-3;
  while (rho(spec, CPoint2({0.0, 0.0}, {-hi, 0.0})) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e3) throw Error(ErrorKind::InvalidDomain, "domain is unbounded along -Re z2");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (rho(spec, CPoint2({0.0, 0.0}, {-mid, 0.0})) < 0.0 ? lo : hi) = mid;
  }
  return CPoint2({0.0, 0.0}, {-0.5 * lo, 0.0});
}

double omega_scale(const DomainSpec& spec) {
  double r = 0.0;
  const CPoint2& c = spec.interior_center();
  for (int i = 0; i < 4; ++i)
    for (double sgn : {-1.0, 1.0}) {
      Vec4 d = Vec4::Zero();
      d[i] = sgn;
      r = std::max(r, c.real().norm() + ray_exit(spec, c, d));
    }
  return 2.0 * r;
}

}  // namespace

DomainSpec DomainSpec::bidisc() {
  DomainSpec s;
  s.params_.kind = DomainKind::Bidisc;
  s.scale_ = 2.0 * std::sqrt(2.0);
  return s;
}

DomainSpec DomainSpec::ball(double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidDomain, "ball radius must be positive");
  DomainSpec s;
  s.params_.kind = DomainKind::Ball;
  s.params_.radius = radius;
  s.scale_ = 2.0 * radius;
  return s;
}

namespace {

DomainSpec make_omega(DomainKind kind, double alpha, double eps_patch, double M);

}  // namespace

DomainSpec DomainSpec::omega1(double alpha, double eps_patch, double M) {
  return make_omega(DomainKind::Omega1, alpha, eps_patch, M);
}

DomainSpec DomainSpec::omega2(double alpha, double eps_patch, double M) {
  return make_omega(DomainKind::Omega2, alpha, eps_patch, M);
}

namespace {

DomainSpec make_omega(DomainKind kind, double alpha, double eps_patch, double M) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidDomain, "alpha must be positive");
  if (!(eps_patch > 0.0)) throw Error(ErrorKind::InvalidDomain, "patch radius must be positive");
  DomainParams p;
  p.kind = kind;
  p.alpha = alpha;
  p.eps_patch = eps_patch;
  ExtendedPhi prof(alpha, omega_profile_junction(alpha));
  if (!(M > 0.0)) {
    auto local = [kind, prof](const CPoint2& z) {
      const Vec4& x = z.real();
      const double t = kind == DomainKind::Omega1 ? x[0] * x[0] + x[1] * x[1] : x[0] * x[0];
      return x[2] + prof(t);
    };
    M = choose_patch_constant(local, eps_patch).M;
  }
  p.M = M;
  return DomainSpec::from_params(p);
}

}  // namespace

DomainSpec DomainSpec::example1(double alpha, double a, double eps, double eta) {
  DomainParams p;
  p.kind = DomainKind::Example1;
  p.alpha = alpha;
  p.a = a;
  p.eps = eps;
  p.eta = eta;
  return from_params(p);
}

DomainSpec DomainSpec::example2(double alpha, double a) {
  DomainParams p;
  p.kind = DomainKind::Example2;
  p.alpha = alpha;
  p.a = a;
  return from_params(p);
}

DomainSpec DomainSpec::from_params(const DomainParams& in) {
  DomainSpec s;
  s.params_ = in;
  DomainParams& p = s.params_;
  switch (p.kind) {
    case DomainKind::Bidisc: return bidisc();
    case DomainKind::Ball: return ball(p.radius);
    case DomainKind::Omega1:
    case DomainKind::Omega2:
      if (!(p.M > 0.0)) return make_omega(p.kind, p.alpha, p.eps_patch, 0.0);
      if (!(p.alpha > 0.0) || !(p.eps_patch > 0.0))
        throw Error(ErrorKind::InvalidDomain, "Omega domains need alpha > 0 and a positive patch radius");
      s.omega_profile_ = ExtendedPhi(p.alpha, omega_profile_junction(p.alpha));
      s.center_ = omega_center(s);
      s.scale_ = 1.0;
      s.scale_ = omega_scale(s);
      return s;
    case DomainKind::Example1:
      if (std::isnan(p.eps)) p.eps = ChiExample1::default_eps(p.alpha, p.eta);
      s.chi1_ = ChiExample1(p.alpha, p.a, p.eps, p.eta);
      s.scale_ = 2.0 * std::sqrt(7.0 + p.eta);
      return s;
    case DomainKind::Example2:
      s.chi2_ = ChiExample2(p.alpha, p.a);
      s.scale_ = 2.0 * std::sqrt(2.0);
      return s;
  }
  throw Error(ErrorKind::InvalidDomain, "unknown domain kind");
}

std::string DomainSpec::label() const {
  char buf[160];
  switch (kind()) {
    case DomainKind::Bidisc: return "bidisc";
    case DomainKind::Ball: std::snprintf(buf, sizeof buf, "ball(radius=%g)", params_.radius); break;
    case DomainKind::Omega1:
    case DomainKind::Omega2:
      std::snprintf(buf, sizeof buf, "%s(alpha=%g,eps_patch=%g,M=%g)", to_string(kind()).c_str(), params_.alpha,
                    params_.eps_patch, params_.M);
      break;
    case DomainKind::Example1:
      std::snprintf(buf, sizeof buf, "example1(alpha=%g,a=%g,eps=%.6g,eta=%g)", params_.alpha, params_.a,
                    params_.eps, params_.eta);
      break;
    case DomainKind::Example2: std::snprintf(buf, sizeof buf, "example2(alpha=%g,a=%g)", params_.alpha, params_.a); break;
  }
  return buf;
}

double rho(const DomainSpec& spec, const CPoint2& z) {
  const Vec4& x = z.real();
  const double n1 = x[0] * x[0] + x[1] * x[1];
  const double n2 = x[2] * x[2] + x[3] * x[3];
  const DomainParams& p = spec.params();
  switch (spec.kind()) {
    case DomainKind::Bidisc: return std::sqrt(std::max(n1, n2)) - 1.0;
    case DomainKind::Ball: return n1 + n2 - p.radius * p.radius;
    case DomainKind::Omega1:
    case DomainKind::Omega2:
      return x[2] + spec.omega_profile()(omega_profile_argument(spec, z)) + p.M * psi_bump(n1 + n2, p.eps_patch);
    case DomainKind::Example1: return spec.chi1()(n1) + n2 - 4.0;
    case DomainKind::Example2: return spec.chi2()(std::sqrt(n1)) + spec.chi2()(std::sqrt(n2)) - 2.0 + p.a;
  }
  return 0.0;
}

bool contains(const DomainSpec& spec, const CPoint2& z) { return rho(spec, z) < 0.0; }

WirtingerGradient grad_rho(const DomainSpec& spec, const CPoint2& z) {
  const Complex z1 = z.z1(), z2 = z.z2();
  const double n1 = std::norm(z1), n2 = std::norm(z2);
  const DomainParams& p = spec.params();
  switch (spec.kind()) {
    case DomainKind::Bidisc:
      throw Error(ErrorKind::UnsupportedSmoothOperation, "the bidisc boundary is not smooth; use face charts");
    case DomainKind::Ball: return {std::conj(z1), std::conj(z2)};
    case DomainKind::Omega1:
    case DomainKind::Omega2: {
      const double dpsi = p.M * psi_jet(n1 + n2, p.eps_patch).d1;
      const double dphi = spec.omega_profile().jet(omega_profile_argument(spec, z)).d1;
      const Complex g1 = spec.kind() == DomainKind::Omega1 ? dphi * std::conj(z1) : Complex(dphi * z1.real(), 0.0);
      return {g1 + dpsi * std::conj(z1), 0.5 + dpsi * std::conj(z2)};
    }
    case DomainKind::Example1: return {spec.chi1().jet(n1).d1 * std::conj(z1), std::conj(z2)};
    case DomainKind::Example2: {
      auto part = [&](Complex w) -> Complex {
        const double r = std::abs(w);
        if (r <= 1.0 - p.a) return 0.0;
        return spec.chi2().jet(r).d1 * std::conj(w) / (2.0 * r);
      };
      return {part(z1), part(z2)};
    }
  }
  return {};
}

Vec4 real_gradient(const WirtingerGradient& g) {
  return {2.0 * g.d1.real(), -2.0 * g.d1.imag(), 2.0 * g.d2.real(), -2.0 * g.d2.imag()};
}

Vec4 real_gradient(const DomainSpec& spec, const CPoint2& z) { return real_gradient(grad_rho(spec, z)); }

namespace {

// Hessian of x -> g(|x|^2) on a 2-block given g' and g''.
Eigen::Matrix2d radial_square_block(double x, double y, double g1, double g2) {
  Eigen::Vector2d v(x, y);
  return 2.0 * g1 * Eigen::Matrix2d::Identity() + 4.0 * g2 * v * v.transpose();
}

// Hessian of x -> g(|x|) on a 2-block.
Eigen::Matrix2d radial_abs_block(double x, double y, double g1, double g2) {
  const double r = std::hypot(x, y);
  if (r == 0.0) return Eigen::Matrix2d::Zero();
  Eigen::Vector2d u(x / r, y / r);
  const Eigen::Matrix2d P = u * u.transpose();
  return g2 * P + (g1 / r) * (Eigen::Matrix2d::Identity() - P);
}

}  // namespace

Mat4 hessian_rho(const DomainSpec& spec, const CPoint2& z) {
  const Vec4& x = z.real();
  const double n1 = x[0] * x[0] + x[1] * x[1];
  const DomainParams& p = spec.params();
  Mat4 H = Mat4::Zero();
  switch (spec.kind()) {
    case DomainKind::Bidisc:
      throw Error(ErrorKind::UnsupportedSmoothOperation, "the bidisc boundary is not smooth");
    case DomainKind::Ball: return 2.0 * Mat4::Identity();
    case DomainKind::Omega1:
    case DomainKind::Omega2: {
      const Jet3 j = spec.omega_profile().jet(omega_profile_argument(spec, z));
      if (spec.kind() == DomainKind::Omega1)
        H.block<2, 2>(0, 0) = radial_square_block(x[0], x[1], j.d1, j.d2);
      else
        H(0, 0) = 2.0 * j.d1 + 4.0 * j.d2 * x[0] * x[0];
      return H + p.M * psi_hessian(z, p.eps_patch);
    }
    case DomainKind::Example1: {
      const Jet3 j = spec.chi1().jet(n1);
      H.block<2, 2>(0, 0) = radial_square_block(x[0], x[1], j.d1, j.d2);
      H.block<2, 2>(2, 2) = 2.0 * Eigen::Matrix2d::Identity();
      return H;
    }
    case DomainKind::Example2: {
      const Jet3 j1 = spec.chi2().jet(std::sqrt(n1));
      const Jet3 j2 = spec.chi2().jet(std::hypot(x[2], x[3]));
      H.block<2, 2>(0, 0) = radial_abs_block(x[0], x[1], j1.d1, j1.d2);
      H.block<2, 2>(2, 2) = radial_abs_block(x[2], x[3], j2.d1, j2.d2);
      return H;
    }
  }
  return H;
}

double hessian_min_eigenvalue(const DomainSpec& spec, const CPoint2& z) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(hessian_rho(spec, z), Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

double ray_exit_generic(const std::function<double(const CPoint2&)>& f,
                        const std::function<double(const CPoint2&, const Vec4&)>& dd, const CPoint2& z,
                        const Vec4& dir, double scale) {
  double lo = 0.0, hi = 0.05 * scale;
  double fhi = f(z + hi * dir);
  while (!(fhi > 0.0)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e4 * scale) throw Error(ErrorKind::InvalidDomain, "ray does not leave the domain");
    fhi = f(z + hi * dir);
  }
  // Newton from the outside converges monotonically for convex f; bisection guards the rest.
  double R = hi, fR = fhi;
  for (int it = 0; it < 200; ++it) {
    const double slope = dd(z + R * dir, dir);
    double next = slope > 0.0 ? R - fR / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double fn = f(z + next * dir);
    if (fn > 0.0)
      hi = next;
    else
      lo = next;
    const double step = std::abs(next - R);
    R = next;
    fR = fn;
    if (step <= 1e-15 * std::max(1.0, R) || hi - lo <= 1e-15 * std::max(1.0, hi) || fn == 0.0) break;
  }
  return R;
}

double ray_exit(const DomainSpec& spec, const CPoint2& z, const Vec4& dir) {
  const Vec4& x = z.real();
  switch (spec.kind()) {
    case DomainKind::Ball: {
      const double b = x.dot(dir);
      const double r = spec.params().radius;
      return -b + std::sqrt(std::max(0.0, b * b - x.squaredNorm() + r * r));
    }
    case DomainKind::Bidisc: {
      double R = std::numeric_limits<double>::infinity();
      for (int j = 0; j < 2; ++j) {
        const double a = dir[2 * j] * dir[2 * j] + dir[2 * j + 1] * dir[2 * j + 1];
        if (a <= 0.0) continue;
        const double b = x[2 * j] * dir[2 * j] + x[2 * j + 1] * dir[2 * j + 1];
        const double c = x[2 * j] * x[2 * j] + x[2 * j + 1] * x[2 * j + 1] - 1.0;
        R = std::min(R, (-b + std::sqrt(std::max(0.0, b * b - a * c))) / a);
      }
      return R;
    }
    default: {
      auto f = [&](const CPoint2& w) { return rho(spec, w); };
      auto dd = [&](const CPoint2& w, const Vec4& d) { return real_gradient(spec, w).dot(d); };
      return ray_exit_generic(f, dd, z, dir, spec.scale());
    }
  }
}

std::vector<double> ray_kinks(const DomainSpec& spec, const CPoint2& z, double theta1, double theta2) {
  if (spec.kind() != DomainKind::Bidisc) return {};
  // Exit through |zeta1| = 1 at distance A / cos p and through |zeta2| = 1 at B / sin p.
  auto reach = [](Complex w, double t) {
    const Complex e = std::polar(1.0, t);
    const double b = (std::conj(w) * e).real();
    return -b + std::sqrt(b * b + 1.0 - std::norm(w));
  };
  const double A = reach(z.z1(), theta1), B = reach(z.z2(), theta2);
  return {std::atan2(B, A)};
}

double distance_to_boundary(const DomainSpec& spec, const CPoint2& z) {
  const Vec4& x = z.real();
  switch (spec.kind()) {
    case DomainKind::Ball: return spec.params().radius - x.norm();
    case DomainKind::Bidisc: return 1.0 - std::max(std::abs(z.z1()), std::abs(z.z2()));
    default: break;
  }
  if (!contains(spec, z)) return 0.0;
  // For an interior point the shortest ray to the boundary realizes the distance.
  const double pi = 3.14159265358979323846;
  const int np = 8, nt = 16;
  double best = std::numeric_limits<double>::infinity();
  Vec3 arg(0, 0, 0);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < nt; ++j)
      for (int k = 0; k < nt; ++k) {
        const double p = (i + 0.5) * (pi / 2) / np, t1 = 2 * pi * j / nt, t2 = 2 * pi * k / nt;
        const double R = ray_exit(spec, z, hopf_direction(p, t1, t2));
        if (R < best) {
          best = R;
          arg = Vec3(p, t1, t2);
        }
      }
  double step = 0.2;
  while (step > 1e-9) {
    bool improved = false;
    for (int a = 0; a < 3; ++a)
      for (double sgn : {-1.0, 1.0}) {
        Vec3 trial = arg;
        trial[a] += sgn * step;
        const double R = ray_exit(spec, z, hopf_direction(trial[0], trial[1], trial[2]));
        if (R < best) {
          best = R;
          arg = trial;
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  return best;
}

Box bounding_box(const DomainSpec& spec) {
  const DomainParams& p = spec.params();
  switch (spec.kind()) {
    case DomainKind::Ball: return {Vec4::Constant(-p.radius), Vec4::Constant(p.radius)};
    case DomainKind::Bidisc:
    case DomainKind::Example2: return {Vec4::Constant(-1.0), Vec4::Constant(1.0)};
    case DomainKind::Example1: {
      const double r1 = std::sqrt(4.0 + p.eta), r2 = std::sqrt(3.0);
      return {Vec4(-r1, -r1, -r2, -r2), Vec4(r1, r1, r2, r2)};
    }
    default: break;
  }
  // Support function of a convex body sampled along a direction grid, with a margin.
  const CPoint2& c = spec.interior_center();
  Vec4 lo = c.real(), hi = c.real();
  const double pi = 3.14159265358979323846;
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j < 16; ++j)
      for (int k = 0; k < 16; ++k) {
        const Vec4 d = hopf_direction(i * (pi / 2) / 8, 2 * pi * j / 16, 2 * pi * k / 16);
        const Vec4 q = (c + ray_exit(spec, c, d) * d).real();
        lo = lo.cwiseMin(q);
        hi = hi.cwiseMax(q);
      }
  const Vec4 margin = 0.1 * (hi - lo);
  return {lo - margin, hi + margin};
}

}  // namespace dbar
