#include "dbar/charts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dbar {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

Vec4 complex_pair(Complex a, Complex b) { return {a.real(), a.imag(), b.real(), b.imag()}; }

// Smooth step: 1 on [0, r_in], 0 beyond r_cut, C-infinity in between.
double bump_weight(double r, double r_in, double r_cut) {
  if (r <= r_in) return 1.0;
  if (r >= r_cut) return 0.0;
  const double x = (r - r_in) / (r_cut - r_in);
  const double f0 = std::exp(-1.0 / (1.0 - x)), f1 = std::exp(-1.0 / x);
  return f0 / (f0 + f1);
}

ChartAxis periodic_axis() { return {0.0, kTwoPi, true, {}}; }

// Hopf unit vector and its parameter derivatives as columns.
void hopf_frame(const Vec3& s, Vec4& h, Mat43& dh) {
  const double cp = std::cos(s[0]), sp = std::sin(s[0]);
  const double c1 = std::cos(s[1]), s1 = std::sin(s[1]);
  const double c2 = std::cos(s[2]), s2 = std::sin(s[2]);
  h << cp * c1, cp * s1, sp * c2, sp * s2;
  dh.col(0) << -sp * c1, -sp * s1, cp * c2, cp * s2;
  dh.col(1) << -cp * s1, cp * c1, 0.0, 0.0;
  dh.col(2) << 0.0, 0.0, -sp * s2, sp * c2;
}

std::array<ChartAxis, 3> hopf_axes() { return {ChartAxis{0.0, kPi / 2, false, {}}, periodic_axis(), periodic_axis()}; }

BoundaryChart radial_chart(const DomainSpec& spec, const Mat4& frame, std::function<double(const CPoint2&)> weight) {
  BoundaryChart c;
  c.label = ChartLabel::Radial;
  c.axes = hopf_axes();
  c.weight = std::move(weight);
  const CPoint2 center = spec.interior_center();
  c.geometry = [spec, frame, center](const Vec3& s) {
    Vec4 h;
    Mat43 dh;
    hopf_frame(s, h, dh);
    const Vec4 w = frame * h;
    const Mat43 dw = frame * dh;
    const double R = ray_exit(spec, center, w);
    ChartGeometry g;
    g.point = center + R * w;
    g.normal = real_gradient(spec, g.point);
    const double gw = g.normal.dot(w);
    for (int k = 0; k < 3; ++k) {
      const double dR = -R * g.normal.dot(dw.col(k)) / gw;
      g.tangents.col(k) = R * dw.col(k) + dR * w;
    }
    return g;
  };
  return c;
}

std::vector<BoundaryChart> omega_charts(const DomainSpec& spec, const Mat4& frame) {
  const double ep = spec.params().eps_patch;
  const double r_cut = 0.5 * ep, r_in = 0.25 * ep;
  const bool abs_profile = spec.kind() == DomainKind::Omega1;

  BoundaryChart flat;
  flat.label = ChartLabel::Flat;
  const double g = r_cut;
  for (auto& ax : flat.axes) ax = ChartAxis{-g, g, false, {0.0}};
  flat.weight = [r_in, r_cut](const CPoint2& p) { return bump_weight(p.norm(), r_in, r_cut); };
  flat.geometry = [spec, abs_profile](const Vec3& s) {
    const double t = abs_profile ? s[0] * s[0] + s[1] * s[1] : s[0] * s[0];
    const Jet3 j = spec.omega_profile().jet(t);
    ChartGeometry geo;
    geo.point = CPoint2(Vec4(s[0], s[1], -j.value, s[2]));
    geo.tangents.col(0) << 1.0, 0.0, -2.0 * s[0] * j.d1, 0.0;
    geo.tangents.col(1) << 0.0, 1.0, abs_profile ? -2.0 * s[1] * j.d1 : 0.0, 0.0;
    geo.tangents.col(2) << 0.0, 0.0, 0.0, 1.0;
    geo.normal = real_gradient(spec, geo.point);
    return geo;
  };
  auto outer = radial_chart(spec, frame, [r_in, r_cut](const CPoint2& p) {
    return 1.0 - bump_weight(p.norm(), r_in, r_cut);
  });
  return {flat, outer};
}

std::vector<BoundaryChart> example1_charts(const DomainSpec& spec) {
  const ChiExample1& chi = spec.chi1();
  const double s3 = std::sqrt(3.0);
  std::vector<BoundaryChart> out;

  BoundaryChart p1;
  p1.label = ChartLabel::P1;
  p1.axes = {ChartAxis{0.0, 1.0, false, {}}, periodic_axis(), periodic_axis()};
  p1.geometry = [s3](const Vec3& s) {
    const Complex e1 = std::polar(1.0, s[1]), e2 = std::polar(1.0, s[2]);
    ChartGeometry g;
    g.point = CPoint2(s[0] * e1, s3 * e2);
    g.tangents.col(0) = complex_pair(e1, 0.0);
    g.tangents.col(1) = complex_pair(Complex(0, s[0]) * e1, 0.0);
    g.tangents.col(2) = complex_pair(0.0, Complex(0, s3) * e2);
    g.normal = complex_pair(0.0, e2);
    return g;
  };
  out.push_back(p1);

  BoundaryChart p2;
  p2.label = ChartLabel::P2;
  const double layer_end = chi.eps() + chi.bridge_layer();
  std::vector<double> breaks{chi.eps()};
  if (layer_end < chi.a()) breaks.push_back(layer_end);
  p2.axes = {ChartAxis{0.0, chi.a(), false, breaks}, periodic_axis(), periodic_axis()};
  p2.geometry = [chi](const Vec3& s) {
    const Jet3 j = chi.jet_offset(s[0]);
    const double r1 = std::sqrt(1.0 + s[0]);
    const double r2 = std::sqrt(4.0 - j.value);
    const Complex e1 = std::polar(1.0, s[1]), e2 = std::polar(1.0, s[2]);
    ChartGeometry g;
    g.point = CPoint2(r1 * e1, r2 * e2);
    g.tangents.col(0) = complex_pair(e1 / (2.0 * r1), -j.d1 / (2.0 * r2) * e2);
    g.tangents.col(1) = complex_pair(Complex(0, r1) * e1, 0.0);
    g.tangents.col(2) = complex_pair(0.0, Complex(0, r2) * e2);
    g.normal = complex_pair(j.d1 * r1 * e1, r2 * e2);
    return g;
  };
  out.push_back(p2);

  BoundaryChart p3;
  p3.label = ChartLabel::P3;
  const double R = std::sqrt(4.0 + chi.eta());
  const double pmax = std::acos(std::sqrt((1.0 + chi.a()) / (4.0 + chi.eta())));
  p3.axes = {ChartAxis{0.0, pmax, false, {}}, periodic_axis(), periodic_axis()};
  p3.geometry = [R](const Vec3& s) {
    Vec4 h;
    Mat43 dh;
    hopf_frame(s, h, dh);
    ChartGeometry g;
    g.point = CPoint2(Vec4(R * h));
    g.tangents = R * dh;
    g.normal = h;
    return g;
  };
  out.push_back(p3);
  return out;
}

}  // namespace

std::string to_string(ChartLabel label) {
  switch (label) {
    case ChartLabel::P1: return "P1";
    case ChartLabel::P2: return "P2";
    case ChartLabel::P3: return "P3";
    case ChartLabel::Face1: return "Face1";
    case ChartLabel::Face2: return "Face2";
    case ChartLabel::Sphere: return "Sphere";
    case ChartLabel::Flat: return "Flat";
    case ChartLabel::Radial: return "Radial";
  }
  return "?";
}

double BoundaryChart::jacobian(const Vec3& s) const {
  const Mat43 T = geometry(s).tangents;
  return std::sqrt(std::max(0.0, (T.transpose() * T).determinant()));
}

BoundarySample sample_chart(const BoundaryChart& chart, const Vec3& s) {
  ChartGeometry g = chart.geometry(s);
  BoundarySample out;
  out.s = s;
  out.point = g.point;
  out.tangents = g.tangents;
  out.normal = g.normal;
  out.jacobian = std::sqrt(std::max(0.0, (g.tangents.transpose() * g.tangents).determinant()));
  Mat4 D;
  D.col(0) = g.normal;
  D.rightCols<3>() = g.tangents;
  out.orientation = D.determinant() >= 0.0 ? 1.0 : -1.0;
  out.weight = chart.weight ? chart.weight(g.point) : 1.0;
  return out;
}

double disc_reach(Complex c, double theta) {
  const double b = (std::conj(c) * std::polar(1.0, theta)).real();
  return -b + std::sqrt(b * b + 1.0 - std::norm(c));
}

BoundaryChart bidisc_face(ChartLabel face, Complex center) {
  BoundaryChart c;
  c.label = face;
  c.axes = {periodic_axis(), ChartAxis{0.0, 1.0, false, {}}, periodic_axis()};
  const bool first = face == ChartLabel::Face1;
  c.geometry = [center, first](const Vec3& s) {
    const Complex ef = std::polar(1.0, s[0]);
    const Complex e = std::polar(1.0, s[2]);
    const double b = (std::conj(center) * e).real();
    const double db = -(std::conj(center) * e).imag();
    const double root = std::sqrt(b * b + 1.0 - std::norm(center));
    const double A = -b + root;
    const double dA = -db + b * db / root;
    const Complex w = center + s[1] * A * e;
    const Complex dw_ds = A * e;
    const Complex dw_dt = s[1] * Complex(dA, A) * e;
    const Complex dface = Complex(0, 1) * ef;
    ChartGeometry g;
    if (first) {
      g.point = CPoint2(ef, w);
      g.tangents.col(0) = complex_pair(dface, 0.0);
      g.tangents.col(1) = complex_pair(0.0, dw_ds);
      g.tangents.col(2) = complex_pair(0.0, dw_dt);
      g.normal = complex_pair(ef, 0.0);
    } else {
      g.point = CPoint2(w, ef);
      g.tangents.col(0) = complex_pair(0.0, dface);
      g.tangents.col(1) = complex_pair(dw_ds, 0.0);
      g.tangents.col(2) = complex_pair(dw_dt, 0.0);
      g.normal = complex_pair(0.0, ef);
    }
    return g;
  };
  return c;
}

Mat4 frame_toward(const Vec4& target) {
  const Vec4 u = hopf_direction(kPi / 4, 0.0, 0.0);
  const Vec4 v = u - target.normalized();
  if (v.norm() < 1e-12) return Mat4::Identity();
  return Mat4::Identity() - 2.0 * v * v.transpose() / v.squaredNorm();
}

BoundaryChart sphere_chart(const CPoint2& center, double radius, const Mat4& frame) {
  BoundaryChart c;
  c.label = ChartLabel::Sphere;
  c.axes = hopf_axes();
  c.geometry = [center, radius, frame](const Vec3& s) {
    Vec4 h;
    Mat43 dh;
    hopf_frame(s, h, dh);
    ChartGeometry g;
    g.normal = frame * h;
    g.point = center + radius * g.normal;
    g.tangents = radius * frame * dh;
    return g;
  };
  return c;
}

std::vector<BoundaryChart> boundary_charts(const DomainSpec& spec, const std::optional<CPoint2>& focus) {
  auto frame_for = [&](const CPoint2& center) -> Mat4 {
    if (!focus) return Mat4::Identity();
    const Vec4 d = *focus - center;
    return d.norm() > 1e-12 ? frame_toward(d) : Mat4::Identity();
  };
  switch (spec.kind()) {
    case DomainKind::Bidisc: return {bidisc_face(ChartLabel::Face1, 0.0), bidisc_face(ChartLabel::Face2, 0.0)};
    case DomainKind::Ball: return {sphere_chart(CPoint2(), spec.params().radius, frame_for(CPoint2()))};
    case DomainKind::Omega1:
    case DomainKind::Omega2: return omega_charts(spec, frame_for(spec.interior_center()));
    case DomainKind::Example1: return example1_charts(spec);
    case DomainKind::Example2: return {radial_chart(spec, frame_for(spec.interior_center()), {})};
  }
  return {};
}

NearestParam nearest_parameter(const BoundaryChart& chart, const CPoint2& z) {
  auto wrap = [&](Vec3 s) {
    for (int k = 0; k < 3; ++k) {
      const ChartAxis& ax = chart.axes[k];
      const double len = ax.hi - ax.lo;
      if (ax.periodic)
        s[k] = ax.lo + std::fmod(std::fmod(s[k] - ax.lo, len) + len, len);
      else
        s[k] = std::clamp(s[k], ax.lo, ax.hi);
    }
    return s;
  };
  auto admissible = [&](const ChartGeometry& g) { return !chart.weight || chart.weight(g.point) > 0.0; };

  const int n = 14;
  Vec3 best(0, 0, 0);
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec3 s;
        const int idx[3] = {i, j, k};
        for (int a = 0; a < 3; ++a) {
          const ChartAxis& ax = chart.axes[a];
          s[a] = ax.periodic ? ax.lo + (ax.hi - ax.lo) * idx[a] / n : ax.lo + (ax.hi - ax.lo) * (idx[a] + 0.5) / n;
        }
        const ChartGeometry g = chart.geometry(s);
        if (!admissible(g)) continue;
        const double d = (g.point - z).norm();
        if (d < best_d) {
          best_d = d;
          best = s;
        }
      }
  if (!std::isfinite(best_d)) return {best, best_d};

  double mu = 1e-3;
  for (int it = 0; it < 100; ++it) {
    const ChartGeometry g = chart.geometry(best);
    const Vec4 r = g.point - z;
    const Mat3 JtJ = g.tangents.transpose() * g.tangents;
    const Vec3 grad = g.tangents.transpose() * r;
    bool accepted = false;
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      const Mat3 A = JtJ + mu * (Mat3::Identity() * (1.0 + JtJ.trace()));
      const Vec3 trial = wrap(best - A.ldlt().solve(grad));
      const ChartGeometry gt = chart.geometry(trial);
      const double d = (gt.point - z).norm();
      if (admissible(gt) && d < best_d) {
        const double gain = best_d - d;
        best = trial;
        best_d = d;
        mu = std::max(mu * 0.3, 1e-12);
        accepted = true;
        if (gain <= 1e-15 * std::max(1.0, d)) return {best, best_d};
      } else {
        mu *= 10.0;
      }
    }
    if (!accepted) break;
  }
  return {best, best_d};
}

}  // namespace dbar
