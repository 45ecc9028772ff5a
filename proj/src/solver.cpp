#include "dbar/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace dbar {

namespace {
constexpr double kPi = 3.14159265358979323846;

Solution assemble(std::vector<NamedTerm> terms) {
  Solution s;
  std::vector<Complex> values;
  double abs_err = 0.0;
  for (const auto& t : terms) {
    values.push_back(t.value());
    const double e = std::isnan(t.raw.est_rel_error) ? 0.0 : t.raw.est_rel_error;
    abs_err += std::abs(t.value()) * e;
    s.converged = s.converged && t.raw.converged;
  }
  s.u = canonical_sum(values);
  s.est_rel_error = abs_err / std::max(std::abs(s.u), 1e-300);
  s.terms = std::move(terms);
  return s;
}

}  // namespace

Solution solve_henkin(const DomainSpec& spec, const ZeroOneForm& f, const CPoint2& z, const QuadConfig& cfg,
                      const Normalization& norm, const std::optional<CPoint2>& chart_focus) {
  if (spec.kind() == DomainKind::Bidisc)
    throw Error(ErrorKind::UnsupportedSmoothOperation, "use solve_bidisc for the bidisc");
  if (!contains(spec, z)) throw Error(ErrorKind::InvalidDomain, "z must lie inside the domain");
  std::vector<NamedTerm> terms;
  for (const auto& chart : boundary_charts(spec, chart_focus)) {
    auto density = [&](const BoundarySample& s) { return henkin_boundary_density(spec, z, f, s); };
    terms.push_back({"boundary:" + to_string(chart.label), norm.boundary, integrate_chart(density, chart, z, cfg)});
  }
  auto interior = [&](const CPoint2& w) { return bm_interior_density(z, w, f); };
  terms.push_back({"interior", norm.interior, integrate_interior(interior, spec, z, cfg, f.degree())});
  return assemble(std::move(terms));
}

BidiscCoefficients bidisc_coefficients() {
  const double c = 1.0 / (4.0 * kPi * kPi);
  return {c, c, -c, Complex(0.0, 1.0 / (2.0 * kPi))};
}

Solution solve_bidisc(const ZeroOneForm& f, const CPoint2& z, const QuadConfig& cfg, const BidiscCoefficients& c) {
  const DomainSpec spec = DomainSpec::bidisc();
  if (!contains(spec, z)) throw Error(ErrorKind::InvalidDomain, "z must lie inside the bidisc");
  const Complex z1 = z.z1(), z2 = z.z2();
  std::vector<NamedTerm> terms;

  auto interior = [&](const CPoint2& w) { return bm_interior_density(z, w, f); };
  terms.push_back({"interior", c.interior, integrate_interior(interior, spec, z, cfg, f.degree())});

  // |zeta2| = 1 face, polar about z1 in the first factor so 1/(zeta1 - z1) is integrable.
  auto face2 = [&](const BoundarySample& s) {
    const Complex w1 = s.point.z1() - z1, w2 = s.point.z2() - z2;
    const WedgePullback pb = wedge_pullback(s.tangents);
    return s.orientation * f.f1(s.point) / w1 * std::conj(w2) / (s.point - z).squaredNorm() * pb.zb1;
  };
  terms.push_back({"face2", c.face2, integrate_chart(face2, bidisc_face(ChartLabel::Face2, z1), z, cfg)});

  auto face1 = [&](const BoundarySample& s) {
    const Complex w1 = s.point.z1() - z1, w2 = s.point.z2() - z2;
    const WedgePullback pb = wedge_pullback(s.tangents);
    return s.orientation * f.f2(s.point) / w2 * std::conj(w1) / (s.point - z).squaredNorm() * pb.zb2;
  };
  terms.push_back({"face1", c.face1, integrate_chart(face1, bidisc_face(ChartLabel::Face1, z2), z, cfg)});

  // dzbar ^ dz = 2i dA on each slice.
  const Complex two_i(0.0, 2.0);
  IntegralResult s2 = integrate_disc([&](Complex w) { return f.f2(CPoint2(z1, w)) / (w - z2); }, z2, cfg);
  s2.value *= two_i;
  for (auto& h : s2.history) h *= two_i;
  terms.push_back({"slice2", c.slice, s2});
  IntegralResult s1 = integrate_disc([&](Complex w) { return f.f1(CPoint2(w, z2)) / (w - z1); }, z1, cfg);
  s1.value *= two_i;
  for (auto& h : s1.history) h *= two_i;
  terms.push_back({"slice1", c.slice, s1});
  return assemble(std::move(terms));
}

Residual dbar_residual(const Evaluator& u, const ZeroOneForm& f, const CPoint2& z, double h,
                       const DomainSpec* domain) {
  Residual r;
  std::array<Complex, 4> d;
  for (int k = 0; k < 4; ++k) {
    Vec4 e = Vec4::Zero();
    e[k] = h;
    const CPoint2 zp = z + e, zm = z - e;
    if (domain && (!contains(*domain, zp) || !contains(*domain, zm)))
      throw Error(ErrorKind::StencilOutsideDomain, "finite-difference stencil leaves the domain");
    d[k] = (u(zp) - u(zm)) / (2.0 * h);
    r.evaluations += 2;
  }
  const Complex i(0.0, 1.0);
  r.dbar_u[0] = 0.5 * (d[0] + i * d[1]);
  r.dbar_u[1] = 0.5 * (d[2] + i * d[3]);
  const Complex f1 = f.f1(z), f2 = f.f2(z);
  const double scale = std::max(1.0, std::sqrt(std::norm(f1) + std::norm(f2)));
  r.value = std::max(std::abs(r.dbar_u[0] - f1), std::abs(r.dbar_u[1] - f2)) / scale;
  return r;
}

StokesCheck stokes_identity_check(const ZeroOneForm& f, const CPoint2& z, const QuadConfig& cfg, double eps) {
  const DomainSpec spec = DomainSpec::bidisc();
  if (!contains(spec, z)) throw Error(ErrorKind::InvalidDomain, "z must lie inside the bidisc");
  if (!(eps > 0.0) || eps >= 1.0 - std::abs(z.z1()))
    throw Error(ErrorKind::ConfigError, "eps must be positive and keep B(z1, eps) inside the disc");
  const Complex z1 = z.z1(), z2 = z.z2();
  StokesCheck out;
  out.eps = eps;

  // Face |zeta1| = 1 with the local defining function |zeta1|^2.
  auto a2 = [&](const BoundarySample& s) {
    return henkin_boundary_density(WirtingerGradient{std::conj(s.point.z1()), 0.0}, z, f, s);
  };
  out.A2 = integrate_chart(a2, bidisc_face(ChartLabel::Face1, 0.0), z, cfg).value;

  // Limit of the small-circle term: 2 pi i times the slice integral against dzbar2 ^ dz2 = 2i dA.
  const Complex slice = integrate_disc([&](Complex w) { return f.f2(CPoint2(z1, w)) / (w - z2); }, z2, cfg).value;
  out.B1 = Complex(0.0, 2.0 * kPi) * Complex(0.0, 2.0) * slice;

  auto b2 = [&](const CPoint2& w) {
    const double r2 = (w - z).squaredNorm();
    return kVolumeForm * std::conj(w.z2() - z2) * f.f2(w) / (r2 * r2);
  };
  out.B2 = integrate_excised_bidisc(b2, z, eps, cfg).value;

  auto b3 = [&](const CPoint2& w) {
    const double r2 = (w - z).squaredNorm();
    return kVolumeForm * std::conj(w.z2() - z2) / ((z1 - w.z1()) * r2) * f.dbar_component(1, 0, w);
  };
  out.B3 = integrate_excised_bidisc(b3, z, eps, cfg).value;
  out.discrepancy = std::abs(out.A2 - (out.B1 + out.B2 + out.B3)) / (std::abs(out.A2) + 1.0);
  return out;
}

std::vector<CPoint2> approach_ladder(const DomainSpec& spec, const std::vector<double>& distances) {
  std::vector<CPoint2> out;
  const DomainParams& p = spec.params();
  for (double d : distances) {
    switch (spec.kind()) {
      case DomainKind::Ball: out.emplace_back(Complex(p.radius - d, 0.0), Complex(0.0)); break;
      case DomainKind::Bidisc: out.emplace_back(Complex(1.0 - d, 0.0), Complex(0.0)); break;
      case DomainKind::Omega1:
      case DomainKind::Omega2: out.emplace_back(Complex(0.0), Complex(-d, 0.0)); break;
      case DomainKind::Example1: out.emplace_back(Complex(1.0, 0.0), Complex(std::sqrt(3.0) - d, 0.0)); break;
      case DomainKind::Example2: out.emplace_back(Complex(1.0 - p.a, 0.0), Complex(1.0 - d, 0.0)); break;
    }
  }
  return out;
}

void finalize_sweep(SweepReport& r) {
  r.growth.clear();
  r.trend.clear();
  for (const auto& row : r.values) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    bool inc = true, dec = true;
    for (std::size_t i = 0; i < row.size(); ++i) {
      lo = std::min(lo, row[i]);
      hi = std::max(hi, row[i]);
      if (i > 0) {
        inc = inc && row[i] >= row[i - 1];
        dec = dec && row[i] <= row[i - 1];
      }
    }
    r.growth.push_back(lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity());
    r.trend.push_back(inc ? "increasing" : dec ? "decreasing" : "mixed");
  }
}

SweepReport kernel_l1_probe(const DomainSpec& spec, const std::vector<double>& distances, const QuadConfig& cfg) {
  SweepReport r;
  r.mode = "l1";
  r.domain_label = spec.label();
  r.alphas = {spec.params().alpha};
  r.distances = distances;
  r.values.emplace_back();
  r.rel_errors.emplace_back();
  for (const CPoint2& z : approach_ladder(spec, distances)) {
    const auto charts = boundary_charts(spec, z);
    const L1Result l1 = l1_norm_boundary(
        [&](const BoundarySample& s) { return henkin_abs_density(spec, z, s); }, charts, z, cfg);
    r.values.back().push_back(l1.value);
    r.rel_errors.back().push_back(l1.est_rel_error);
  }
  finalize_sweep(r);
  return r;
}

double sup_norm(const DomainSpec& spec, const ZeroOneForm& f, int samples) {
  double best = 0.0;
  auto take = [&](const CPoint2& w) { best = std::max(best, std::sqrt(std::norm(f.f1(w)) + std::norm(f.f2(w)))); };
  const int n = 12;
  for (const auto& chart : boundary_charts(spec))
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Vec3 s;
          const int idx[3] = {i, j, k};
          for (int a = 0; a < 3; ++a)
            s[a] = chart.axes[a].lo + (chart.axes[a].hi - chart.axes[a].lo) * (idx[a] + 0.5) / n;
          const BoundarySample smp = sample_chart(chart, s);
          if (smp.weight > 0.0) take(smp.point);
        }
  const Box box = bounding_box(spec);
  for (int i = 1; i <= samples; ++i) {
    Vec4 x;
    const int bases[4] = {2, 3, 5, 7};
    for (int d = 0; d < 4; ++d) x[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * radical_inverse(i, bases[d]);
    const CPoint2 w(x);
    if (contains(spec, w)) take(w);
  }
  return best;
}

SweepReport supnorm_sweep(const std::function<DomainSpec(double)>& family, const ZeroOneForm& f,
                          const std::vector<double>& alphas, const std::vector<double>& distances,
                          const QuadConfig& cfg) {
  SweepReport r;
  r.mode = "supnorm";
  r.alphas = alphas;
  r.distances = distances;
  for (double alpha : alphas) {
    const DomainSpec spec = family(alpha);
    if (r.domain_label.empty()) r.domain_label = to_string(spec.kind());
    const double sup = sup_norm(spec, f);
    r.values.emplace_back();
    r.rel_errors.emplace_back();
    for (const CPoint2& z : approach_ladder(spec, distances)) {
      // f = 0 forces u = 0, and the ratio is taken to be 0 as well.
      if (!(sup > 0.0)) {
        r.values.back().push_back(0.0);
        r.rel_errors.back().push_back(0.0);
        continue;
      }
      const Solution s = solve_henkin(spec, f, z, cfg, henkin_normalization(), z);
      r.values.back().push_back(std::abs(s.u) / sup);
      r.rel_errors.back().push_back(s.est_rel_error);
    }
  }
  finalize_sweep(r);
  return r;
}

}  // namespace dbar
