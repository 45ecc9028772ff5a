#include "dbar/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <random>

namespace dbar {

namespace {
constexpr double kPi = 3.14159265358979323846;

Rule1D compute_gauss_legendre(int n) {
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

// Neumaier-compensated running sum.
struct Accumulator {
  Complex sum = 0.0, comp = 0.0;
  void add(Complex v) {
    auto step = [](double& s, double& c, double x) {
      const double t = s + x;
      c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
      s = t;
    };
    double sr = sum.real(), si = sum.imag(), cr = comp.real(), ci = comp.imag();
    step(sr, cr, v.real());
    step(si, ci, v.imag());
    sum = {sr, si};
    comp = {cr, ci};
  }
  Complex value() const { return sum + comp; }
};

double rel_change(Complex fine, Complex coarse) {
  const double scale = std::max(std::abs(fine), 1e-300);
  return std::abs(fine - coarse) / scale;
}

}  // namespace

const Rule1D& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Rule1D>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Rule1D>(compute_gauss_legendre(n));
  return *slot;
}

Rule1D composite_gauss(const std::vector<double>& mesh, int order) {
  const Rule1D& g = gauss_legendre(order);
  Rule1D r;
  for (std::size_t c = 0; c + 1 < mesh.size(); ++c) {
    const double a = mesh[c], b = mesh[c + 1];
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    if (!(h > 0.0)) continue;
    for (int i = 0; i < order; ++i) {
      r.nodes.push_back(m + h * g.nodes[i]);
      r.weights.push_back(h * g.weights[i]);
    }
  }
  return r;
}

std::vector<double> graded_mesh(double lo, double hi, const std::vector<double>& breaks,
                                std::optional<double> center, int n, double exponent) {
  const double tol = 1e-13 * std::max(1.0, hi - lo);
  std::vector<double> pts{lo, hi};
  for (double b : breaks)
    if (b > lo + tol && b < hi - tol) pts.push_back(b);
  if (center && *center > lo + tol && *center < hi - tol) pts.push_back(*center);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(), [&](double a, double b) { return std::abs(a - b) <= tol; }),
            pts.end());

  std::vector<double> mesh{pts.front()};
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const double a = pts[s], b = pts[s + 1], L = b - a;
    int toward = 0;  // -1 left end, +1 right end
    if (center) {
      const double c = *center;
      if (std::abs(c - a) <= tol || (c < a && a - c < L)) toward = -1;
      else if (std::abs(c - b) <= tol || (c > b && c - b < L)) toward = 1;
    }
    for (int k = 1; k <= n; ++k) {
      const double u = double(k) / n;
      double x;
      if (toward == -1)
        x = a + L * std::pow(u, exponent);
      else if (toward == 1)
        x = b - L * std::pow(1.0 - u, exponent);
      else
        x = a + L * u;
      mesh.push_back(k == n ? b : x);
    }
  }
  return mesh;
}

Rule1D axis_rule(const ChartAxis& axis, std::optional<double> center, int n, int order, double exponent) {
  if (axis.periodic) {
    const double P = axis.hi - axis.lo;
    if (!center) {
      const int N = n * order;
      Rule1D r;
      for (int k = 0; k < N; ++k) {
        r.nodes.push_back(axis.lo + P * k / N);
        r.weights.push_back(P / N);
      }
      return r;
    }
    return composite_gauss(graded_mesh(*center - 0.5 * P, *center + 0.5 * P, {}, center, n, exponent), order);
  }
  return composite_gauss(graded_mesh(axis.lo, axis.hi, axis.breaks, center, n, exponent), order);
}

void QuadConfig::validate() const {
  if (base_resolution < 4) throw Error(ErrorKind::ConfigError, "base_resolution must be >= 4");
  if (gauss_order < 1) throw Error(ErrorKind::ConfigError, "gauss_order must be >= 1");
  if (!(grading_exponent >= 1.0)) throw Error(ErrorKind::ConfigError, "grading_exponent must be >= 1");
  if (!(exclusion_radius >= 0.0)) throw Error(ErrorKind::ConfigError, "exclusion_radius must be >= 0");
  if (refinement_rounds < 0) throw Error(ErrorKind::ConfigError, "refinement_rounds must be >= 0");
  if (!(target_rel_error > 0.0 && target_rel_error < 1.0))
    throw Error(ErrorKind::ConfigError, "target_rel_error must lie in (0, 1)");
  if (mc_samples < 1) throw Error(ErrorKind::ConfigError, "mc_samples must be >= 1");
  if (radial_order < 1) throw Error(ErrorKind::ConfigError, "radial_order must be >= 1");
}

Complex pairwise_sum(const std::vector<Complex>& terms) {
  if (terms.empty()) return 0.0;
  std::vector<Complex> level = terms;
  while (level.size() > 1) {
    std::vector<Complex> next((level.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = 2 * i + 1 < level.size() ? level[2 * i] + level[2 * i + 1] : level[2 * i];
    level.swap(next);
  }
  return level[0];
}

Complex canonical_sum(std::vector<Complex> terms) {
  std::sort(terms.begin(), terms.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return pairwise_sum(terms);
}

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * double(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

namespace {

// Shared refinement driver: level(k) returns the integral at level k.
template <typename Level>
IntegralResult refine(const QuadConfig& cfg, Level level) {
  IntegralResult out;
  out.est_rel_error = std::numeric_limits<double>::quiet_NaN();
  for (int k = 0; k <= cfg.refinement_rounds; ++k) {
    const Complex v = level(k, out);
    out.history.push_back(v);
    out.value = v;
    out.rounds = k;
    if (k > 0) {
      out.est_rel_error = rel_change(v, out.history[k - 1]);
      if (out.est_rel_error <= cfg.target_rel_error) break;
    }
  }
  out.converged = cfg.refinement_rounds == 0 || out.est_rel_error <= cfg.target_rel_error;
  return out;
}

}  // namespace

IntegralResult integrate_chart(const BoundaryDensity& density, const BoundaryChart& chart, const CPoint2& z,
                               const QuadConfig& cfg, double local_exponent) {
  cfg.validate();
  std::optional<Vec3> s0;
  const NearestParam np = nearest_parameter(chart, z);
  if (np.distance < cfg.grade_below) s0 = np.s;

  double c_max = 0.0;
  bool excluded_any = false;
  IntegralResult res = refine(cfg, [&](int k, IntegralResult& out) {
    const int n = cfg.base_resolution << k;
    std::array<Rule1D, 3> rules;
    for (int a = 0; a < 3; ++a)
      rules[a] = axis_rule(chart.axes[a], s0 ? std::optional<double>((*s0)[a]) : std::nullopt, n, cfg.gauss_order,
                           cfg.grading_exponent);
    std::vector<Complex> lines;
    lines.reserve(rules[0].nodes.size() * rules[1].nodes.size());
    for (std::size_t i = 0; i < rules[0].nodes.size(); ++i)
      for (std::size_t j = 0; j < rules[1].nodes.size(); ++j) {
        Accumulator acc;
        for (std::size_t l = 0; l < rules[2].nodes.size(); ++l) {
          const Vec3 s(rules[0].nodes[i], rules[1].nodes[j], rules[2].nodes[l]);
          const BoundarySample smp = sample_chart(chart, s);
          ++out.nodes;
          const double r = (smp.point - z).norm();
          if (r < cfg.exclusion_radius) {
            excluded_any = true;
            continue;
          }
          Complex v;
          try {
            v = density(smp);
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::SingularityHit) throw;
            excluded_any = true;
            continue;
          }
          if (smp.jacobian > 0.0) c_max = std::max(c_max, std::abs(v) / smp.jacobian * std::pow(r, -local_exponent));
          acc.add(rules[0].weights[i] * rules[1].weights[j] * rules[2].weights[l] * v);
        }
        lines.push_back(acc.value());
      }
    return pairwise_sum(lines);
  });
  const double dim = 3.0;
  if (dim + local_exponent <= 0.0)
    res.excluded_mass_bound = excluded_any ? std::numeric_limits<double>::infinity() : 0.0;
  else
    res.excluded_mass_bound =
        c_max * 4.0 * kPi * std::pow(cfg.exclusion_radius, dim + local_exponent) / (dim + local_exponent);
  return res;
}

namespace {

// Integral over directions of the radial integral from r_in to the exit distance.
Complex star_shaped_level(const InteriorDensity& density, const DomainSpec& spec, const CPoint2& z, int n,
                          int order, int radial, double r_cap, long& nodes) {
  const int N = n * order;
  const double dt = 2.0 * kPi / N;
  const Rule1D& rg = gauss_legendre(radial);
  std::vector<Complex> lines;
  lines.reserve(std::size_t(N) * N);
  for (int j = 0; j < N; ++j)
    for (int l = 0; l < N; ++l) {
      const double t1 = j * dt, t2 = l * dt;
      const Rule1D pr = composite_gauss(graded_mesh(0.0, kPi / 2, ray_kinks(spec, z, t1, t2), std::nullopt, n, 1.0),
                                        order);
      Accumulator acc;
      for (std::size_t i = 0; i < pr.nodes.size(); ++i) {
        const double p = pr.nodes[i];
        const Vec4 w = hopf_direction(p, t1, t2);
        const double R = std::min(ray_exit(spec, z, w), r_cap);
        Complex radial_sum = 0.0;
        for (int q = 0; q < radial; ++q) {
          const double r = 0.5 * R * (rg.nodes[q] + 1.0);
          radial_sum += rg.weights[q] * density(z + r * w) * (r * r * r);
          ++nodes;
        }
        acc.add(pr.weights[i] * std::cos(p) * std::sin(p) * 0.5 * R * radial_sum);
      }
      lines.push_back(acc.value() * dt * dt);
    }
  return pairwise_sum(lines);
}

}  // namespace

IntegralResult integrate_interior(const InteriorDensity& density, const DomainSpec& spec, const CPoint2& z,
                                  const QuadConfig& cfg, int degree) {
  cfg.validate();
  if (!contains(spec, z)) throw Error(ErrorKind::InvalidDomain, "interior integral needs z inside the domain");
  const int radial = std::max(cfg.radial_order, degree / 2 + 1);
  const double inf = std::numeric_limits<double>::infinity();
  if (cfg.interior_scheme == InteriorScheme::StarShaped) {
    return refine(cfg, [&](int k, IntegralResult& out) {
      return star_shaped_level(density, spec, z, cfg.base_resolution << k, cfg.gauss_order, radial, inf, out.nodes);
    });
  }

  // Ball around z in polar coordinates plus randomized quasi-Monte Carlo on the rest.
  const double r0 = std::min(0.1, 0.5 * distance_to_boundary(spec, z));
  IntegralResult out;
  const Complex near = star_shaped_level(density, spec, z, cfg.base_resolution, cfg.gauss_order, radial, r0, out.nodes);
  const Box box = bounding_box(spec);
  const Vec4 ext = box.hi - box.lo;
  Complex est[2];
  for (int shift = 0; shift < 2; ++shift) {
    std::mt19937_64 rng(cfg.seed + shift);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double sh[4] = {u01(rng), u01(rng), u01(rng), u01(rng)};
    const int bases[4] = {2, 3, 5, 7};
    std::vector<Complex> chunk;
    Accumulator acc;
    for (long i = 1; i <= cfg.mc_samples; ++i) {
      Vec4 x;
      for (int d = 0; d < 4; ++d) {
        const double u = radical_inverse(std::uint64_t(i), bases[d]) + sh[d];
        x[d] = box.lo[d] + ext[d] * (u - std::floor(u));
      }
      const CPoint2 w(x);
      ++out.nodes;
      if ((w - z).norm() < r0 || !contains(spec, w)) continue;
      acc.add(density(w));
      if (i % 4096 == 0) {
        chunk.push_back(acc.value());
        acc = Accumulator();
      }
    }
    chunk.push_back(acc.value());
    est[shift] = pairwise_sum(chunk) * (box.volume() / double(cfg.mc_samples));
  }
  out.value = near + 0.5 * (est[0] + est[1]);
  out.history = {near + est[0], out.value};
  out.est_rel_error = rel_change(out.value, near + est[0]);
  out.converged = out.est_rel_error <= cfg.target_rel_error;
  return out;
}

IntegralResult integrate_disc(const std::function<Complex(Complex)>& g, Complex center, const QuadConfig& cfg) {
  cfg.validate();
  return refine(cfg, [&](int k, IntegralResult& out) {
    const int n = cfg.base_resolution << k;
    const int N = 2 * n * cfg.gauss_order;
    const double dt = 2.0 * kPi / N;
    const Rule1D& gl = gauss_legendre(cfg.gauss_order);
    std::vector<Complex> lines;
    for (int j = 0; j < N; ++j) {
      const double t = j * dt;
      const Complex e = std::polar(1.0, t);
      const double A = disc_reach(center, t);
      Accumulator acc;
      for (int c = 0; c < n; ++c) {
        const double a = A * c / n, h = 0.5 * A / n;
        for (int q = 0; q < cfg.gauss_order; ++q) {
          const double r = a + h * (gl.nodes[q] + 1.0);
          acc.add(h * gl.weights[q] * r * g(center + r * e));
          ++out.nodes;
        }
      }
      lines.push_back(acc.value() * dt);
    }
    return pairwise_sum(lines);
  });
}

namespace {

// Cells between geometric breakpoints start * 2^k inside (lo, hi), each split into `split` parts.
std::vector<double> geometric_mesh(double lo, double hi, double start, int split) {
  std::vector<double> pts{lo};
  for (double b = start; b < hi; b *= 2.0)
    if (b > lo * (1.0 + 1e-12)) pts.push_back(b);
  pts.push_back(hi);
  std::vector<double> mesh{lo};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    for (int k = 1; k <= split; ++k) mesh.push_back(pts[i] + (pts[i + 1] - pts[i]) * k / split);
  return mesh;
}

}  // namespace

IntegralResult integrate_excised_bidisc(const std::function<Complex(const CPoint2&)>& g, const CPoint2& c,
                                        double r1_min, const QuadConfig& cfg) {
  cfg.validate();
  return refine(cfg, [&](int k, IntegralResult& out) {
    const int split = 1 << k;
    const int N = std::max(8, (cfg.base_resolution * cfg.gauss_order / 2) << k);
    const double dt = 2.0 * kPi / N;
    std::vector<Complex> lines;
    for (int j = 0; j < N; ++j) {
      const double t1 = j * dt;
      const Complex e1 = std::polar(1.0, t1);
      const double A = disc_reach(c.z1(), t1);
      if (A <= r1_min) continue;
      const Rule1D r1 = composite_gauss(geometric_mesh(r1_min, A, 2.0 * r1_min, split), cfg.gauss_order);
      for (int l = 0; l < N; ++l) {
        const double t2 = l * dt;
        const Complex e2 = std::polar(1.0, t2);
        const double B = disc_reach(c.z2(), t2);
        const Rule1D r2 = composite_gauss(geometric_mesh(0.0, B, r1_min / 16.0, split), cfg.gauss_order);
        Accumulator acc;
        for (std::size_t a = 0; a < r1.nodes.size(); ++a)
          for (std::size_t b = 0; b < r2.nodes.size(); ++b) {
            const double s1 = r1.nodes[a], s2 = r2.nodes[b];
            acc.add(r1.weights[a] * r2.weights[b] * s1 * s2 * g(CPoint2(c.z1() + s1 * e1, c.z2() + s2 * e2)));
            ++out.nodes;
          }
        lines.push_back(acc.value() * dt * dt);
      }
    }
    return pairwise_sum(lines);
  });
}

L1Result l1_norm_boundary(const std::function<double(const BoundarySample&)>& abs_density,
                          const std::vector<BoundaryChart>& charts, const CPoint2& z, const QuadConfig& cfg) {
  L1Result out;
  std::vector<IntegralResult> parts;
  std::size_t levels = 0;
  for (const auto& chart : charts) {
    parts.push_back(integrate_chart([&](const BoundarySample& s) { return Complex(abs_density(s), 0.0); }, chart, z,
                                    cfg, -1.0));
    levels = std::max(levels, parts.back().history.size());
    out.converged = out.converged && parts.back().converged;
  }
  for (std::size_t k = 0; k < levels; ++k) {
    double total = 0.0;
    for (const auto& p : parts) total += p.history[std::min(k, p.history.size() - 1)].real();
    out.history.push_back(total);
  }
  out.value = out.history.back();
  out.est_rel_error = out.history.size() > 1
                          ? std::abs(out.history.back() - out.history[out.history.size() - 2]) / out.value
                          : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace dbar
