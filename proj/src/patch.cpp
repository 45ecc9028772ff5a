#include "dbar/patch.hpp"

#include <cmath>
#include <random>

#include "dbar/domain.hpp"
#include "dbar/profiles.hpp"

namespace dbar {

Mat4 psi_hessian(const CPoint2& z, double eps) {
  const Vec4& x = z.real();
  const Jet3 j = psi_jet(x.squaredNorm(), eps);
  return 2.0 * j.d1 * Mat4::Identity() + 4.0 * j.d2 * x * x.transpose();
}

Mat4 fd_hessian(const std::function<double(const CPoint2&)>& f, const CPoint2& z, double h) {
  Mat4 H;
  const double f0 = f(z);
  for (int i = 0; i < 4; ++i) {
    Vec4 ei = Vec4::Zero();
    ei[i] = h;
    H(i, i) = (f(z + ei) - 2.0 * f0 + f(z - ei)) / (h * h);
    for (int j = 0; j < i; ++j) {
      Vec4 ej = Vec4::Zero();
      ej[j] = h;
      H(i, j) = H(j, i) = (f(z + ei + ej) - f(z + ei - ej) - f(z - ei + ej) + f(z - ei - ej)) / (4.0 * h * h);
    }
  }
  return H;
}

PatchConstant choose_patch_constant(const std::function<double(const CPoint2&)>& local_rho, double eps,
                                    const PatchAuditOptions& options) {
  const double h = 1e-4;
  Vec4 g0;
  for (int i = 0; i < 4; ++i) {
    Vec4 e = Vec4::Zero();
    e[i] = h;
    g0[i] = (local_rho(CPoint2(e)) - local_rho(CPoint2(Vec4(-e)))) / (2.0 * h);
  }
  if (!(g0.norm() > 0.0)) throw Error(ErrorKind::AuditFailure, "local defining function has zero gradient at 0");
  const Vec4 inward = -g0.normalized();

  // Sample directions once so every candidate M is audited on the same rays.
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  std::vector<Vec4> dirs(options.samples);
  for (auto& d : dirs) {
    d = Vec4(normal(rng), normal(rng), normal(rng), normal(rng));
    d.normalize();
  }

  PatchConstant out;
  for (double M = 1.0; M <= options.max_M; M *= 2.0, ++out.doublings) {
    auto f = [&](const CPoint2& w) { return local_rho(w) + M * psi_bump(w.squared_norm(), eps); };
    auto dd = [&](const CPoint2& w, const Vec4& d) {
      Vec4 g;
      for (int i = 0; i < 4; ++i) {
        Vec4 e = Vec4::Zero();
        e[i] = 1e-7;
        g[i] = (local_rho(w + e) - local_rho(w - e)) / 2e-7;
      }
      return g.dot(d) + M * 2.0 * psi_jet(w.squared_norm(), eps).d1 * w.real().dot(d);
    };
    // Interior center: halfway to where the inward normal ray leaves the domain.
    const double depth = ray_exit_generic(f, dd, CPoint2(), inward, 1.0);
    const CPoint2 c(Vec4(0.5 * depth * inward));
    double worst = std::numeric_limits<double>::infinity();
    int audited = 0;
    for (const Vec4& d : dirs) {
      const CPoint2 q = c + ray_exit_generic(f, dd, c, d, 1.0) * d;
      if (q.norm() < 2.0 * eps) continue;
      const Mat4 H = fd_hessian(local_rho, q, h) + M * psi_hessian(q, eps);
      Eigen::SelfAdjointEigenSolver<Mat4> es(H, Eigen::EigenvaluesOnly);
      worst = std::min(worst, es.eigenvalues()[0]);
      ++audited;
    }
    if (worst >= options.min_eigenvalue) {
      out.M = M;
      out.min_eigenvalue = worst;
      out.audited_points = audited;
      return out;
    }
  }
  throw Error(ErrorKind::AuditFailure, "no M up to the configured maximum makes the patched domain strongly convex");
}

}  // namespace dbar
