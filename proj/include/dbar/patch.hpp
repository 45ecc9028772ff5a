#pragma once

#include <cstdint>
#include <functional>

#include "dbar/types.hpp"

namespace dbar {

struct PatchAuditOptions {
  double min_eigenvalue = 1e-6;
  double max_M = 1073741824.0;  // 2^30
  int samples = 10000;
  std::uint64_t seed = 1;
};

struct PatchConstant {
  double M = 1.0;
  double min_eigenvalue = 0.0;
  int doublings = 0;
  int audited_points = 0;
};

/// Smallest power of two M such that rho = local_rho + M psi(|z|^2) has real Hessian with
/// smallest eigenvalue >= options.min_eigenvalue at sampled boundary points outside B(0, 2 eps).
/// local_rho must be convex near 0 with 0 on its zero set. Throws AuditFailure past max_M.
PatchConstant choose_patch_constant(const std::function<double(const CPoint2&)>& local_rho, double eps,
                                    const PatchAuditOptions& options = {});

/// Real Hessian of x -> psi(|x|^2) in closed form: 2 psi' I + 4 psi'' x x^T.
Mat4 psi_hessian(const CPoint2& z, double eps);

/// Central finite-difference real Hessian.
Mat4 fd_hessian(const std::function<double(const CPoint2&)>& f, const CPoint2& z, double h);

}  // namespace dbar
