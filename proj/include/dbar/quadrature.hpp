#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dbar/charts.hpp"
#include "dbar/domain.hpp"

namespace dbar {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], cached per n.
const Rule1D& gauss_legendre(int n);

/// Gauss rule of the given order on every cell of a mesh.
Rule1D composite_gauss(const std::vector<double>& mesh, int order);

/// Mesh on [lo, hi] through all breaks, n cells per segment. Segments ending at, or lying within one
/// segment length of, `center` are graded toward it with cell ends at distance L (k/n)^exponent.
std::vector<double> graded_mesh(double lo, double hi, const std::vector<double>& breaks,
                                std::optional<double> center, int n, double exponent);

/// Rule for one chart axis. Periodic axes use the trapezoid rule unless graded.
Rule1D axis_rule(const ChartAxis& axis, std::optional<double> center, int n, int order, double exponent);

enum class InteriorScheme {
  StarShaped,   // polar about z all the way to the boundary; deterministic and smooth in z
  BallPlusQmc,  // polar on B(z, r0), randomized Halton on the rest
};

struct QuadConfig {
  int base_resolution = 8;  // cells per segment and axis at the coarsest level
  int gauss_order = 6;
  double grading_exponent = 3.0;
  double exclusion_radius = 1e-6;
  int refinement_rounds = 1;
  double target_rel_error = 1e-4;
  long mc_samples = 200000;
  std::uint64_t seed = 1;
  double grade_below = 0.15;  // grade toward the nearest boundary point only when z is closer than this
  int radial_order = 4;
  InteriorScheme interior_scheme = InteriorScheme::StarShaped;

  /// Throws ConfigError on values that cannot give a meaningful rule.
  void validate() const;
};

struct IntegralResult {
  Complex value = 0.0;
  double est_rel_error = 0.0;
  double excluded_mass_bound = 0.0;
  long nodes = 0;
  int rounds = 0;
  bool converged = true;
  std::vector<Complex> history;  // value after each level
};

using BoundaryDensity = std::function<Complex(const BoundarySample&)>;
using InteriorDensity = std::function<Complex(const CPoint2&)>;

/// Integral of a density given per unit parameter volume over one chart. Nodes closer to z than
/// the exclusion radius are dropped; the bound on their mass uses |density| <= C |zeta - z|^exponent.
IntegralResult integrate_chart(const BoundaryDensity& density, const BoundaryChart& chart, const CPoint2& z,
                               const QuadConfig& cfg, double local_exponent = -1.0);

/// Integral of a density over the domain with respect to Lebesgue measure on R^4. The density may
/// blow up like |zeta - z|^{-3}. `degree` is the polynomial degree of the density times |zeta - z|^3
/// along rays, used to choose the radial Gauss order.
IntegralResult integrate_interior(const InteriorDensity& density, const DomainSpec& spec, const CPoint2& z,
                                  const QuadConfig& cfg, int degree = 2);

/// Integral over the unit disc of g dA in polar coordinates about `center`. g may blow up like
/// 1/|w - center|.
IntegralResult integrate_disc(const std::function<Complex(Complex)>& g, Complex center, const QuadConfig& cfg);

/// Integral of g dV over (D \ B(c1, r1_min)) x D, both factors in polar coordinates about c1, c2,
/// with radial meshes refined geometrically toward r = r1_min and r = 0.
IntegralResult integrate_excised_bidisc(const std::function<Complex(const CPoint2&)>& g, const CPoint2& c,
                                        double r1_min, const QuadConfig& cfg);

struct L1Result {
  double value = 0.0;
  double est_rel_error = 0.0;
  bool converged = true;
  std::vector<double> history;
};

L1Result l1_norm_boundary(const std::function<double(const BoundarySample&)>& abs_density,
                          const std::vector<BoundaryChart>& charts, const CPoint2& z, const QuadConfig& cfg);

/// Sum that does not depend on the order of the inputs (sorted, then pairwise).
Complex canonical_sum(std::vector<Complex> terms);
/// Pairwise sum in the given order.
Complex pairwise_sum(const std::vector<Complex>& terms);

/// Van der Corput radical inverse of i in the given base.
double radical_inverse(std::uint64_t i, int base);

}  // namespace dbar
