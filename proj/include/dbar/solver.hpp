#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dbar/forms.hpp"
#include "dbar/kernel.hpp"
#include "dbar/quadrature.hpp"

namespace dbar {

struct NamedTerm {
  std::string name;
  Complex coefficient = 1.0;
  IntegralResult raw;  // the integral before the coefficient
  Complex value() const { return coefficient * raw.value; }
};

struct Solution {
  Complex u = 0.0;
  double est_rel_error = 0.0;
  bool converged = true;
  std::vector<NamedTerm> terms;
};

/// u(z) from the Henkin formula: one boundary term per chart plus the interior term.
Solution solve_henkin(const DomainSpec& spec, const ZeroOneForm& f, const CPoint2& z, const QuadConfig& cfg,
                      const Normalization& norm = henkin_normalization(),
                      const std::optional<CPoint2>& chart_focus = {});

/// The five-term bidisc formula: interior, two faces, two slices.
struct BidiscCoefficients {
  double interior;
  double face2;   // the |zeta2| = 1 face term
  double face1;   // the |zeta1| = 1 face term
  Complex slice;  // both slice terms
};
BidiscCoefficients bidisc_coefficients();
Solution solve_bidisc(const ZeroOneForm& f, const CPoint2& z, const QuadConfig& cfg,
                      const BidiscCoefficients& coeffs = bidisc_coefficients());

using Evaluator = std::function<Complex(const CPoint2&)>;

struct Residual {
  double value = 0.0;       // max_j |du/dzbar_j - f_j| / max(1, |f(z)|)
  Complex dbar_u[2];
  int evaluations = 0;
};

/// Central-difference Wirtinger residual with step h. When `domain` is given every stencil point
/// must lie inside it, otherwise StencilOutsideDomain is thrown.
Residual dbar_residual(const Evaluator& u, const ZeroOneForm& f, const CPoint2& z, double h = 1e-3,
                       const DomainSpec* domain = nullptr);

/// Terms of the Stokes identity on the bidisc with the ball B(z1, eps) x D removed.
struct StokesCheck {
  double eps = 0.0;
  Complex A2, B1, B2, B3;
  double discrepancy = 0.0;  // |A2 - (B1 + B2 + B3)| / (|A2| + 1)
};
StokesCheck stokes_identity_check(const ZeroOneForm& f, const CPoint2& z, const QuadConfig& cfg, double eps);

struct SweepReport {
  std::string mode;
  std::string domain_label;
  std::vector<double> alphas;
  std::vector<double> distances;
  std::vector<std::vector<double>> values;  // [alpha][distance]
  std::vector<std::vector<double>> rel_errors;
  std::vector<double> growth;               // max / min across the distance ladder, per alpha
  std::vector<std::string> trend;           // "increasing", "decreasing" or "mixed", per alpha
};

/// Ladder of interior points approaching the distinguished boundary point of the domain.
std::vector<CPoint2> approach_ladder(const DomainSpec& spec, const std::vector<double>& distances);

/// L1 norm of |K_H(z, .)| over the boundary along the ladder.
SweepReport kernel_l1_probe(const DomainSpec& spec, const std::vector<double>& distances, const QuadConfig& cfg);

/// |u(z)| / sup |f| along the ladder for each alpha of a domain family.
SweepReport supnorm_sweep(const std::function<DomainSpec(double)>& family, const ZeroOneForm& f,
                          const std::vector<double>& alphas, const std::vector<double>& distances,
                          const QuadConfig& cfg);

/// Sampled sup over the closed domain of (|f1|^2 + |f2|^2)^{1/2}.
double sup_norm(const DomainSpec& spec, const ZeroOneForm& f, int samples = 4096);

void finalize_sweep(SweepReport& report);

}  // namespace dbar
