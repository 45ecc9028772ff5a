#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dbar/domain.hpp"
#include "dbar/forms.hpp"
#include "dbar/quadrature.hpp"

namespace dbar {

/// Everything one CLI run needs. Field names match the flat config keys documented in the README.
struct RunConfig {
  std::string subcommand;
  DomainParams domain;
  std::string form = "zbar-pair";
  std::string f1, f2;  // polynomial coefficients when form = custom
  QuadConfig quad;

  std::string points = "grid25";
  double min_distance = 0.3;
  bool residual = true;
  double fd_step = 1e-3;

  std::string mode = "l1";
  std::vector<double> alphas;
  std::vector<double> distances;

  int samples = 10000;
  std::vector<double> lemma_alphas = {0.25, 0.5, 0.75};
  bool alpha_negated = false;

  std::string out_dir = "dbar-out";
};

/// "0.25,0.5, 0.75" -> {0.25, 0.5, 0.75}. Throws ConfigError on anything that is not a number.
std::vector<double> parse_double_list(const std::string& text);

ZeroOneForm resolve_form(const RunConfig& cfg);

/// Evaluation points for solve runs:
///   grid25          5 x 5 grid with |z_j| <= 0.5, scaled to the domain
///   center          the domain's interior center
///   interiorN       N quasi-random points at distance >= min_distance from the boundary
///   x1,x2,x3,x4;... explicit real coordinates
std::vector<CPoint2> resolve_points(const DomainSpec& spec, const std::string& text, double min_distance);

}  // namespace dbar
