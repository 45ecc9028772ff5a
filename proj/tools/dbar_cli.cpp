// Command-line driver: solve, sweep and lemma-check.
#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "dbar/config.hpp"
#include "dbar/lemmas.hpp"
#include "dbar/report.hpp"
#include "dbar/solver.hpp"

using namespace dbar;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kFailed = 2;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Creates the output directory and proves it is writable before any expensive work starts.
void prepare_output(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::ConfigError, "cannot create output directory " + dir + ": " + ec.message());
  write_text_file(dir + "/.probe", "");
  std::filesystem::remove(dir + "/.probe", ec);
}

void emit(const std::string& dir, const std::string& stem, const json& j, const std::string& csv) {
  write_text_file(dir + "/" + stem + ".json", j.dump(2) + "\n");
  write_text_file(dir + "/" + stem + ".csv", csv);
  std::cerr << "wrote " << dir << "/" << stem << ".{json,csv}\n";
}

int cmd_solve(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const DomainSpec spec = DomainSpec::from_params(cfg.domain);
  const ZeroOneForm f = resolve_form(cfg);
  const auto points = resolve_points(spec, cfg.points, cfg.min_distance);

  SolveReport rep;
  rep.config = config_snapshot(cfg);
  rep.domain_label = spec.label();
  rep.form_label = f.label();
  const bool bidisc = spec.kind() == DomainKind::Bidisc;
  if (bidisc) {
    const BidiscCoefficients c = bidisc_coefficients();
    rep.normalization = {{"interior", c.interior},
                         {"face2", c.face2},
                         {"face1", c.face1},
                         {"slice", {c.slice.real(), c.slice.imag()}}};
  } else {
    const Normalization n = henkin_normalization();
    rep.normalization = {{"boundary", n.boundary}, {"interior", n.interior}};
  }
  auto solve = [&](const CPoint2& z, const QuadConfig& q) {
    return bidisc ? solve_bidisc(f, z, q) : solve_henkin(spec, f, z, q, henkin_normalization(), z);
  };
  // Stencil solves only need the value; their error budget is already covered by the center solve.
  QuadConfig stencil = cfg.quad;
  stencil.refinement_rounds = 0;

  for (std::size_t i = 0; i < points.size(); ++i) {
    PointRecord rec;
    rec.z = points[i];
    rec.solution = solve(rec.z, cfg.quad);
    if (cfg.residual)
      rec.residual = dbar_residual([&](const CPoint2& w) { return solve(w, stencil).u; }, f, rec.z, cfg.fd_step,
                                   bidisc ? nullptr : &spec);
    std::fprintf(stderr, "[%zu/%zu] u = %.10g%+.10gi", i + 1, points.size(), rec.solution.u.real(),
                 rec.solution.u.imag());
    if (rec.residual) std::fprintf(stderr, "  residual %.3g", rec.residual->value);
    std::fprintf(stderr, "\n");
    rep.points.push_back(std::move(rec));
  }
  rep.seconds = seconds_since(t0);
  emit(cfg.out_dir, "solve", report_json(rep), solve_csv(rep));
  if (rep.points.size() > 0 && cfg.residual) std::printf("max_residual %.6g\n", rep.max_residual());
  return rep.all_converged() ? kOk : kFailed;
}

int cmd_sweep(const RunConfig& cfg) {
  std::vector<double> alphas = cfg.alphas.empty() ? std::vector<double>{cfg.domain.alpha} : cfg.alphas;
  std::vector<double> distances = cfg.distances;
  if (distances.empty())
    distances = cfg.domain.kind == DomainKind::Ball ? std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4}
                                                    : std::vector<double>{1e-1, 1e-2, 1e-3};
  auto family = [&](double alpha) {
    DomainParams p = cfg.domain;
    p.alpha = alpha;
    return DomainSpec::from_params(p);
  };

  SweepReport rep;
  if (cfg.mode == "l1") {
    if (cfg.domain.kind == DomainKind::Bidisc)
      throw Error(ErrorKind::ConfigError, "the L1 probe needs a smooth defining function");
    // Alpha does not enter the ball, so a single row is enough there.
    if (cfg.domain.kind == DomainKind::Ball) alphas = {cfg.domain.alpha};
    rep.mode = "l1";
    rep.alphas = alphas;
    rep.distances = distances;
    for (double alpha : alphas) {
      const SweepReport row = kernel_l1_probe(family(alpha), distances, cfg.quad);
      rep.domain_label = to_string(cfg.domain.kind);
      rep.values.push_back(row.values[0]);
      rep.rel_errors.push_back(row.rel_errors[0]);
      std::fprintf(stderr, "alpha %g: growth %.4g\n", alpha, row.growth[0]);
    }
    finalize_sweep(rep);
  } else if (cfg.mode == "supnorm") {
    rep = supnorm_sweep(family, resolve_form(cfg), alphas, distances, cfg.quad);
  } else {
    throw Error(ErrorKind::ConfigError, "mode must be l1 or supnorm");
  }
  emit(cfg.out_dir, "sweep-" + rep.mode, report_json(rep, config_snapshot(cfg)), sweep_csv(rep));
  for (std::size_t i = 0; i < rep.alphas.size(); ++i)
    std::printf("alpha %g growth %.6g trend %s\n", rep.alphas[i], rep.growth[i], rep.trend[i].c_str());
  for (const auto& row : rep.values)
    for (double v : row)
      if (!std::isfinite(v)) return kFailed;
  return kOk;
}

int cmd_lemma_check(const RunConfig& cfg, bool alpha_given) {
  const std::uint64_t seed = cfg.quad.seed;
  const int n = cfg.samples;
  std::vector<PredicateSummary> rows;
  auto add = [&](const PredicateSummary& s) {
    std::fprintf(stderr, "%-34s %s  samples %ld  violations %ld  worst slack %.3g  %s\n", s.name.c_str(),
                 s.passed() ? "pass" : "FAIL", s.samples, s.violations, s.worst_slack, s.note.c_str());
    rows.push_back(s);
  };

  add(lemma2_convexity_check(n, seed));
  const std::vector<double> alphas = alpha_given ? std::vector<double>{cfg.domain.alpha} : cfg.lemma_alphas;
  for (double alpha : alphas) {
    for (const auto& s : lemma3_check(alpha, n, seed + 1, cfg.alpha_negated)) add(s);
    add(phi2_lower_bound_check(alpha, n, seed + 2));
  }

  const DomainSpec ball = DomainSpec::ball(cfg.domain.radius);
  add(strongly_convex_check(ball, n, seed + 3));
  const double alpha = cfg.domain.alpha;
  const DomainSpec o1 = DomainSpec::omega1(alpha, cfg.domain.eps_patch);
  const DomainSpec o2 = DomainSpec::omega2(alpha, cfg.domain.eps_patch);
  DomainParams e1p = cfg.domain;
  e1p.kind = DomainKind::Example1;
  const DomainSpec e1 = DomainSpec::from_params(e1p);
  add(flat_point_check(ReFCase::Omega1Abs, o1, n, seed + 4, {0.2}));
  add(flat_point_check(ReFCase::Omega2Re, o2, n, seed + 5, {0.2}));
  add(flat_point_check(ReFCase::Example1Torus, e1, n, seed + 6, {0.3}));
  for (const DomainSpec* s : {&ball, &o1, &e1}) add(support_plane_check(*s, n, seed + 7));

  json j = {{"schema", kReportSchema}, {"kind", "lemma-check"}, {"config", config_snapshot(cfg)}};
  j["predicates"] = json::array();
  bool ok = true;
  for (const auto& s : rows) {
    j["predicates"].push_back(report_json(s));
    ok = ok && s.passed();
  }
  j["passed"] = ok;
  emit(cfg.out_dir, "lemma-check", j, predicate_csv(rows));
  std::printf("%s\n", ok ? "all predicates hold" : "predicate failure");
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Henkin-type solution operators for the dbar equation on convex domains in C^2"};
  app.set_config("--config", "", "flat key = value file; command-line flags win");
  app.require_subcommand(1, 1);
  auto* solve = app.add_subcommand("solve", "evaluate u = T f at points, with dbar residuals");
  auto* sweep = app.add_subcommand("sweep", "kernel L1 probe or sup-norm ratios along an approach ladder");
  auto* lemma = app.add_subcommand("lemma-check", "sampled convexity and Re F inequalities");
  for (auto* s : {solve, sweep, lemma}) s->fallthrough();

  RunConfig cfg;
  std::string kind = "ball", eps_text;
  std::string scheme = "star";
  int samples = 100000;
  app.add_option("--kind,--domain", kind, "bidisc | ball | omega1 | omega2 | example1 | example2");
  auto* alpha_opt = app.add_option("--alpha", cfg.domain.alpha, "flatness exponent");
  app.add_option("--a", cfg.domain.a, "Example 1/2 width");
  app.add_option("--eps", eps_text, "Example 1 exp-branch length (default: largest admissible)");
  app.add_option("--eta", cfg.domain.eta, "Example 1 offset");
  app.add_option("--M", cfg.domain.M, "Omega patch constant (default: audited)");
  app.add_option("--radius", cfg.domain.radius, "ball radius");
  app.add_option("--eps-patch", cfg.domain.eps_patch, "Omega patch radius");
  app.add_option("--form", cfg.form, "zero | zbar-pair | zbar1-only | zbar2-only | custom");
  app.add_option("--f1", cfg.f1, "custom coefficient, e.g. \"(1,0)*zb2\"");
  app.add_option("--f2", cfg.f2, "custom coefficient");
  app.add_option("--base-resolution", cfg.quad.base_resolution);
  app.add_option("--gauss-order", cfg.quad.gauss_order);
  app.add_option("--grading-exponent", cfg.quad.grading_exponent);
  app.add_option("--exclusion-radius", cfg.quad.exclusion_radius);
  app.add_option("--refinement-rounds", cfg.quad.refinement_rounds);
  app.add_option("--target-rel-error", cfg.quad.target_rel_error);
  app.add_option("--mc-samples", cfg.quad.mc_samples);
  app.add_option("--seed", cfg.quad.seed);
  app.add_option("--grade-below", cfg.quad.grade_below);
  app.add_option("--radial-order", cfg.quad.radial_order);
  app.add_option("--interior-scheme", scheme, "star | ball-qmc");
  app.add_option("--points", cfg.points, "grid25 | center | interiorN | x1,x2,x3,x4;...");
  app.add_option("--min-distance", cfg.min_distance, "boundary distance for interiorN points");
  app.add_option("--residual", cfg.residual, "compute dbar residuals (true/false)");
  app.add_option("--fd-step", cfg.fd_step);
  app.add_option("--mode", cfg.mode, "l1 | supnorm");
  app.add_option("--alphas", cfg.alphas, "comma-separated alpha list")->delimiter(',');
  app.add_option("--distances", cfg.distances, "comma-separated distance ladder")->delimiter(',');
  app.add_option("--samples", samples, "samples per predicate family");
  app.add_option("--lemma-alphas", cfg.lemma_alphas, "alphas for the phi three-point checks")->delimiter(',');
  app.add_flag("--alpha-negated", cfg.alpha_negated, "replace phi by a concave probe (must fail)");
  app.add_option("--out", cfg.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    cfg.domain.kind = parse_domain_kind(kind);
    if (!eps_text.empty()) cfg.domain.eps = std::stod(eps_text);
    cfg.samples = samples;
    if (scheme == "star")
      cfg.quad.interior_scheme = InteriorScheme::StarShaped;
    else if (scheme == "ball-qmc")
      cfg.quad.interior_scheme = InteriorScheme::BallPlusQmc;
    else
      throw Error(ErrorKind::ConfigError, "interior-scheme must be star or ball-qmc");
    cfg.quad.validate();
    if (samples < 1) throw Error(ErrorKind::ConfigError, "samples must be positive");

    if (sweep->parsed() && app.count("--kind") == 0 && cfg.mode == "supnorm") cfg.domain.kind = DomainKind::Example1;
    cfg.subcommand = solve->parsed() ? "solve" : sweep->parsed() ? "sweep" : "lemma-check";
    prepare_output(cfg.out_dir);

    if (solve->parsed()) return cmd_solve(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
    return cmd_lemma_check(cfg, alpha_opt->count() > 0);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    // Bad input is a configuration problem; anything the numerics raise counts as a failed run.
    switch (e.kind()) {
      case ErrorKind::ConfigError:
      case ErrorKind::InvalidDomain:
      case ErrorKind::NotClosed:
      case ErrorKind::StencilOutsideDomain: return kConfigError;
      default: return kFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}
