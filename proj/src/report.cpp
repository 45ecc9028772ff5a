#include "dbar/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace dbar {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

// JSON has no NaN; missing error estimates are written as null.
json maybe(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json point_json(const CPoint2& z) {
  const Vec4& x = z.real();
  return json::array({x[0], x[1], x[2], x[3]});
}

}  // namespace

double SolveReport::max_residual() const {
  double m = 0.0;
  for (const auto& p : points)
    if (p.residual) m = std::max(m, p.residual->value);
  return m;
}

bool SolveReport::all_converged() const {
  return std::all_of(points.begin(), points.end(), [](const PointRecord& p) { return p.solution.converged; });
}

json config_snapshot(const RunConfig& c) {
  const DomainParams& d = c.domain;
  const QuadConfig& q = c.quad;
  return {
      {"subcommand", c.subcommand},
      {"kind", to_string(d.kind)},
      {"alpha", d.alpha},
      {"a", d.a},
      {"eps", maybe(d.eps)},
      {"eta", d.eta},
      {"M", d.M},
      {"radius", d.radius},
      {"eps-patch", d.eps_patch},
      {"form", c.form},
      {"f1", c.f1},
      {"f2", c.f2},
      {"base-resolution", q.base_resolution},
      {"gauss-order", q.gauss_order},
      {"grading-exponent", q.grading_exponent},
      {"exclusion-radius", q.exclusion_radius},
      {"refinement-rounds", q.refinement_rounds},
      {"target-rel-error", q.target_rel_error},
      {"mc-samples", q.mc_samples},
      {"seed", q.seed},
      {"grade-below", q.grade_below},
      {"radial-order", q.radial_order},
      {"interior-scheme", q.interior_scheme == InteriorScheme::StarShaped ? "star" : "ball-qmc"},
      {"points", c.points},
      {"min-distance", c.min_distance},
      {"residual", c.residual},
      {"fd-step", c.fd_step},
      {"mode", c.mode},
      {"alphas", c.alphas},
      {"distances", c.distances},
      {"samples", c.samples},
      {"lemma-alphas", c.lemma_alphas},
      {"alpha-negated", c.alpha_negated},
      {"out", c.out_dir},
  };
}

json report_json(const SolveReport& r) {
  json pts = json::array();
  for (const auto& p : r.points) {
    json terms = json::array();
    for (const auto& t : p.solution.terms)
      terms.push_back({{"name", t.name},
                       {"coefficient", complex_json(t.coefficient)},
                       {"raw", complex_json(t.raw.value)},
                       {"value", complex_json(t.value())},
                       {"est_rel_error", maybe(t.raw.est_rel_error)},
                       {"excluded_mass_bound", t.raw.excluded_mass_bound},
                       {"nodes", t.raw.nodes},
                       {"converged", t.raw.converged}});
    json rec = {{"z", point_json(p.z)},
                {"u", complex_json(p.solution.u)},
                {"est_rel_error", maybe(p.solution.est_rel_error)},
                {"converged", p.solution.converged},
                {"terms", terms}};
    if (p.residual)
      rec["residual"] = {{"value", p.residual->value},
                         {"dbar_u1", complex_json(p.residual->dbar_u[0])},
                         {"dbar_u2", complex_json(p.residual->dbar_u[1])}};
    pts.push_back(rec);
  }
  json out = {{"schema", kReportSchema},
              {"kind", "solve"},
              {"config", r.config},
              {"domain", r.domain_label},
              {"form", r.form_label},
              {"normalization", r.normalization},
              {"points", pts},
              {"all_converged", r.all_converged()},
              {"seconds", r.seconds}};
  if (std::any_of(r.points.begin(), r.points.end(), [](const PointRecord& p) { return p.residual.has_value(); }))
    out["max_residual"] = r.max_residual();
  return out;
}

json report_json(const SweepReport& r, const json& config) {
  json values = json::array(), errors = json::array();
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    json row = json::array(), erow = json::array();
    for (std::size_t j = 0; j < r.values[i].size(); ++j) {
      row.push_back(maybe(r.values[i][j]));
      erow.push_back(maybe(r.rel_errors[i][j]));
    }
    values.push_back(row);
    errors.push_back(erow);
  }
  json growth = json::array();
  for (double g : r.growth) growth.push_back(maybe(g));
  return {{"schema", kReportSchema},
          {"kind", "sweep"},
          {"mode", r.mode},
          {"config", config},
          {"domain", r.domain_label},
          {"alphas", r.alphas},
          {"distances", r.distances},
          {"values", values},
          {"rel_errors", errors},
          {"growth", growth},
          {"trend", r.trend}};
}

json report_json(const PredicateSummary& s) {
  return {{"name", s.name},
          {"samples", s.samples},
          {"violations", s.violations},
          {"worst_slack", maybe(s.worst_slack)},
          {"tolerance", s.tolerance},
          {"passed", s.passed()},
          {"note", s.note}};
}

std::string solve_csv(const SolveReport& r) {
  std::string out = "x1,x2,x3,x4,u_re,u_im,est_rel_error,converged,residual\n";
  for (const auto& p : r.points) {
    const Vec4& x = p.z.real();
    out += num(x[0]) + "," + num(x[1]) + "," + num(x[2]) + "," + num(x[3]) + "," + num(p.solution.u.real()) + "," +
           num(p.solution.u.imag()) + "," + num(p.solution.est_rel_error) + "," +
           (p.solution.converged ? "1" : "0") + "," + (p.residual ? num(p.residual->value) : "") + "\n";
  }
  return out;
}

std::string sweep_csv(const SweepReport& r) {
  std::string out = "alpha";
  for (double d : r.distances) out += ",d=" + num(d);
  out += ",growth,trend\n";
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    out += num(r.alphas[i]);
    for (double v : r.values[i]) out += "," + num(v);
    out += "," + num(r.growth[i]) + "," + r.trend[i] + "\n";
  }
  return out;
}

std::string predicate_csv(const std::vector<PredicateSummary>& rows) {
  std::string out = "name,samples,violations,worst_slack,tolerance,passed\n";
  for (const auto& s : rows)
    out += s.name + "," + std::to_string(s.samples) + "," + std::to_string(s.violations) + "," + num(s.worst_slack) +
           "," + num(s.tolerance) + "," + (s.passed() ? "1" : "0") + "\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::ConfigError, "cannot write " + path);
  f << content;
  if (!f.flush()) throw Error(ErrorKind::ConfigError, "cannot write " + path);
}

}  // namespace dbar
