#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "dbar/config.hpp"
#include "dbar/lemmas.hpp"
#include "dbar/solver.hpp"

namespace dbar {

inline constexpr const char* kReportSchema = "dbar-report/1";

struct PointRecord {
  CPoint2 z;
  Solution solution;
  std::optional<Residual> residual;
};

struct SolveReport {
  nlohmann::json config;
  std::string domain_label;
  std::string form_label;
  nlohmann::json normalization;
  std::vector<PointRecord> points;
  double seconds = 0.0;

  double max_residual() const;
  bool all_converged() const;
};

nlohmann::json config_snapshot(const RunConfig& cfg);

nlohmann::json report_json(const SolveReport& r);
nlohmann::json report_json(const SweepReport& r, const nlohmann::json& config);
nlohmann::json report_json(const PredicateSummary& s);

/// Matrix views. Numbers are printed with %.17g and nothing time-dependent is included,
/// so identical inputs give byte-identical files.
std::string solve_csv(const SolveReport& r);
std::string sweep_csv(const SweepReport& r);
std::string predicate_csv(const std::vector<PredicateSummary>& rows);

/// Throws ConfigError when the file cannot be written.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace dbar
