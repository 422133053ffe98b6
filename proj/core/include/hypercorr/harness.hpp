#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hypercorr/models.hpp"
#include "hypercorr/statistics.hpp"

namespace hypercorr {

enum class ThresholdKind { kAsymptotic, kCalibrated };

std::string to_string(ThresholdKind k);

struct ThresholdSpec {
  ThresholdKind kind = ThresholdKind::kCalibrated;
  double level = 0.05;    // calibrated: target false-rejection rate, in (0,1)
  int null_trials = 400;  // calibrated: fresh h0 draws for the quantile
};

// One Monte Carlo experiment: a model, a statistic, a threshold rule, and
// optionally a grid of sweep multiples. When `sweep` is set, each multiple c
// rescales the model's squared correlation (gaussian) or squared subsampling
// rate (er) to c times the feasibility-curve value for (n, m[, p]); points
// whose rescaled parameter is out of range are recorded as skipped. Without
// `sweep` the model's own parameter is the single grid point.
struct ExperimentConfig {
  ModelSpec model;
  int trials = 1;
  StatisticSpec statistic;
  ThresholdSpec threshold;
  std::optional<std::vector<double>> sweep;
  std::uint64_t master_seed = 0;
  int workers = 0;  // 0 = one per hardware thread; HYPERCORR_WORKERS overrides

  void validate() const;
};

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

// Wilson score interval at 95% coverage; always contains successes/trials.
WilsonInterval wilson_95(int successes, int trials);

struct GridPointReport {
  double c = 1.0;         // multiple of the feasibility-curve value
  double rho_or_s = 0.0;  // parameter in effect at this point
  bool skipped = false;   // multiple pushed the squared parameter out of range
  double threshold_value = 0.0;       // threshold the decisions used
  double asymptotic_threshold = 0.0;  // closed-form threshold, reported alongside
  bool asymptotic_degenerate = false;
  double reject_rate_h0 = 0.0;
  double reject_rate_h1 = 0.0;
  WilsonInterval wilson_h0, wilson_h1;
  double mean_stat_h0 = 0.0, sd_stat_h0 = 0.0;
  double mean_stat_h1 = 0.0, sd_stat_h1 = 0.0;
  double tv_lower_bound = 0.0;  // |reject_rate_h1 - reject_rate_h0|
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<GridPointReport> points;
  double runtime_seconds = 0.0;  // wall clock; the only non-reproducible field

  bool all_skipped() const;
};

// Runs `trials` h1 and `trials` h0 draws per grid point (plus the calibration
// draws when the threshold is calibrated) and aggregates rejection rates.
// Every random draw is derived from master_seed by per-trial stream paths
// (grid index, purpose, trial index), and results land in preassigned slots
// reduced in fixed order, so the report is identical for any worker count.
ExperimentReport run_experiment(const ExperimentConfig& config);

// Effective worker count: HYPERCORR_WORKERS env var if set, else `configured`
// if positive, else the hardware thread count.
int resolve_worker_count(int configured);

// --- serialization ---------------------------------------------------------

// Typed row of the sweep CSV. Optional fields are empty for skipped points;
// `degenerate` is "true", "false", or "skipped".
struct SweepCsvRow {
  std::string model;
  int n = 0;
  int m = 0;
  double c = 0.0;
  std::optional<double> rho_or_s;
  std::string threshold_kind;
  std::optional<double> reject_rate_h0;
  std::optional<double> reject_rate_h1;
  std::optional<double> ci_lo_h1;
  std::optional<double> ci_hi_h1;
  std::string degenerate;

  bool operator==(const SweepCsvRow&) const = default;
};

inline constexpr const char* kSweepCsvHeader =
    "model,n,m,c,rho_or_s,threshold_kind,reject_rate_h0,reject_rate_h1,ci_lo_h1,ci_hi_h1,"
    "degenerate";

std::vector<SweepCsvRow> report_to_csv_rows(const ExperimentReport& report);
std::string serialize_sweep_csv(const std::vector<SweepCsvRow>& rows);
std::vector<SweepCsvRow> parse_sweep_csv(const std::string& text);

// Header + one row per grid point, stable column order, round-trip floats.
void sweep_to_csv(const ExperimentReport& report, const std::filesystem::path& path);
std::string sweep_csv_string(const ExperimentReport& report);

// JSON forms. Configs mirror the struct field-for-field and round-trip
// exactly; reports embed the config echo and per-point aggregates.
ExperimentConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ExperimentConfig& config);
std::string report_to_json_text(const ExperimentReport& report, bool include_runtime = true);

}  // namespace hypercorr
