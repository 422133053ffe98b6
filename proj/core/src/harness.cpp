#include "hypercorr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hypercorr/bounds.hpp"
#include "hypercorr/errors.hpp"
#include "hypercorr/format.hpp"

namespace hypercorr {

namespace {

// Stream-path purpose ids (second component after the grid index).
constexpr std::uint64_t kPurposeH0 = 0;
constexpr std::uint64_t kPurposeH1 = 1;
constexpr std::uint64_t kPurposeCalibration = 2;

constexpr int kDefaultExactLimit = 9;

struct GridPlanPoint {
  double c = 1.0;
  double rho_or_s = 0.0;
  bool skipped = false;
  std::optional<ModelSpec> model;  // model with the point's parameter applied
  ThresholdValue asymptotic;
};

std::vector<GridPlanPoint> plan_grid(const ExperimentConfig& config) {
  const int n = model_n(config.model);
  const int m = model_m(config.model);
  std::vector<GridPlanPoint> plan;

  if (const auto* g = std::get_if<GaussianModelSpec>(&config.model)) {
    const double curve = gaussian_rho2_threshold(n, m).value;
    std::vector<double> multiples =
        config.sweep ? *config.sweep : std::vector<double>{g->rho * g->rho / curve};
    const bool swept = config.sweep.has_value();
    for (double c : multiples) {
      GridPlanPoint point;
      point.c = c;
      const double rho2 = swept ? c * curve : g->rho * g->rho;
      if (rho2 >= 1.0) {
        point.skipped = true;
        plan.push_back(point);
        continue;
      }
      const double rho = std::sqrt(rho2);
      point.rho_or_s = rho;
      point.model = GaussianModelSpec(n, m, rho);
      point.asymptotic = gaussian_threshold(n, m, rho);
      plan.push_back(point);
    }
    return plan;
  }

  const auto& er = std::get<ERModelSpec>(config.model);
  const double curve = er_s2_threshold(n, m, er.p).value;
  std::vector<double> multiples =
      config.sweep ? *config.sweep : std::vector<double>{er.s * er.s / curve};
  const bool swept = config.sweep.has_value();
  for (double c : multiples) {
    GridPlanPoint point;
    point.c = c;
    const double s2 = swept ? c * curve : er.s * er.s;
    // s = 1 is a legal coupling, so only s^2 beyond 1 is out of range.
    if (s2 > 1.0) {
      point.skipped = true;
      plan.push_back(point);
      continue;
    }
    const double s = std::min(1.0, std::sqrt(s2));
    point.rho_or_s = s;
    point.model = ERModelSpec(n, m, er.p, s);
    point.asymptotic = er_threshold(n, m, er.p, s);
    plan.push_back(point);
  }
  return plan;
}

// Runs fn(0..count-1) on up to `workers` threads. Task index is the only
// shared state; results must go into preassigned slots. The first exception
// wins and is rethrown after all threads join.
void run_tasks(int workers, std::size_t count, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const int threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, workers)), count);
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd mean_sd(const std::vector<double>& values) {
  if (values.empty()) return {};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

}  // namespace

std::string to_string(ThresholdKind k) {
  return k == ThresholdKind::kAsymptotic ? "asymptotic" : "calibrated";
}

void ExperimentConfig::validate() const {
  const int n = model_n(model);
  const int m = model_m(model);
  if (m < 2 || m >= n) {
    throw ParameterError("experiments require n > m >= 2 (feasibility curves undefined otherwise)");
  }
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (statistic.method == StatisticMethod::kCalibrated) {
    throw ParameterError("statistic method must be exact or heuristic");
  }
  if (statistic.method == StatisticMethod::kExact && n > kDefaultExactLimit) {
    throw ParameterError("exact statistic is capped at n <= " +
                         std::to_string(kDefaultExactLimit) + "; use the heuristic");
  }
  if (statistic.restarts < 0) throw ParameterError("restarts must be >= 0");
  if (threshold.kind == ThresholdKind::kCalibrated) {
    if (!(threshold.level > 0.0 && threshold.level < 1.0)) {
      throw ParameterError("calibration level must lie in (0,1)");
    }
    if (threshold.null_trials < 20) throw ParameterError("calibration needs at least 20 trials");
  }
  if (sweep) {
    for (double c : *sweep) {
      if (!(c > 0.0)) throw ParameterError("sweep multiples must be > 0");
    }
  }
  if (workers < 0) throw ParameterError("workers must be >= 0");
}

WilsonInterval wilson_95(int successes, int trials) {
  if (trials <= 0 || successes < 0 || successes > trials) {
    throw ParameterError("wilson_95 requires 0 <= successes <= trials, trials >= 1");
  }
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  const double nd = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nd;
  const double z2n = z * z / nd;
  const double center = (phat + z2n / 2.0) / (1.0 + z2n);
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / nd + z2n / (4.0 * nd)) / (1.0 + z2n);
  WilsonInterval w{std::max(0.0, center - half), std::min(1.0, center + half)};
  // At the boundary the endpoint equals phat in exact arithmetic; snap it so
  // the interval always contains successes/trials despite rounding.
  if (successes == 0) w.lo = 0.0;
  if (successes == trials) w.hi = 1.0;
  return w;
}

int resolve_worker_count(int configured) {
  if (const char* env = std::getenv("HYPERCORR_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  if (configured > 0) return configured;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

bool ExperimentReport::all_skipped() const {
  if (points.empty()) return false;
  return std::all_of(points.begin(), points.end(),
                     [](const GridPointReport& p) { return p.skipped; });
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto start_time = std::chrono::steady_clock::now();

  const std::vector<GridPlanPoint> plan = plan_grid(config);
  const int workers = resolve_worker_count(config.workers);
  const RngStream master(config.master_seed);
  const int trials = config.trials;

  // Phase 1: thresholds. Calibration trials across all grid points form one
  // task list; each value lands in its own slot.
  std::vector<double> thresholds(plan.size(), 0.0);
  if (config.threshold.kind == ThresholdKind::kCalibrated) {
    const int null_trials = config.threshold.null_trials;
    std::vector<std::size_t> active;
    for (std::size_t g = 0; g < plan.size(); ++g) {
      if (!plan[g].skipped) active.push_back(g);
    }
    std::vector<std::vector<double>> values(plan.size());
    for (std::size_t g : active) values[g].assign(static_cast<std::size_t>(null_trials), 0.0);
    run_tasks(workers, active.size() * static_cast<std::size_t>(null_trials),
              [&](std::size_t task) {
                const std::size_t g = active[task / static_cast<std::size_t>(null_trials)];
                const auto i = static_cast<std::uint64_t>(task % static_cast<std::size_t>(null_trials));
                const RngStream base = master.child(static_cast<std::uint64_t>(g), kPurposeCalibration);
                values[g][i] = statistic_for_trial(*plan[g].model, Hypothesis::kNull,
                                                   config.statistic, base.child(i));
              });
    for (std::size_t g : active) {
      std::sort(values[g].begin(), values[g].end());
      auto idx = static_cast<std::size_t>((1.0 - config.threshold.level) * null_trials);
      if (idx >= values[g].size()) idx = values[g].size() - 1;
      thresholds[g] = values[g][idx];
    }
  } else {
    for (std::size_t g = 0; g < plan.size(); ++g) {
      if (!plan[g].skipped) thresholds[g] = plan[g].asymptotic.value;
    }
  }

  // Phase 2: evaluation trials under both hypotheses.
  std::vector<std::size_t> active;
  for (std::size_t g = 0; g < plan.size(); ++g) {
    if (!plan[g].skipped) active.push_back(g);
  }
  // Slot layout: [grid][hypothesis][trial].
  std::vector<std::array<std::vector<double>, 2>> stats(plan.size());
  for (std::size_t g : active) {
    stats[g][0].assign(static_cast<std::size_t>(trials), 0.0);
    stats[g][1].assign(static_cast<std::size_t>(trials), 0.0);
  }
  const std::size_t per_point = 2 * static_cast<std::size_t>(trials);
  run_tasks(workers, active.size() * per_point, [&](std::size_t task) {
    const std::size_t g = active[task / per_point];
    const std::size_t rest = task % per_point;
    const std::size_t hyp = rest / static_cast<std::size_t>(trials);  // 0 = h0, 1 = h1
    const auto i = static_cast<std::uint64_t>(rest % static_cast<std::size_t>(trials));
    const RngStream base =
        master.child(static_cast<std::uint64_t>(g), hyp == 0 ? kPurposeH0 : kPurposeH1);
    stats[g][hyp][i] =
        statistic_for_trial(*plan[g].model, hyp == 0 ? Hypothesis::kNull : Hypothesis::kPlanted,
                            config.statistic, base.child(i));
  });

  // Fixed-order aggregation.
  ExperimentReport report{config, {}, 0.0};
  for (std::size_t g = 0; g < plan.size(); ++g) {
    GridPointReport point;
    point.c = plan[g].c;
    point.skipped = plan[g].skipped;
    if (point.skipped) {
      report.points.push_back(point);
      continue;
    }
    point.rho_or_s = plan[g].rho_or_s;
    point.threshold_value = thresholds[g];
    point.asymptotic_threshold = plan[g].asymptotic.value;
    point.asymptotic_degenerate = plan[g].asymptotic.degenerate;

    int rejects[2] = {0, 0};
    for (int hyp = 0; hyp < 2; ++hyp) {
      for (double v : stats[g][static_cast<std::size_t>(hyp)]) {
        if (v >= thresholds[g]) ++rejects[hyp];
      }
    }
    point.reject_rate_h0 = static_cast<double>(rejects[0]) / trials;
    point.reject_rate_h1 = static_cast<double>(rejects[1]) / trials;
    point.wilson_h0 = wilson_95(rejects[0], trials);
    point.wilson_h1 = wilson_95(rejects[1], trials);
    const MeanSd h0 = mean_sd(stats[g][0]);
    const MeanSd h1 = mean_sd(stats[g][1]);
    point.mean_stat_h0 = h0.mean;
    point.sd_stat_h0 = h0.sd;
    point.mean_stat_h1 = h1.mean;
    point.sd_stat_h1 = h1.sd;
    point.tv_lower_bound = std::fabs(point.reject_rate_h1 - point.reject_rate_h0);
    report.points.push_back(point);
  }

  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return report;
}

// --- serialization ----------------------------------------------------------

std::vector<SweepCsvRow> report_to_csv_rows(const ExperimentReport& report) {
  std::vector<SweepCsvRow> rows;
  const int n = model_n(report.config.model);
  const int m = model_m(report.config.model);
  for (const GridPointReport& p : report.points) {
    SweepCsvRow row;
    row.model = model_name(report.config.model);
    row.n = n;
    row.m = m;
    row.c = p.c;
    row.threshold_kind = to_string(report.config.threshold.kind);
    if (p.skipped) {
      row.degenerate = "skipped";
    } else {
      row.rho_or_s = p.rho_or_s;
      row.reject_rate_h0 = p.reject_rate_h0;
      row.reject_rate_h1 = p.reject_rate_h1;
      row.ci_lo_h1 = p.wilson_h1.lo;
      row.ci_hi_h1 = p.wilson_h1.hi;
      row.degenerate = p.asymptotic_degenerate ? "true" : "false";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string serialize_sweep_csv(const std::vector<SweepCsvRow>& rows) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const SweepCsvRow& r : rows) {
    out += r.model;
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.m);
    out += ',';
    out += format_double(r.c);
    out += ',';
    out += opt(r.rho_or_s);
    out += ',';
    out += r.threshold_kind;
    out += ',';
    out += opt(r.reject_rate_h0);
    out += ',';
    out += opt(r.reject_rate_h1);
    out += ',';
    out += opt(r.ci_lo_h1);
    out += ',';
    out += opt(r.ci_hi_h1);
    out += ',';
    out += r.degenerate;
    out += '\n';
  }
  return out;
}

std::vector<SweepCsvRow> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw ParameterError("sweep csv: missing or unexpected header line");
  }
  std::vector<SweepCsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    for (;;) {
      const std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, comma - pos));
      pos = comma + 1;
    }
    if (fields.size() != 11) {
      throw ParameterError("sweep csv: expected 11 fields, got " +
                           std::to_string(fields.size()));
    }
    auto opt = [](const std::string& s) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      return parse_double(s);
    };
    auto parse_int = [](const std::string& s) {
      int value = 0;
      const char* end = s.data() + s.size();
      const auto [ptr, ec] = std::from_chars(s.data(), end, value);
      if (ec != std::errc() || ptr != end) {
        throw ParameterError("sweep csv: expected an integer, got \"" + s + "\"");
      }
      return value;
    };
    SweepCsvRow row;
    row.model = fields[0];
    row.n = parse_int(fields[1]);
    row.m = parse_int(fields[2]);
    row.c = parse_double(fields[3]);
    row.rho_or_s = opt(fields[4]);
    row.threshold_kind = fields[5];
    row.reject_rate_h0 = opt(fields[6]);
    row.reject_rate_h1 = opt(fields[7]);
    row.ci_lo_h1 = opt(fields[8]);
    row.ci_hi_h1 = opt(fields[9]);
    row.degenerate = fields[10];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv_string(const ExperimentReport& report) {
  return serialize_sweep_csv(report_to_csv_rows(report));
}

void sweep_to_csv(const ExperimentReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << sweep_csv_string(report);
  if (!out) throw IoError("failed while writing " + path.string());
}

namespace {

nlohmann::json model_to_json(const ModelSpec& model) {
  nlohmann::json j;
  if (const auto* g = std::get_if<GaussianModelSpec>(&model)) {
    j["kind"] = "gaussian";
    j["n"] = g->n;
    j["m"] = g->m;
    j["rho"] = g->rho;
  } else {
    const auto& er = std::get<ERModelSpec>(model);
    j["kind"] = "er";
    j["n"] = er.n;
    j["m"] = er.m;
    j["p"] = er.p;
    j["s"] = er.s;
  }
  return j;
}

ModelSpec model_from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "gaussian") {
    return GaussianModelSpec(j.at("n").get<int>(), j.at("m").get<int>(),
                             j.at("rho").get<double>());
  }
  if (kind == "er") {
    return ERModelSpec(j.at("n").get<int>(), j.at("m").get<int>(), j.at("p").get<double>(),
                       j.at("s").get<double>());
  }
  throw ParameterError("model kind must be \"gaussian\" or \"er\", got \"" + kind + "\"");
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["model"] = model_to_json(config.model);
  j["trials"] = config.trials;
  nlohmann::json stat;
  stat["method"] = to_string(config.statistic.method);
  if (config.statistic.method == StatisticMethod::kHeuristic) {
    stat["restarts"] = config.statistic.restarts;
  }
  j["statistic"] = stat;
  nlohmann::json thr;
  thr["kind"] = to_string(config.threshold.kind);
  if (config.threshold.kind == ThresholdKind::kCalibrated) {
    thr["level"] = config.threshold.level;
    thr["null_trials"] = config.threshold.null_trials;
  }
  j["threshold"] = thr;
  if (config.sweep) j["sweep"] = *config.sweep;
  j["master_seed"] = config.master_seed;
  j["workers"] = config.workers;
  return j;
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParameterError("config: malformed JSON");
  try {
    ExperimentConfig config{ModelSpec(model_from_json(j.at("model"))),
                            j.at("trials").get<int>(),
                            StatisticSpec{},
                            ThresholdSpec{},
                            std::nullopt,
                            j.at("master_seed").get<std::uint64_t>(),
                            0};
    const auto& stat = j.at("statistic");
    const auto method = stat.at("method").get<std::string>();
    if (method == "exact") {
      config.statistic.method = StatisticMethod::kExact;
    } else if (method == "heuristic") {
      config.statistic.method = StatisticMethod::kHeuristic;
      config.statistic.restarts = stat.value("restarts", 0);
    } else {
      throw ParameterError("statistic method must be \"exact\" or \"heuristic\"");
    }
    const auto& thr = j.at("threshold");
    const auto kind = thr.at("kind").get<std::string>();
    if (kind == "asymptotic") {
      config.threshold.kind = ThresholdKind::kAsymptotic;
    } else if (kind == "calibrated") {
      config.threshold.kind = ThresholdKind::kCalibrated;
      config.threshold.level = thr.at("level").get<double>();
      config.threshold.null_trials = thr.at("null_trials").get<int>();
    } else {
      throw ParameterError("threshold kind must be \"asymptotic\" or \"calibrated\"");
    }
    if (j.contains("sweep")) config.sweep = j.at("sweep").get<std::vector<double>>();
    config.workers = j.value("workers", 0);
    config.validate();
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("config: ") + e.what());
  }
}

std::string config_to_json_text(const ExperimentConfig& config) {
  return config_to_json(config).dump(2);
}

std::string report_to_json_text(const ExperimentReport& report, bool include_runtime) {
  nlohmann::json j;
  j["config"] = config_to_json(report.config);
  nlohmann::json points = nlohmann::json::array();
  for (const GridPointReport& p : report.points) {
    nlohmann::json pj;
    pj["c"] = p.c;
    pj["skipped"] = p.skipped;
    if (p.skipped) {
      pj["rho_or_s"] = nullptr;
      points.push_back(pj);
      continue;
    }
    pj["rho_or_s"] = p.rho_or_s;
    pj["threshold_value"] = p.threshold_value;
    pj["asymptotic_threshold"] = p.asymptotic_threshold;
    pj["asymptotic_degenerate"] = p.asymptotic_degenerate;
    pj["reject_rate_h0"] = p.reject_rate_h0;
    pj["reject_rate_h1"] = p.reject_rate_h1;
    pj["wilson_h0"] = {{"lo", p.wilson_h0.lo}, {"hi", p.wilson_h0.hi}};
    pj["wilson_h1"] = {{"lo", p.wilson_h1.lo}, {"hi", p.wilson_h1.hi}};
    pj["mean_stat_h0"] = p.mean_stat_h0;
    pj["sd_stat_h0"] = p.sd_stat_h0;
    pj["mean_stat_h1"] = p.mean_stat_h1;
    pj["sd_stat_h1"] = p.sd_stat_h1;
    pj["tv_lower_bound"] = p.tv_lower_bound;
    points.push_back(pj);
  }
  j["points"] = points;
  if (include_runtime) j["runtime_seconds"] = report.runtime_seconds;
  return j.dump(2);
}

}  // namespace hypercorr
