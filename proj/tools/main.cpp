// Command-line front end: sample pairs, orbit profiles, matching tests,
// second moments, bound evaluations, and full sweep experiments.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypercorr/bounds.hpp"
#include "hypercorr/errors.hpp"
#include "hypercorr/format.hpp"
#include "hypercorr/harness.hpp"
#include "hypercorr/models.hpp"
#include "hypercorr/orbit.hpp"
#include "hypercorr/second_moment.hpp"
#include "hypercorr/statistics.hpp"

namespace {

using nlohmann::json;
using namespace hypercorr;

constexpr int kExitOk = 0;
constexpr int kExitParameter = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitIo = 4;

struct ModelArgs {
  std::string model = "gaussian";
  int n = 0;
  int m = 0;
  std::optional<double> rho;
  std::optional<double> p;
  std::optional<double> s;

  ModelSpec build() const {
    if (model == "gaussian") {
      if (!rho) throw ParameterError("gaussian model needs --rho");
      if (p || s) throw ParameterError("--p/--s apply to the er model only");
      return GaussianModelSpec(n, m, *rho);
    }
    if (model == "er") {
      if (!p || !s) throw ParameterError("er model needs --p and --s");
      if (rho) throw ParameterError("--rho applies to the gaussian model only");
      return ERModelSpec(n, m, *p, *s);
    }
    throw ParameterError("--model must be gaussian or er");
  }
};

void add_model_options(CLI::App* cmd, ModelArgs* args, bool need_param) {
  cmd->add_option("--model", args->model, "gaussian | er")->required();
  cmd->add_option("--n", args->n, "vertex count")->required();
  cmd->add_option("--m", args->m, "edge arity")->required();
  auto* rho = cmd->add_option("--rho", args->rho, "gaussian correlation");
  auto* p = cmd->add_option("--p", args->p, "er parent edge probability");
  auto* s = cmd->add_option("--s", args->s, "er subsampling probability");
  if (!need_param) {
    (void)rho;
    (void)p;
    (void)s;
  }
}

json permutation_json(const Permutation& pi) {
  return json{{"cycles", format_cycles(pi)}, {"image", pi.image()}};
}

int cmd_sample(const ModelArgs& margs, const std::string& hypothesis, std::uint64_t seed,
               const std::string& out) {
  const ModelSpec spec = margs.build();
  const Hypothesis h = hypothesis_from_string(hypothesis);
  RngStream rng(seed);
  const SamplePair pair = sample(spec, h, rng);

  TensorHeader header{model_n(spec), model_m(spec), model_name(spec), to_string(h), seed};
  const std::string a1_path = out + ".a1.csv";
  const std::string a2_path = out + ".a2.csv";
  write_tensor_csv(pair.a1, header, a1_path);
  write_tensor_csv(pair.a2, header, a2_path);

  json result{{"model", header.model}, {"n", header.n},       {"m", header.m},
              {"hypothesis", header.hypothesis}, {"seed", seed}, {"a1", a1_path},
              {"a2", a2_path}};
  if (pair.planted) {
    const std::string planted_path = out + ".planted.json";
    std::ofstream f(planted_path, std::ios::binary);
    if (!f) throw IoError("cannot open " + planted_path + " for writing");
    f << permutation_json(*pair.planted).dump(2) << '\n';
    if (!f) throw IoError("failed while writing " + planted_path);
    result["planted"] = planted_path;
  }
  std::cout << result.dump(2) << '\n';
  return kExitOk;
}

int cmd_orbits(int n, int m, const std::string& perm) {
  const Permutation pi = parse_cycles(perm, n);
  const OrbitProfile profile = orbit_profile(pi, m);
  json counts = json::object();
  for (const auto& [k, v] : profile.counts) counts[std::to_string(k)] = v;
  const auto [cycles, ct] = cycle_decomposition(pi);
  json result{{"n", n},
              {"m", m},
              {"perm", format_cycles(pi)},
              {"orbit_counts", counts},
              {"total_edges", profile.total_edges()},
              {"fixed_edges_closed_form", fixed_edge_count_closed_form(ct, m)}};
  std::cout << result.dump(2) << '\n';
  return kExitOk;
}

int cmd_test(const std::string& a1_path, const std::string& a2_path, const std::string& method,
             int restarts, std::uint64_t seed) {
  const auto [a1, h1] = read_tensor_csv(a1_path);
  const auto [a2, h2] = read_tensor_csv(a2_path);
  if (a1.n() != a2.n() || a1.m() != a2.m()) {
    throw ParameterError("tensors disagree on (n, m)");
  }
  TestOutcome outcome = [&] {
    if (method == "exact") return max_statistic_exact(a1, a2);
    if (method == "heuristic") {
      RngStream rng(seed);
      return max_statistic_heuristic(a1, a2, restarts, rng);
    }
    throw ParameterError("--method must be exact or heuristic");
  }();
  json result{{"statistic", outcome.statistic},
              {"method", to_string(outcome.method)},
              {"argmax", permutation_json(outcome.argmax)},
              {"n", a1.n()},
              {"m", a1.m()}};
  if (method == "heuristic") result["restarts"] = restarts;
  std::cout << result.dump(2) << '\n';
  return kExitOk;
}

int cmd_second_moment(const std::string& model, int n, int m, double rho,
                      const std::string& path_name) {
  EnumerationPath path;
  if (path_name == "cycle-types") {
    path = EnumerationPath::kCycleTypes;
  } else if (path_name == "full-permutations") {
    path = EnumerationPath::kFullPermutations;
  } else {
    throw ParameterError("--path must be cycle-types or full-permutations");
  }
  SecondMomentResult r = [&] {
    if (model == "gaussian") return second_moment_gaussian(n, m, rho, path);
    if (model == "er") return second_moment_er(n, m, rho, path);
    throw ParameterError("--model must be gaussian or er");
  }();
  json result{{"model", model},          {"n", r.n},
              {"m", r.m},                {"rho", r.rho},
              {"value", r.value},        {"method", to_string(r.path)},
              {"permutations", r.permutations_enumerated}};
  std::cout << result.dump(2) << '\n';
  return kExitOk;
}

// --args k=v,k=v parser for the bounds subcommand.
class ArgMap {
 public:
  explicit ArgMap(const std::string& text) {
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw ParameterError("--args entries must look like key=value, got \"" + item + "\"");
      }
      values_[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }

  double number(const std::string& key) const {
    return parse_double(raw(key));
  }

  int integer(const std::string& key) const {
    const double v = number(key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) throw ParameterError(key + " must be an integer");
    return i;
  }

  double number_or(const std::string& key, double fallback) const {
    return values_.count(key) ? number(key) : fallback;
  }

  std::string raw_or(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

 private:
  const std::string& raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ParameterError("--args is missing " + key);
    return it->second;
  }

  std::map<std::string, std::string> values_;
};

int cmd_bounds(const std::string& name, const std::string& args_text) {
  const ArgMap args(args_text);
  json result{{"name", name}};
  json inputs = json::object();
  json flags = json::object();

  if (name == "chernoff-upper" || name == "chernoff-lower") {
    const double mu = args.number("mu");
    const double delta = args.number("delta");
    inputs = {{"mu", mu}, {"delta", delta}};
    result["value"] = name == "chernoff-upper" ? chernoff_upper(mu, delta)
                                               : chernoff_lower(mu, delta);
  } else if (name == "lambert-w") {
    const double x = args.number("x");
    const std::string branch = args.raw_or("branch", "0");
    inputs = {{"x", x}, {"branch", branch}};
    if (branch == "0" || branch == "principal") {
      result["value"] = lambert_w(x, LambertBranch::kPrincipal);
    } else if (branch == "-1" || branch == "lower") {
      result["value"] = lambert_w(x, LambertBranch::kLower);
    } else {
      throw ParameterError("branch must be 0 or -1");
    }
  } else if (name == "zeta") {
    const int k = args.integer("k");
    const int n = args.integer("n");
    const int m = args.integer("m");
    const double p = args.number("p");
    const double s = args.number("s");
    inputs = {{"k", k}, {"n", n}, {"m", m}, {"p", p}, {"s", s}};
    const ZetaResult z = zeta(k, n, m, p, s);
    result["value"] = z.zeta;
    flags["gamma"] = z.gamma;
  } else if (name == "alpha-p") {
    const double p = args.number("p");
    inputs = {{"p", p}};
    result["value"] = alpha_p(p);
  } else if (name == "gauss-threshold") {
    const int n = args.integer("n");
    const int m = args.integer("m");
    inputs = {{"n", n}, {"m", m}};
    const ThresholdCurveValue t = gaussian_rho2_threshold(n, m);
    result["value"] = t.value;
    flags["infeasible"] = t.infeasible;
  } else if (name == "er-threshold") {
    const int n = args.integer("n");
    const int m = args.integer("m");
    const double p = args.number("p");
    inputs = {{"n", n}, {"m", m}, {"p", p}};
    const ThresholdCurveValue t = er_s2_threshold(n, m, p);
    result["value"] = t.value;
    flags["infeasible"] = t.infeasible;
  } else if (name == "poissonization") {
    const double mu = args.number("mu");
    const double t = args.number("t");
    inputs = {{"mu", mu}, {"t", t}};
    const TailBoundReport report = poissonization_report(mu, t);
    result["value"] = report.deviation;  // the threshold tau itself
    flags["tail_bound"] = report.bound;
    if (report.exact) flags["exact_tail"] = *report.exact;
  } else if (name == "hanson-wright") {
    const double d = args.number("d");
    const double delta = args.number("delta");
    const double c = args.number_or("c", 1.0);
    inputs = {{"d", d}, {"delta", delta}, {"c", c}};
    result["value"] = hanson_wright_bound(d, delta, c);
  } else {
    throw ParameterError("unknown bound name \"" + name + "\"");
  }

  result["inputs"] = inputs;
  result["flags"] = flags;
  std::cout << result.dump(2) << '\n';
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) throw IoError("cannot open " + config_path + " for reading");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const ExperimentConfig config = config_from_json_text(buffer.str());

  const ExperimentReport report = run_experiment(config);
  sweep_to_csv(report, out_path);

  int skipped = 0;
  for (const auto& p : report.points) skipped += p.skipped ? 1 : 0;
  json summary{{"out", out_path},
               {"points", report.points.size()},
               {"skipped", skipped},
               {"runtime_seconds", report.runtime_seconds}};
  std::cout << summary.dump(2) << '\n';
  return report.all_skipped() ? kExitDegenerate : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlated hypergraph testing laboratory"};
  app.require_subcommand(1);

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "Draw a tensor pair and write it to CSV");
  ModelArgs sample_model;
  std::string hypothesis;
  std::uint64_t sample_seed = 0;
  std::string sample_out;
  add_model_options(sample_cmd, &sample_model, true);
  sample_cmd->add_option("--hypothesis", hypothesis, "h0 | h1")->required();
  sample_cmd->add_option("--seed", sample_seed, "rng seed")->required();
  sample_cmd->add_option("--out", sample_out, "output prefix (writes .a1.csv/.a2.csv)")
      ->required();

  // orbits
  auto* orbits_cmd = app.add_subcommand("orbits", "Orbit-length histogram of a permutation");
  int orbits_n = 0, orbits_m = 0;
  std::string orbits_perm;
  orbits_cmd->add_option("--n", orbits_n, "vertex count")->required();
  orbits_cmd->add_option("--m", orbits_m, "edge arity")->required();
  orbits_cmd->add_option("--perm", orbits_perm, "cycle notation, e.g. \"(1 2 3)(4 5)\"")
      ->required();

  // test
  auto* test_cmd = app.add_subcommand("test", "Maximize the matching statistic over alignments");
  std::string test_a1, test_a2, test_method;
  int test_restarts = 0;
  std::uint64_t test_seed = 0;
  test_cmd->add_option("--a1", test_a1, "first tensor CSV")->required();
  test_cmd->add_option("--a2", test_a2, "second tensor CSV")->required();
  test_cmd->add_option("--method", test_method, "exact | heuristic")->required();
  test_cmd->add_option("--restarts", test_restarts, "heuristic restart budget");
  test_cmd->add_option("--seed", test_seed, "heuristic rng seed");

  // second-moment
  auto* sm_cmd = app.add_subcommand("second-moment", "Likelihood-ratio second moment");
  std::string sm_model, sm_path = "cycle-types";
  int sm_n = 0, sm_m = 0;
  double sm_rho = 0.0;
  sm_cmd->add_option("--model", sm_model, "gaussian | er")->required();
  sm_cmd->add_option("--n", sm_n, "vertex count")->required();
  sm_cmd->add_option("--m", sm_m, "edge arity")->required();
  sm_cmd->add_option("--rho", sm_rho, "correlation")->required();
  sm_cmd->add_option("--path", sm_path, "cycle-types | full-permutations");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate a tail bound or threshold curve");
  std::string bounds_name, bounds_args;
  bounds_cmd
      ->add_option("--name", bounds_name,
                   "chernoff-upper | chernoff-lower | lambert-w | zeta | alpha-p | "
                   "gauss-threshold | er-threshold | poissonization | hanson-wright")
      ->required();
  bounds_cmd->add_option("--args", bounds_args, "comma-separated key=value inputs")->required();

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a Monte Carlo experiment from a config");
  std::string sweep_config, sweep_out;
  sweep_cmd->add_option("--config", sweep_config, "experiment config JSON")->required();
  sweep_cmd->add_option("--out", sweep_out, "sweep CSV destination")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParameter;
  }

  try {
    if (*sample_cmd) return cmd_sample(sample_model, hypothesis, sample_seed, sample_out);
    if (*orbits_cmd) return cmd_orbits(orbits_n, orbits_m, orbits_perm);
    if (*test_cmd) return cmd_test(test_a1, test_a2, test_method, test_restarts, test_seed);
    if (*sm_cmd) return cmd_second_moment(sm_model, sm_n, sm_m, sm_rho, sm_path);
    if (*bounds_cmd) return cmd_bounds(bounds_name, bounds_args);
    if (*sweep_cmd) return cmd_sweep(sweep_config, sweep_out);
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParameter;
  }
  return kExitOk;
}
