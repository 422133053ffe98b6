#pragma once

#include <optional>
#include <string>

#include "hypercorr/models.hpp"
#include "hypercorr/permutation.hpp"
#include "hypercorr/rng.hpp"
#include "hypercorr/tensor.hpp"

namespace hypercorr {

enum class StatisticMethod { kExact, kHeuristic, kCalibrated };

std::string to_string(StatisticMethod m);

// How the harness computes the matching statistic: exhaustive maximization or
// local search with a restart budget.
struct StatisticSpec {
  StatisticMethod method = StatisticMethod::kExact;
  int restarts = 0;  // extra random starts for the heuristic
};

// Result of evaluating the matching statistic, optionally judged against a
// threshold. reject_h0 is defined as statistic >= threshold and is false
// whenever no threshold was supplied.
struct TestOutcome {
  double statistic = 0.0;
  std::optional<double> threshold;
  bool reject_h0 = false;
  Permutation argmax;
  StatisticMethod method = StatisticMethod::kExact;
};

// A closed-form threshold value; `degenerate` marks values with no
// discriminating power at this size (<= 0).
struct ThresholdValue {
  double value = 0.0;
  bool degenerate = false;
};

// Alignment score of the two tensors under a candidate matching pi:
// sum over edges e of A1_e * A2_{pi(e)}.
double t_of_pi(const AdjacencyTensor& a1, const AdjacencyTensor& a2, const Permutation& pi);

// Exhaustive maximum of t_of_pi over all n! matchings, enumerated in
// lexicographic order. Ties resolve to the lexicographically smallest image
// array. Refuses when n exceeds `limit` (cost guard; use the heuristic).
TestOutcome max_statistic_exact(const AdjacencyTensor& a1, const AdjacencyTensor& a2,
                                int limit = 9);

// Steepest-ascent local search over the swap neighborhood (exchange two image
// entries), run from the identity plus `restarts` random starts; reports the
// best matching found. Never exceeds the exhaustive maximum, and is fully
// deterministic given the stream.
TestOutcome max_statistic_heuristic(const AdjacencyTensor& a1, const AdjacencyTensor& a2,
                                    int restarts, RngStream& rng);

// Asymptotic weighted-model threshold rho*C(n,m) - sqrt(C(n,m))*n^(1/4).
// Negative or zero values are flagged degenerate (always rejects).
ThresholdValue gaussian_threshold(int n, int m, double rho);

// Asymptotic unweighted-model threshold mu*(1 - tau) with mu = C(n,m)*p*s^2
// and tau = log(n)/sqrt(mu); tau is clamped at 1 (threshold 0) and flagged
// degenerate when the unclamped value reaches 1.
ThresholdValue er_threshold(int n, int m, double p, double s);

// One model draw followed by one statistic evaluation, using the fixed
// per-trial stream layout shared by calibration and the experiment harness:
// trial_stream.child(0) drives the sampler, trial_stream.child(1) drives the
// heuristic search (unused by the exact method).
double statistic_for_trial(const ModelSpec& spec, Hypothesis h, const StatisticSpec& method,
                           const RngStream& trial_stream);

// Empirical (1-level) quantile of the statistic over `trials` fresh h0 draws
// of the given model; the desk-scale replacement for the asymptotic
// thresholds. level=1 returns the sample minimum. Deterministic given the
// stream: trial i evaluates statistic_for_trial on rng.child(i).
double calibrated_threshold(const ModelSpec& spec, double level, int trials,
                            const StatisticSpec& method, const RngStream& rng);

}  // namespace hypercorr
