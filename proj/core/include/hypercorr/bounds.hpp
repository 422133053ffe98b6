#pragma once

#include <optional>

namespace hypercorr {

// A feasibility-curve value; `infeasible` marks values that no legal
// parameter can reach (squared correlation or squared subsampling rate >= 1).
struct ThresholdCurveValue {
  double value = 0.0;
  bool infeasible = false;
};

// One evaluated tail bound, optionally paired with the exact tail probability
// from a small-instance oracle. Whenever `exact` is present, exact <= bound.
struct TailBoundReport {
  double mu = 0.0;
  double deviation = 0.0;  // delta for the Chernoff bounds, t for poissonization
  double bound = 0.0;
  std::optional<double> exact;
};

// Squared-correlation level 2*n*log(n)/C(n,m) above which the weighted-model
// test provably succeeds asymptotically.
ThresholdCurveValue gaussian_rho2_threshold(int n, int m);

// Entropy-like coefficient (log(1/p) - 1 + p) * p; zero only at p = 1.
double alpha_p(double p);

// Squared-subsampling level n*log(n)/(C(n,m)*alpha_p(p)) for the unweighted
// model.
ThresholdCurveValue er_s2_threshold(int n, int m, double p);

// P(X >= (1+delta)*mu) <= exp(-mu*((1+delta)*log(1+delta) - delta)) for X a
// sum of independent indicators with mean mu.
double chernoff_upper(double mu, double delta);

// P(X <= (1-delta)*mu) <= exp(-delta^2*mu/2).
double chernoff_lower(double mu, double delta);

enum class LambertBranch { kPrincipal, kLower };

// Solves w*exp(w) = x. Principal branch W0 for x >= -1/e; lower branch W-1
// for -1/e <= x < 0. Halley iteration; residual |w*e^w - x| <= 1e-12 on the
// supported range.
double lambert_w(double x, LambertBranch branch = LambertBranch::kPrincipal);

// Smallest tau (of the form mu*exp(1 + W0((t-mu)/(e*mu)))) such that
// P(X >= tau) <= exp(-t) for X Poisson or binomial with mean mu; requires
// t >= mu.
double poissonization_tail_threshold(double mu, double t);

// Tail-sum oracles for the domination checks (direct pmf summation).
double exact_binomial_upper_tail(int n, double p, double threshold);  // P(X >= threshold)
double exact_binomial_lower_tail(int n, double p, double threshold);  // P(X <= threshold)
double exact_poisson_upper_tail(double mu, double threshold);         // P(X >= threshold)

// Report builders used by the CLI and the domination tests. oracle_n > 0
// attaches the exact Bin(oracle_n, mu/oracle_n) tail.
TailBoundReport chernoff_upper_report(double mu, double delta, int oracle_n = 0);
TailBoundReport chernoff_lower_report(double mu, double delta, int oracle_n = 0);
// Attaches the exact Poisson(mu) upper tail at tau; bound field is exp(-t).
TailBoundReport poissonization_report(double mu, double t);

// Edge-count tail scale for partially matched vertex sets:
//   zeta = C(k,m)*p*s^2 * exp(1 + W0(gamma/e - 1/e)),
//   gamma = k*log(2*e*n/k) / (C(k,m)*p*s^2).
// As gamma -> 0, zeta approaches C(k,m)*p*s^2.
struct ZetaResult {
  double zeta = 0.0;
  double gamma = 0.0;
};
ZetaResult zeta(int k, int n, int m, double p, double s);

// Concentration radius c*(sqrt(d*log(1/delta)) + log(1/delta)) for a
// quadratic form in d sub-Gaussian coordinates at confidence 1-delta. The
// leading constant is a knob (default 1), not calibrated here.
double hanson_wright_bound(double d, double delta_conf, double c = 1.0);

}  // namespace hypercorr
