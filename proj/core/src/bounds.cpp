#include "hypercorr/bounds.hpp"

#include <cmath>
#include <string>

#include "hypercorr/combinatorics.hpp"
#include "hypercorr/errors.hpp"

namespace hypercorr {

namespace {

constexpr double kNegInvE = -0.36787944117144233;  // -1/e

double log_binomial_pmf(int n, double p, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
         k * std::log(p) + (n - k) * std::log1p(-p);
}

double log_poisson_pmf(double mu, int k) {
  return k * std::log(mu) - mu - std::lgamma(k + 1.0);
}

}  // namespace

ThresholdCurveValue gaussian_rho2_threshold(int n, int m) {
  if (m < 2 || m >= n) throw ParameterError("threshold curve requires n > m >= 2");
  const double value =
      2.0 * n * std::log(static_cast<double>(n)) / static_cast<double>(binomial(n, m));
  return {value, value >= 1.0};
}

double alpha_p(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("alpha_p requires 0 < p <= 1");
  return (std::log(1.0 / p) - 1.0 + p) * p;
}

ThresholdCurveValue er_s2_threshold(int n, int m, double p) {
  if (m < 2 || m >= n) throw ParameterError("threshold curve requires n > m >= 2");
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("threshold curve requires 0 < p < 1");
  const double value = n * std::log(static_cast<double>(n)) /
                       (static_cast<double>(binomial(n, m)) * alpha_p(p));
  return {value, value >= 1.0};
}

double chernoff_upper(double mu, double delta) {
  if (!(mu > 0.0)) throw ParameterError("chernoff_upper requires mu > 0");
  if (!(delta > 0.0)) throw ParameterError("chernoff_upper requires delta > 0");
  return std::exp(-mu * ((1.0 + delta) * std::log1p(delta) - delta));
}

double chernoff_lower(double mu, double delta) {
  if (!(mu > 0.0)) throw ParameterError("chernoff_lower requires mu > 0");
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("chernoff_lower requires 0 < delta <= 1");
  return std::exp(-delta * delta * mu / 2.0);
}

double lambert_w(double x, LambertBranch branch) {
  if (x < kNegInvE) {
    // Tolerate rounding right at the branch point.
    if (x > kNegInvE - 1e-15) return -1.0;
    throw ParameterError("lambert_w domain: x must be >= -1/e, got " + std::to_string(x));
  }
  if (branch == LambertBranch::kLower && x >= 0.0) {
    throw ParameterError("lambert_w lower branch requires -1/e <= x < 0");
  }
  if (x == 0.0) return 0.0;

  // Branch-point series in p = sqrt(2*(e*x + 1)): W = -1 +- p - p^2/3 ...
  const double ex1 = std::max(0.0, std::exp(1.0) * x + 1.0);
  const double p = std::sqrt(2.0 * ex1);
  double w;
  if (branch == LambertBranch::kPrincipal) {
    if (x < -0.25) {
      w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    } else if (x < 3.0) {
      w = std::log1p(x);  // crude but inside Halley's basin
    } else {
      const double l1 = std::log(x);
      const double l2 = std::log(l1);
      w = l1 - l2 + l2 / l1;
    }
  } else {
    if (x < -0.25) {
      w = -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p;
    } else {
      // x in [-0.25, 0): W_-1 is deep below; start from the log asymptote.
      const double l1 = std::log(-x);
      w = l1 - std::log(-l1);
    }
  }
  // So close to the branch point that Halley's denominator degenerates: the
  // series value is already accurate to O(p^4).
  if (std::fabs(w + 1.0) < 1e-6) return w;

  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    const double step = f / denom;
    w -= step;
    if (std::fabs(step) <= 1e-16 * (1.0 + std::fabs(w))) break;
  }
  return w;
}

double poissonization_tail_threshold(double mu, double t) {
  if (!(mu > 0.0)) throw ParameterError("poissonization requires mu > 0");
  if (!(t >= mu)) {
    throw ParameterError("poissonization requires t >= mu (upper-tail form)");
  }
  const double w = lambert_w((t - mu) / (std::exp(1.0) * mu));
  return mu * std::exp(1.0 + w);
}

double exact_binomial_upper_tail(int n, double p, double threshold) {
  if (n < 0 || !(p > 0.0 && p < 1.0)) throw ParameterError("binomial tail: bad n or p");
  const int k0 = static_cast<int>(std::ceil(threshold));
  double total = 0.0;
  for (int k = n; k >= std::max(0, k0); --k) total += std::exp(log_binomial_pmf(n, p, k));
  return k0 > n ? 0.0 : total;
}

double exact_binomial_lower_tail(int n, double p, double threshold) {
  if (n < 0 || !(p > 0.0 && p < 1.0)) throw ParameterError("binomial tail: bad n or p");
  const int k0 = static_cast<int>(std::floor(threshold));
  if (k0 < 0) return 0.0;
  double total = 0.0;
  for (int k = 0; k <= std::min(n, k0); ++k) total += std::exp(log_binomial_pmf(n, p, k));
  return total;
}

double exact_poisson_upper_tail(double mu, double threshold) {
  if (!(mu > 0.0)) throw ParameterError("poisson tail requires mu > 0");
  const int k0 = std::max(0, static_cast<int>(std::ceil(threshold)));
  // P(X >= k0) = 1 - P(X < k0), summed on whichever side is smaller.
  if (k0 <= mu) {
    double head = 0.0;
    for (int k = 0; k < k0; ++k) head += std::exp(log_poisson_pmf(mu, k));
    return 1.0 - head;
  }
  double tail = 0.0;
  double term = std::exp(log_poisson_pmf(mu, k0));
  int k = k0;
  while (term > 0.0 && (k == k0 || term > tail * 1e-18)) {
    tail += term;
    ++k;
    term *= mu / k;
  }
  return tail;
}

TailBoundReport chernoff_upper_report(double mu, double delta, int oracle_n) {
  TailBoundReport report{mu, delta, chernoff_upper(mu, delta), std::nullopt};
  if (oracle_n > 0) {
    report.exact = exact_binomial_upper_tail(oracle_n, mu / oracle_n, (1.0 + delta) * mu);
  }
  return report;
}

TailBoundReport chernoff_lower_report(double mu, double delta, int oracle_n) {
  TailBoundReport report{mu, delta, chernoff_lower(mu, delta), std::nullopt};
  if (oracle_n > 0) {
    report.exact = exact_binomial_lower_tail(oracle_n, mu / oracle_n, (1.0 - delta) * mu);
  }
  return report;
}

TailBoundReport poissonization_report(double mu, double t) {
  const double tau = poissonization_tail_threshold(mu, t);
  TailBoundReport report{mu, t, std::exp(-t), std::nullopt};
  report.exact = exact_poisson_upper_tail(mu, tau);
  return report;
}

ZetaResult zeta(int k, int n, int m, double p, double s) {
  if (m < 1 || k < m || k > n) throw ParameterError("zeta requires m <= k <= n");
  const double mu = static_cast<double>(binomial(k, m)) * p * s * s;
  if (!(mu > 0.0)) throw ParameterError("zeta requires p*s^2 > 0");
  const double gamma = k * std::log(2.0 * std::exp(1.0) * n / k) / mu;
  // gamma >= 0, so the argument (gamma - 1)/e never drops below -1/e.
  const double w = lambert_w((gamma - 1.0) / std::exp(1.0));
  return {mu * std::exp(1.0 + w), gamma};
}

double hanson_wright_bound(double d, double delta_conf, double c) {
  if (!(d >= 1.0)) throw ParameterError("hanson_wright_bound requires d >= 1");
  if (!(delta_conf > 0.0 && delta_conf < 1.0)) {
    throw ParameterError("hanson_wright_bound requires 0 < delta < 1");
  }
  const double l = std::log(1.0 / delta_conf);
  return c * (std::sqrt(d * l) + l);
}

}  // namespace hypercorr
