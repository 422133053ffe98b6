#include "hypercorr/second_moment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hypercorr/combinatorics.hpp"
#include "hypercorr/errors.hpp"
#include "hypercorr/orbit.hpp"
#include "hypercorr/permutation.hpp"

namespace hypercorr {

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Number of permutations with the given cycle type: n! / prod(k^(n_k) n_k!).
std::uint64_t conjugacy_class_size(const CycleType& ct) {
  const int n = ct.n();
  std::uint64_t denom = 1;
  for (const auto& [k, cnt] : ct.counts) {
    for (std::uint64_t c = 0; c < cnt; ++c) denom *= static_cast<std::uint64_t>(k);
    denom *= factorial(static_cast<int>(cnt));
  }
  return factorial(n) / denom;
}

// All cycle types of S_n (partitions of n), in a fixed deterministic order.
std::vector<CycleType> all_cycle_types(int n) {
  std::vector<CycleType> out;
  std::map<int, std::uint64_t> counts;
  // Parts chosen non-increasing to enumerate each partition once.
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(counts);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      ++counts[part];
      self(self, remaining - part, part);
      if (--counts[part] == 0) counts.erase(part);
    }
  };
  rec(rec, n, n);
  return out;
}

void check_enumeration_inputs(int n, int m, int cap) {
  if (m < 1 || m > n) throw ParameterError("enumeration requires 1 <= m <= n");
  if (n > cap) {
    throw ParameterError("exact enumeration of " + std::to_string(n) +
                         "! permutations exceeds the cap (" + std::to_string(cap) + ")");
  }
}

// Average of exp(log_term(orbit profile)) over S_n, grouped by conjugacy
// class on the fast path or summed permutation-by-permutation on the oracle
// path. Both paths accumulate in a fixed order, so results are bitwise
// reproducible.
template <typename LogTerm>
double average_over_sn(int n, int m, EnumerationPath path, LogTerm log_term) {
  const double total_perms = static_cast<double>(factorial(n));
  double total = 0.0;
  if (path == EnumerationPath::kCycleTypes) {
    for (const CycleType& ct : all_cycle_types(n)) {
      const Permutation rep = representative_of_cycle_type(ct);
      const OrbitProfile profile = orbit_profile(rep, m);
      total += static_cast<double>(conjugacy_class_size(ct)) * std::exp(log_term(profile));
    }
  } else {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    do {
      const OrbitProfile profile = orbit_profile(Permutation(img), m);
      total += std::exp(log_term(profile));
    } while (std::next_permutation(img.begin(), img.end()));
  }
  return total / total_perms;
}

}  // namespace

std::string to_string(EnumerationPath path) {
  return path == EnumerationPath::kCycleTypes ? "cycle-types" : "full-permutations";
}

SecondMomentResult second_moment_gaussian(int n, int m, double rho, EnumerationPath path,
                                          int cap) {
  check_enumeration_inputs(n, m, cap);
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw ParameterError("gaussian second moment requires 0 <= rho < 1");
  }
  const double value = average_over_sn(n, m, path, [&](const OrbitProfile& profile) {
    double log_term = 0.0;
    for (const auto& [k, nk] : profile.counts) {
      // factor (1 - rho^(2k))^(-N_k)
      log_term -= static_cast<double>(nk) * std::log1p(-std::pow(rho, 2.0 * static_cast<double>(k)));
    }
    return log_term;
  });
  return {value, n, m, rho, SecondMomentModel::kGaussian, factorial(n), path};
}

SecondMomentResult second_moment_er(int n, int m, double rho, EnumerationPath path, int cap) {
  check_enumeration_inputs(n, m, cap);
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw ParameterError("er second moment requires 0 <= rho <= 1");
  }
  const double value = average_over_sn(n, m, path, [&](const OrbitProfile& profile) {
    double log_term = 0.0;
    for (const auto& [k, nk] : profile.counts) {
      // factor (1 + rho^(2k))^(N_k)
      log_term += static_cast<double>(nk) * std::log1p(std::pow(rho, 2.0 * static_cast<double>(k)));
    }
    return log_term;
  });
  return {value, n, m, rho, SecondMomentModel::kEr, factorial(n), path};
}

double fixed_orbit_exponential_moment(int n, int m, double rho, EnumerationPath path, int cap) {
  check_enumeration_inputs(n, m, cap);
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw ParameterError("exponential moment requires 0 <= rho < 1");
  }
  const double x = rho * rho / (1.0 - rho * rho);
  return average_over_sn(n, m, path, [&](const OrbitProfile& profile) {
    return x * static_cast<double>(profile.count(1));
  });
}

namespace {

// g evaluated on the first cycle counts (n1, n2).
double eval_g(const GSpec& g, std::uint64_t n1, std::uint64_t n2) {
  if (const auto* ind = std::get_if<GFixedPointIndicator>(&g)) {
    return n1 == static_cast<std::uint64_t>(ind->target) ? 1.0 : 0.0;
  }
  const auto& ep = std::get<GExpPoly>(g);
  if (ep.truncation > 0 && n1 > static_cast<std::uint64_t>(ep.truncation)) return 0.0;
  const double c1 = static_cast<double>(binomial(static_cast<int>(n1), ep.m));
  const double c2 = static_cast<double>(binomial(static_cast<int>(n1), ep.m - 2));
  return std::exp(ep.a * c1 + ep.b * static_cast<double>(n2) * c2);
}

// E[exp(c * Z)] for Z ~ Poisson(lambda), by series summation with a
// geometric tail bound, cross-checked against the closed form
// exp(lambda * (e^c - 1)).
double poisson_exp_moment_series(double lambda, double c) {
  const double ec = std::exp(c);
  double term = std::exp(-lambda);  // z = 0
  double total = term;
  for (int z = 1; z < 1000000; ++z) {
    term *= lambda * ec / z;
    total += term;
    const double ratio = lambda * ec / (z + 1);
    if (ratio < 0.5) {
      const double tail_bound = term * ratio / (1.0 - ratio);
      if (tail_bound < 1e-12 * total) {
        const double closed_form = std::exp(lambda * (ec - 1.0));
        if (std::fabs(total + tail_bound / 2.0 - closed_form) > 1e-9 * closed_form) {
          throw ParameterError("poisson series disagrees with its closed form; g too extreme");
        }
        return total;
      }
    }
  }
  throw ParameterError("poisson series for E[exp(c*Z)] did not converge (c too large)");
}

}  // namespace

PoissonComparisonResult poisson_cycle_comparison(int n, int L, const GSpec& g, int cap) {
  if (n < 1) throw ParameterError("comparison requires n >= 1");
  if (L < 1 || L > n) throw ParameterError("comparison requires 1 <= L <= n");
  if (n > cap) {
    throw ParameterError("exact enumeration of " + std::to_string(n) +
                         "! permutations exceeds the cap (" + std::to_string(cap) + ")");
  }

  GSpec gg = g;
  if (auto* ep = std::get_if<GExpPoly>(&gg)) {
    if (ep->a < 0.0 || ep->b < 0.0) throw ParameterError("g coefficients must be >= 0");
    if (ep->m < 2) throw ParameterError("g uniformity must be >= 2");
    if (ep->b > 0.0 && L < 2) {
      throw ParameterError("g depends on the 2-cycle count through b > 0; L must be >= 2");
    }
    if (ep->truncation <= 0) ep->truncation = n;  // bounded support keeps series finite
  } else {
    const auto& ind = std::get<GFixedPointIndicator>(gg);
    if (ind.target < 0 || ind.target > 20) {
      throw ParameterError("indicator target must lie in [0, 20]");
    }
  }

  // Left side: exact average over S_n, grouped by cycle type.
  const double total_perms = static_cast<double>(factorial(n));
  double lhs = 0.0;
  for (const CycleType& ct : all_cycle_types(n)) {
    lhs += static_cast<double>(conjugacy_class_size(ct)) * eval_g(gg, ct.count(1), ct.count(2));
  }
  lhs /= total_perms;

  // Right side: exp(H_L) * E[g(Z_1,..,Z_L)], Z_t ~ Poisson(1/t) independent.
  double harmonic = 0.0;
  for (int t = 1; t <= L; ++t) harmonic += 1.0 / t;

  double expectation = 0.0;
  if (const auto* ind = std::get_if<GFixedPointIndicator>(&gg)) {
    // g depends on Z_1 only: P(Z_1 = target) with Z_1 ~ Poisson(1).
    expectation = std::exp(-1.0) / static_cast<double>(factorial(ind->target));
  } else {
    const auto& ep = std::get<GExpPoly>(gg);
    double z1_term = std::exp(-1.0);  // P(Z_1 = 0)
    for (int z1 = 0; z1 <= ep.truncation; ++z1) {
      if (z1 > 0) z1_term /= z1;  // P(Z_1 = z1) = e^-1 / z1!
      const double c1 = static_cast<double>(binomial(z1, ep.m));
      double factor = std::exp(ep.a * c1);
      if (ep.b > 0.0 && L >= 2) {
        const double c = ep.b * static_cast<double>(binomial(z1, ep.m - 2));
        factor *= poisson_exp_moment_series(0.5, c);
      }
      expectation += z1_term * factor;
    }
  }
  const double rhs = std::exp(harmonic) * expectation;

  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-9)};
}

}  // namespace hypercorr
