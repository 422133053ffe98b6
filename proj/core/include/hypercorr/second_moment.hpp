#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace hypercorr {

enum class SecondMomentModel { kGaussian, kEr };
enum class EnumerationPath { kCycleTypes, kFullPermutations };

std::string to_string(EnumerationPath path);

// Average over a uniformly random relative matching sigma of the per-orbit
// moment product; equals the second moment of the likelihood ratio of the
// correlated pair model against independence. Always >= 1, with equality at
// rho = 0.
struct SecondMomentResult {
  double value = 1.0;
  int n = 0;
  int m = 0;
  double rho = 0.0;
  SecondMomentModel model = SecondMomentModel::kGaussian;
  std::uint64_t permutations_enumerated = 0;  // always n!
  EnumerationPath path = EnumerationPath::kCycleTypes;
};

// (1/n!) * sum over sigma of prod_k (1 - rho^(2k))^(-N_k(sigma)), where N_k
// is sigma's orbit-length histogram on m-edges. The cycle-types path groups
// sigma by conjugacy class (orbit profiles are class functions) with class
// size n!/prod(k^(n_k) n_k!); the full path enumerates all n! permutations
// and serves as its oracle. Per-term products are accumulated in log space.
SecondMomentResult second_moment_gaussian(int n, int m, double rho,
                                          EnumerationPath path = EnumerationPath::kCycleTypes,
                                          int cap = 8);

// Same average with per-orbit factor (1 + rho^(2k))^(N_k).
SecondMomentResult second_moment_er(int n, int m, double rho,
                                    EnumerationPath path = EnumerationPath::kCycleTypes,
                                    int cap = 8);

// (1/n!) * sum over sigma of exp(N_1(sigma) * rho^2 / (1 - rho^2)): the
// fixed-orbit exponential moment that controls the matched-edge count.
double fixed_orbit_exponential_moment(int n, int m, double rho,
                                      EnumerationPath path = EnumerationPath::kCycleTypes,
                                      int cap = 8);

// Test-function library for the cycle-count comparison. The exponential-
// polynomial form mirrors the moments this project actually needs; general g
// would invite divergent series on the Poisson side.
struct GExpPoly {
  double a = 0.0;  // coefficient on C(n1, m)
  double b = 0.0;  // coefficient on n2 * C(n1, m-2)
  int m = 3;
  int truncation = 0;  // g vanishes for n1 > truncation (0 = use n)
};
struct GFixedPointIndicator {
  int target = 0;  // g = 1{n1 == target}
};
using GSpec = std::variant<GExpPoly, GFixedPointIndicator>;

struct PoissonComparisonResult {
  double lhs = 0.0;  // exact E[g(n_1..n_L)] over uniform permutations of {1..n}
  double rhs = 0.0;  // exp(H_L) * E[g(Z_1..Z_L)], Z_t independent Poisson(1/t)
  bool holds = false;
};

// Checks E[g(cycle counts)] <= exp(1 + 1/2 + ... + 1/L) * E[g(Z_1..Z_L)].
// The left side is exact enumeration (n <= cap); the right side sums the
// Poisson series until the remaining tail is below 1e-12 of the total and is
// cross-checked against the closed-form Poisson moment generating function.
// g must depend only on the first L cycle counts, so GExpPoly with b > 0
// requires L >= 2.
PoissonComparisonResult poisson_cycle_comparison(int n, int L, const GSpec& g, int cap = 8);

}  // namespace hypercorr
