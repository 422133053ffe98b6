#pragma once

#include <optional>
#include <string>
#include <variant>

#include "hypercorr/permutation.hpp"
#include "hypercorr/rng.hpp"
#include "hypercorr/tensor.hpp"

namespace hypercorr {

enum class Hypothesis { kNull, kPlanted };  // h0: independent; h1: correlated

std::string to_string(Hypothesis h);
Hypothesis hypothesis_from_string(const std::string& s);

// Weighted pair model: every edge weight is standard normal; under h1 the
// weights of an edge and its image under a hidden uniform permutation are
// jointly normal with correlation rho. rho = 1 is excluded (the correlated
// pair would be degenerate).
struct GaussianModelSpec {
  int n = 0;
  int m = 0;
  double rho = 0.0;

  GaussianModelSpec(int n, int m, double rho);
};

// Unweighted pair model: marginally every edge is Bernoulli(p*s). Under h1,
// conditionally on the first tensor, the matched edge of the second is
// Bernoulli(s) when the first edge is present and Bernoulli(p*s*(1-s)/(1-p*s))
// when absent. That conditional law is exactly what independent subsampling
// (keep probability s) of a shared parent with edge probability p induces,
// with exact marginals by construction.
struct ERModelSpec {
  int n = 0;
  int m = 0;
  double p = 0.0;
  double s = 0.0;

  ERModelSpec(int n, int m, double p, double s);
};

using ModelSpec = std::variant<GaussianModelSpec, ERModelSpec>;

int model_n(const ModelSpec& spec);
int model_m(const ModelSpec& spec);
std::string model_name(const ModelSpec& spec);  // "gaussian" | "er"

// A drawn pair of tensors. `planted` holds the hidden alignment under h1 for
// harness-side scoring only; no test statistic may look at it.
struct SamplePair {
  AdjacencyTensor a1;
  AdjacencyTensor a2;
  std::optional<Permutation> planted;
};

// Draw discipline shared by both samplers (this is the seed contract): under
// h1 the hidden permutation is drawn first; then A1 consumes one draw per
// edge in rank order; then A2 consumes one draw per edge, again iterating in
// A1's rank order. Identical (spec, hypothesis, stream) always reproduces the
// identical SamplePair bit for bit.
SamplePair sample_gaussian(const GaussianModelSpec& spec, Hypothesis h, RngStream& rng);
SamplePair sample_er(const ERModelSpec& spec, Hypothesis h, RngStream& rng);
SamplePair sample(const ModelSpec& spec, Hypothesis h, RngStream& rng);

// Correlation of matched edge indicators under the shared-parent coupling:
// s(1-p)/(1-p*s).
double er_correlation(double p, double s);

}  // namespace hypercorr
