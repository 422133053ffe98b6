#include "hypercorr/models.hpp"

#include <cmath>

#include "hypercorr/errors.hpp"
#include "hypercorr/orbit.hpp"

namespace hypercorr {

std::string to_string(Hypothesis h) { return h == Hypothesis::kNull ? "h0" : "h1"; }

Hypothesis hypothesis_from_string(const std::string& s) {
  if (s == "h0") return Hypothesis::kNull;
  if (s == "h1") return Hypothesis::kPlanted;
  throw ParameterError("hypothesis must be \"h0\" or \"h1\", got \"" + s + "\"");
}

GaussianModelSpec::GaussianModelSpec(int n, int m, double rho) : n(n), m(m), rho(rho) {
  if (m < 1 || m > n) throw ParameterError("gaussian model requires 1 <= m <= n");
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw ParameterError("gaussian correlation must satisfy 0 <= rho < 1");
  }
}

ERModelSpec::ERModelSpec(int n, int m, double p, double s) : n(n), m(m), p(p), s(s) {
  if (m < 1 || m > n) throw ParameterError("er model requires 1 <= m <= n");
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("er parent probability must satisfy 0 < p < 1");
  if (!(s >= 0.0 && s <= 1.0)) throw ParameterError("er subsampling must satisfy 0 <= s <= 1");
}

int model_n(const ModelSpec& spec) {
  return std::visit([](const auto& s) { return s.n; }, spec);
}

int model_m(const ModelSpec& spec) {
  return std::visit([](const auto& s) { return s.m; }, spec);
}

std::string model_name(const ModelSpec& spec) {
  return std::holds_alternative<GaussianModelSpec>(spec) ? "gaussian" : "er";
}

SamplePair sample_gaussian(const GaussianModelSpec& spec, Hypothesis h, RngStream& rng) {
  AdjacencyTensor a1(spec.n, spec.m);
  AdjacencyTensor a2(spec.n, spec.m);
  const std::uint64_t edges = a1.edge_count();

  if (h == Hypothesis::kNull) {
    for (std::uint64_t r = 0; r < edges; ++r) a1[r] = rng.next_normal();
    for (std::uint64_t r = 0; r < edges; ++r) a2[r] = rng.next_normal();
    return {std::move(a1), std::move(a2), std::nullopt};
  }

  Permutation pi = uniform_random_permutation(spec.n, rng);
  for (std::uint64_t r = 0; r < edges; ++r) a1[r] = rng.next_normal();
  const double tail = std::sqrt(1.0 - spec.rho * spec.rho);
  const EdgeSpace& space = a1.edges();
  for (std::uint64_t r = 0; r < edges; ++r) {
    const double z = rng.next_normal();
    const std::uint64_t image = space.rank(apply_to_edge(pi, space.unrank(r)));
    a2[image] = spec.rho * a1[r] + tail * z;
  }
  return {std::move(a1), std::move(a2), std::move(pi)};
}

SamplePair sample_er(const ERModelSpec& spec, Hypothesis h, RngStream& rng) {
  AdjacencyTensor a1(spec.n, spec.m);
  AdjacencyTensor a2(spec.n, spec.m);
  const std::uint64_t edges = a1.edge_count();
  const double marginal = spec.p * spec.s;

  if (h == Hypothesis::kNull) {
    for (std::uint64_t r = 0; r < edges; ++r) a1[r] = rng.next_unit() < marginal ? 1.0 : 0.0;
    for (std::uint64_t r = 0; r < edges; ++r) a2[r] = rng.next_unit() < marginal ? 1.0 : 0.0;
    return {std::move(a1), std::move(a2), std::nullopt};
  }

  Permutation pi = uniform_random_permutation(spec.n, rng);
  for (std::uint64_t r = 0; r < edges; ++r) a1[r] = rng.next_unit() < marginal ? 1.0 : 0.0;
  // P(A2=1 | A1=0): the matched parent edge may still be present (prob
  // p(1-s)/(1-ps) given A1=0) and then survives its own subsample.
  const double absent = spec.p * spec.s * (1.0 - spec.s) / (1.0 - spec.p * spec.s);
  const EdgeSpace& space = a1.edges();
  for (std::uint64_t r = 0; r < edges; ++r) {
    const double u = rng.next_unit();
    const double prob = a1[r] == 1.0 ? spec.s : absent;
    const std::uint64_t image = space.rank(apply_to_edge(pi, space.unrank(r)));
    a2[image] = u < prob ? 1.0 : 0.0;
  }
  return {std::move(a1), std::move(a2), std::move(pi)};
}

SamplePair sample(const ModelSpec& spec, Hypothesis h, RngStream& rng) {
  if (const auto* g = std::get_if<GaussianModelSpec>(&spec)) return sample_gaussian(*g, h, rng);
  return sample_er(std::get<ERModelSpec>(spec), h, rng);
}

double er_correlation(double p, double s) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("er_correlation requires 0 < p < 1");
  if (!(s >= 0.0 && s <= 1.0)) throw ParameterError("er_correlation requires 0 <= s <= 1");
  if (p * s >= 1.0) throw ParameterError("er_correlation undefined at p*s = 1");
  return s * (1.0 - p) / (1.0 - p * s);
}

}  // namespace hypercorr
