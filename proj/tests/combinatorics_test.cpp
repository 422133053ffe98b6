#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "hypercorr/combinatorics.hpp"
#include "hypercorr/errors.hpp"
#include "hypercorr/orbit.hpp"
#include "hypercorr/permutation.hpp"
#include "hypercorr/rng.hpp"

namespace hypercorr {
namespace {

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(4, 3), 4u);
  EXPECT_EQ(binomial(3, 3), 1u);
  EXPECT_EQ(binomial(10, 3), 120u);
  EXPECT_EQ(binomial(0, 0), 1u);
  EXPECT_EQ(binomial(5, 0), 1u);
  EXPECT_EQ(binomial(5, 6), 0u);
  EXPECT_EQ(binomial(5, -1), 0u);
  EXPECT_EQ(binomial(52, 26), 495918532948104ull);
}

TEST(Binomial, OverflowRejected) {
  EXPECT_THROW(binomial(200, 100), ParameterError);
  EXPECT_EQ(binomial(67, 33), 14226520737620288370ull);  // largest row that fits
}

TEST(HyperedgeIndexType, ValidatesSortedDistinct) {
  EXPECT_NO_THROW(HyperedgeIndex({1, 2, 3}));
  EXPECT_THROW(HyperedgeIndex({2, 1, 3}), ParameterError);
  EXPECT_THROW(HyperedgeIndex({1, 1, 3}), ParameterError);
  EXPECT_THROW(HyperedgeIndex({0, 1, 2}), ParameterError);
  EXPECT_THROW(HyperedgeIndex(std::vector<int>{}), ParameterError);
}

TEST(EnumerateHyperedges, N4M3Lexicographic) {
  const auto edges = enumerate_hyperedges(4, 3);
  ASSERT_EQ(edges.size(), 4u);
  EXPECT_EQ(edges[0], HyperedgeIndex({1, 2, 3}));
  EXPECT_EQ(edges[1], HyperedgeIndex({1, 2, 4}));
  EXPECT_EQ(edges[2], HyperedgeIndex({1, 3, 4}));
  EXPECT_EQ(edges[3], HyperedgeIndex({2, 3, 4}));
}

TEST(EnumerateHyperedges, SingleEdgeAndCounts) {
  const auto single = enumerate_hyperedges(3, 3);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0], HyperedgeIndex({1, 2, 3}));
  EXPECT_EQ(enumerate_hyperedges(10, 3).size(), 120u);
}

TEST(EnumerateHyperedges, InvalidArityRejected) {
  EXPECT_THROW(enumerate_hyperedges(3, 4), ParameterError);
  EXPECT_THROW(enumerate_hyperedges(3, 0), ParameterError);
}

TEST(EdgeSpaceIndexing, RankUnrankInverse) {
  for (int n : {3, 5, 8, 10}) {
    for (int m = 1; m <= std::min(n, 4); ++m) {
      const EdgeSpace space(n, m);
      const auto edges = enumerate_hyperedges(n, m);
      ASSERT_EQ(edges.size(), space.count());
      for (std::uint64_t r = 0; r < space.count(); ++r) {
        EXPECT_EQ(space.rank(edges[r]), r);
        EXPECT_EQ(space.unrank(r), edges[r]);
      }
    }
  }
}

TEST(ApplyToEdge, IdentityAndTranspositionAndCycle) {
  const auto id4 = Permutation::identity(4);
  for (const auto& e : enumerate_hyperedges(4, 3)) {
    EXPECT_EQ(apply_to_edge(id4, e), e);
  }
  const Permutation swap12({2, 1, 3, 4});
  EXPECT_EQ(apply_to_edge(swap12, HyperedgeIndex({1, 3, 4})), HyperedgeIndex({2, 3, 4}));
  const Permutation rot3({2, 3, 1});
  EXPECT_EQ(apply_to_edge(rot3, HyperedgeIndex({1, 2})), HyperedgeIndex({2, 3}));
}

TEST(PermutationType, ValidatesBijection) {
  EXPECT_THROW(Permutation({1, 1, 3}), ParameterError);
  EXPECT_THROW(Permutation({0, 1, 2}), ParameterError);
  EXPECT_THROW(Permutation({1, 2, 4}), ParameterError);
  EXPECT_THROW(Permutation({}), ParameterError);
}

TEST(PermutationType, GroupAxioms) {
  RngStream rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Permutation pi = uniform_random_permutation(6, rng);
    const Permutation sigma = uniform_random_permutation(6, rng);
    EXPECT_EQ(pi.compose(pi.inverse()), Permutation::identity(6));
    EXPECT_EQ(pi.inverse().compose(pi), Permutation::identity(6));
    // compose applies sigma first.
    for (int v = 1; v <= 6; ++v) {
      EXPECT_EQ(pi.compose(sigma).apply(v), pi.apply(sigma.apply(v)));
    }
  }
}

TEST(CycleDecomposition, Examples) {
  const auto [c1, t1] = cycle_decomposition(Permutation::identity(5));
  EXPECT_EQ(c1.size(), 5u);
  EXPECT_EQ(t1.count(1), 5u);

  // (1 2)(3 4 5)
  const auto [c2, t2] = cycle_decomposition(Permutation({2, 1, 4, 5, 3}));
  ASSERT_EQ(c2.size(), 2u);
  EXPECT_EQ(c2[0], (std::vector<int>{1, 2}));
  EXPECT_EQ(c2[1], (std::vector<int>{3, 4, 5}));
  EXPECT_EQ(t2.count(2), 1u);
  EXPECT_EQ(t2.count(3), 1u);
  EXPECT_EQ(t2.count(1), 0u);

  // (1 2)(3)(4)
  const auto [c3, t3] = cycle_decomposition(Permutation({2, 1, 3, 4}));
  EXPECT_EQ(c3.size(), 3u);
  EXPECT_EQ(t3.count(1), 2u);
  EXPECT_EQ(t3.count(2), 1u);
}

TEST(CycleDecomposition, PartitionCoversAllLabels) {
  RngStream rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Permutation pi = uniform_random_permutation(8, rng);
    const auto [cycles, ct] = cycle_decomposition(pi);
    std::vector<int> seen;
    for (const auto& cycle : cycles) seen.insert(seen.end(), cycle.begin(), cycle.end());
    std::sort(seen.begin(), seen.end());
    std::vector<int> want(8);
    std::iota(want.begin(), want.end(), 1);
    EXPECT_EQ(seen, want);
    EXPECT_EQ(ct.n(), 8);
  }
}

TEST(RepresentativeOfCycleType, RoundTripsType) {
  CycleType ct(std::map<int, std::uint64_t>{{1, 2}, {2, 1}, {3, 1}});
  const Permutation rep = representative_of_cycle_type(ct);
  EXPECT_EQ(rep.size(), 7);
  const auto [cycles, back] = cycle_decomposition(rep);
  EXPECT_EQ(back, ct);
}

TEST(OrbitProfileTraversal, IdentityAllFixed) {
  for (int n : {4, 6}) {
    for (int m : {2, 3}) {
      const auto profile = orbit_profile(Permutation::identity(n), m);
      EXPECT_EQ(profile.count(1), binomial(n, m));
      EXPECT_EQ(profile.counts.size(), 1u);
      EXPECT_EQ(profile.total_edges(), binomial(n, m));
    }
  }
}

TEST(OrbitProfileTraversal, ThreeCycleOnPairs) {
  // {1,2} -> {2,3} -> {1,3} -> {1,2}: one orbit of length 3.
  const auto profile = orbit_profile(Permutation({2, 3, 1}), 2);
  EXPECT_EQ(profile.count(3), 1u);
  EXPECT_EQ(profile.counts.size(), 1u);
}

TEST(OrbitProfileTraversal, TranspositionOnTriples) {
  // (1 2): {1,2,3}, {1,2,4} fixed; {1,3,4} <-> {2,3,4}.
  const auto profile = orbit_profile(Permutation({2, 1, 3, 4}), 3);
  EXPECT_EQ(profile.count(1), 2u);
  EXPECT_EQ(profile.count(2), 1u);
}

TEST(OrbitProfileTraversal, TotalEdgesExhaustive) {
  for (int n = 2; n <= 7; ++n) {
    const auto perms = all_permutations(n);
    for (int m = 2; m <= std::min(n, 4); ++m) {
      for (const auto& pi : perms) {
        EXPECT_EQ(orbit_profile(pi, m).total_edges(), binomial(n, m));
      }
    }
  }
}

TEST(FixedEdgeClosedForm, SmallCasesByHand) {
  using Counts = std::map<int, std::uint64_t>;
  EXPECT_EQ(fixed_edge_count_closed_form(CycleType(Counts{{1, 3}}), 3), 1u);  // C(3,3)
  EXPECT_EQ(fixed_edge_count_closed_form(CycleType(Counts{{1, 2}, {2, 1}}), 3), 2u);
  for (int n : {4, 5, 6}) {
    for (int m : {2, 3, 4}) {
      EXPECT_EQ(fixed_edge_count_closed_form(CycleType(Counts{{1, std::uint64_t(n)}}), m),
                binomial(n, m));
    }
  }
}

TEST(FixedEdgeClosedForm, MatchesTraversalOnS6) {
  const auto perms = all_permutations(6);
  ASSERT_EQ(perms.size(), 720u);
  for (int m : {2, 3}) {
    for (const auto& pi : perms) {
      const auto [cycles, ct] = cycle_decomposition(pi);
      EXPECT_EQ(fixed_edge_count_closed_form(ct, m), orbit_profile(pi, m).count(1));
    }
  }
}

TEST(OrbitProfileTraversal, ClassFunction) {
  RngStream rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Permutation pi = uniform_random_permutation(7, rng);
    const Permutation tau = uniform_random_permutation(7, rng);
    const Permutation conj = tau.compose(pi).compose(tau.inverse());
    for (int m : {2, 3}) {
      EXPECT_EQ(orbit_profile(pi, m), orbit_profile(conj, m));
    }
  }
}

TEST(ApplyToEdge, CompositionAction) {
  RngStream rng(23);
  const auto edges = enumerate_hyperedges(6, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const Permutation pi = uniform_random_permutation(6, rng);
    const Permutation sigma = uniform_random_permutation(6, rng);
    for (const auto& e : edges) {
      EXPECT_EQ(apply_to_edge(pi.compose(sigma), e), apply_to_edge(pi, apply_to_edge(sigma, e)));
    }
  }
}

TEST(UniformRandomPermutation, SizeOneIsIdentity) {
  RngStream rng(1);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(uniform_random_permutation(1, rng), Permutation::identity(1));
  }
}

TEST(UniformRandomPermutation, Deterministic) {
  RngStream a(99), b(99);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(uniform_random_permutation(6, a), uniform_random_permutation(6, b));
  }
}

TEST(UniformRandomPermutation, CycleTypeFrequenciesMatchS6) {
  // Exact conjugacy-class sizes of S6, keyed by sorted cycle-length multiset.
  const std::map<std::map<int, std::uint64_t>, double> class_sizes = {
      {{{1, 6}}, 1},           {{{1, 4}, {2, 1}}, 15}, {{{1, 2}, {2, 2}}, 45},
      {{{2, 3}}, 15},          {{{1, 3}, {3, 1}}, 40}, {{{1, 1}, {2, 1}, {3, 1}}, 120},
      {{{3, 2}}, 40},          {{{1, 2}, {4, 1}}, 90}, {{{2, 1}, {4, 1}}, 90},
      {{{1, 1}, {5, 1}}, 144}, {{{6, 1}}, 120}};

  const int kDraws = 60000;
  RngStream rng(2024);
  std::map<std::map<int, std::uint64_t>, int> observed;
  for (int i = 0; i < kDraws; ++i) {
    const Permutation pi = uniform_random_permutation(6, rng);
    observed[cycle_decomposition(pi).second.counts]++;
  }
  double total_checked = 0;
  for (const auto& [type, size] : class_sizes) {
    const double p = size / 720.0;
    const double se = std::sqrt(p * (1 - p) / kDraws);
    const double freq = observed[type] / static_cast<double>(kDraws);
    EXPECT_NEAR(freq, p, 4 * se) << "cycle type with " << type.size() << " distinct lengths";
    total_checked += freq;
  }
  EXPECT_DOUBLE_EQ(total_checked, 1.0);  // no unknown cycle types observed
}

TEST(CycleNotation, FormatAndParse) {
  EXPECT_EQ(format_cycles(Permutation::identity(4)), "()");
  EXPECT_EQ(format_cycles(Permutation({2, 1, 4, 5, 3})), "(1 2)(3 4 5)");
  EXPECT_EQ(parse_cycles("(1 2)(3 4 5)", 5), Permutation({2, 1, 4, 5, 3}));
  EXPECT_EQ(parse_cycles("(1,2)", 4), Permutation({2, 1, 3, 4}));
  EXPECT_EQ(parse_cycles("()", 3), Permutation::identity(3));
  EXPECT_EQ(parse_cycles("id", 3), Permutation::identity(3));
  EXPECT_THROW(parse_cycles("(1 2)(2 3)", 4), ParameterError);  // duplicate label
  EXPECT_THROW(parse_cycles("(1 9)", 4), ParameterError);       // out of range
}

TEST(CycleNotation, RoundTripsRandomPermutations) {
  RngStream rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Permutation pi = uniform_random_permutation(7, rng);
    EXPECT_EQ(parse_cycles(format_cycles(pi), 7), pi);
  }
}

}  // namespace
}  // namespace hypercorr
