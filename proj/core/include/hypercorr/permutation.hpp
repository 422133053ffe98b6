#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hypercorr/rng.hpp"

namespace hypercorr {

// A bijection on the vertex labels {1..n}, stored as the image array:
// image()[i-1] is where label i goes.
class Permutation {
 public:
  // Validates that the array is a bijection on {1..n}.
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(image_.size()); }
  int apply(int v) const { return image_[v - 1]; }
  const std::vector<int>& image() const { return image_; }

  // compose(sigma): the map v -> this(sigma(v)), i.e. sigma acts first.
  Permutation compose(const Permutation& sigma) const;
  Permutation inverse() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> image_;
};

// Cycle-length histogram of a permutation: counts[k] is the number of
// k-cycles; sum of k * counts[k] equals n.
struct CycleType {
  std::map<int, std::uint64_t> counts;

  CycleType() = default;
  explicit CycleType(std::map<int, std::uint64_t> c);

  int n() const;
  std::uint64_t count(int k) const;
  bool operator==(const CycleType&) const = default;
};

// Disjoint cycles covering {1..n} (each cycle starts at its smallest element,
// cycles listed by increasing start) plus the cycle-length histogram.
std::pair<std::vector<std::vector<int>>, CycleType> cycle_decomposition(const Permutation& pi);

// Canonical permutation with the given cycle type: cycles laid out over
// 1..n in increasing cycle length.
Permutation representative_of_cycle_type(const CycleType& ct);

// Unbiased Fisher-Yates shuffle driven by the stream; every permutation of
// {1..n} is equally likely.
Permutation uniform_random_permutation(int n, RngStream& rng);

// Cycle-notation text, e.g. "(1 2)(3 4 5)". Fixed points are omitted;
// identity is rendered as "()".
std::string format_cycles(const Permutation& pi);

// Parses cycle notation for a permutation on {1..n}. Accepts spaces or commas
// between labels, omitted fixed points, and "id"/"identity"/"()" for the
// identity.
Permutation parse_cycles(const std::string& text, int n);

}  // namespace hypercorr
