#pragma once

#include <cstdint>
#include <initializer_list>

namespace hypercorr {

// Counter-based pseudo-random stream: output i is a 64-bit avalanche mix of
// (key, i), so a stream is fully determined by its key and how many values
// were consumed. Independent streams for parallel work are derived with
// child(), which hashes a path of integers into a fresh key; distinct paths
// (including paths of different length) give unrelated keys. This is what
// makes every simulation in this project reproducible regardless of thread
// count: work units never share a stream, they each derive their own.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : key_(key) {}

  // Next raw 64-bit value.
  std::uint64_t next_u64();

  // Uniform on the open interval (0,1); never returns 0 or 1.
  double next_unit();

  // Standard normal via the inverse CDF applied to next_unit(): exactly one
  // uniform is consumed per normal, which keeps draw counts predictable.
  double next_normal();

  // Uniform integer in [0, bound), unbiased via rejection. bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound);

  // Derive an independent stream from this stream's key and a path of ids.
  RngStream child(std::initializer_list<std::uint64_t> path) const;
  RngStream child(std::uint64_t a) const { return child({a}); }
  RngStream child(std::uint64_t a, std::uint64_t b) const { return child({a, b}); }
  RngStream child(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    return child({a, b, c});
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Inverse of the standard normal CDF, accurate to ~1e-15 relative error for
// p in (0,1) (rational minimax approximations on three regimes).
double normal_quantile(double p);

}  // namespace hypercorr
