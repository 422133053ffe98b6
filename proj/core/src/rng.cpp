#include "hypercorr/rng.hpp"

#include <cmath>
#include <limits>

#include "hypercorr/errors.hpp"

namespace hypercorr {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// 64-bit finalizer (SplitMix64): bijective, full avalanche.
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

std::uint64_t fold(std::uint64_t h, std::uint64_t v) {
  return mix64((h ^ v) * 0x2545f4914f6cdd1dull + kGolden);
}

}  // namespace

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double RngStream::next_unit() {
  // 53 random bits, centered: ((r >> 11) + 0.5) / 2^53 lies strictly in (0,1).
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_normal() { return normal_quantile(next_unit()); }

std::uint64_t RngStream::next_below(std::uint64_t bound) {
  if (bound == 0) throw ParameterError("next_below: bound must be positive");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % bound;
  for (;;) {
    const std::uint64_t u = next_u64();
    if (u < limit) return u % bound;
  }
}

RngStream RngStream::child(std::initializer_list<std::uint64_t> path) const {
  // Fold the path length first so paths of different lengths cannot collide
  // (e.g. child(0) vs child(0, 0)).
  std::uint64_t k = fold(key_ ^ 0xc2b2ae3d27d4eb4full, path.size());
  for (std::uint64_t v : path) k = fold(k, v);
  return RngStream(k);
}

// Rational approximation of the inverse normal CDF (Wichura's PPND16-style
// scheme): a central polynomial ratio in q = p - 1/2 for |q| <= 0.425 and two
// tail ratios in r = sqrt(-log(min(p,1-p))).
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ParameterError("normal_quantile: p must lie strictly in (0,1)");
  }

  static constexpr double a[8] = {
      3.3871328727963666080e+0, 1.3314166789178437745e+2, 1.9715909503065514427e+3,
      1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
      3.3430575583588128105e+4, 2.5090809287301226727e+3};
  static constexpr double b[8] = {
      1.0,                      4.2313330701600911252e+1, 6.8718700749205790830e+2,
      5.3941960214247511077e+3, 2.1213794301586595867e+4, 3.9307895800092710610e+4,
      2.8729085735721942674e+4, 5.2264952788528545610e+3};
  static constexpr double c[8] = {
      1.42343711074968357734e+0, 4.63033784615654529590e+0, 5.76949722146069140550e+0,
      3.64784832476320460504e+0, 1.27045825245236838258e+0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static constexpr double d[8] = {
      1.0,                       2.05319162663775882187e+0, 1.67638483018380384940e+0,
      6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
      5.47593808499534494600e-4, 1.05075007164441684324e-9};
  static constexpr double e[8] = {
      6.65790464350110377720e+0, 5.46378491116411436990e+0, 1.78482653991729133580e+0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static constexpr double f[8] = {
      1.0,                       5.99832206555887937690e-1, 1.36929880922735805310e-1,
      1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
      1.42151175831644588870e-7, 2.04426310338993978564e-15};

  auto ratio = [](const double (&num)[8], const double (&den)[8], double r) {
    double u = num[7], v = den[7];
    for (int i = 6; i >= 0; --i) {
      u = u * r + num[i];
      v = v * r + den[i];
    }
    return u / v;
  };

  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * ratio(a, b, r);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    value = ratio(c, d, r - 1.6);
  } else {
    value = ratio(e, f, r - 5.0);
  }
  return (q < 0.0) ? -value : value;
}

}  // namespace hypercorr
