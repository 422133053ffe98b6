#include "hypercorr/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hypercorr/errors.hpp"
#include "hypercorr/orbit.hpp"

namespace hypercorr {

namespace {

void require_same_shape(const AdjacencyTensor& a1, const AdjacencyTensor& a2) {
  if (a1.n() != a2.n() || a1.m() != a2.m()) {
    throw ParameterError("tensors have different shapes: (" + std::to_string(a1.n()) + "," +
                         std::to_string(a1.m()) + ") vs (" + std::to_string(a2.n()) + "," +
                         std::to_string(a2.m()) + ")");
  }
}

// Flattened edge list plus inlined rank computation for the inner loops of
// the maximizers: scoring one matching is a single pass over the edge ranks.
class MatchScore {
 public:
  MatchScore(const AdjacencyTensor& a1, const AdjacencyTensor& a2)
      : space_(a1.edges()), a1_(a1.values()), a2_(a2.values()), n_(a1.n()), m_(a1.m()) {
    verts_.reserve(a1.edge_count() * static_cast<std::uint64_t>(m_));
    for (std::uint64_t r = 0; r < a1.edge_count(); ++r) {
      for (int v : space_.unrank(r).vertices) verts_.push_back(v - 1);
    }
    buf_.resize(m_);
  }

  // img0[v] = image of 0-based vertex v, 0-based.
  double eval(const int* img0) {
    double total = 0.0;
    const int* vp = verts_.data();
    const std::uint64_t count = verts_.size() / static_cast<std::uint64_t>(m_);
    for (std::uint64_t r = 0; r < count; ++r, vp += m_) {
      for (int i = 0; i < m_; ++i) {
        // Insertion sort keeps the image tuple strictly increasing.
        int x = img0[vp[i]];
        int j = i;
        while (j > 0 && buf_[j - 1] > x) {
          buf_[j] = buf_[j - 1];
          --j;
        }
        buf_[j] = x;
      }
      std::uint64_t rank = 0;
      int prev = -1;
      for (int i = 0; i < m_; ++i) {
        rank += space_.choose(n_ - 1 - prev, m_ - i) - space_.choose(n_ - buf_[i], m_ - i);
        prev = buf_[i];
      }
      total += a1_[r] * a2_[rank];
    }
    return total;
  }

 private:
  const EdgeSpace& space_;
  const std::vector<double>& a1_;
  const std::vector<double>& a2_;
  int n_, m_;
  std::vector<int> verts_;
  std::vector<int> buf_;
};

std::vector<int> to_one_based(const std::vector<int>& img0) {
  std::vector<int> img(img0.size());
  for (std::size_t i = 0; i < img0.size(); ++i) img[i] = img0[i] + 1;
  return img;
}

}  // namespace

std::string to_string(StatisticMethod m) {
  switch (m) {
    case StatisticMethod::kExact: return "exact";
    case StatisticMethod::kHeuristic: return "heuristic";
    case StatisticMethod::kCalibrated: return "calibrated";
  }
  return "unknown";
}

double t_of_pi(const AdjacencyTensor& a1, const AdjacencyTensor& a2, const Permutation& pi) {
  require_same_shape(a1, a2);
  if (pi.size() != a1.n()) {
    throw ParameterError("matching permutation size does not match tensor n");
  }
  const EdgeSpace& space = a1.edges();
  double total = 0.0;
  for (std::uint64_t r = 0; r < a1.edge_count(); ++r) {
    total += a1[r] * a2[space.rank(apply_to_edge(pi, space.unrank(r)))];
  }
  return total;
}

TestOutcome max_statistic_exact(const AdjacencyTensor& a1, const AdjacencyTensor& a2, int limit) {
  require_same_shape(a1, a2);
  const int n = a1.n();
  if (n > limit) {
    throw ParameterError("exact maximization over " + std::to_string(n) +
                         "! matchings exceeds the cost cap (limit " + std::to_string(limit) +
                         "); use the heuristic");
  }
  MatchScore score(a1, a2);
  std::vector<int> img0(n);
  std::iota(img0.begin(), img0.end(), 0);
  std::vector<int> best = img0;
  double best_value = score.eval(img0.data());
  // Lexicographic enumeration with strict improvement keeps the
  // lexicographically smallest argmax on ties.
  while (std::next_permutation(img0.begin(), img0.end())) {
    const double v = score.eval(img0.data());
    if (v > best_value) {
      best_value = v;
      best = img0;
    }
  }
  return {best_value, std::nullopt, false, Permutation(to_one_based(best)),
          StatisticMethod::kExact};
}

TestOutcome max_statistic_heuristic(const AdjacencyTensor& a1, const AdjacencyTensor& a2,
                                    int restarts, RngStream& rng) {
  require_same_shape(a1, a2);
  if (restarts < 0) throw ParameterError("restarts must be >= 0");
  const int n = a1.n();
  MatchScore score(a1, a2);

  // Steepest ascent: apply the best strictly improving swap until none exists.
  auto climb = [&](std::vector<int> img0) {
    double current = score.eval(img0.data());
    for (;;) {
      double best_value = current;
      int best_i = -1, best_j = -1;
      for (int i = 0; i < n - 1; ++i) {
        for (int j = i + 1; j < n; ++j) {
          std::swap(img0[i], img0[j]);
          const double v = score.eval(img0.data());
          if (v > best_value) {
            best_value = v;
            best_i = i;
            best_j = j;
          }
          std::swap(img0[i], img0[j]);
        }
      }
      if (best_i < 0) break;
      std::swap(img0[best_i], img0[best_j]);
      current = best_value;
    }
    return std::pair<std::vector<int>, double>{std::move(img0), current};
  };

  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  auto [best, best_value] = climb(identity);

  for (int r = 0; r < restarts; ++r) {
    RngStream restart_rng = rng.child(static_cast<std::uint64_t>(r));
    std::vector<int> start(n);
    const Permutation p = uniform_random_permutation(n, restart_rng);
    for (int i = 0; i < n; ++i) start[i] = p.image()[i] - 1;
    auto [img, value] = climb(std::move(start));
    if (value > best_value || (value == best_value && img < best)) {
      best_value = value;
      best = std::move(img);
    }
  }
  return {best_value, std::nullopt, false, Permutation(to_one_based(best)),
          StatisticMethod::kHeuristic};
}

ThresholdValue gaussian_threshold(int n, int m, double rho) {
  if (m < 1 || m > n) throw ParameterError("threshold requires 1 <= m <= n");
  if (!(rho >= 0.0 && rho < 1.0)) throw ParameterError("threshold requires 0 <= rho < 1");
  const double edges = static_cast<double>(binomial(n, m));
  const double value = rho * edges - std::sqrt(edges) * std::pow(n, 0.25);
  return {value, value <= 0.0};
}

ThresholdValue er_threshold(int n, int m, double p, double s) {
  if (m < 1 || m > n) throw ParameterError("threshold requires 1 <= m <= n");
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("threshold requires 0 < p < 1");
  if (!(s >= 0.0 && s <= 1.0)) throw ParameterError("threshold requires 0 <= s <= 1");
  const double mu = static_cast<double>(binomial(n, m)) * p * s * s;
  if (mu <= 0.0) return {0.0, true};
  const double tau = std::log(static_cast<double>(n)) / std::sqrt(mu);
  if (tau >= 1.0) return {0.0, true};
  const double value = mu * (1.0 - tau);
  return {value, value <= 0.0};
}

double statistic_for_trial(const ModelSpec& spec, Hypothesis h, const StatisticSpec& method,
                           const RngStream& trial_stream) {
  RngStream sampler = trial_stream.child(0);
  const SamplePair pair = sample(spec, h, sampler);
  if (method.method == StatisticMethod::kExact) {
    return max_statistic_exact(pair.a1, pair.a2).statistic;
  }
  if (method.method == StatisticMethod::kHeuristic) {
    RngStream stat_rng = trial_stream.child(1);
    return max_statistic_heuristic(pair.a1, pair.a2, method.restarts, stat_rng).statistic;
  }
  throw ParameterError("statistic method must be exact or heuristic");
}

double calibrated_threshold(const ModelSpec& spec, double level, int trials,
                            const StatisticSpec& method, const RngStream& rng) {
  if (!(level > 0.0 && level <= 1.0)) {
    throw ParameterError("calibration level must lie in (0,1]");
  }
  if (trials < 20) throw ParameterError("calibration needs at least 20 trials");

  std::vector<double> values(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) {
    values[static_cast<std::size_t>(i)] =
        statistic_for_trial(spec, Hypothesis::kNull, method, rng.child(static_cast<std::uint64_t>(i)));
  }
  std::sort(values.begin(), values.end());
  auto idx = static_cast<std::size_t>((1.0 - level) * trials);
  if (idx >= values.size()) idx = values.size() - 1;
  return values[idx];
}

}  // namespace hypercorr
