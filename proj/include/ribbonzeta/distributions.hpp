#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ribbonzeta/errors.hpp"
#include "ribbonzeta/ribbon_graph.hpp"
#include "ribbonzeta/threading.hpp"
#include "ribbonzeta/zeta.hpp"

namespace ribbonzeta {

// Weighted sorted atoms normalized to total mass 1. Duplicate values merge.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;

  EmpiricalDistribution(const std::vector<double>& values,
                        const std::vector<double>& weights = {}) {
    require(!values.empty(), ErrorCode::Empty, "empty sample set");
    require(weights.empty() || weights.size() == values.size(), ErrorCode::InvalidArgument,
            "weights must match values");
    std::map<double, double> merged;
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      double w = weights.empty() ? 1.0 : weights[i];
      require(w > 0.0, ErrorCode::NonPositiveWeight, "weights must be positive");
      merged[values[i]] += w;
      total += w;
    }
    atoms_.reserve(merged.size());
    for (auto [v, w] : merged) atoms_.emplace_back(v, w / total);
  }

  const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }

  double min() const { return atoms_.front().first; }
  double max() const { return atoms_.back().first; }

  double mean() const {
    double s = 0.0;
    for (auto [v, w] : atoms_) s += v * w;
    return s;
  }

  friend bool operator==(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    return a.atoms_ == b.atoms_;
  }

 private:
  std::vector<std::pair<double, double>> atoms_;  // sorted, weights sum to 1
};

inline EmpiricalDistribution empirical(const std::vector<double>& values,
                                       const std::vector<double>& weights = {}) {
  return EmpiricalDistribution(values, weights);
}

// Wasserstein-1 distance via the one-dimensional closed form: the integral
// of |F_mu - F_nu| over the merged breakpoint sequence.
inline double wasserstein1(const EmpiricalDistribution& mu, const EmpiricalDistribution& nu) {
  const auto& a = mu.atoms();
  const auto& b = nu.atoms();
  std::size_t i = 0, j = 0;
  double fa = 0.0, fb = 0.0, prev = 0.0, dist = 0.0;
  bool first = true;
  while (i < a.size() || j < b.size()) {
    double x;
    if (j >= b.size() || (i < a.size() && a[i].first <= b[j].first)) x = a[i].first;
    else x = b[j].first;
    if (!first) dist += std::abs(fa - fb) * (x - prev);
    while (i < a.size() && a[i].first == x) fa += a[i++].second;
    while (j < b.size() && b[j].first == x) fb += b[j++].second;
    prev = x;
    first = false;
  }
  return dist;
}

// Piecewise-linear test function for Kantorovich duality checks. Defined by
// breakpoints; extended with the end slopes beyond the range.
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> points;  // (x, f(x)), x strictly increasing

  double lipschitz_constant() const {
    double lip = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      double dx = points[i].first - points[i - 1].first;
      require(dx > 0.0, ErrorCode::InvalidArgument, "breakpoints must increase");
      lip = std::max(lip, std::abs((points[i].second - points[i - 1].second) / dx));
    }
    return lip;
  }

  double operator()(double x) const {
    require(points.size() >= 2, ErrorCode::InvalidArgument, "need at least two breakpoints");
    if (x <= points.front().first) {
      double s = (points[1].second - points[0].second) / (points[1].first - points[0].first);
      return points.front().second + s * (x - points.front().first);
    }
    if (x >= points.back().first) {
      std::size_t n = points.size();
      double s = (points[n - 1].second - points[n - 2].second) /
                 (points[n - 1].first - points[n - 2].first);
      return points.back().second + s * (x - points.back().first);
    }
    auto it = std::upper_bound(points.begin(), points.end(), std::make_pair(x, 1e300));
    auto lo = *(it - 1);
    auto hi = *it;
    double t = (x - lo.first) / (hi.first - lo.first);
    return lo.second + t * (hi.second - lo.second);
  }
};

// int f d(mu - nu) for a 1-Lipschitz piecewise-linear f; a lower bound for
// wasserstein1 by Kantorovich duality.
inline double kantorovich_bound(const EmpiricalDistribution& mu,
                                const EmpiricalDistribution& nu, const PiecewiseLinear& f) {
  require(f.lipschitz_constant() <= 1.0 + 1e-12, ErrorCode::LipschitzViolation,
          "test function has a slope above 1");
  double s = 0.0;
  for (auto [v, w] : mu.atoms()) s += w * f(v);
  for (auto [v, w] : nu.atoms()) s -= w * f(v);
  return s;
}

// Two-sample Kolmogorov-Smirnov test. Rejects at level alpha when the
// statistic exceeds c(alpha) * sqrt((n+m)/(n m)).
struct KsResult {
  double statistic = 0.0;
  double threshold = 0.0;
  bool reject = false;
};

inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b,
                              double alpha = 0.01) {
  require(!a.empty() && !b.empty(), ErrorCode::Empty, "empty KS sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i; else ++j;
    double fa = static_cast<double>(i) / a.size();
    double fb = static_cast<double>(j) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  // c(alpha) = sqrt(-ln(alpha/2)/2); 1.6276 at alpha = 0.01.
  double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  KsResult r;
  r.statistic = d;
  r.threshold = c * std::sqrt((a.size() + b.size()) /
                              (static_cast<double>(a.size()) * b.size()));
  r.reject = r.statistic > r.threshold;
  return r;
}

struct HistogramBin {
  double lo = 0.0, hi = 0.0;
  double mass = 0.0;
};

// Equal-width histogram. With an explicit range, out-of-range mass is
// clipped into the end bins so golden-file comparisons see all of it.
inline std::vector<HistogramBin> histogram(const EmpiricalDistribution& dist, int bins,
                                           double range_lo = 0.0, double range_hi = -1.0) {
  require(bins >= 2, ErrorCode::InvalidArgument, "need at least 2 bins");
  double lo = range_lo, hi = range_hi;
  if (!(hi > lo)) {
    lo = dist.min();
    hi = dist.max();
    if (hi <= lo) hi = lo + 1.0;
  }
  std::vector<HistogramBin> out(bins);
  double w = (hi - lo) / bins;
  for (int b = 0; b < bins; ++b) {
    out[b].lo = lo + b * w;
    out[b].hi = lo + (b + 1) * w;
  }
  for (auto [v, m] : dist.atoms()) {
    int b = static_cast<int>(std::floor((v - lo) / w));
    b = std::clamp(b, 0, bins - 1);
    out[b].mass += m;
  }
  return out;
}

struct GridPoint {
  double x = 0.0, y = 0.0, delta = 0.0;
};

// delta over the open simplex F_{x,y} = {x,y > 0, x + y < 1} on the (1,1)
// lattice x = i/R, y = j/R. The minimum over the grid approaches 3 ln 2.
inline std::vector<GridPoint> grid_delta(int resolution, double tol = 1e-12,
                                         unsigned threads = 0) {
  require(resolution >= 8, ErrorCode::InvalidArgument, "resolution must be >= 8");
  // The (1,1) theta: twin (0 3)(1 4)(2 5), rotations (0 1 2)(3 4 5).
  RibbonGraph theta({3, 4, 5, 0, 1, 2}, {1, 2, 0, 4, 5, 3});
  std::vector<std::pair<int, int>> lattice;
  for (int i = 1; i < resolution; ++i)
    for (int j = 1; i + j < resolution; ++j) lattice.emplace_back(i, j);
  std::vector<GridPoint> out(lattice.size());
  parallel_for(lattice.size(), [&](std::size_t k) {
    auto [i, j] = lattice[k];
    double x = static_cast<double>(i) / resolution;
    double y = static_cast<double>(j) / resolution;
    double z = 1.0 - x - y;
    MetricRibbonGraph g(theta, {x, y, z});
    out[k] = {x, y, delta_spectral(g, tol).delta};
  }, threads);
  return out;
}

}  // namespace ribbonzeta
