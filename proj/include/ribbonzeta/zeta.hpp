#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ribbonzeta/errors.hpp"
#include "ribbonzeta/geodesics.hpp"
#include "ribbonzeta/rational.hpp"
#include "ribbonzeta/ribbon_graph.hpp"

namespace ribbonzeta {

// Directed-edge (Hashimoto) matrix of a metric graph: rows and columns are
// directed edges, a_{ij} = z^{l(i)} when j may follow i without
// backtracking, 0 otherwise. The support depends only on the combinatorics.
class EdgeMatrix {
 public:
  explicit EdgeMatrix(const MetricRibbonGraph& g)
      : lengths_(g.graph().num_half_edges()), support_(nb_continuations(g.graph())) {
    for (int d = 0; d < g.graph().num_half_edges(); ++d)
      lengths_[d] = g.half_edge_length(d);
  }

  int dimension() const { return static_cast<int>(lengths_.size()); }
  const std::vector<std::vector<int>>& support() const { return support_; }
  double row_length(int i) const { return lengths_[i]; }

  Eigen::MatrixXcd at(std::complex<double> z) const {
    const int n = dimension();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      std::complex<double> v = std::pow(z, lengths_[i]);
      for (int j : support_[i]) m(i, j) = v;
    }
    return m;
  }

  // A(s) = M(e^{-s}) restricted to the positive real axis.
  Eigen::MatrixXd weights(double s) const {
    const int n = dimension();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      double v = std::exp(-s * lengths_[i]);
      for (int j : support_[i]) m(i, j) = v;
    }
    return m;
  }

  bool strongly_connected() const {
    const int n = dimension();
    std::vector<std::vector<int>> rev(n);
    for (int i = 0; i < n; ++i)
      for (int j : support_[i]) rev[j].push_back(i);
    auto reaches_all = [n](const std::vector<std::vector<int>>& adj) {
      std::vector<char> seen(n, 0);
      std::vector<int> stack{0};
      seen[0] = 1;
      int count = 0;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        ++count;
        for (int v : adj[u])
          if (!seen[v]) { seen[v] = 1; stack.push_back(v); }
      }
      return count == n;
    };
    return reaches_all(support_) && reaches_all(rev);
  }

 private:
  std::vector<double> lengths_;
  std::vector<std::vector<int>> support_;
};

inline EdgeMatrix edge_matrix(const MetricRibbonGraph& g) { return EdgeMatrix(g); }

// p_Gamma(z) = det(M_Gamma(z) - I); the reciprocal of the graph zeta function.
inline std::complex<double> p_gamma(const MetricRibbonGraph& g, std::complex<double> z) {
  EdgeMatrix m(g);
  Eigen::MatrixXcd a = m.at(z);
  a -= Eigen::MatrixXcd::Identity(m.dimension(), m.dimension());
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(a).determinant();
}

inline double spectral_radius(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

enum class DeltaMethod { kSpectral, kPolynomial, kOracle };

inline const char* delta_method_name(DeltaMethod m) {
  switch (m) {
    case DeltaMethod::kSpectral: return "spectral";
    case DeltaMethod::kPolynomial: return "polynomial";
    case DeltaMethod::kOracle: return "oracle";
  }
  return "?";
}

struct CriticalExponent {
  double delta = 0.0;
  DeltaMethod method = DeltaMethod::kSpectral;
  double residual = 0.0;
};

// Constructive bound: contract a minimal non-loop edge until one vertex
// remains, shorten all loops to the minimal loop length, and read off the
// rose exponent ln(2k-1)/eps. Contraction and shortening only increase the
// critical exponent, so this dominates delta.
inline double upper_bound_delta(const MetricRibbonGraph& g) {
  MetricRibbonGraph cur = g;
  while (cur.graph().num_vertices() > 1) {
    int best = -1;
    for (int e = 0; e < cur.graph().num_edges(); ++e) {
      if (cur.graph().is_loop(e)) continue;
      if (best < 0 || cur.length(e) < cur.length(best)) best = e;
    }
    require(best >= 0, ErrorCode::InvalidArgument, "no contractible edge found");
    cur = contract_edge(cur, best);
  }
  const int k = cur.graph().num_edges();
  double eps = cur.length(0);
  for (int e = 1; e < k; ++e) eps = std::min(eps, cur.length(e));
  return std::log(static_cast<double>(2 * k - 1)) / eps;
}

// delta as the unique s > 0 with spectral radius rho(A(s)) = 1; rho is
// strictly decreasing in s, so bisection applies. Terminates when the
// bracket width is below tol * max(1, delta).
inline CriticalExponent delta_spectral(const MetricRibbonGraph& g, double tol = 1e-12) {
  require(tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");
  EdgeMatrix m(g);
  require(m.strongly_connected(), ErrorCode::NotIrreducible,
          "directed-edge graph is not strongly connected");

  auto rho = [&](double s) { return spectral_radius(m.weights(s)); };

  double lo = 1e-6;
  for (int i = 0; rho(lo) <= 1.0; ++i) {
    require(i < 80, ErrorCode::NoConvergence, "no positive growth rate found");
    lo *= 0.5;
  }
  double hi = upper_bound_delta(g) + 1.0;
  for (int i = 0; rho(hi) >= 1.0; ++i) {
    require(i < 80, ErrorCode::NoConvergence, "upper bound bracket failed");
    hi *= 2.0;
  }
  while (hi - lo > tol * std::max(1.0, lo)) {
    double mid = 0.5 * (lo + hi);
    if (rho(mid) >= 1.0) lo = mid; else hi = mid;
  }
  double delta = 0.5 * (lo + hi);
  return {delta, DeltaMethod::kSpectral, std::abs(rho(delta) - 1.0)};
}

namespace detail {

struct SubdividedMatrix {
  std::int64_t scale = 1;  // lcm of length denominators
  std::vector<std::vector<int>> adj;  // unit-step non-backtracking adjacency
  int dim() const { return static_cast<int>(adj.size()); }
};

// Each edge of rational length p/q becomes a chain of p * (D/q) unit steps
// in each direction; non-backtracking walks on the subdivision correspond
// exactly to non-backtracking walks upstairs.
inline SubdividedMatrix subdivide(const MetricRibbonGraph& g, std::int64_t degree_cap) {
  const auto& rl = g.rational_lengths();
  SubdividedMatrix out;
  for (const Rational& r : rl) out.scale = lcm64(out.scale, r.den);

  const RibbonGraph& rg = g.graph();
  std::vector<std::int64_t> units(rg.num_half_edges());
  std::int64_t total = 0;
  for (int d = 0; d < rg.num_half_edges(); ++d) {
    const Rational& r = rl[rg.edge_of(d)];
    units[d] = r.num * (out.scale / r.den);
    total += units[d];
  }
  require(total <= degree_cap, ErrorCode::DegreeOverflow,
          "polynomial degree " + std::to_string(total) + " exceeds cap");

  std::vector<std::int64_t> offset(rg.num_half_edges() + 1, 0);
  for (int d = 0; d < rg.num_half_edges(); ++d) offset[d + 1] = offset[d] + units[d];
  out.adj.assign(static_cast<std::size_t>(total), {});
  const auto cont = nb_continuations(rg);
  for (int d = 0; d < rg.num_half_edges(); ++d) {
    for (std::int64_t k = 0; k + 1 < units[d]; ++k)
      out.adj[offset[d] + k].push_back(static_cast<int>(offset[d] + k + 1));
    for (int j : cont[d])
      out.adj[offset[d] + units[d] - 1].push_back(static_cast<int>(offset[j]));
  }
  return out;
}

}  // namespace detail

struct PolynomialDelta {
  CriticalExponent exponent;
  std::int64_t scale = 1;                        // w = z^{1/scale}
  std::vector<std::complex<double>> roots_w;     // all roots of det(M(w) - I)
};

// With rational lengths, w = z^{1/D} turns det(M(z) - I) into a polynomial
// in w whose roots are the reciprocals of the nonzero eigenvalues of the
// subdivided unit Hashimoto matrix. delta = D * ln(max |eigenvalue|); the
// dominant root is verified to sit on the positive real axis.
inline PolynomialDelta delta_polynomial_full(const MetricRibbonGraph& g,
                                             std::int64_t degree_cap = 10'000) {
  auto sub = detail::subdivide(g, degree_cap);
  const int n = sub.dim();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j : sub.adj[i]) b(i, j) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(b, /*computeEigenvectors=*/false);
  const auto& ev = solver.eigenvalues();

  double rho = 0.0, rho_positive = 0.0;
  PolynomialDelta out;
  out.scale = sub.scale;
  for (int i = 0; i < n; ++i) {
    std::complex<double> lam = ev(i);
    rho = std::max(rho, std::abs(lam));
    if (std::abs(lam.imag()) < 1e-9 && lam.real() > 0.0)
      rho_positive = std::max(rho_positive, lam.real());
    if (std::abs(lam) > 1e-12) out.roots_w.push_back(1.0 / lam);
  }
  require(rho > 1.0, ErrorCode::NoConvergence, "no growth: spectral radius <= 1");
  require(std::abs(rho - rho_positive) <= 1e-10 * std::max(1.0, rho),
          ErrorCode::NoConvergence,
          "dominant root does not lie on the positive real axis");
  double delta = static_cast<double>(sub.scale) * std::log(rho);
  out.exponent = {delta, DeltaMethod::kPolynomial, std::abs(rho - rho_positive)};
  return out;
}

inline CriticalExponent delta_polynomial(const MetricRibbonGraph& g,
                                         std::int64_t degree_cap = 10'000) {
  return delta_polynomial_full(g, degree_cap).exponent;
}

struct OracleOptions {
  std::uint64_t budget = 10'000'000;
  double window_ratio = 0.5;   // fit over (window_ratio * x_max, x_max]
  std::size_t min_geodesics = 200;
};

// Counting-based estimate, independent of the matrix machinery: enumerate
// the length spectrum up to x_max and fit log(x * L(x)) against x over the
// top part of the range.
inline CriticalExponent delta_oracle(const MetricRibbonGraph& g, double x_max,
                                     const OracleOptions& opt = {}) {
  std::vector<double> lengths;
  for_each_geodesic(g, {x_max, opt.budget},
                    [&](const std::vector<int>&, double len, bool) {
                      lengths.push_back(len);
                    });
  require(lengths.size() >= opt.min_geodesics, ErrorCode::InsufficientData,
          "only " + std::to_string(lengths.size()) + " geodesics below x_max");
  std::sort(lengths.begin(), lengths.end());

  // Sample points: (x, log(x * L(x))) at each distinct length in the window.
  std::vector<std::pair<double, double>> pts;
  const double x_lo = opt.window_ratio * x_max;
  std::size_t i = 0;
  while (i < lengths.size()) {
    std::size_t j = i;
    while (j < lengths.size() && lengths[j] == lengths[i]) ++j;
    double x = lengths[i];
    if (x > x_lo)
      pts.emplace_back(x, std::log(x * static_cast<double>(j)));
    i = j;
  }
  require(pts.size() >= 2, ErrorCode::InsufficientData,
          "not enough distinct lengths in the fit window");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) { sx += x; sy += y; sxx += x * x; sxy += x * y; }
  const double n = static_cast<double>(pts.size());
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double intercept = (sy - slope * sx) / n;
  double rss = 0;
  for (auto [x, y] : pts) {
    double r = y - slope * x - intercept;
    rss += r * r;
  }
  return {slope, DeltaMethod::kOracle, std::sqrt(rss / n)};
}

inline CriticalExponent compute_delta(const MetricRibbonGraph& g, DeltaMethod method,
                                      double tol = 1e-12, double oracle_x_max = 0.0) {
  switch (method) {
    case DeltaMethod::kSpectral: return delta_spectral(g, tol);
    case DeltaMethod::kPolynomial: return delta_polynomial(g);
    case DeltaMethod::kOracle: {
      double x = oracle_x_max > 0.0 ? oracle_x_max : 25.0 * g.mean_edge_length();
      return delta_oracle(g, x);
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown method");
}

// Exact oriented primitive-class counts via traces of the subdivided unit
// Hashimoto matrix and Moebius inversion. Scales far beyond enumeration;
// cross-validated against it in the tests.
inline std::vector<std::uint64_t> oriented_counts_by_unit_length(
    const MetricRibbonGraph& g, std::int64_t max_units, std::int64_t degree_cap = 10'000) {
  auto sub = detail::subdivide(g, degree_cap);
  const int n = sub.dim();
  using Mat = std::vector<std::vector<std::int64_t>>;
  Mat b(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j : sub.adj[i]) b[i][j] = 1;

  auto multiply = [&](const Mat& x, const Mat& y) {
    Mat r(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        std::int64_t v = x[i][k];
        if (v == 0) continue;
        for (int j = 0; j < n; ++j) {
          if (y[k][j] == 0) continue;
          std::int64_t add = v * y[k][j];
          require(add >= 0 && r[i][j] <= INT64_MAX - add, ErrorCode::BudgetExceeded,
                  "trace count overflow");
          r[i][j] += add;
        }
      }
    return r;
  };

  std::vector<std::int64_t> traces(static_cast<std::size_t>(max_units) + 1, 0);
  Mat power = b;
  for (std::int64_t m = 1; m <= max_units; ++m) {
    if (m > 1) power = multiply(power, b);
    std::int64_t t = 0;
    for (int i = 0; i < n; ++i) t += power[i][i];
    traces[static_cast<std::size_t>(m)] = t;
  }

  std::vector<std::uint64_t> classes(static_cast<std::size_t>(max_units) + 1, 0);
  for (std::int64_t m = 1; m <= max_units; ++m) {
    std::int64_t rooted = 0;
    for (std::int64_t d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      // Moebius of d from its factorization.
      std::int64_t x = d, mu = 1;
      for (std::int64_t p = 2; p * p <= x; ++p) {
        if (x % p == 0) {
          x /= p;
          if (x % p == 0) { mu = 0; break; }
          mu = -mu;
        }
      }
      if (mu != 0 && x > 1) mu = -mu;
      if (d == 1) mu = 1;
      rooted += mu * traces[static_cast<std::size_t>(m / d)];
    }
    classes[static_cast<std::size_t>(m)] = static_cast<std::uint64_t>(rooted / m);
  }
  return classes;
}

// L(x) under the oriented convention, exact, for rational-length graphs.
inline std::uint64_t count_oriented_exact(const MetricRibbonGraph& g, double x,
                                          std::int64_t degree_cap = 10'000) {
  auto sub = detail::subdivide(g, degree_cap);
  std::int64_t max_units =
      static_cast<std::int64_t>(std::floor(x * static_cast<double>(sub.scale) + 1e-9));
  if (max_units < 1) return 0;
  auto classes = oriented_counts_by_unit_length(g, max_units, degree_cap);
  std::uint64_t total = 0;
  for (std::int64_t m = 1; m <= max_units; ++m) total += classes[static_cast<std::size_t>(m)];
  return total;
}

}  // namespace ribbonzeta
