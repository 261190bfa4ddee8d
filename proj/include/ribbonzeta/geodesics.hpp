#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "ribbonzeta/errors.hpp"
#include "ribbonzeta/ribbon_graph.hpp"

namespace ribbonzeta {

// A directed edge is identified with the half-edge at its tail vertex;
// its reverse is the twin half-edge.
inline int de_tail(const RibbonGraph& g, int d) { return g.vertex_of(d); }
inline int de_head(const RibbonGraph& g, int d) { return g.vertex_of(g.twin(d)); }
inline int de_reverse(const RibbonGraph& g, int d) { return g.twin(d); }

// Closed non-backtracking walk stored as a cyclic sequence of directed
// edges in canonical rotation (lexicographically least, and not greater
// than the canonical rotation of the reversed walk unless built with a
// fixed orientation). `palindromic` marks walks equal to their reversal
// as cyclic words.
struct GeodesicPath {
  std::vector<int> steps;
  double metric_length = 0.0;
  bool palindromic = false;

  int combinatorial_length() const { return static_cast<int>(steps.size()); }

  friend bool operator==(const GeodesicPath& a, const GeodesicPath& b) {
    return a.steps == b.steps;
  }
  friend bool operator<(const GeodesicPath& a, const GeodesicPath& b) {
    if (a.metric_length != b.metric_length) return a.metric_length < b.metric_length;
    return a.steps < b.steps;
  }
};

namespace detail {

// Booth's least-rotation algorithm; returns the start index of the
// lexicographically smallest rotation.
inline int least_rotation_index(const std::vector<int>& s) {
  const int n = static_cast<int>(s.size());
  if (n <= 1) return 0;
  std::vector<int> f(2 * n, -1);
  int k = 0;
  for (int j = 1; j < 2 * n; ++j) {
    int sj = s[j % n];
    int i = f[j - k - 1];
    while (i != -1 && sj != s[(k + i + 1) % n]) {
      if (sj < s[(k + i + 1) % n]) k = j - i - 1;
      i = f[i];
    }
    if (sj != s[(k + i + 1) % n]) {
      if (sj < s[k % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k % n;
}

inline std::vector<int> rotated(const std::vector<int>& s, int start) {
  std::vector<int> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s[(start + i) % s.size()]);
  return out;
}

inline bool is_primitive_word(const std::vector<int>& s) {
  const int n = static_cast<int>(s.size());
  for (int p = 1; p <= n / 2; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (int i = 0; i < n && periodic; ++i) periodic = (s[i] == s[(i + p) % n]);
    if (periodic) return false;
  }
  return true;
}

}  // namespace detail

inline std::vector<int> reversed_steps(const RibbonGraph& g, const std::vector<int>& steps) {
  std::vector<int> out;
  out.reserve(steps.size());
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) out.push_back(g.twin(*it));
  return out;
}

// Throws unless `steps` is a closed, incident, cyclically non-backtracking walk.
inline void validate_closed_geodesic(const RibbonGraph& g, const std::vector<int>& steps) {
  require(!steps.empty(), ErrorCode::InvalidArgument, "empty step sequence");
  const int m = static_cast<int>(steps.size());
  for (int i = 0; i < m; ++i) {
    int d = steps[i], e = steps[(i + 1) % m];
    require(d >= 0 && d < g.num_half_edges(), ErrorCode::InvalidArgument,
            "step out of range");
    require(de_head(g, d) == de_tail(g, e), ErrorCode::InvalidArgument,
            "consecutive steps are not incident");
    require(e != de_reverse(g, d), ErrorCode::InvalidArgument,
            "walk backtracks");
  }
}

inline double walk_metric_length(const MetricRibbonGraph& g, const std::vector<int>& steps) {
  double s = 0.0;
  for (int d : steps) s += g.half_edge_length(d);
  return s;
}

// Canonical oriented rotation (orientation kept).
inline std::vector<int> canonical_rotation(const std::vector<int>& steps) {
  return detail::rotated(steps, detail::least_rotation_index(steps));
}

// Canonical form of the unoriented class: smaller of the two oriented
// canonical rotations.
inline std::vector<int> canonical_unoriented(const RibbonGraph& g,
                                             const std::vector<int>& steps) {
  auto fwd = canonical_rotation(steps);
  auto rev = canonical_rotation(reversed_steps(g, steps));
  return fwd <= rev ? fwd : rev;
}

inline GeodesicPath make_geodesic(const MetricRibbonGraph& g, std::vector<int> steps,
                                  bool orient_free = true) {
  validate_closed_geodesic(g.graph(), steps);
  GeodesicPath p;
  p.steps = orient_free ? canonical_unoriented(g.graph(), steps) : canonical_rotation(steps);
  auto rev = canonical_rotation(reversed_steps(g.graph(), p.steps));
  p.palindromic = (canonical_rotation(p.steps) == rev);
  p.metric_length = walk_metric_length(g, p.steps);
  return p;
}

// Homotopy reduction: removes backtracking pairs (d, reverse d), including
// across the wraparound, until the walk is geodesic. A walk that collapses
// completely is null-homotopic.
inline GeodesicPath geodesic_representative(const MetricRibbonGraph& g,
                                            std::vector<int> walk) {
  const RibbonGraph& rg = g.graph();
  require(!walk.empty(), ErrorCode::NullHomotopic, "empty walk");
  const int m = static_cast<int>(walk.size());
  for (int i = 0; i < m; ++i) {
    require(walk[i] >= 0 && walk[i] < rg.num_half_edges(), ErrorCode::InvalidArgument,
            "step out of range");
    require(de_head(rg, walk[i]) == de_tail(rg, walk[(i + 1) % m]),
            ErrorCode::InvalidArgument, "input is not a closed walk");
  }
  bool reduced = true;
  while (reduced) {
    reduced = false;
    const int k = static_cast<int>(walk.size());
    for (int i = 0; i < k; ++i) {
      int j = (i + 1) % k;
      if (walk[j] == de_reverse(rg, walk[i])) {
        if (j > i) {
          walk.erase(walk.begin() + i, walk.begin() + i + 2);
        } else {  // wraparound pair: last and first
          walk.erase(walk.begin() + i);
          walk.erase(walk.begin());
        }
        reduced = true;
        break;
      }
    }
    if (walk.empty()) fail(ErrorCode::NullHomotopic, "walk reduces to a point");
  }
  GeodesicPath p;
  p.steps = canonical_rotation(walk);
  p.metric_length = walk_metric_length(g, p.steps);
  auto rev = canonical_rotation(reversed_steps(rg, p.steps));
  p.palindromic = (p.steps == rev);
  return p;
}

// Non-backtracking continuation lists: cont[d] = directed edges that may
// follow d.
inline std::vector<std::vector<int>> nb_continuations(const RibbonGraph& g) {
  std::vector<std::vector<int>> cont(g.num_half_edges());
  for (int d = 0; d < g.num_half_edges(); ++d) {
    int v = de_head(g, d);
    for (int j : g.vertices()[v])
      if (j != de_reverse(g, d)) cont[d].push_back(j);
    std::sort(cont[d].begin(), cont[d].end());
  }
  return cont;
}

struct EnumerationOptions {
  double x_max = 1.0;
  std::uint64_t budget = 10'000'000;  // max emitted classes
};

// Depth-first enumeration of primitive closed geodesics with metric length
// <= x_max, one call per unoriented class (free homotopy class of unoriented
// curves). The visitor receives the canonical step sequence, its metric
// length, and the palindromic flag. Starts are processed in increasing
// order; a walk is emitted only from its least directed edge, in least
// rotation, and only if its word is <= the reversed word's least rotation.
template <typename Fn>
void for_each_geodesic(const MetricRibbonGraph& g, const EnumerationOptions& opt, Fn&& fn) {
  require(opt.x_max > 0.0, ErrorCode::InvalidArgument, "x_max must be positive");
  const RibbonGraph& rg = g.graph();
  const auto cont = nb_continuations(rg);
  std::vector<double> len(rg.num_half_edges());
  for (int d = 0; d < rg.num_half_edges(); ++d) len[d] = g.half_edge_length(d);

  std::uint64_t emitted = 0;
  std::vector<int> path;
  auto extend = [&](auto&& self, int start, double acc) -> void {
    int last = path.back();
    for (int j : cont[last]) {
      if (j < start) continue;
      double nl = acc + len[j];
      if (j == start) {
        // Closing transition; `path` itself is the candidate cycle. The
        // walk may also pass through `start` again, so the recursion below
        // still runs whether or not this rotation is the canonical one.
        if (detail::is_primitive_word(path) &&
            detail::least_rotation_index(path) == 0) {
          auto rev = canonical_rotation(reversed_steps(rg, path));
          if (path <= rev) {
            if (++emitted > opt.budget)
              fail(ErrorCode::BudgetExceeded, "geodesic budget exceeded");
            fn(path, acc, path == rev);
          }
        }
      }
      if (nl <= opt.x_max) {
        path.push_back(j);
        self(self, start, nl);
        path.pop_back();
      }
    }
  };

  for (int s = 0; s < rg.num_half_edges(); ++s) {
    if (len[s] > opt.x_max) continue;
    path.assign(1, s);
    extend(extend, s, len[s]);
  }
}

inline std::vector<GeodesicPath> enumerate_geodesics(const MetricRibbonGraph& g, double x_max,
                                                     std::uint64_t budget = 10'000'000) {
  std::vector<GeodesicPath> out;
  for_each_geodesic(g, {x_max, budget},
                    [&](const std::vector<int>& steps, double len, bool pal) {
                      GeodesicPath p;
                      p.steps = steps;
                      p.metric_length = len;
                      p.palindromic = pal;
                      out.push_back(std::move(p));
                    });
  std::sort(out.begin(), out.end());
  return out;
}

enum class CountConvention {
  kUnoriented,  // one per free homotopy class of unoriented curves (default)
  kOriented,    // one per oriented class; chiral classes count twice
};

// L_Gamma(x): number of primitive closed geodesics of metric length <= x.
inline std::uint64_t count_geodesics(const MetricRibbonGraph& g, double x,
                                     CountConvention convention = CountConvention::kUnoriented,
                                     std::uint64_t budget = 10'000'000) {
  std::uint64_t count = 0;
  for_each_geodesic(g, {x, budget}, [&](const std::vector<int>&, double, bool pal) {
    count += (convention == CountConvention::kOriented && !pal) ? 2 : 1;
  });
  return count;
}

// Exact minimal geodesic length. A minimal cycle never repeats a directed
// edge, so per-start Dijkstra over the directed-edge graph suffices.
inline double systole(const MetricRibbonGraph& g) {
  const RibbonGraph& rg = g.graph();
  const auto cont = nb_continuations(rg);
  const int n = rg.num_half_edges();
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n);
  for (int d = 0; d < n; ++d) {
    double ld = g.half_edge_length(d);
    if (ld >= best) continue;
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    for (int j : cont[d]) {
      if (j == d) best = std::min(best, ld);  // one-step loop cycle
      double w = g.half_edge_length(j);
      if (w < dist[j]) { dist[j] = w; heap.emplace(w, j); }
    }
    while (!heap.empty()) {
      auto [w, u] = heap.top();
      heap.pop();
      if (w > dist[u]) continue;
      if (w + ld >= best) continue;
      for (int j : cont[u]) {
        if (j == d) best = std::min(best, w + ld);
        double nw = w + g.half_edge_length(j);
        if (nw < dist[j]) { dist[j] = nw; heap.emplace(nw, j); }
      }
    }
  }
  return best;
}

}  // namespace ribbonzeta
