#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ribbonzeta/errors.hpp"
#include "ribbonzeta/geodesics.hpp"
#include "ribbonzeta/ribbon_graph.hpp"

namespace ribbonzeta {

// A maximal shared-body alignment of two closed walks on a trivalent graph.
// The body runs along gamma's orientation starting at step index
// gamma_start; eta matches it parallel (orientation +1) or antiparallel
// (orientation -1) starting at eta_start. Tails are the four half-edges by
// which the walks leave the body. `type` is the signed crossing number:
// +1/-1 when the cyclic orders at the two end vertices agree (a genuine
// intersection), 0 when they disagree.
struct MaximalPair {
  int gamma_start = 0;
  int eta_start = 0;
  int length = 0;
  int orientation = +1;
  int body_h_start = 0, body_h_end = 0;   // body half-edges at the endpoints
  int gamma_tail_start = 0, gamma_tail_end = 0;
  int eta_tail_start = 0, eta_tail_end = 0;
  int type = 0;
};

// Intersection record per the trivalent definition: equal bodies, diverging
// tails, matching cyclic orders, with its crossing sign.
struct GraphIntersection {
  std::vector<int> body;  // directed steps along gamma's orientation
  int gamma_tail_start = 0, gamma_tail_end = 0;
  int eta_tail_start = 0, eta_tail_end = 0;
  int sign = 0;
};

namespace detail {

inline void require_trivalent(const RibbonGraph& g) {
  require(g.is_trivalent(), ErrorCode::NotTrivalent,
          "geodesic intersections are defined on trivalent graphs only");
}

inline int mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

// Enumerates maximal aligned runs between cyclic words A (gamma) and B
// (eta). `self_mode` treats A and B as one curve and reports each unordered
// pair of distinct subarc occurrences once; otherwise the two arguments are
// distinct curves and every ordered alignment is reported once. Alignments
// that never diverge (the two curves coincide) are skipped.
template <typename Fn>
void for_each_maximal_run(const RibbonGraph& g, const std::vector<int>& A,
                          const std::vector<int>& B, bool self_mode, Fn&& fn) {
  const int m1 = static_cast<int>(A.size());
  const int m2 = static_cast<int>(B.size());
  const int cap = m1 + m2;
  auto matched = [&](int i, int j, int o) {
    return o > 0 ? A[mod(i, m1)] == B[mod(j, m2)]
                 : A[mod(i, m1)] == g.twin(B[mod(j, m2)]);
  };
  for (int o : {+1, -1}) {
    for (int i = 0; i < m1; ++i) {
      for (int j = 0; j < m2; ++j) {
        if (self_mode && o > 0 && i == j) continue;  // identity alignment
        if (!matched(i, j, o)) continue;
        // Only start at the beginning of a run.
        if (matched(i - 1, j - o, o)) continue;
        int len = 1;
        while (len < cap && matched(i + len, j + o * len, o)) ++len;
        if (len >= cap) continue;  // full coincidence, never diverges
        if (self_mode) {
          // Each unordered pair appears twice; keep one representative.
          if (o > 0) {
            if (mod(j - i, m1) > mod(i - j, m1)) continue;
            if (mod(j - i, m1) == mod(i - j, m1) && i > j) continue;
          } else {
            int i2 = mod(j - len + 1, m1), j2 = mod(i + len - 1, m1);
            if (std::make_pair(i, j) > std::make_pair(i2, j2)) continue;
          }
        }
        fn(i, j, o, len);
      }
    }
  }
}

inline MaximalPair build_pair(const RibbonGraph& g, const std::vector<int>& A,
                              const std::vector<int>& B, int i, int j, int o, int len) {
  const int m1 = static_cast<int>(A.size());
  const int m2 = static_cast<int>(B.size());
  MaximalPair p;
  p.gamma_start = i;
  p.eta_start = j;
  p.length = len;
  p.orientation = o;
  p.body_h_start = A[i];
  p.body_h_end = g.twin(A[mod(i + len - 1, m1)]);
  p.gamma_tail_start = g.twin(A[mod(i - 1, m1)]);
  p.gamma_tail_end = A[mod(i + len, m1)];
  if (o > 0) {
    p.eta_tail_start = g.twin(B[mod(j - 1, m2)]);
    p.eta_tail_end = B[mod(j + len, m2)];
  } else {
    p.eta_tail_start = B[mod(j + 1, m2)];
    p.eta_tail_end = g.twin(B[mod(j - len, m2)]);
  }
  int s1 = g.cyclic_type(p.body_h_start, p.gamma_tail_start, p.eta_tail_start);
  int s2 = g.cyclic_type(p.body_h_end, p.gamma_tail_end, p.eta_tail_end);
  p.type = (s1 == s2) ? s1 : 0;
  return p;
}

}  // namespace detail

// All maximal intersection pairs of two distinct closed geodesics.
inline std::vector<MaximalPair> maximal_pairs(const RibbonGraph& g,
                                              const GeodesicPath& gamma,
                                              const GeodesicPath& eta) {
  detail::require_trivalent(g);
  std::vector<MaximalPair> out;
  detail::for_each_maximal_run(g, gamma.steps, eta.steps, /*self=*/false,
                               [&](int i, int j, int o, int len) {
                                 out.push_back(detail::build_pair(g, gamma.steps,
                                                                  eta.steps, i, j, o, len));
                               });
  return out;
}

inline std::vector<MaximalPair> self_maximal_pairs(const RibbonGraph& g,
                                                   const GeodesicPath& gamma) {
  detail::require_trivalent(g);
  std::vector<MaximalPair> out;
  detail::for_each_maximal_run(g, gamma.steps, gamma.steps, /*self=*/true,
                               [&](int i, int j, int o, int len) {
                                 out.push_back(detail::build_pair(g, gamma.steps,
                                                                  gamma.steps, i, j, o, len));
                               });
  return out;
}

// Intersections in the sense of the four-condition trivalent definition:
// the maximal pairs whose cyclic orders agree at both endpoints.
inline std::vector<GraphIntersection> intersections(const RibbonGraph& g,
                                                    const GeodesicPath& gamma,
                                                    const GeodesicPath& eta) {
  require(!(gamma == eta), ErrorCode::InvalidArgument,
          "intersections require distinct canonical classes; "
          "use self_maximal_pairs for self-intersections");
  std::vector<GraphIntersection> out;
  for (const MaximalPair& p : maximal_pairs(g, gamma, eta)) {
    if (p.type == 0) continue;
    GraphIntersection x;
    const int m1 = static_cast<int>(gamma.steps.size());
    for (int k = 0; k < p.length; ++k)
      x.body.push_back(gamma.steps[detail::mod(p.gamma_start + k, m1)]);
    x.gamma_tail_start = p.gamma_tail_start;
    x.gamma_tail_end = p.gamma_tail_end;
    x.eta_tail_start = p.eta_tail_start;
    x.eta_tail_end = p.eta_tail_end;
    x.sign = p.type;
    out.push_back(std::move(x));
  }
  return out;
}

inline std::int64_t intersection_number(const RibbonGraph& g, const GeodesicPath& gamma,
                                        const GeodesicPath& eta) {
  std::int64_t n = 0;
  for (const MaximalPair& p : maximal_pairs(g, gamma, eta))
    if (p.type != 0) ++n;
  return n;
}

// A geodesic is simple when no pair of distinct subarc occurrences forms a
// crossing.
inline bool is_simple(const RibbonGraph& g, const GeodesicPath& gamma) {
  for (const MaximalPair& p : self_maximal_pairs(g, gamma))
    if (p.type != 0) return false;
  return true;
}

// Ideal Wolpert number via maximal intersection pairs: the sum of signed
// crossing numbers. Antisymmetric; |iw| <= i.
inline std::int64_t ideal_wolpert_pairs(const RibbonGraph& g, const GeodesicPath& gamma,
                                        const GeodesicPath& eta) {
  std::int64_t s = 0;
  for (const MaximalPair& p : maximal_pairs(g, gamma, eta)) s += p.type;
  return s;
}

// Ideal Wolpert number via the edge rule: each traversal of an edge by eta
// contributes -1, 0 or +1 according to how its entry and exit tails sit
// against the rotation at the two endpoints, multiplied by the number of
// gamma traversals of that edge.
inline std::int64_t ideal_wolpert_edgerule(const RibbonGraph& g, const GeodesicPath& gamma,
                                           const GeodesicPath& eta) {
  detail::require_trivalent(g);
  std::vector<std::int64_t> gamma_traversals(g.num_edges(), 0);
  for (int d : gamma.steps) ++gamma_traversals[g.edge_of(d)];

  const auto& B = eta.steps;
  const int m = static_cast<int>(B.size());
  std::int64_t total = 0;
  for (int j = 0; j < m; ++j) {
    int d = B[j];
    std::int64_t c = gamma_traversals[g.edge_of(d)];
    if (c == 0) continue;
    int entry_tail = g.twin(B[detail::mod(j - 1, m)]);
    int exit_tail = B[detail::mod(j + 1, m)];
    int s_in = (g.next(d) == entry_tail) ? +1 : -1;
    int s_out = (g.next(g.twin(d)) == exit_tail) ? +1 : -1;
    if (s_in == s_out) total += -s_in * c;
  }
  return total;
}

// Multi-geodesics are unordered lists of components; iw extends additively
// over component pairs.
using MultiGeodesic = std::vector<GeodesicPath>;

inline std::int64_t ideal_wolpert_pairs(const RibbonGraph& g, const MultiGeodesic& a,
                                        const MultiGeodesic& b) {
  std::int64_t s = 0;
  for (const auto& x : a)
    for (const auto& y : b) s += ideal_wolpert_pairs(g, x, y);
  return s;
}

inline std::int64_t ideal_wolpert_edgerule(const RibbonGraph& g, const MultiGeodesic& a,
                                           const MultiGeodesic& b) {
  std::int64_t s = 0;
  for (const auto& x : a)
    for (const auto& y : b) s += ideal_wolpert_edgerule(g, x, y);
  return s;
}

// Simple multi-geodesic derived from an edge, following the pants templates:
// with two distinct adjacent faces the result is the single outer boundary
// of a neighborhood of face-edge-face; with one adjacent face the face walk
// splits at the two sides of the edge into the two other boundaries.
inline MultiGeodesic derived_geodesic(const MetricRibbonGraph& mg, int e) {
  const RibbonGraph& g = mg.graph();
  detail::require_trivalent(g);
  require(e >= 0 && e < g.num_edges(), ErrorCode::InvalidArgument, "edge out of range");
  auto [h, hbar] = g.edge_pair(e);
  int f1 = g.face_of(h), f2 = g.face_of(hbar);

  auto rotate_to = [](std::vector<int> cyc, int h0) {
    std::size_t pos = 0;
    while (cyc[pos] != h0) ++pos;
    std::rotate(cyc.begin(), cyc.begin() + pos, cyc.end());
    return cyc;
  };

  MultiGeodesic out;
  if (f1 != f2) {
    auto w1 = rotate_to(g.faces()[f1], h);
    auto w2 = rotate_to(g.faces()[f2], hbar);
    std::vector<int> walk = w1;
    walk.push_back(h);
    walk.insert(walk.end(), w2.begin(), w2.end());
    walk.push_back(hbar);
    auto rep = geodesic_representative(mg, walk);
    out.push_back(make_geodesic(mg, rep.steps));
  } else {
    auto cyc = rotate_to(g.faces()[f1], h);
    std::size_t split = 0;
    while (cyc[split] != hbar) ++split;
    std::vector<int> part1(cyc.begin() + 1, cyc.begin() + split);
    std::vector<int> part2(cyc.begin() + split + 1, cyc.end());
    for (auto* part : {&part1, &part2}) {
      require(!part->empty(), ErrorCode::InvalidArgument,
              "degenerate face split in derived geodesic");
      auto rep = geodesic_representative(mg, *part);
      out.push_back(make_geodesic(mg, rep.steps));
    }
  }
  return out;
}

inline std::vector<MultiGeodesic> all_derived_geodesics(const MetricRibbonGraph& mg) {
  std::vector<MultiGeodesic> out;
  out.reserve(mg.graph().num_edges());
  for (int e = 0; e < mg.graph().num_edges(); ++e) out.push_back(derived_geodesic(mg, e));
  return out;
}

using IntMatrix = std::vector<std::vector<std::int64_t>>;

inline IntMatrix s_matrix(const RibbonGraph& g, const std::vector<MultiGeodesic>& geodesics) {
  const std::size_t n = geodesics.size();
  IntMatrix s(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::int64_t v = ideal_wolpert_pairs(g, geodesics[i], geodesics[j]);
      s[i][j] = v;
      s[j][i] = -v;
    }
  return s;
}

// Exact rank by Bareiss fraction-free elimination. Entries stay small
// integers at these sizes.
inline int integer_rank(IntMatrix a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 0;
  const int m = static_cast<int>(a[0].size());
  int rank = 0;
  std::int64_t prev = 1;
  for (int col = 0; col < m && rank < n; ++col) {
    int pivot = -1;
    for (int r = rank; r < n; ++r)
      if (a[r][col] != 0) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    for (int r = rank + 1; r < n; ++r) {
      for (int c = col + 1; c < m; ++c)
        a[r][c] = (a[r][c] * a[rank][col] - a[r][col] * a[rank][c]) / prev;
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

inline std::int64_t integer_det(IntMatrix a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  std::int64_t prev = 1, sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int pivot = -1;
      for (int r = k + 1; r < n; ++r)
        if (a[r][k] != 0) { pivot = r; break; }
      if (pivot < 0) return 0;
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r) {
      for (int c = k + 1; c < n; ++c)
        a[r][c] = (a[r][c] * a[k][k] - a[r][k] * a[k][c]) / prev;
      a[r][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Number of times each edge is traversed by a multi-geodesic; the rows of
// the length Jacobian used for cell constants.
inline std::vector<std::int64_t> edge_traversal_counts(const RibbonGraph& g,
                                                       const MultiGeodesic& multi) {
  std::vector<std::int64_t> counts(g.num_edges(), 0);
  for (const auto& comp : multi)
    for (int d : comp.steps) ++counts[g.edge_of(d)];
  return counts;
}

}  // namespace ribbonzeta
