#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "ribbonzeta/errors.hpp"
#include "ribbonzeta/ribbon_graph.hpp"

namespace ribbonzeta {

namespace detail {

// Deterministic relabeling of half-edges discovered from `root` by walking
// next/twin. Returns the (twin', next') arrays under that relabeling,
// concatenated. Connected graphs are fully covered, and an automorphism
// fixing one half-edge fixes all of them, so equal encodings from two roots
// correspond to exactly one automorphism.
inline std::vector<int> root_encoding(const RibbonGraph& g, int root) {
  const int n = g.num_half_edges();
  std::vector<int> label(n, -1), order;
  order.reserve(n);
  label[root] = 0;
  order.push_back(root);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int h = order[i];
    for (int nb : {g.next(h), g.twin(h)}) {
      if (label[nb] < 0) {
        label[nb] = static_cast<int>(order.size());
        order.push_back(nb);
      }
    }
  }
  std::vector<int> enc(2 * n);
  for (int h = 0; h < n; ++h) {
    enc[label[h]] = label[g.twin(h)];
    enc[n + label[h]] = label[g.next(h)];
  }
  return enc;
}

}  // namespace detail

// Lexicographically minimal root encoding over all roots.
inline std::vector<int> canonical_form(const RibbonGraph& g) {
  std::vector<int> best;
  for (int r = 0; r < g.num_half_edges(); ++r) {
    auto enc = detail::root_encoding(g, r);
    if (best.empty() || enc < best) best = std::move(enc);
  }
  return best;
}

inline bool is_isomorphic(const RibbonGraph& a, const RibbonGraph& b) {
  if (a.num_half_edges() != b.num_half_edges()) return false;
  return canonical_form(a) == canonical_form(b);
}

inline int automorphism_count(const RibbonGraph& g) {
  std::vector<int> best;
  int count = 0;
  for (int r = 0; r < g.num_half_edges(); ++r) {
    auto enc = detail::root_encoding(g, r);
    if (best.empty() || enc < best) {
      best = std::move(enc);
      count = 1;
    } else if (enc == best) {
      ++count;
    }
  }
  return count;
}

inline RibbonGraph graph_from_canonical(const std::vector<int>& enc) {
  const int n = static_cast<int>(enc.size()) / 2;
  return RibbonGraph(std::vector<int>(enc.begin(), enc.begin() + n),
                     std::vector<int>(enc.begin() + n, enc.end()));
}

// Isomorphism class of trivalent ribbon graphs: one top-dimensional cell of
// the combinatorial moduli space.
struct CellDescriptor {
  RibbonGraph representative;
  int automorphism_count = 1;
  int genus = 0;
  int n_faces = 0;

  int num_edges() const { return representative.num_edges(); }
};

inline void check_admissible(int g, int n) {
  require(g >= 0 && n >= 1, ErrorCode::InadmissibleType, "need g >= 0 and n >= 1");
  require(!(g == 0 && n < 3), ErrorCode::InadmissibleType, "g = 0 requires n >= 3");
  require(6 * g - 6 + 3 * n > 0, ErrorCode::InadmissibleType, "type has no trivalent graphs");
}

namespace detail {

// All rotation systems on 2E half-edges partitioned into oriented triples.
// The smallest available half-edge anchors each triple, so every system is
// produced exactly once.
template <typename Fn>
void for_each_trivalent_rotation(int num_half_edges, Fn&& fn) {
  std::vector<int> avail;
  for (int h = 0; h < num_half_edges; ++h) avail.push_back(h);
  std::vector<std::vector<int>> cycles;
  auto rec = [&](auto&& self) -> void {
    if (avail.empty()) {
      fn(cycles);
      return;
    }
    int a = avail.front();
    std::vector<int> rest(avail.begin() + 1, avail.end());
    for (std::size_t i = 0; i < rest.size(); ++i) {
      for (std::size_t j = 0; j < rest.size(); ++j) {
        if (i == j) continue;
        std::vector<int> nxt;
        nxt.reserve(rest.size() - 2);
        for (std::size_t k = 0; k < rest.size(); ++k)
          if (k != i && k != j) nxt.push_back(rest[k]);
        cycles.push_back({a, rest[i], rest[j]});
        std::swap(avail, nxt);
        self(self);
        std::swap(avail, nxt);
        cycles.pop_back();
      }
    }
  };
  rec(rec);
}

}  // namespace detail

// Exhaustive enumeration of trivalent isomorphism classes of type (g, n):
// all rotation systems over the standard twin pairing (2i, 2i+1), filtered by
// connectivity and type, deduplicated by canonical form. Output is sorted by
// canonical form, and each representative is rebuilt from its canonical
// encoding so the list is reproducible.
inline std::vector<CellDescriptor> enumerate_trivalent_types(int g, int n) {
  check_admissible(g, n);
  const int num_edges = 6 * g - 6 + 3 * n;
  const int nh = 2 * num_edges;
  std::vector<int> twin(nh);
  for (int e = 0; e < num_edges; ++e) {
    twin[2 * e] = 2 * e + 1;
    twin[2 * e + 1] = 2 * e;
  }

  std::map<std::vector<int>, int> classes;  // canonical form -> |Aut|
  detail::for_each_trivalent_rotation(nh, [&](const std::vector<std::vector<int>>& cycles) {
    std::vector<int> next(nh);
    for (const auto& cyc : cycles)
      for (int i = 0; i < 3; ++i) next[cyc[i]] = cyc[(i + 1) % 3];
    RibbonGraph graph;
    try {
      graph = RibbonGraph(twin, std::move(next));
    } catch (const Error&) {
      return;  // disconnected
    }
    if (graph.genus() != g || graph.num_faces() != n) return;
    auto canon = canonical_form(graph);
    if (!classes.count(canon)) classes.emplace(std::move(canon), automorphism_count(graph));
  });

  std::vector<CellDescriptor> out;
  out.reserve(classes.size());
  for (const auto& [canon, aut] : classes) {
    CellDescriptor cell;
    cell.representative = graph_from_canonical(canon);
    cell.automorphism_count = aut;
    cell.genus = g;
    cell.n_faces = n;
    out.push_back(std::move(cell));
  }
  for (const auto& cell : out) {
    require(cell.representative.num_edges() == num_edges &&
                cell.representative.num_vertices() == 4 * g - 4 + 2 * n,
            ErrorCode::InvalidEuler, "trivalent count mismatch");
  }
  return out;
}

}  // namespace ribbonzeta
