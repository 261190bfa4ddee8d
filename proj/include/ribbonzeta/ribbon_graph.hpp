#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ribbonzeta/errors.hpp"
#include "ribbonzeta/rational.hpp"
#include "ribbonzeta/rng.hpp"

namespace ribbonzeta {

// Half-edge (fatgraph) representation. Half-edges are dense indices
// 0..2E-1; `twin` pairs the two sides of an edge and `next` rotates
// counterclockwise around each vertex. Everything else is derived:
// vertices are the cycles of `next`, edges the orbits of `twin`, and
// faces the cycles of h -> next(twin(h)). Faces traverse each edge once
// per side, so a face walk lists one half-edge per visit.
class RibbonGraph {
 public:
  RibbonGraph() = default;

  RibbonGraph(std::vector<int> twin, std::vector<int> next)
      : twin_(std::move(twin)), next_(std::move(next)) {
    validate_permutations();
    build_vertices();
    build_edges();
    build_faces();
    check_connected();
    compute_genus();
  }

  int num_half_edges() const { return static_cast<int>(twin_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_vertices() const { return static_cast<int>(vertex_cycles_.size()); }
  int num_faces() const { return static_cast<int>(face_cycles_.size()); }
  int genus() const { return genus_; }

  int twin(int h) const { return twin_[h]; }
  int next(int h) const { return next_[h]; }
  int prev(int h) const { return prev_[h]; }

  const std::vector<int>& twin_map() const { return twin_; }
  const std::vector<int>& next_map() const { return next_; }

  // Edge of a half-edge; edges are indexed in increasing order of their
  // smaller half-edge.
  int edge_of(int h) const { return edge_of_[h]; }
  int vertex_of(int h) const { return vertex_of_[h]; }
  int face_of(int h) const { return face_of_[h]; }

  // An edge as its half-edge pair (lo, hi), lo < hi. The edge id used in
  // files is the smaller half-edge.
  std::pair<int, int> edge_pair(int e) const { return edges_[e]; }
  int edge_file_id(int e) const { return edges_[e].first; }
  std::optional<int> edge_by_file_id(int lo) const {
    for (int e = 0; e < num_edges(); ++e)
      if (edges_[e].first == lo) return e;
    return std::nullopt;
  }

  bool is_loop(int e) const {
    return vertex_of_[edges_[e].first] == vertex_of_[edges_[e].second];
  }

  const std::vector<std::vector<int>>& vertices() const { return vertex_cycles_; }

  // Face cycles of next∘twin, each rotated to start at its smallest
  // half-edge and listed in increasing order of that half-edge.
  const std::vector<std::vector<int>>& faces() const { return face_cycles_; }

  int degree(int v) const { return static_cast<int>(vertex_cycles_[v].size()); }

  bool is_trivalent() const {
    for (const auto& cyc : vertex_cycles_)
      if (cyc.size() != 3) return false;
    return !vertex_cycles_.empty();
  }

  // (genus, face count).
  std::pair<int, int> topological_type() const { return {genus_, num_faces()}; }

  // Cyclic order test at a trivalent-or-larger vertex: +1 if walking the
  // counterclockwise rotation from a meets b before c, -1 otherwise.
  // a, b, c must be distinct half-edges at one vertex.
  int cyclic_type(int a, int b, int c) const {
    for (int h = next_[a]; h != a; h = next_[h]) {
      if (h == b) return +1;
      if (h == c) return -1;
    }
    fail(ErrorCode::InvalidArgument, "cyclic_type: half-edges not at one vertex");
  }

  friend bool operator==(const RibbonGraph& a, const RibbonGraph& b) {
    return a.twin_ == b.twin_ && a.next_ == b.next_;
  }

 private:
  void validate_permutations() {
    const int n = num_half_edges();
    require(n > 0 && n % 2 == 0, ErrorCode::PermutationInvalid,
            "half-edge count must be positive and even");
    require(static_cast<int>(next_.size()) == n, ErrorCode::PermutationInvalid,
            "twin and next must act on the same half-edge set");
    std::vector<char> seen(n, 0);
    for (int h = 0; h < n; ++h) {
      require(next_[h] >= 0 && next_[h] < n, ErrorCode::PermutationInvalid,
              "next out of range");
      require(!seen[next_[h]], ErrorCode::PermutationInvalid, "next is not a bijection");
      seen[next_[h]] = 1;
    }
    for (int h = 0; h < n; ++h) {
      require(twin_[h] >= 0 && twin_[h] < n, ErrorCode::NotInvolution, "twin out of range");
      require(twin_[h] != h, ErrorCode::FixedPointInTwin,
              "twin fixes half-edge " + std::to_string(h));
    }
    for (int h = 0; h < n; ++h)
      require(twin_[twin_[h]] == h, ErrorCode::NotInvolution, "twin is not an involution");
  }

  void build_vertices() {
    const int n = num_half_edges();
    vertex_of_.assign(n, -1);
    prev_.assign(n, -1);
    for (int h = 0; h < n; ++h) prev_[next_[h]] = h;
    for (int h = 0; h < n; ++h) {
      if (vertex_of_[h] >= 0) continue;
      int v = static_cast<int>(vertex_cycles_.size());
      std::vector<int> cyc;
      int x = h;
      do {
        vertex_of_[x] = v;
        cyc.push_back(x);
        x = next_[x];
      } while (x != h);
      vertex_cycles_.push_back(std::move(cyc));
    }
  }

  void build_edges() {
    const int n = num_half_edges();
    edge_of_.assign(n, -1);
    for (int h = 0; h < n; ++h) {
      if (h < twin_[h]) {
        edge_of_[h] = edge_of_[twin_[h]] = static_cast<int>(edges_.size());
        edges_.emplace_back(h, twin_[h]);
      }
    }
  }

  void build_faces() {
    const int n = num_half_edges();
    face_of_.assign(n, -1);
    for (int h = 0; h < n; ++h) {
      if (face_of_[h] >= 0) continue;
      int f = static_cast<int>(face_cycles_.size());
      std::vector<int> cyc;
      int x = h;
      do {
        face_of_[x] = f;
        cyc.push_back(x);
        x = next_[twin_[x]];
      } while (x != h);
      face_cycles_.push_back(std::move(cyc));
    }
  }

  void check_connected() const {
    // <twin, next> acts transitively on half-edges iff the graph is connected.
    const int n = num_half_edges();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 0;
    while (!stack.empty()) {
      int h = stack.back();
      stack.pop_back();
      ++count;
      for (int nb : {twin_[h], next_[h]}) {
        if (!seen[nb]) { seen[nb] = 1; stack.push_back(nb); }
      }
    }
    require(count == n, ErrorCode::Disconnected, "graph is not connected");
  }

  void compute_genus() {
    int chi = num_vertices() - num_edges() + num_faces();
    int twice_g = 2 - chi;
    require(twice_g >= 0 && twice_g % 2 == 0, ErrorCode::InvalidEuler,
            "Euler characteristic does not give a nonnegative integer genus");
    genus_ = twice_g / 2;
  }

  std::vector<int> twin_;
  std::vector<int> next_;
  std::vector<int> prev_;
  std::vector<int> vertex_of_;
  std::vector<int> edge_of_;
  std::vector<int> face_of_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> vertex_cycles_;
  std::vector<std::vector<int>> face_cycles_;
  int genus_ = 0;
};

inline RibbonGraph build_graph(std::vector<int> twin, std::vector<int> next) {
  return RibbonGraph(std::move(twin), std::move(next));
}

// Convenience: build `next` from vertex cycles given as lists of half-edges.
inline std::vector<int> next_from_cycles(int num_half_edges,
                                         const std::vector<std::vector<int>>& cycles) {
  std::vector<int> next(num_half_edges, -1);
  for (const auto& cyc : cycles) {
    require(!cyc.empty(), ErrorCode::PermutationInvalid, "empty vertex cycle");
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int h = cyc[i];
      require(h >= 0 && h < num_half_edges, ErrorCode::PermutationInvalid,
              "vertex cycle entry out of range");
      require(next[h] == -1, ErrorCode::PermutationInvalid,
              "half-edge listed twice in vertex cycles");
      next[h] = cyc[(i + 1) % cyc.size()];
    }
  }
  for (int h = 0; h < num_half_edges; ++h)
    require(next[h] >= 0, ErrorCode::PermutationInvalid,
            "half-edge missing from vertex cycles");
  return next;
}

class MetricRibbonGraph {
 public:
  MetricRibbonGraph() = default;

  MetricRibbonGraph(RibbonGraph graph, std::vector<double> lengths,
                    std::optional<std::vector<Rational>> rational_lengths = std::nullopt)
      : graph_(std::move(graph)),
        lengths_(std::move(lengths)),
        rational_lengths_(std::move(rational_lengths)) {
    require(static_cast<int>(lengths_.size()) == graph_.num_edges(),
            ErrorCode::InvalidArgument, "one length per edge required");
    for (double l : lengths_)
      require(l > 0.0, ErrorCode::NonPositiveLength, "edge lengths must be positive");
    if (rational_lengths_) {
      require(rational_lengths_->size() == lengths_.size(), ErrorCode::InvalidArgument,
              "rational lengths must match edge count");
      for (std::size_t e = 0; e < lengths_.size(); ++e)
        require((*rational_lengths_)[e].positive(), ErrorCode::NonPositiveLength,
                "edge lengths must be positive");
    }
  }

  static MetricRibbonGraph from_rationals(RibbonGraph graph, std::vector<Rational> rl) {
    std::vector<double> lengths(rl.size());
    for (std::size_t i = 0; i < rl.size(); ++i) lengths[i] = rl[i].value();
    return MetricRibbonGraph(std::move(graph), std::move(lengths), std::move(rl));
  }

  const RibbonGraph& graph() const { return graph_; }
  const std::vector<double>& lengths() const { return lengths_; }
  double length(int e) const { return lengths_[e]; }
  double half_edge_length(int h) const { return lengths_[graph_.edge_of(h)]; }

  bool has_rational_lengths() const { return rational_lengths_.has_value(); }
  const std::vector<Rational>& rational_lengths() const {
    require(rational_lengths_.has_value(), ErrorCode::NotRational,
            "graph does not carry exact rational lengths");
    return *rational_lengths_;
  }

  double mean_edge_length() const {
    double s = 0.0;
    for (double l : lengths_) s += l;
    return s / static_cast<double>(lengths_.size());
  }

  double max_edge_length() const {
    return *std::max_element(lengths_.begin(), lengths_.end());
  }

  // Per-side convention: a face length sums the edge length once per
  // half-edge visit of the face cycle.
  std::vector<double> face_lengths() const {
    std::vector<double> out;
    out.reserve(graph_.num_faces());
    for (const auto& cyc : graph_.faces()) {
      double s = 0.0;
      for (int h : cyc) s += half_edge_length(h);
      out.push_back(s);
    }
    return out;
  }

 private:
  RibbonGraph graph_;
  std::vector<double> lengths_;
  std::optional<std::vector<Rational>> rational_lengths_;
};

inline MetricRibbonGraph scale(const MetricRibbonGraph& g, double alpha) {
  require(alpha > 0.0, ErrorCode::NonPositiveScale, "scale factor must be positive");
  std::vector<double> lengths = g.lengths();
  for (double& l : lengths) l *= alpha;
  return MetricRibbonGraph(g.graph(), std::move(lengths));
}

// Contracts a non-loop edge: endpoints merge and the two rotations are
// spliced at the removed half-edges. Remaining half-edges are re-indexed
// densely, preserving relative order.
inline MetricRibbonGraph contract_edge(const MetricRibbonGraph& g, int e) {
  const RibbonGraph& rg = g.graph();
  require(e >= 0 && e < rg.num_edges(), ErrorCode::InvalidArgument, "edge out of range");
  require(!rg.is_loop(e), ErrorCode::LoopContraction, "cannot contract a loop");
  auto [h, hbar] = rg.edge_pair(e);

  const int n = rg.num_half_edges();
  std::vector<int> relabel(n, -1);
  int fresh = 0;
  for (int x = 0; x < n; ++x)
    if (x != h && x != hbar) relabel[x] = fresh++;

  // next'(x): follow the old rotation, jumping across the contracted edge.
  // prev(h) -> next(hbar), prev(hbar) -> next(h) splices the two cycles.
  std::vector<int> twin(fresh), next(fresh);
  for (int x = 0; x < n; ++x) {
    if (relabel[x] < 0) continue;
    twin[relabel[x]] = relabel[rg.twin(x)];
    int nx = rg.next(x);
    if (nx == h) nx = rg.next(hbar);
    if (nx == hbar) nx = rg.next(h);
    // A second hop can only occur for degree-1 endpoints, where next(h)==h.
    if (nx == h || nx == hbar) fail(ErrorCode::LoopContraction,
                                    "contraction would erase a vertex rotation");
    next[relabel[x]] = relabel[nx];
  }

  std::vector<double> lengths;
  std::optional<std::vector<Rational>> rl;
  if (g.has_rational_lengths()) rl.emplace();
  for (int old_e = 0; old_e < rg.num_edges(); ++old_e) {
    if (old_e == e) continue;
    lengths.push_back(g.length(old_e));
    if (rl) rl->push_back(g.rational_lengths()[old_e]);
  }
  return MetricRibbonGraph(RibbonGraph(std::move(twin), std::move(next)),
                           std::move(lengths), std::move(rl));
}

// Same metric graph, freshly randomized rotations. Used to check that the
// length spectrum and critical exponent ignore the ribbon structure.
inline MetricRibbonGraph rerandomize_cyclic_orders(const MetricRibbonGraph& g, Rng& rng) {
  const RibbonGraph& rg = g.graph();
  std::vector<std::vector<int>> cycles = rg.vertices();
  for (auto& cyc : cycles) rng.shuffle(cyc);
  auto next = next_from_cycles(rg.num_half_edges(), cycles);
  return MetricRibbonGraph(RibbonGraph(rg.twin_map(), std::move(next)), g.lengths(),
                           g.has_rational_lengths()
                               ? std::optional<std::vector<Rational>>(g.rational_lengths())
                               : std::nullopt);
}

// ---------------------------------------------------------------------------
// Text format:
//   halfedges 2E
//   twin: a b            (one line per edge)
//   vertex: h1 h2 h3 ... (one line per vertex, counterclockwise)
//   length: edge_id value  (edge_id = smaller half-edge; value decimal or p/q)

inline MetricRibbonGraph read_graph(std::istream& in) {
  std::string line;
  int n = -1;
  std::vector<int> twin;
  std::vector<std::vector<int>> cycles;
  std::map<int, Rational> raw_lengths;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    auto where = [&] { return " (line " + std::to_string(line_no) + ")"; };
    if (key == "halfedges") {
      require(ls >> n && n > 0, ErrorCode::ParseError, "bad halfedges line" + where());
      twin.assign(n, -1);
    } else if (key == "twin:") {
      int a, b;
      require(static_cast<bool>(ls >> a >> b), ErrorCode::ParseError, "bad twin line" + where());
      require(n > 0, ErrorCode::ParseError, "twin before halfedges" + where());
      require(a >= 0 && a < n && b >= 0 && b < n, ErrorCode::ParseError,
              "twin index out of range" + where());
      require(twin[a] == -1 && twin[b] == -1, ErrorCode::ParseError,
              "half-edge paired twice" + where());
      twin[a] = b;
      twin[b] = a;
    } else if (key == "vertex:") {
      std::vector<int> cyc;
      int h;
      while (ls >> h) cyc.push_back(h);
      require(!cyc.empty(), ErrorCode::ParseError, "empty vertex line" + where());
      cycles.push_back(std::move(cyc));
    } else if (key == "length:") {
      int id;
      std::string value;
      require(static_cast<bool>(ls >> id >> value), ErrorCode::ParseError,
              "bad length line" + where());
      raw_lengths[id] = parse_rational(value);
    } else {
      fail(ErrorCode::ParseError, "unknown directive '" + key + "'" + where());
    }
  }
  require(n > 0, ErrorCode::ParseError, "missing halfedges line");
  for (int h = 0; h < n; ++h)
    require(twin[h] >= 0, ErrorCode::ParseError,
            "half-edge " + std::to_string(h) + " has no twin");
  RibbonGraph graph(std::move(twin), next_from_cycles(n, cycles));

  std::vector<Rational> rl(graph.num_edges());
  for (int e = 0; e < graph.num_edges(); ++e) {
    auto it = raw_lengths.find(graph.edge_file_id(e));
    require(it != raw_lengths.end(), ErrorCode::ParseError,
            "missing length for edge " + std::to_string(graph.edge_file_id(e)));
    rl[e] = it->second;
  }
  return MetricRibbonGraph::from_rationals(std::move(graph), std::move(rl));
}

inline void write_graph(std::ostream& out, const MetricRibbonGraph& g) {
  const RibbonGraph& rg = g.graph();
  out << "halfedges " << rg.num_half_edges() << "\n";
  for (int e = 0; e < rg.num_edges(); ++e) {
    auto [a, b] = rg.edge_pair(e);
    out << "twin: " << a << " " << b << "\n";
  }
  for (const auto& cyc : rg.vertices()) {
    out << "vertex:";
    for (int h : cyc) out << " " << h;
    out << "\n";
  }
  for (int e = 0; e < rg.num_edges(); ++e) {
    out << "length: " << rg.edge_file_id(e) << " ";
    if (g.has_rational_lengths()) {
      out << g.rational_lengths()[e].str();
    } else {
      std::ostringstream v;
      v.precision(17);
      v << g.length(e);
      out << v.str();
    }
    out << "\n";
  }
}

}  // namespace ribbonzeta
