#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "ribbonzeta/enumeration.hpp"
#include "ribbonzeta/errors.hpp"
#include "ribbonzeta/geodesics.hpp"
#include "ribbonzeta/intersections.hpp"
#include "ribbonzeta/rng.hpp"
#include "ribbonzeta/threading.hpp"

namespace ribbonzeta {

enum class ConstraintMode {
  kStandard,  // per-side face lengths; constraint rows sum each edge's sides
  kPaper11,   // the (1,1) simplex x + y + z = L, as in the source figure
};

inline const char* constraint_mode_name(ConstraintMode m) {
  return m == ConstraintMode::kStandard ? "standard" : "paper-11";
}

// Edge-length polytope of one top-dimensional cell: {l > 0, C l = target}.
// Geometry is carried in chart coordinates u (an orthonormal basis of
// ker C): l = particular + null_basis * u.
struct CellPolytope {
  CellDescriptor cell;
  std::vector<std::vector<int>> constraint;  // faces x edges, entries 0,1,2
  std::vector<double> target;
  int dimension = 0;

  Eigen::VectorXd particular;              // one solution of C l = target
  Eigen::MatrixXd null_basis;              // E x dimension, orthonormal columns
  std::vector<Eigen::VectorXd> vertices_u; // closed-polytope vertices
  Eigen::VectorXd interior_u;              // vertex centroid (interior point)
  double volume_u = 0.0;                   // Lebesgue volume in u coordinates
  bool simplex = false;

  Eigen::VectorXd lengths_at(const Eigen::VectorXd& u) const {
    return particular + null_basis * u;
  }
};

namespace detail {

// Volume of {t : offsets_j + grads_j . t >= 0} by the cone-over-facets
// recursion. Exact up to floating error for the small systems used here.
inline double hpoly_volume(const std::vector<Eigen::RowVectorXd>& grads,
                           const std::vector<double>& offsets, int dim,
                           double scale_hint) {
  const double tol = 1e-9 * std::max(1.0, scale_hint);
  const int m = static_cast<int>(grads.size());
  if (dim == 0) return 1.0;

  // Vertices: all dim-subsets of tight constraints.
  std::vector<Eigen::VectorXd> verts;
  std::vector<int> idx(dim);
  auto emit = [&](const std::vector<int>& rows) {
    Eigen::MatrixXd a(dim, dim);
    Eigen::VectorXd b(dim);
    for (int r = 0; r < dim; ++r) {
      a.row(r) = grads[rows[r]];
      b(r) = -offsets[rows[r]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.rank() < dim) return;
    Eigen::VectorXd t = lu.solve(b);
    for (int j = 0; j < m; ++j)
      if (offsets[j] + grads[j].dot(t) < -tol) return;
    for (const auto& v : verts)
      if ((v - t).norm() < tol) return;
    verts.push_back(std::move(t));
  };
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == dim) {
      emit(idx);
      return;
    }
    for (int r = start; r < m; ++r) {
      idx[depth] = r;
      self(self, r + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  if (static_cast<int>(verts.size()) < dim + 1) return 0.0;

  Eigen::VectorXd c = Eigen::VectorXd::Zero(dim);
  for (const auto& v : verts) c += v;
  c /= static_cast<double>(verts.size());

  if (dim == 1) {
    double lo = verts[0](0), hi = verts[0](0);
    for (const auto& v : verts) { lo = std::min(lo, v(0)); hi = std::max(hi, v(0)); }
    return hi - lo;
  }

  double vol = 0.0;
  for (int i = 0; i < m; ++i) {
    double gn = grads[i].norm();
    if (gn < tol) continue;
    double h = (offsets[i] + grads[i].dot(c)) / gn;
    if (h <= tol) continue;  // centroid on or behind the plane: degenerate facet
    // Parameterize the plane offsets_i + grads_i . t = 0 as t = t0 + W s.
    Eigen::VectorXd t0 = c - grads[i].transpose() * ((offsets[i] + grads[i].dot(c)) / (gn * gn));
    Eigen::FullPivLU<Eigen::MatrixXd> lu(grads[i]);
    Eigen::MatrixXd w = lu.kernel();  // dim x (dim-1)
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(w);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim - 1);
    std::vector<Eigen::RowVectorXd> sub_grads;
    std::vector<double> sub_offsets;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      sub_grads.push_back(grads[j] * q);
      sub_offsets.push_back(offsets[j] + grads[j].dot(t0));
    }
    double fvol = hpoly_volume(sub_grads, sub_offsets, dim - 1, scale_hint);
    vol += h * fvol / static_cast<double>(dim);
  }
  return vol;
}

}  // namespace detail

// Face-incidence constraint matrix: entry (f, e) counts the sides of edge e
// on face f; every column sums to 2.
inline std::vector<std::vector<int>> face_incidence_matrix(const RibbonGraph& g) {
  std::vector<std::vector<int>> c(g.num_faces(), std::vector<int>(g.num_edges(), 0));
  for (int f = 0; f < g.num_faces(); ++f)
    for (int h : g.faces()[f]) ++c[f][g.edge_of(h)];
  return c;
}

inline CellPolytope cell_polytope(const CellDescriptor& cell, const std::vector<double>& L,
                                  ConstraintMode mode = ConstraintMode::kStandard) {
  for (double li : L)
    require(li > 0.0, ErrorCode::InvalidArgument, "boundary lengths must be positive");

  CellPolytope p;
  p.cell = cell;
  const RibbonGraph& g = cell.representative;
  const int ne = g.num_edges();

  if (mode == ConstraintMode::kPaper11) {
    require(cell.genus == 1 && cell.n_faces == 1 && ne == 3, ErrorCode::InvalidArgument,
            "paper-11 mode applies to the (1,1) cell only");
    require(L.size() == 1, ErrorCode::InvalidArgument, "one boundary length expected");
    p.constraint = {{1, 1, 1}};
    p.target = {L[0]};
  } else {
    require(static_cast<int>(L.size()) == g.num_faces(), ErrorCode::InvalidArgument,
            "one target length per face expected");
    p.constraint = face_incidence_matrix(g);
    p.target = L;
  }

  const int rows = static_cast<int>(p.constraint.size());
  Eigen::MatrixXd c(rows, ne);
  Eigen::VectorXd t(rows);
  for (int r = 0; r < rows; ++r) {
    t(r) = p.target[r];
    for (int e = 0; e < ne; ++e) c(r, e) = static_cast<double>(p.constraint[r][e]);
  }
  const double scale = t.cwiseAbs().maxCoeff();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(c);
  p.particular = qr.solve(t);
  require((c * p.particular - t).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, scale),
          ErrorCode::EmptyCell, "face-length constraints are inconsistent");

  Eigen::FullPivLU<Eigen::MatrixXd> lu(c);
  lu.setThreshold(1e-10);
  Eigen::MatrixXd kernel = lu.kernel();
  // FullPivLU returns a zero column for trivial kernels.
  if (kernel.cols() == 1 && kernel.col(0).norm() < 1e-12) kernel.resize(ne, 0);
  p.dimension = static_cast<int>(kernel.cols());
  if (p.dimension > 0) {
    Eigen::HouseholderQR<Eigen::MatrixXd> kqr(kernel);
    p.null_basis =
        kqr.householderQ() * Eigen::MatrixXd::Identity(ne, p.dimension);
  } else {
    p.null_basis = Eigen::MatrixXd::Zero(ne, 0);
  }

  const double tol = 1e-9 * std::max(1.0, scale);
  if (p.dimension == 0) {
    require(p.particular.minCoeff() > tol, ErrorCode::EmptyCell,
            "unique solution has a non-positive edge length");
    p.vertices_u = {};
    p.interior_u = Eigen::VectorXd::Zero(0);
    p.volume_u = 1.0;
    p.simplex = false;
    return p;
  }

  // Vertices of {u : particular + N u >= 0}.
  std::vector<Eigen::RowVectorXd> grads;
  std::vector<double> offsets;
  for (int e = 0; e < ne; ++e) {
    grads.push_back(p.null_basis.row(e));
    offsets.push_back(p.particular(e));
  }
  const int d = p.dimension;
  std::vector<int> idx(d);
  auto emit = [&](const std::vector<int>& rowset) {
    Eigen::MatrixXd a(d, d);
    Eigen::VectorXd b(d);
    for (int r = 0; r < d; ++r) {
      a.row(r) = grads[rowset[r]];
      b(r) = -offsets[rowset[r]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> alu(a);
    if (alu.rank() < d) return;
    Eigen::VectorXd u = alu.solve(b);
    Eigen::VectorXd l = p.lengths_at(u);
    if (l.minCoeff() < -tol) return;
    for (const auto& v : p.vertices_u)
      if ((v - u).norm() < tol) return;
    p.vertices_u.push_back(std::move(u));
  };
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == d) {
      emit(idx);
      return;
    }
    for (int r = start; r < ne; ++r) {
      idx[depth] = r;
      self(self, r + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);

  require(static_cast<int>(p.vertices_u.size()) >= d + 1, ErrorCode::EmptyCell,
          "edge-length polytope is empty");
  p.interior_u = Eigen::VectorXd::Zero(d);
  for (const auto& v : p.vertices_u) p.interior_u += v;
  p.interior_u /= static_cast<double>(p.vertices_u.size());
  require(p.lengths_at(p.interior_u).minCoeff() > tol, ErrorCode::EmptyCell,
          "edge-length polytope has empty interior");

  p.volume_u = detail::hpoly_volume(grads, offsets, d, scale);
  p.simplex = (static_cast<int>(p.vertices_u.size()) == d + 1);
  return p;
}

inline MetricRibbonGraph metric_at(const CellPolytope& p, const Eigen::VectorXd& u) {
  Eigen::VectorXd l = p.lengths_at(u);
  std::vector<double> lengths(l.data(), l.data() + l.size());
  return MetricRibbonGraph(p.cell.representative, std::move(lengths));
}

// One uniform draw from the open polytope. Simplices are sampled exactly via
// barycentric Dirichlet weights; other shapes use hit-and-run with burn-in
// 1000 and thinning 10 (state carried across calls via `chain`).
inline Eigen::VectorXd sample_cell_u(const CellPolytope& p, Rng& rng,
                                     std::optional<Eigen::VectorXd>* chain = nullptr) {
  require(p.dimension >= 1, ErrorCode::ZeroDimensional,
          "cell polytope has dimension 0");
  const int d = p.dimension;
  const double scale = *std::max_element(p.target.begin(), p.target.end());
  const double eps = 1e-12 * std::max(1.0, scale);

  if (p.simplex) {
    for (;;) {
      std::vector<double> w = rng.dirichlet(p.vertices_u.size());
      Eigen::VectorXd u = Eigen::VectorXd::Zero(d);
      for (std::size_t i = 0; i < w.size(); ++i) u += w[i] * p.vertices_u[i];
      if (p.lengths_at(u).minCoeff() > eps) return u;
    }
  }

  Eigen::VectorXd u;
  int steps;
  if (chain && chain->has_value()) {
    u = **chain;
    steps = 10;
  } else {
    u = p.interior_u;
    steps = 1000;
  }
  for (int it = 0; it < steps; ++it) {
    Eigen::VectorXd dir(d);
    for (int i = 0; i < d; ++i) dir(i) = rng.normal();
    double nrm = dir.norm();
    if (nrm < 1e-12) { --it; continue; }
    dir /= nrm;
    Eigen::VectorXd cur = p.lengths_at(u);
    Eigen::VectorXd slope = p.null_basis * dir;
    double tmin = -1e300, tmax = 1e300;
    for (int e = 0; e < cur.size(); ++e) {
      if (slope(e) > 1e-14) tmin = std::max(tmin, -cur(e) / slope(e));
      else if (slope(e) < -1e-14) tmax = std::min(tmax, -cur(e) / slope(e));
    }
    if (!(tmin < tmax)) { --it; continue; }
    double t = rng.uniform(tmin, tmax);
    Eigen::VectorXd cand = u + t * dir;
    if (p.lengths_at(cand).minCoeff() <= eps) { --it; continue; }
    u = cand;
  }
  if (chain) *chain = u;
  return u;
}

inline MetricRibbonGraph sample_cell(const CellPolytope& p, Rng& rng) {
  return metric_at(p, sample_cell_u(p, rng, nullptr));
}

// ---------------------------------------------------------------------------
// Cell constants from the S-matrix of derived geodesics.

struct CellGeometry {
  std::vector<MultiGeodesic> derived;   // one multi-geodesic per edge
  IntMatrix s_full;                     // iw matrix of all derived geodesics
  std::vector<std::vector<std::int64_t>> traversal;  // edge traversal counts
};

inline CellGeometry cell_geometry(const CellDescriptor& cell) {
  // The derived geodesics and their iw matrix are combinatorial; any
  // positive metric will do.
  MetricRibbonGraph unit(cell.representative,
                         std::vector<double>(cell.representative.num_edges(), 1.0));
  CellGeometry out;
  out.derived = all_derived_geodesics(unit);
  out.s_full = s_matrix(cell.representative, out.derived);
  for (const auto& multi : out.derived)
    out.traversal.push_back(edge_traversal_counts(cell.representative, multi));
  return out;
}

// Full-rank sub-selections of 6g-6+2n derived geodesics, in lexicographic
// order. Throws RankDeficient when none exists.
inline std::vector<std::vector<int>> full_rank_subselections(const CellGeometry& geom,
                                                             int d, std::size_t max_count) {
  std::vector<std::vector<int>> found;
  const int n = static_cast<int>(geom.s_full.size());
  if (d == 0) {
    found.push_back({});
    return found;
  }
  std::vector<int> idx(d);
  auto rec = [&](auto&& self, int start, int depth) -> bool {
    if (found.size() >= max_count) return true;
    if (depth == d) {
      IntMatrix sub(d, std::vector<std::int64_t>(d));
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) sub[a][b] = geom.s_full[idx[a]][idx[b]];
      if (integer_det(sub) != 0) found.push_back(idx);
      return found.size() >= max_count;
    }
    for (int r = start; r < n; ++r) {
      idx[depth] = r;
      if (self(self, r + 1, depth + 1)) return true;
    }
    return false;
  };
  rec(rec, 0, 0);
  require(!found.empty(), ErrorCode::RankDeficient,
          "no invertible sub-selection of derived geodesics");
  return found;
}

namespace detail {

inline double sqrt_det_inv_s(const CellGeometry& geom, const std::vector<int>& sel) {
  const int d = static_cast<int>(sel.size());
  if (d == 0) return 1.0;
  IntMatrix sub(d, std::vector<std::int64_t>(d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) sub[a][b] = geom.s_full[sel[a]][sel[b]];
  std::int64_t det = integer_det(sub);
  require(det > 0, ErrorCode::RankDeficient, "selected S sub-matrix is singular");
  return 1.0 / std::sqrt(static_cast<double>(det));
}

}  // namespace detail

// Chart-free cell weight: integral of dV_K over the open cell, computed as
// |det(K_sel N)| * vol_u / sqrt(det S_sel). Independent of the sub-selection.
inline double kontsevich_cell_weight(const CellPolytope& p, const CellGeometry& geom,
                                     const std::vector<int>& sel) {
  const int d = p.dimension;
  require(static_cast<int>(sel.size()) == d, ErrorCode::InvalidArgument,
          "sub-selection size must match the cell dimension");
  if (d == 0) return 1.0;
  Eigen::MatrixXd k(d, p.cell.representative.num_edges());
  for (int r = 0; r < d; ++r)
    for (int e = 0; e < k.cols(); ++e)
      k(r, e) = static_cast<double>(geom.traversal[sel[r]][e]);
  Eigen::MatrixXd j = k * p.null_basis;  // d x d
  double jac = std::abs(j.determinant());
  return detail::sqrt_det_inv_s(geom, sel) * jac * p.volume_u;
}

// The constant density of dV_K against Lebesgue measure in a free-edge
// chart: sqrt(det S_sel^{-1}) * |d k_sel / d l_F|. The chart F defaults to
// the lexicographically first set of edges whose lengths are independent
// coordinates on the cell.
inline double cell_constant(const CellPolytope& p, const CellGeometry& geom,
                            const std::vector<int>& sel) {
  const int d = p.dimension;
  require(static_cast<int>(sel.size()) == d, ErrorCode::InvalidArgument,
          "sub-selection size must match the cell dimension");
  if (d == 0) return 1.0;
  const int ne = p.cell.representative.num_edges();

  // First chart subset with invertible N_F.
  std::vector<int> chart;
  {
    std::vector<int> idx(d);
    auto rec = [&](auto&& self, int start, int depth) -> bool {
      if (depth == d) {
        Eigen::MatrixXd nf(d, d);
        for (int r = 0; r < d; ++r) nf.row(r) = p.null_basis.row(idx[r]);
        if (std::abs(nf.determinant()) > 1e-10) {
          chart = idx;
          return true;
        }
        return false;
      }
      for (int e = start; e < ne; ++e) {
        idx[depth] = e;
        if (self(self, e + 1, depth + 1)) return true;
      }
      return false;
    };
    rec(rec, 0, 0);
  }
  require(!chart.empty(), ErrorCode::RankDeficient, "no valid edge chart found");

  Eigen::MatrixXd nf(d, d);
  for (int r = 0; r < d; ++r) nf.row(r) = p.null_basis.row(chart[r]);
  Eigen::MatrixXd k(d, ne);
  for (int r = 0; r < d; ++r)
    for (int e = 0; e < ne; ++e) k(r, e) = static_cast<double>(geom.traversal[sel[r]][e]);
  Eigen::MatrixXd jac = k * p.null_basis * nf.inverse();
  return detail::sqrt_det_inv_s(geom, sel) * std::abs(jac.determinant());
}

inline double cell_constant(const CellDescriptor& cell, const std::vector<double>& L,
                            ConstraintMode mode = ConstraintMode::kStandard) {
  CellPolytope p = cell_polytope(cell, L, mode);
  CellGeometry geom = cell_geometry(cell);
  auto sels = full_rank_subselections(geom, p.dimension, 1);
  return cell_constant(p, geom, sels.front());
}

// ---------------------------------------------------------------------------
// Whole-space sampler.

struct SamplePoint {
  MetricRibbonGraph graph;
  int cell_id = 0;
  double weight = 1.0;
};

struct SpaceOptions {
  ConstraintMode mode = ConstraintMode::kStandard;
  bool aut_weight = true;  // weight cells by 1/|Aut|
};

inline const std::vector<CellDescriptor>& cached_trivalent_types(int g, int n) {
  static std::map<std::pair<int, int>, std::vector<CellDescriptor>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(g, n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enumerate_trivalent_types(g, n)).first;
  return it->second;
}

class SpaceSampler {
 public:
  SpaceSampler(int g, int n, std::vector<double> L, const SpaceOptions& opt = {})
      : g_(g), n_(n), L_(std::move(L)), opt_(opt) {
    check_admissible(g, n);
    const auto& cells = cached_trivalent_types(g, n);
    double total = 0.0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (opt_.mode == ConstraintMode::kPaper11)
        require(g == 1 && n == 1, ErrorCode::InvalidArgument,
                "paper-11 mode applies to (1,1) only");
      CellPolytope p;
      try {
        p = cell_polytope(cells[c], L_, opt_.mode);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::EmptyCell) continue;
        throw;
      }
      CellGeometry geom = cell_geometry(cells[c]);
      auto sels = full_rank_subselections(geom, p.dimension, 1);
      double w = kontsevich_cell_weight(p, geom, sels.front());
      if (opt_.aut_weight) w /= static_cast<double>(cells[c].automorphism_count);
      if (w <= 0.0) continue;
      cell_ids_.push_back(static_cast<int>(c));
      polytopes_.push_back(std::move(p));
      weights_.push_back(w);
      total += w;
    }
    require(!polytopes_.empty(), ErrorCode::EmptyCell,
            "no nonempty cell for the requested boundary lengths");
    for (double& w : weights_) w /= total;
  }

  int genus() const { return g_; }
  int boundary_count() const { return n_; }
  const std::vector<double>& boundary_lengths() const { return L_; }
  const std::vector<CellPolytope>& polytopes() const { return polytopes_; }
  const std::vector<int>& cell_ids() const { return cell_ids_; }
  const std::vector<double>& cell_probabilities() const { return weights_; }

  struct Stream {
    Rng rng{0};
    std::vector<std::optional<Eigen::VectorXd>> chains;
  };

  Stream make_stream(std::uint64_t base_seed, std::uint64_t index) const {
    Stream s;
    s.rng = Rng::stream(base_seed, index);
    s.chains.assign(polytopes_.size(), std::nullopt);
    return s;
  }

  SamplePoint draw(Stream& stream) const {
    double x = stream.rng.uniform();
    std::size_t pick = 0;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      acc += weights_[i];
      if (x < acc) { pick = i; break; }
      pick = i;
    }
    const CellPolytope& p = polytopes_[pick];
    SamplePoint out;
    out.cell_id = cell_ids_[pick];
    if (p.dimension == 0) {
      out.graph = metric_at(p, Eigen::VectorXd::Zero(0));
    } else {
      out.graph = metric_at(p, sample_cell_u(p, stream.rng, &stream.chains[pick]));
    }
    return out;
  }

 private:
  int g_, n_;
  std::vector<double> L_;
  SpaceOptions opt_;
  std::vector<int> cell_ids_;
  std::vector<CellPolytope> polytopes_;
  std::vector<double> weights_;
};

// N draws from the normalized Kontsevich measure. Work is split over 64
// fixed logical streams (stream i seed = base seed XOR i, indices i, i+64,
// ...), so the output is one deterministic sequence regardless of the
// number of worker threads.
inline std::vector<SamplePoint> sample_space(int g, int n, const std::vector<double>& L,
                                             std::size_t N, std::uint64_t seed,
                                             const SpaceOptions& opt = {},
                                             unsigned threads = 0) {
  SpaceSampler sampler(g, n, L, opt);
  constexpr std::size_t kStreams = 64;
  std::vector<SamplePoint> out(N);
  std::size_t used = std::min(kStreams, N == 0 ? std::size_t{1} : N);
  parallel_for(used, [&](std::size_t s) {
    auto stream = sampler.make_stream(seed, s);
    for (std::size_t i = s; i < N; i += kStreams) out[i] = sampler.draw(stream);
  }, threads);
  return out;
}

struct ProbabilityEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::size_t hits = 0;
  std::size_t total = 0;
};

// Monte-Carlo estimate of P(systole <= eps) under the normalized Kontsevich
// measure, with binomial standard error.
inline ProbabilityEstimate short_geodesic_probability(int g, int n,
                                                      const std::vector<double>& L,
                                                      double eps, std::size_t N,
                                                      std::uint64_t seed,
                                                      const SpaceOptions& opt = {},
                                                      unsigned threads = 0) {
  require(eps > 0.0, ErrorCode::InvalidArgument, "eps must be positive");
  require(N >= 1000, ErrorCode::InvalidArgument, "need at least 10^3 samples");
  SpaceSampler sampler(g, n, L, opt);
  constexpr std::size_t kStreams = 64;
  std::vector<std::size_t> hits(kStreams, 0);
  std::size_t used = std::min(kStreams, N);
  parallel_for(used, [&](std::size_t s) {
    auto stream = sampler.make_stream(seed, s);
    for (std::size_t i = s; i < N; i += kStreams) {
      SamplePoint pt = sampler.draw(stream);
      if (systole(pt.graph) <= eps) ++hits[s];
    }
  }, threads);
  ProbabilityEstimate est;
  for (std::size_t h : hits) est.hits += h;
  est.total = N;
  est.value = static_cast<double>(est.hits) / static_cast<double>(N);
  est.stderr_ = std::sqrt(std::max(est.value * (1.0 - est.value), 0.0) /
                          static_cast<double>(N));
  return est;
}

}  // namespace ribbonzeta
