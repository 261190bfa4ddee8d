#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "ribbonzeta/enumeration.hpp"
#include "ribbonzeta/intersections.hpp"
#include "test_helpers.hpp"

using namespace ribbonzeta;

namespace {

MetricRibbonGraph unit_metric(const RibbonGraph& g) {
  return MetricRibbonGraph(g, std::vector<double>(g.num_edges(), 1.0));
}

}  // namespace

TEST_CASE("the two dual curves on the (1,1) theta cross once") {
  RibbonGraph t = fixtures::theta11();
  MetricRibbonGraph m = fixtures::equilateral_theta11();
  auto g1 = make_geodesic(m, {4, 2});  // runs along edges y and z
  auto g2 = make_geodesic(m, {5, 0});  // runs along edges z and x
  // Hand trace: one maximal pair with body on edge z; tails at u are
  // half-edges 1 (g1) and 0 (g2), at v 4 (g1) and 3 (g2); both cyclic
  // orders visit the eta tail first, so the orders agree with sign -1.
  auto pairs = maximal_pairs(t, g1, g2);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].length == 1);
  CHECK(pairs[0].type == -1);
  CHECK(intersection_number(t, g1, g2) == 1);
  CHECK(ideal_wolpert_pairs(t, g1, g2) == -1);
  CHECK(ideal_wolpert_edgerule(t, g1, g2) == -1);
  CHECK(ideal_wolpert_pairs(t, g2, g1) == 1);

  auto xs = intersections(t, g1, g2);
  REQUIRE(xs.size() == 1);
  CHECK(xs[0].sign == -1);
  CHECK(xs[0].body.size() == 1);
  CHECK(t.edge_of(xs[0].body[0]) == 2);  // edge z = {2,5}
  CHECK(xs[0].gamma_tail_start != xs[0].eta_tail_start);
  CHECK(xs[0].gamma_tail_end != xs[0].eta_tail_end);
}

TEST_CASE("disjoint geodesics do not intersect") {
  RibbonGraph db = fixtures::dumbbell();
  MetricRibbonGraph m = unit_metric(db);
  auto a = make_geodesic(m, {0});  // loop at u
  auto b = make_geodesic(m, {3});  // loop at v
  CHECK(maximal_pairs(db, a, b).empty());
  CHECK(ideal_wolpert_pairs(db, a, b) == 0);
  CHECK(ideal_wolpert_edgerule(db, a, b) == 0);
}

TEST_CASE("intersections require trivalent graphs") {
  RibbonGraph rose = fixtures::rose2_11();
  MetricRibbonGraph m(rose, {1.0, 1.0});
  auto a = make_geodesic(m, {0});
  auto b = make_geodesic(m, {2});
  CHECK_THROWS_MATCHES(intersection_number(rose, a, b), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::NotTrivalent;
                       }));
}

TEST_CASE("simplicity on small graphs") {
  RibbonGraph t = fixtures::theta11();
  MetricRibbonGraph m = fixtures::equilateral_theta11();
  SECTION("2-step theta geodesics are simple") {
    for (const auto& p : enumerate_geodesics(m, 0.7)) CHECK(is_simple(t, p));
  }
  SECTION("single loops on the dumbbell are simple") {
    MetricRibbonGraph db = unit_metric(fixtures::dumbbell());
    for (const auto& p : enumerate_geodesics(db, 1.0)) CHECK(is_simple(db.graph(), p));
  }
  SECTION("the (1,1) theta carries non-simple geodesics below six steps") {
    // Exhaustive scan of the length <= 2 spectrum: 13 simple, 3 not.
    int simple = 0, nonsimple = 0;
    for (const auto& p : enumerate_geodesics(m, 2.0))
      (is_simple(t, p) ? simple : nonsimple)++;
    CHECK(simple == 13);
    CHECK(nonsimple == 3);
  }
}

TEST_CASE("iw properties over the enumerated spectrum") {
  // The acceptance suite does the full sweep at 8x mean edge length over
  // every enumerated type; this smaller deterministic sweep keeps the unit
  // tests quick.
  for (const RibbonGraph& rg : {fixtures::theta11(), fixtures::dumbbell()}) {
    MetricRibbonGraph m = unit_metric(rg);
    auto gs = enumerate_geodesics(m, 6.0);
    for (std::size_t i = 0; i < gs.size(); ++i) {
      for (std::size_t j = i + 1; j < gs.size(); ++j) {
        std::int64_t ab = ideal_wolpert_pairs(rg, gs[i], gs[j]);
        std::int64_t ba = ideal_wolpert_pairs(rg, gs[j], gs[i]);
        std::int64_t edge_ab = ideal_wolpert_edgerule(rg, gs[i], gs[j]);
        std::int64_t inum = intersection_number(rg, gs[i], gs[j]);
        CHECK(ab == -ba);
        CHECK(ab == edge_ab);
        CHECK(std::abs(ab) <= inum);
        CHECK(inum == intersection_number(rg, gs[j], gs[i]));
      }
    }
  }
}

TEST_CASE("iw is orientation independent") {
  RibbonGraph t = fixtures::theta11();
  MetricRibbonGraph m = fixtures::equilateral_theta11();
  auto gs = enumerate_geodesics(m, 2.0);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    for (std::size_t j = i + 1; j < gs.size(); ++j) {
      GeodesicPath rev = make_geodesic(
          m, reversed_steps(t, gs[i].steps), /*orient_free=*/false);
      CHECK(ideal_wolpert_pairs(t, rev, gs[j]) == ideal_wolpert_pairs(t, gs[i], gs[j]));
      CHECK(ideal_wolpert_edgerule(t, rev, gs[j]) ==
            ideal_wolpert_edgerule(t, gs[i], gs[j]));
    }
  }
}

TEST_CASE("iw of a simple geodesic with itself vanishes under both rules") {
  for (const RibbonGraph& rg : {fixtures::theta11(), fixtures::dumbbell()}) {
    MetricRibbonGraph m = unit_metric(rg);
    for (const auto& p : enumerate_geodesics(m, 4.0)) {
      if (!is_simple(rg, p)) continue;
      CHECK(ideal_wolpert_pairs(rg, p, p) == 0);
      CHECK(ideal_wolpert_edgerule(rg, p, p) == 0);
    }
  }
}

TEST_CASE("derived geodesics follow the two pants templates") {
  SECTION("(1,1) theta: one adjacent face, two parallel components") {
    MetricRibbonGraph m = fixtures::equilateral_theta11();
    auto d0 = derived_geodesic(m, 0);
    REQUIRE(d0.size() == 2);
    CHECK(d0[0].steps == std::vector<int>{1, 5});
    CHECK(d0[1].steps == std::vector<int>{1, 5});
    auto d1 = derived_geodesic(m, 1);
    REQUIRE(d1.size() == 2);
    CHECK(d1[0].steps == std::vector<int>{0, 5});
    auto d2 = derived_geodesic(m, 2);
    REQUIRE(d2.size() == 2);
    CHECK(d2[0].steps == std::vector<int>{0, 4});
  }
  SECTION("(0,3) theta: two adjacent faces, one component — the third face") {
    MetricRibbonGraph m = unit_metric(fixtures::theta03());
    auto d0 = derived_geodesic(m, 0);
    REQUIRE(d0.size() == 1);
    CHECK(d0[0].steps == std::vector<int>{1, 5});
    auto d1 = derived_geodesic(m, 1);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0].steps == std::vector<int>{0, 5});
  }
  SECTION("dumbbell: a loop derives the opposite loop; the bridge both") {
    MetricRibbonGraph m = unit_metric(fixtures::dumbbell());
    auto da = derived_geodesic(m, 0);
    REQUIRE(da.size() == 1);
    CHECK(da[0].steps == std::vector<int>{3});
    auto dbridge = derived_geodesic(m, 1);
    REQUIRE(dbridge.size() == 2);
    auto db2 = derived_geodesic(m, 2);
    REQUIRE(db2.size() == 1);
    CHECK(db2[0].steps == std::vector<int>{0});
  }
  SECTION("components are simple and primitive on every enumerated type") {
    for (auto [g, n] : {std::pair{0, 3}, {1, 1}, {0, 4}, {1, 2}}) {
      for (const auto& cell : enumerate_trivalent_types(g, n)) {
        MetricRibbonGraph m = unit_metric(cell.representative);
        for (int e = 0; e < m.graph().num_edges(); ++e) {
          for (const auto& comp : derived_geodesic(m, e)) {
            CHECK(is_simple(cell.representative, comp));
            CHECK(detail::is_primitive_word(comp.steps));
          }
        }
      }
    }
  }
}

TEST_CASE("S-matrix of derived geodesics") {
  SECTION("(1,1) theta: frozen matrix") {
    MetricRibbonGraph m = fixtures::equilateral_theta11();
    auto s = s_matrix(m.graph(), all_derived_geodesics(m));
    IntMatrix want{{0, -4, 4}, {4, 0, -4}, {-4, 4, 0}};
    CHECK(s == want);
    CHECK(integer_rank(s) == 2);
  }
  SECTION("rank is 6g-6+2n and S is skew-symmetric on every cell") {
    for (auto [g, n] : {std::pair{0, 3}, {1, 1}, {0, 4}, {1, 2}}) {
      for (const auto& cell : enumerate_trivalent_types(g, n)) {
        MetricRibbonGraph m = unit_metric(cell.representative);
        auto s = s_matrix(cell.representative, all_derived_geodesics(m));
        CHECK(integer_rank(s) == 6 * g - 6 + 2 * n);
        for (std::size_t i = 0; i < s.size(); ++i) {
          CHECK(s[i][i] == 0);
          for (std::size_t j = 0; j < s.size(); ++j) CHECK(s[i][j] == -s[j][i]);
        }
      }
    }
  }
}

TEST_CASE("integer rank and determinant helpers") {
  CHECK(integer_rank({{1, 2}, {2, 4}}) == 1);
  CHECK(integer_rank({{0, 0}, {0, 0}}) == 0);
  CHECK(integer_rank({{0, 1, 0}, {-1, 0, 2}, {0, -2, 0}}) == 2);
  CHECK(integer_det({{2, 0}, {0, 3}}) == 6);
  CHECK(integer_det({{0, 1}, {-1, 0}}) == 1);
  CHECK(integer_det({{1, 2}, {2, 4}}) == 0);
  CHECK(integer_det({{3, 1, 0}, {1, 3, 1}, {0, 1, 3}}) == 21);
}
