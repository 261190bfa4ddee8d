#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "ribbonzeta/geodesics.hpp"
#include "ribbonzeta/rng.hpp"
#include "test_helpers.hpp"

using namespace ribbonzeta;

namespace {

// Naive canonical form: minimum over all rotations of the word and of its
// reversal. Quadratic, obviously correct.
std::vector<int> naive_canonical(const RibbonGraph& g, const std::vector<int>& steps) {
  auto all_min = [](const std::vector<int>& w) {
    std::vector<int> best = w;
    for (std::size_t r = 1; r < w.size(); ++r) {
      std::vector<int> rot;
      for (std::size_t i = 0; i < w.size(); ++i) rot.push_back(w[(r + i) % w.size()]);
      best = std::min(best, rot);
    }
    return best;
  };
  return std::min(all_min(steps), all_min(reversed_steps(g, steps)));
}

// Independent oracle: plain DFS over all starting directed edges with no
// canonical-start pruning; classes are deduplicated afterwards.
std::set<std::vector<int>> oracle_classes(const MetricRibbonGraph& g, double x_max) {
  const RibbonGraph& rg = g.graph();
  auto cont = nb_continuations(rg);
  std::set<std::vector<int>> classes;
  std::vector<int> path;
  auto rec = [&](auto&& self, int start, double acc) -> void {
    for (int j : cont[path.back()]) {
      if (j == start) {
        if (detail::is_primitive_word(path)) classes.insert(naive_canonical(rg, path));
      }
      double nl = acc + g.half_edge_length(j);
      if (nl <= x_max) {
        path.push_back(j);
        self(self, start, nl);
        path.pop_back();
      }
    }
  };
  for (int s = 0; s < rg.num_half_edges(); ++s) {
    double l0 = g.half_edge_length(s);
    if (l0 > x_max) continue;
    path.assign(1, s);
    rec(rec, s, l0);
  }
  return classes;
}

}  // namespace

TEST_CASE("canonical rotation matches the naive quadratic form") {
  MetricRibbonGraph theta = fixtures::equilateral_theta11();
  for (const auto& p : enumerate_geodesics(theta, 2.0)) {
    CHECK(p.steps == naive_canonical(theta.graph(), p.steps));
    bool pal = canonical_rotation(p.steps) ==
               canonical_rotation(reversed_steps(theta.graph(), p.steps));
    CHECK(p.palindromic == pal);
  }
}

TEST_CASE("enumeration matches the exhaustive oracle") {
  SECTION("equilateral theta across cutoffs") {
    MetricRibbonGraph theta = fixtures::equilateral_theta11();
    for (double x : {0.5, 0.67, 1.1, 1.4, 2.0}) {
      auto got = enumerate_geodesics(theta, x);
      auto want = oracle_classes(theta, x);
      REQUIRE(got.size() == want.size());
      for (const auto& p : got) CHECK(want.count(p.steps) == 1);
    }
  }
  SECTION("two-loop rose") {
    MetricRibbonGraph rose(fixtures::rose2_11(), {1.0, 1.0});
    for (double x : {1.0, 2.0, 3.0}) {
      auto got = enumerate_geodesics(rose, x);
      auto want = oracle_classes(rose, x);
      CHECK(got.size() == want.size());
    }
  }
  SECTION("dumbbell with uneven lengths") {
    MetricRibbonGraph d(fixtures::dumbbell(), {0.3, 0.4, 0.55});
    auto got = enumerate_geodesics(d, 3.0);
    auto want = oracle_classes(d, 3.0);
    REQUIRE(got.size() == want.size());
    for (const auto& p : got) CHECK(want.count(p.steps) == 1);
  }
}

TEST_CASE("equilateral theta spectrum, frozen from the oracle") {
  MetricRibbonGraph theta = fixtures::equilateral_theta11();
  // At x = 0.7 exactly the three 2-step geodesics exist (each pair of
  // distinct edges); every closed walk on the theta has even step count.
  auto gs = enumerate_geodesics(theta, 0.7);
  REQUIRE(gs.size() == 3);
  for (const auto& p : gs) {
    CHECK(p.combinatorial_length() == 2);
    CHECK_THAT(p.metric_length, Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-12));
  }
  // Below the systole the list is empty.
  CHECK(enumerate_geodesics(theta, 0.6).empty());
  // Frozen class counts by combinatorial length at x = 2.
  std::map<int, int> by_steps;
  for (const auto& p : enumerate_geodesics(theta, 2.0)) ++by_steps[p.combinatorial_length()];
  CHECK(by_steps == std::map<int, int>{{2, 3}, {4, 3}, {6, 10}});
}

TEST_CASE("two-loop rose geodesics at the loop length") {
  MetricRibbonGraph rose(fixtures::rose2_11(), {1.0, 1.0});
  auto gs = enumerate_geodesics(rose, 1.0);
  REQUIRE(gs.size() == 2);  // the two loops
  for (const auto& p : gs) CHECK(p.combinatorial_length() == 1);
}

TEST_CASE("enumeration is monotone in the cutoff") {
  MetricRibbonGraph d(fixtures::dumbbell(), {0.3, 0.4, 0.55});
  auto small = enumerate_geodesics(d, 1.5);
  auto big = enumerate_geodesics(d, 2.5);
  std::set<std::vector<int>> big_set;
  for (const auto& p : big) big_set.insert(p.steps);
  for (const auto& p : small) CHECK(big_set.count(p.steps) == 1);
  CHECK(small.size() <= big.size());
}

TEST_CASE("count_geodesics counts classes and respects the convention") {
  MetricRibbonGraph theta = fixtures::equilateral_theta11();
  CHECK(count_geodesics(theta, 0.5) == 0);
  CHECK(count_geodesics(theta, 2.0 / 3.0 + 1e-9) == 3);
  // L is a step function: constant below the next spectrum jump.
  CHECK(count_geodesics(theta, 0.7) == count_geodesics(theta, 1.3));
  // Oriented counting doubles chiral classes.
  auto gs = enumerate_geodesics(theta, 2.0);
  std::uint64_t oriented = 0;
  for (const auto& p : gs) oriented += p.palindromic ? 1 : 2;
  CHECK(count_geodesics(theta, 2.0, CountConvention::kOriented) == oriented);
  CHECK(count_geodesics(theta, 2.0) == gs.size());
}

TEST_CASE("budget errors are raised") {
  MetricRibbonGraph theta = fixtures::equilateral_theta11();
  CHECK_THROWS_MATCHES(enumerate_geodesics(theta, 4.0, /*budget=*/5), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::BudgetExceeded;
                       }));
}

TEST_CASE("geodesic representative reduces backtracks") {
  MetricRibbonGraph theta = fixtures::equilateral_theta11();
  SECTION("a geodesic walk is its own representative, canonically rotated") {
    std::vector<int> walk{4, 0};  // rotation of (0,4)
    auto p = geodesic_representative(theta, walk);
    CHECK(p.steps == std::vector<int>{0, 4});
  }
  SECTION("edge then its reverse is null-homotopic") {
    CHECK_THROWS_MATCHES(geodesic_representative(theta, {0, 3}), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::NullHomotopic;
                         }));
  }
  SECTION("an inserted spur disappears") {
    auto p = geodesic_representative(theta, {0, 5, 2, 4});
    // 0 ends at v; spur (5, 2) goes v->u->v; then 4 closes.
    CHECK(p.steps == std::vector<int>{0, 4});
    CHECK_THAT(p.metric_length, Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-12));
  }
  SECTION("wraparound backtracks are removed") {
    auto p = geodesic_representative(theta, {5, 0, 4, 2});
    // Wrap pair (2,5) is a backtrack; the walk reduces to (0,4).
    CHECK(p.steps == std::vector<int>{0, 4});
  }
}

TEST_CASE("systole") {
  SECTION("equilateral theta") {
    CHECK_THAT(systole(fixtures::equilateral_theta11()),
               Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-12));
  }
  SECTION("two-loop rose") {
    MetricRibbonGraph rose(fixtures::rose2_11(), {0.25, 0.9});
    CHECK_THAT(systole(rose), Catch::Matchers::WithinAbs(0.25, 1e-12));
  }
  SECTION("scaling is linear") {
    MetricRibbonGraph d(fixtures::dumbbell(), {0.3, 0.4, 0.55});
    CHECK_THAT(systole(scale(d, 2.5)), Catch::Matchers::WithinRel(2.5 * systole(d), 1e-12));
  }
  SECTION("agrees with enumeration") {
    MetricRibbonGraph d(fixtures::dumbbell(), {0.3, 0.4, 0.55});
    auto gs = enumerate_geodesics(d, 2.0);
    REQUIRE(!gs.empty());
    CHECK_THAT(systole(d), Catch::Matchers::WithinAbs(gs.front().metric_length, 1e-12));
  }
}

TEST_CASE("length spectrum ignores the ribbon structure") {
  MetricRibbonGraph theta = fixtures::equilateral_theta11();
  auto spectrum = [](const MetricRibbonGraph& g, double x) {
    std::vector<double> out;
    for (const auto& p : enumerate_geodesics(g, x)) out.push_back(p.metric_length);
    return out;
  };
  Rng rng(3);
  auto base = spectrum(theta, 2.0);
  for (int it = 0; it < 5; ++it) {
    auto shuffled = rerandomize_cyclic_orders(theta, rng);
    CHECK(spectrum(shuffled, 2.0) == base);
  }
}

TEST_CASE("scaling acts on metric length only") {
  MetricRibbonGraph d(fixtures::dumbbell(), {0.3, 0.4, 0.55});
  auto scaled = scale(d, 1.75);
  auto a = enumerate_geodesics(d, 2.0);
  auto b = enumerate_geodesics(scaled, 1.75 * 2.0 + 1e-12);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].steps == b[i].steps);
    CHECK(a[i].combinatorial_length() == b[i].combinatorial_length());
    CHECK_THAT(b[i].metric_length,
               Catch::Matchers::WithinRel(1.75 * a[i].metric_length, 1e-12));
  }
}
