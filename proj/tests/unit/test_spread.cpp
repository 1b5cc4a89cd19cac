#include <doctest.h>

#include "nuspread/error.hpp"
#include "nuspread/lp.hpp"
#include "nuspread/rng.hpp"
#include "nuspread/spread.hpp"

using namespace nuspread;

namespace {

GroundSet ab() { return GroundSet({"a", "b"}); }

// Minimum of e_q over every cover drawn from 2^X, by exhaustive search over families.
Rational brute_cover_value(const SubsetFamily& h, const ProbVector& q) {
  const std::size_t n = h.ground().size();
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<Rational> weight(subsets);
  for (Subset s = 0; s < subsets; ++s) {
    weight[s] = 1;
    for (std::size_t i = 0; i < n; ++i)
      if ((s >> i) & 1) weight[s] *= q[i];
  }
  Rational best = 1;
  for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << subsets); ++pick) {
    bool covers = true;
    for (Subset t : h.members()) {
      bool hit = false;
      for (Subset s = 0; s < subsets && !hit; ++s) hit = ((pick >> s) & 1) && is_subset(s, t);
      if (!hit) {
        covers = false;
        break;
      }
    }
    if (!covers) continue;
    Rational v = 0;
    for (Subset s = 0; s < subsets; ++s)
      if ((pick >> s) & 1) v += weight[s];
    if (v < best) best = v;
  }
  return best;
}

}  // namespace

TEST_CASE("exact packing LP") {
  PackingLp lp;
  lp.a = {{1, 1}, {1, 3}};
  lp.b = {4, 6};
  lp.c = {3, 5};
  auto s = solve_packing_lp(lp);
  CHECK(s.value == 14);
  CHECK(s.x == std::vector<Rational>{3, 1});
  Rational dual = 0;
  for (std::size_t i = 0; i < 2; ++i) dual += lp.b[i] * s.y[i];
  CHECK(dual == s.value);

  PackingLp unbounded;
  unbounded.a = {{1, -1}};
  unbounded.b = {1};
  unbounded.c = {0, 1};
  CHECK_THROWS_AS(solve_packing_lp(unbounded), Error);
}

TEST_CASE("integral cover examples") {
  auto g = ab();
  auto h = SubsetFamily::from_names(g, {{"a"}, {"b"}});
  auto c = cover_value_exact(h, ProbVector::constant(g, Rational(1, 5)));
  CHECK(c.value == Rational(2, 5));
  CHECK(c.cover.members() == std::vector<Subset>{0b01, 0b10});

  auto with_empty = SubsetFamily(g, {0, 1});
  auto e = cover_value_exact(with_empty, ProbVector::constant(g, Rational(1, 5)));
  CHECK(e.value == 1);
  CHECK(e.cover.members() == std::vector<Subset>{0});

  auto top = SubsetFamily::from_names(g, {{"a", "b"}});
  auto t = cover_value_exact(top, ProbVector::constant(g, Rational(9, 10)));
  CHECK(t.value == Rational(81, 100));
  CHECK(t.cover.members() == std::vector<Subset>{0b11});

  std::vector<std::string> six{"a", "b", "c", "d", "e", "f"};
  GroundSet big(six);
  CHECK_THROWS_AS(cover_value_exact(SubsetFamily(big, {1}), ProbVector::constant(big, 0)), InfeasibleSize);
}

TEST_CASE("fractional cover examples") {
  auto g = ab();
  auto h = SubsetFamily::from_names(g, {{"a"}, {"b"}});
  auto f = fractional_cover_value(h, ProbVector::constant(g, Rational(1, 5)));
  CHECK(f.value == Rational(2, 5));
  Rational packed = 0;
  for (const auto& [t, w] : f.dual_weights) packed += w;
  CHECK(packed == Rational(2, 5));
  CHECK(fractional_cover_value(SubsetFamily(g, {0}), ProbVector::constant(g, Rational(1, 2))).value == 1);
}

TEST_CASE("cover values agree with exhaustive search") {
  Rng rng({41, 0});
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng.below(3);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    GroundSet g(names);
    std::vector<Subset> members;
    const int m = 1 + static_cast<int>(rng.below(4));
    for (int i = 0; i < m; ++i) members.push_back(rng.below(std::uint64_t{1} << n));
    SubsetFamily h(g, members);
    std::vector<Rational> qs;
    for (std::size_t i = 0; i < n; ++i) qs.push_back(ratio(static_cast<long>(rng.below(9)), 8));
    ProbVector q(g, qs);
    auto exact = cover_value_exact(h, q);
    CHECK(exact.value == brute_cover_value(h, q));
    CHECK(expected_cover_count(exact.cover, q) == exact.value);
    auto frac = fractional_cover_value(h, q);
    CHECK(frac.value <= exact.value);
    // Primal feasibility of the reported fractional cover.
    for (Subset t : h.minimal_members()) {
      Rational covered = 0;
      for (const auto& [s, w] : frac.fractional_weights)
        if (is_subset(s, t)) covered += w;
      CHECK(covered >= 1);
    }
  }
}

TEST_CASE("q-spread verification") {
  auto g = ab();
  auto h = SubsetFamily::from_names(g, {{"a"}, {"b"}});
  SpreadMeasure uniform{g, {0b01, 0b10}, {Rational(1, 2), Rational(1, 2)}};
  auto ok = verify_q_spread(uniform, ProbVector::constant(g, Rational(1, 4)), h);
  CHECK(ok.ok);
  CHECK(spread_implies_half(uniform, ProbVector::constant(g, Rational(1, 4)), h));
  CHECK(cover_value_exact(h, ProbVector::constant(g, Rational(1, 4))).value == Rational(1, 2));

  auto top = SubsetFamily::from_names(g, {{"a", "b"}});
  SpreadMeasure point{g, {0b11}, {1}};
  auto bad = verify_q_spread(point, ProbVector::constant(g, Rational(1, 2)), top);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.violating.has_value());
  CHECK(*bad.violating == 0b11);
  CHECK(bad.lhs == 1);
  CHECK(bad.rhs == Rational(1, 2));
  CHECK_THROWS_AS(spread_implies_half(point, ProbVector::constant(g, Rational(1, 2)), top), InvalidArgument);

  SpreadMeasure not_normalized{g, {0b01}, {Rational(1, 2)}};
  CHECK_THROWS_AS(verify_q_spread(not_normalized, ProbVector::constant(g, 1), h), InvalidArgument);
  SpreadMeasure outside{g, {0b11}, {1}};
  CHECK_THROWS_AS(verify_q_spread(outside, ProbVector::constant(g, 1), h), InvalidArgument);
}

TEST_CASE("block permutation spread probability") {
  Graph h(4, {{0, 1}, {2, 3}});
  auto one = BlockStructure::contiguous({4}, {{1}});
  for (auto mode : {SpreadMode::closed_form, SpreadMode::brute_force}) {
    CHECK(block_permutation_spread_prob(h, one, {{0, 1}}, mode) == Rational(1, 3));
    CHECK(block_permutation_spread_prob(h, one, {}, mode) == 1);
    CHECK(block_permutation_spread_prob(h, one, {{0, 1}, {2, 3}}, mode) == Rational(1, 3));
  }
  auto two = BlockStructure::contiguous({2, 2}, {{1, 1}, {1, 1}});
  CHECK(block_permutation_spread_prob(h, two, {{0, 2}}, SpreadMode::closed_form) == 0);
  CHECK(block_permutation_spread_prob(h, two, {{0, 1}}, SpreadMode::closed_form) == 1);
  CHECK_THROWS_AS(block_permutation_spread_prob(h, one, {{0, 1}, {1, 2}}, SpreadMode::closed_form), InvalidArgument);
  CHECK_THROWS_AS(block_permutation_spread_prob(Graph(4, {{0, 1}}), one, {}, SpreadMode::closed_form),
                  InvalidArgument);
}

TEST_CASE("spread q construction") {
  auto b100 = BlockStructure::contiguous({100}, {{1}});
  auto q = spread_q_construction(b100, 1.0);
  CHECK(q.q[0] == Rational(3, 10));
  CHECK_FALSE(q.capped);
  auto none = spread_q_construction(b100, 1e9);
  CHECK(none.q[0] == 0);
  auto b10 = BlockStructure::contiguous({10}, {{1}});
  auto capped = spread_q_construction(b10, 1.0);
  CHECK(capped.capped);
  CHECK(capped.q[0] == 1);
  CHECK(capped.uncapped[0] == 3);
}

TEST_CASE("forced spread check") {
  Graph h(4, {{0, 1}, {2, 3}});
  PermutationMeasure pi{4, {{0, 1, 2, 3}, {0, 1, 3, 2}}, {Rational(1, 2), Rational(1, 2)}};
  GroundSet k4 = GroundSet::complete_graph_edges(4);
  auto ok = forced_spread_check(h, {{0, 1}}, pi, ProbVector::constant(k4, Rational(3, 5)));
  CHECK(ok.ok);
  CHECK(ok.p.has_value());
  auto bad = forced_spread_check(h, {{0, 1}}, pi, ProbVector::constant(k4, Rational(2, 5)));
  CHECK_FALSE(bad.ok);
  CHECK(bad.violating == std::vector<Edge>{{0, 1}, {2, 3}});
  CHECK(bad.lhs == 1);
  CHECK(bad.rhs == Rational(4, 5));
}
