#include <doctest.h>

#include "nuspread/core.hpp"
#include "nuspread/error.hpp"
#include "nuspread/rng.hpp"

using namespace nuspread;

namespace {

GroundSet ab() { return GroundSet({"a", "b"}); }

ProbVector pv(const GroundSet& g, std::vector<std::string> values) {
  std::vector<Rational> r;
  for (const auto& v : values) r.push_back(parse_rational(v));
  return ProbVector(g, r);
}

// Inclusion-exclusion over the generators of an up-closure.
Rational mu_up_closure_ie(const std::vector<Subset>& gens, const ProbVector& p) {
  Rational total = 0;
  const std::size_t m = gens.size();
  for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << m); ++pick) {
    Subset u = 0;
    for (std::size_t i = 0; i < m; ++i)
      if ((pick >> i) & 1) u |= gens[i];
    Rational term = 1;
    for (std::size_t x = 0; x < p.size(); ++x)
      if ((u >> x) & 1) term *= p[x];
    total += __builtin_popcountll(pick) % 2 ? term : Rational(-term);
  }
  return total;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/10") == Rational(3, 10));
  CHECK(parse_rational("0.3") == Rational(3, 10));
  CHECK(parse_rational("1e-2") == Rational(1, 100));
  CHECK(parse_rational("7") == 7);
  CHECK(to_string(ratio(6, 4)) == "3/2");
  CHECK_THROWS_AS(parse_rational("x"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK(from_double(0.5) == Rational(1, 2));
}

TEST_CASE("ground set ordering and edge encoding") {
  GroundSet g({"2-10", "2-9", "1-3"});
  CHECK(g.item(0) == "1-3");
  CHECK(g.item(1) == "2-9");
  CHECK(g.item(2) == "2-10");
  CHECK_THROWS_AS(GroundSet({"a", "a"}), InvalidArgument);
  GroundSet k4 = GroundSet::complete_graph_edges(4);
  CHECK(k4.size() == 6);
  CHECK(k4.item(0) == "0-1");
  CHECK(k4.item(5) == "2-3");
}

TEST_CASE("probability vectors validate entries") {
  CHECK_THROWS_AS(pv(ab(), {"0.5", "1.5"}), InvalidArgument);
  CHECK_THROWS_AS(pv(ab(), {"-1/2", "0"}), InvalidArgument);
  CHECK_THROWS_AS(ProbVector(ab(), {Rational(1, 2)}), InvalidArgument);
}

TEST_CASE("mu_exact examples") {
  auto g = ab();
  auto up_a = up_closure(SubsetFamily::from_names(g, {{"a"}}));
  CHECK(mu_exact(up_a, pv(g, {"0.3", "0.7"})) == Rational(3, 10));
  auto both = SubsetFamily::from_names(g, {{"a", "b"}});
  CHECK(mu_exact(both, pv(g, {"0.2", "0.4"})) == Rational(2, 25));
  auto nonempty = SubsetFamily::from_names(g, {{"a"}, {"b"}, {"a", "b"}}, true);
  CHECK(mu_exact(nonempty, pv(g, {"0.5", "0.5"})) == Rational(3, 4));
}

TEST_CASE("mu_exact on up-closures matches inclusion-exclusion") {
  Rng rng({11, 0});
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(7);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    GroundSet g(names);
    std::vector<Subset> gens;
    const int m = 1 + static_cast<int>(rng.below(4));
    for (int i = 0; i < m; ++i) gens.push_back(rng.below(std::uint64_t{1} << n));
    std::vector<Rational> p;
    for (std::size_t i = 0; i < n; ++i) p.push_back(ratio(static_cast<long>(rng.below(11)), 10));
    ProbVector q(g, p);
    auto fam = up_closure(SubsetFamily(g, gens));
    CHECK(mu_exact(fam, q) == mu_up_closure_ie(gens, q));
  }
}

TEST_CASE("up_closure examples") {
  auto g = ab();
  auto c = up_closure(SubsetFamily::from_names(g, {{"a"}}));
  CHECK(c.members() == std::vector<Subset>{0b01, 0b11});
  auto all = up_closure(SubsetFamily(g, {0}));
  CHECK(all.size() == 4);
  auto nonempty = up_closure(SubsetFamily::from_names(g, {{"a"}, {"b"}}));
  CHECK(nonempty.members() == std::vector<Subset>{0b01, 0b10, 0b11});
}

TEST_CASE("increasing claims are verified") {
  auto g = ab();
  CHECK_THROWS_AS(SubsetFamily::from_names(g, {{"a"}}, true), InvalidArgument);
  CHECK(is_increasing(SubsetFamily::from_names(g, {{"a"}, {"a", "b"}})));
  CHECK_FALSE(is_increasing(SubsetFamily::from_names(g, {{"a"}})));
  CHECK_THROWS_AS(SubsetFamily::from_names(g, {{"c"}}), InvalidArgument);
  CHECK_THROWS_AS(SubsetFamily::from_names(g, {{"a", "b"}}, false, 1), InvalidArgument);
}

TEST_CASE("expected cover count") {
  auto g = ab();
  CHECK(expected_cover_count(SubsetFamily::from_names(g, {{"a"}, {"a", "b"}}), ProbVector::constant(g, Rational(1, 2))) ==
        Rational(3, 4));
  CHECK(expected_cover_count(SubsetFamily(g, {0}), ProbVector::constant(g, Rational(1, 3))) == 1);
  CHECK(expected_cover_count(SubsetFamily::from_names(g, {{"a"}, {"b"}}), ProbVector::constant(g, Rational(1, 10))) ==
        Rational(1, 5));
}

TEST_CASE("T_ell transform") {
  auto g = ab();
  CHECK(transform_exponent(1) == 11);
  CHECK(transform_exponent(2) == 15);
  CHECK(transform_exponent(3) == 15);
  CHECK(transform_exponent(4) == 19);
  auto t = t_ell_transform(pv(g, {"0", "1/2"}), 1);
  CHECK(t[0] == 0);
  CHECK(t[1] == Rational(2047, 2048));
  CHECK(t_ell_transform(pv(g, {"1", "1"}), 7)[0] == 1);
  CHECK_THROWS_AS(transform_exponent(0), InvalidArgument);
}

TEST_CASE("boost vector") {
  auto g = ab();
  auto p = pv(g, {"1/2", "1/5"});
  CHECK(boost_vector(p, 2)[0] == Rational(3, 4));
  CHECK(boost_vector(p, 1).values() == p.values());
  auto r = boost_vector(p, 5);
  auto s = scale_capped(p, 5);
  for (std::size_t i = 0; i < 2; ++i) CHECK(r[i] <= s[i]);
  CHECK(s[0] == 1);
  CHECK(s[1] == 1);
}

TEST_CASE("boosting on three items") {
  GroundSet g({"a", "b", "c"});
  auto p = pv(g, {"1/3", "1/2", "1/4"});
  // The up-set of a single item is the one shape where the union of copies is exact.
  auto up_a = up_closure(SubsetFamily::from_names(g, {{"a"}}));
  for (int k : {1, 2, 3, 5}) {
    Rational lhs = 1 - mu_exact(up_a, boost_vector(p, k));
    CHECK(lhs == pow(1 - mu_exact(up_a, p), static_cast<unsigned long>(k)));
  }
  for (const auto& gens : std::vector<std::vector<std::vector<std::string>>>{
           {{"a", "b"}}, {{"a"}, {"b", "c"}}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}, {{"a", "b", "c"}}}) {
    auto fam = up_closure(SubsetFamily::from_names(g, gens));
    for (int k : {2, 3, 5}) {
      Rational miss_union = 1 - mu_exact(fam, boost_vector(p, k));
      Rational miss_all = pow(1 - mu_exact(fam, p), static_cast<unsigned long>(k));
      CHECK(miss_union <= miss_all);
      CHECK(mu_exact(fam, scale_capped(p, k)) >= mu_exact(fam, boost_vector(p, k)));
    }
  }
  auto ab_only = up_closure(SubsetFamily::from_names(g, {{"a", "b"}}));
  auto half = ProbVector::constant(g, Rational(1, 2));
  CHECK(1 - mu_exact(ab_only, boost_vector(half, 2)) == Rational(7, 16));
  CHECK(pow(1 - mu_exact(ab_only, half), 2) == Rational(9, 16));
}

TEST_CASE("faithful threshold map") {
  CHECK(faithful_threshold_value(Rational(1, 4)) == Rational(1, 4));
  CHECK(faithful_threshold_value(Rational(1, 2)) == Rational(1, 2));
  CHECK(faithful_threshold_value(Rational(3, 4)) == 1);
  auto g = ab();
  CHECK_THROWS_AS(faithful_threshold_map(SubsetFamily(g, {}), ProbVector::constant(g, 0)), InvalidArgument);
  CHECK_THROWS_AS(faithful_threshold_map(SubsetFamily(g, {0, 1, 2, 3}), ProbVector::constant(g, 0)),
                  InvalidArgument);
  auto fam = up_closure(SubsetFamily::from_names(g, {{"a"}}));
  CHECK(faithful_threshold_map(fam, pv(g, {"3/4", "0"})) == 1);
  Rational prev = -1;
  for (int i = 0; i <= 20; ++i) {
    Rational v = faithful_threshold_map(fam, pv(g, {std::to_string(i) + "/21", "0"}));
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("enumeration limits") {
  std::vector<std::string> names;
  for (int i = 0; i < 25; ++i) names.push_back("x" + std::to_string(i));
  GroundSet g(names);
  SubsetFamily fam(g, {1});
  CHECK_THROWS_AS(mu_exact(fam, ProbVector::constant(g, Rational(1, 2))), InfeasibleSize);
}

TEST_CASE("falling factorial and binomials") {
  CHECK(falling_factorial(4, 2) == 12);
  CHECK(falling_factorial(9, 0) == 1);
  CHECK(falling_factorial(3, 5) == 0);
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 4) == 0);
}

TEST_CASE("rng streams are deterministic and distinct") {
  Rng a({5, 1}), b({5, 1}), c({5, 2});
  bool differs = false;
  for (int i = 0; i < 10; ++i) {
    auto x = a.next();
    CHECK(x == b.next());
    differs = differs || x != c.next();
  }
  CHECK(differs);
  Rng r({9, 0});
  for (int i = 0; i < 1000; ++i) {
    CHECK(r.below(7) < 7);
    double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
