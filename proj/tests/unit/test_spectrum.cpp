#include <doctest.h>

#include <cmath>

#include "nuspread/error.hpp"
#include "nuspread/matching.hpp"
#include "nuspread/rng.hpp"
#include "nuspread/spectrum.hpp"

using namespace nuspread;

namespace {

// Largest bottleneck over all perfect matchings of K_n, by exhaustive pairing.
double brute_bottleneck(const BlockStructure& b, std::vector<int> rest) {
  if (rest.empty()) return INFINITY;
  int u = rest.front();
  double best = -1;
  for (std::size_t i = 1; i < rest.size(); ++i) {
    int v = rest[i];
    double c = spectrum_capacity(b, b.block_of(u), b.block_of(v));
    if (c <= 0) continue;
    std::vector<int> next;
    for (std::size_t j = 1; j < rest.size(); ++j)
      if (j != i) next.push_back(rest[j]);
    double sub = brute_bottleneck(b, next);
    if (sub < 0) continue;
    best = std::max(best, std::min(c, sub));
  }
  return best;
}

}  // namespace

TEST_CASE("spectrum construction") {
  auto half = BlockStructure::contiguous({8}, {{0.5}});
  CHECK(build_spectrum(half, 0) == Graph::complete(8));
  CHECK(build_spectrum(half, 1) == Graph::complete(8));
  auto tenth = BlockStructure::contiguous({8}, {{0.1}});
  CHECK(build_spectrum(tenth, 1).edge_count() == 0);
  CHECK(spectrum_capacity(half, 0, 0) == doctest::Approx(0.5 * 8 / std::log(8.0)));
}

TEST_CASE("critical alpha examples") {
  auto single = BlockStructure::contiguous({8}, {{0.3}});
  auto r = critical_alpha(single);
  CHECK(r.status == "found");
  CHECK(r.alpha_star == doctest::Approx(0.3 * 8 / std::log(8.0)));
  CHECK(r.witness_matching.size() == 4);

  const double c = 0.7;
  auto cross = BlockStructure::contiguous({2, 2}, {{0, c}, {c, 0}});
  auto s = critical_alpha(cross);
  CHECK(s.status == "found");
  CHECK(s.alpha_star == doctest::Approx(c * 2 / std::log(4.0)));

  auto stuck = BlockStructure::contiguous({1, 3}, {{0, 0}, {0, 1}});
  auto none = critical_alpha(stuck);
  CHECK(none.status == "none");
  CHECK(none.alpha_star == 0);

  CHECK_THROWS_AS(critical_alpha(BlockStructure::contiguous({3}, {{1}})), InvalidArgument);
}

TEST_CASE("critical alpha matches exhaustive bottleneck matching") {
  Rng rng({31, 0});
  for (int t = 0; t < 200; ++t) {
    const int k = 1 + static_cast<int>(rng.below(3));
    std::vector<int> sizes;
    int n = 0;
    for (int i = 0; i < k; ++i) {
      sizes.push_back(1 + static_cast<int>(rng.below(4)));
      n += sizes.back();
    }
    if (n % 2) ++sizes[0], ++n;
    std::vector<std::vector<double>> p(k, std::vector<double>(k, 0.0));
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) p[i][j] = p[j][i] = rng.bernoulli(0.3) ? 0.0 : static_cast<double>(rng.below(10)) / 10;
    auto b = BlockStructure::contiguous(sizes, p);
    std::vector<int> all(n);
    for (int v = 0; v < n; ++v) all[v] = v;
    double brute = brute_bottleneck(b, all);
    auto r = critical_alpha(b);
    if (brute < 0) {
      CHECK(r.status == "none");
    } else {
      CHECK(r.status == "found");
      CHECK(r.alpha_star == doctest::Approx(brute));
      CHECK(has_perfect_matching(build_spectrum(b, r.alpha_star)));
    }
  }
}

TEST_CASE("bi-valued closed form agrees with the spectrum") {
  DegreeSequence d({3, 3, 1, 1});
  for (double alpha : {0.1, 1.0, 10.0}) {
    CHECK(bivalued_spectrum_pm(d, alpha) == has_perfect_matching(build_spectrum(chung_lu_probabilities(d), alpha)));
  }
  DegreeSequence balanced = DegreeSequence::from_classes({{4, 5}, {2, 5}});
  CHECK(bivalued_spectrum_pm(balanced, 1e-6));
  DegreeSequence heavy_small = DegreeSequence::from_classes({{6, 2}, {1, 8}});
  CHECK_FALSE(bivalued_spectrum_pm(heavy_small, 5.0));
  CHECK_THROWS_AS(bivalued_spectrum_pm(DegreeSequence({3, 2, 1}), 1.0), InvalidArgument);

  Rng rng({32, 0});
  for (int t = 0; t < 300; ++t) {
    int d1 = 2 + static_cast<int>(rng.below(8));
    int d2 = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d1 - 1)));
    int n1 = 1 + static_cast<int>(rng.below(10));
    int n2 = 1 + static_cast<int>(rng.below(10));
    if ((n1 + n2) % 2) ++n2;
    auto seq = DegreeSequence::from_classes({{d1, n1}, {d2, n2}});
    double alpha = rng.uniform() * 3;
    CHECK(bivalued_spectrum_pm(seq, alpha) ==
          has_perfect_matching(build_spectrum(chung_lu_probabilities(seq), alpha)));
  }
}
