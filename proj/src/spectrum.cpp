#include "nuspread/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nuspread/error.hpp"

namespace nuspread {

double spectrum_capacity(const BlockStructure& b, int x, int y) {
  const double p = b.p(x, y);
  if (p == 0.0) return 0.0;
  const double log_n = std::log(static_cast<double>(b.n()));
  if (log_n <= 0.0) return std::numeric_limits<double>::infinity();
  return p * static_cast<double>(std::max(b.size(x), b.size(y))) / log_n;
}

Graph build_spectrum(const BlockStructure& b, double alpha) {
  if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be nonnegative");
  std::vector<Edge> edges;
  for (int x = 0; x < b.k(); ++x) {
    for (int y = x; y < b.k(); ++y) {
      if (spectrum_capacity(b, x, y) < alpha) continue;
      const auto& bx = b.block(x);
      const auto& by = b.block(y);
      if (x == y) {
        for (std::size_t i = 0; i < bx.size(); ++i) {
          for (std::size_t j = i + 1; j < bx.size(); ++j) edges.emplace_back(bx[i], bx[j]);
        }
      } else {
        for (int u : bx) {
          for (int v : by) edges.emplace_back(u, v);
        }
      }
    }
  }
  return Graph(b.n(), std::move(edges));
}

SpectrumReport critical_alpha(const BlockStructure& b) {
  if (b.n() % 2 != 0) throw InvalidArgument("critical_alpha requires an even number of vertices");
  if (b.n() == 0) throw InvalidArgument("critical_alpha requires at least two vertices");
  SpectrumReport report;
  for (int x = 0; x < b.k(); ++x) {
    for (int y = x; y < b.k(); ++y) {
      if (x == y && b.size(x) < 2) continue;
      if (b.size(x) == 0 || b.size(y) == 0) continue;
      double c = spectrum_capacity(b, x, y);
      if (c > 0.0) report.candidate_alphas.push_back(c);
    }
  }
  auto& cand = report.candidate_alphas;
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  if (cand.empty()) return report;

  auto test = [&](std::size_t i) { return perfect_matching(build_spectrum(b, cand[i])); };
  PmResult lowest = test(0);
  if (!lowest.has_perfect_matching) return report;
  std::size_t lo = 0;
  std::size_t hi = cand.size();
  PmResult best = std::move(lowest);
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    PmResult r = test(mid);
    if (r.has_perfect_matching) {
      lo = mid;
      best = std::move(r);
    } else {
      hi = mid;
    }
  }
  report.status = "found";
  report.alpha_star = cand[lo];
  report.witness_matching = std::move(best.witness);
  return report;
}

bool bivalued_spectrum_pm(const DegreeSequence& d, double alpha) {
  d.require_bivalued();
  if (d.n() % 2 != 0) throw InvalidArgument("bi-valued spectrum closed form requires even n");
  BlockStructure b = chung_lu_probabilities(d);
  const int x = b.size(0) >= b.size(1) ? 0 : 1;
  return spectrum_capacity(b, x, 1) >= alpha;
}

}  // namespace nuspread
