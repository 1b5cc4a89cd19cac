#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nuspread/matching.hpp"
#include "nuspread/models.hpp"

namespace nuspread {

/// The logarithm in the spectrum inequality P(x,y) >= alpha log n / max(n_x, n_y) is natural.
inline constexpr const char* kSpectrumLogBase = "e";

/// c(x,y) = P(x,y) * max(n_x, n_y) / ln n. Vertices u in U_x, v in U_y are adjacent in the
/// spectrum at alpha exactly when c(x,y) >= alpha.
double spectrum_capacity(const BlockStructure& b, int x, int y);

/// The graph spectrum at level alpha.
Graph build_spectrum(const BlockStructure& b, double alpha);

struct SpectrumReport {
  /// "found" or "none" (no perfect matching even among positive-capacity pairs).
  std::string status = "none";
  double alpha_star = 0.0;
  std::vector<Edge> witness_matching;
  std::vector<double> candidate_alphas;
};

/// Largest candidate alpha whose spectrum has a perfect matching (bottleneck matching value).
SpectrumReport critical_alpha(const BlockStructure& b);

/// Closed form for bi-valued Chung-Lu spectra: P(x,2) * n_x / ln n >= alpha, where x is the
/// larger class (x = 1 on ties) and P is the capped Chung-Lu matrix. Requires even n.
bool bivalued_spectrum_pm(const DegreeSequence& d, double alpha);

}  // namespace nuspread
