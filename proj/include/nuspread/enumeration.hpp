#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nuspread/models.hpp"
#include "nuspread/rational.hpp"

namespace nuspread {

inline constexpr int kCountExactMaxVertices = 10;
inline constexpr int kCountExactMaxDegreeSum = 24;

/// Number of simple graphs on {0..n-1} in which vertex i has degree d[i]. n <= 10, sum <= 24.
BigInt count_graphs_exact(const DegreeSequence& d);

/// Visits every realization (same limits as count_graphs_exact); vertex i has degree d[i].
void enumerate_graphs(const DegreeSequence& d, const std::function<void(const Graph&)>& visit);

struct McKayEstimate {
  Rational leading;
  Rational lambda;
  Rational delta_hat;
  bool valid = false;
  double estimate = 0.0;
  /// ln(leading) - lambda - lambda^2, finite even when estimate overflows.
  double log_estimate = 0.0;
};

/// ||d||! / ((||d||/2)! 2^{||d||/2} prod d_i!) exp(-lambda - lambda^2). Requires even sum, d_i >= 1.
McKayEstimate mckay_count(const DegreeSequence& d);

double log_rational(const Rational& r);

struct MomentReport {
  std::string method;
  double ex = 0.0;
  double exx = 0.0;
  double ratio = 0.0;
  double variance = 0.0;
  /// Present for exact computations.
  std::optional<Rational> ex_exact;
  std::optional<Rational> exx_exact;
  /// (t, bound on P(X <= t)) for each requested t < E X.
  std::vector<std::pair<double, double>> chebyshev_tail;
  /// Asymptotic method: whether every McKay substitution met its validity condition.
  bool all_valid = true;
};

enum class MomentMethod { exact, asymptotic };

struct GndMomentOptions {
  MomentMethod method = MomentMethod::exact;
  bool enforce_validity = true;
  std::vector<double> tail_points = {0.0};
};

/// Sequence with v (degree d2) set to 0 and d2 vertices of degree d1 lowered by one.
DegreeSequence reduced_first(const DegreeSequence& d);
/// Sequence for two U2 vertices whose neighborhoods X, Y in U1 share w vertices.
DegreeSequence reduced_second(const DegreeSequence& d, int w);

/// Moments of X = #{v in U2 : no neighbor in U2} in the uniform graph with degrees d (bi-valued).
MomentReport gnd_isolated_moments(const DegreeSequence& d, const GndMomentOptions& options = {});

enum class ObstructionCase { d1, d2, k_valued };

/// Closed-form moments. d1: isolated vertices of U2; d2: U2 vertices with no U2 neighbor;
/// k_valued: isolated vertices of the lowest-degree class.
MomentReport chung_lu_obstruction_moments(const DegreeSequence& d, ObstructionCase c, bool exact = false,
                                          const std::vector<double>& tail_points = {0.0});

/// The same formulas from explicit (n1, n2, p, q), p the cross and q the U2 probability.
MomentReport bivalued_obstruction_moments(ObstructionCase c, long n1, long n2, const Rational& p, const Rational& q,
                                          bool exact = true, const std::vector<double>& tail_points = {0.0});

/// Chebyshev: P(X <= t) <= Var X / (E X - t)^2 for t < E X, capped at 1.
std::vector<std::pair<double, double>> chebyshev_tail(double ex, double variance, const std::vector<double>& ts);

struct ZTerm {
  int w = 0;
  Rational t;
  Rational a_prime;
  Rational b_prime;
  Rational z;
};

struct MomentDiagnostics {
  Rational a;
  ZTerm first;
  std::vector<ZTerm> second;
  /// Largest |Z_w| over the second-moment grid.
  Rational max_abs_second;
  /// Z recomputed from the actual reduced sequences (B and the norm taken from them).
  Rational z_first_reduced;
  std::vector<Rational> z_second_reduced;
};

/// A = sum d_i(d_i - 1), A' = A / (2||d||), B' = (A - T) / (2||d|| - k d2), Z = (A' - B')(1 + A' + B').
/// First moment: T = d2(d2 + 2 d1 - 3), k = 2. Second: T = 2 d2(d2 + d1 - 3) + 2w, k = 8, w = 0..d2.
MomentDiagnostics moment_diagnostics(const DegreeSequence& d);

Rational z_value(const Rational& a, const Rational& t, std::int64_t norm, std::int64_t k_d2);

struct ConditionReport {
  int n = 0;
  bool bivalued = false;
  double d1_sq_over_norm = 0.0;
  double dn_over_log_n = 0.0;
  std::optional<double> d2_sq_over_n1;
  std::optional<double> d1_sq_over_sqrt_n_d2;
  std::optional<double> log_n_over_d2;
  std::optional<double> n2_sq_d2_cube_over_norm_sq;
  std::optional<double> n1_over_n_delta;
  double delta = 0.5;
  std::vector<std::string> warnings;
};

ConditionReport condition_report(const DegreeSequence& d, double delta = 0.5);

}  // namespace nuspread
