#include "nuspread/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nuspread/core.hpp"
#include "nuspread/error.hpp"

namespace nuspread {

namespace {

void require_enumerable(const DegreeSequence& d) {
  if (d.n() > kCountExactMaxVertices || d.norm1() > kCountExactMaxDegreeSum) {
    throw InfeasibleSize("exact graph enumeration supports n <= " + std::to_string(kCountExactMaxVertices) +
                         " and degree sum <= " + std::to_string(kCountExactMaxDegreeSum));
  }
}

// Vertex by vertex, each vertex picks its remaining neighbors among later vertices.
class Realizer {
 public:
  Realizer(const DegreeSequence& d, const std::function<void(const std::vector<Edge>&)>* visit)
      : n_(d.n()), rem_(d.degrees()), visit_(visit) {}

  BigInt run() {
    count_ = 0;
    if (d_sum_even()) vertex(0);
    return count_;
  }

 private:
  bool d_sum_even() const {
    long s = 0;
    for (int x : rem_) s += x;
    return s % 2 == 0;
  }

  void vertex(int v) {
    if (v == n_) {
      ++count_;
      if (visit_) (*visit_)(edges_);
      return;
    }
    if (rem_[static_cast<std::size_t>(v)] == 0) {
      vertex(v + 1);
      return;
    }
    int available = 0;
    for (int u = v + 1; u < n_; ++u) available += rem_[static_cast<std::size_t>(u)] > 0 ? 1 : 0;
    if (available < rem_[static_cast<std::size_t>(v)]) return;
    choose(v, v + 1, rem_[static_cast<std::size_t>(v)]);
  }

  void choose(int v, int from, int need) {
    if (need == 0) {
      int saved = rem_[static_cast<std::size_t>(v)];
      rem_[static_cast<std::size_t>(v)] = 0;
      vertex(v + 1);
      rem_[static_cast<std::size_t>(v)] = saved;
      return;
    }
    for (int u = from; u < n_; ++u) {
      if (n_ - u < need) break;
      auto& ru = rem_[static_cast<std::size_t>(u)];
      if (ru == 0) continue;
      --ru;
      edges_.emplace_back(v, u);
      choose(v, u + 1, need - 1);
      edges_.pop_back();
      ++ru;
    }
  }

  int n_;
  std::vector<int> rem_;
  std::vector<Edge> edges_;
  const std::function<void(const std::vector<Edge>&)>* visit_;
  BigInt count_;
};

}  // namespace

BigInt count_graphs_exact(const DegreeSequence& d) {
  require_enumerable(d);
  return Realizer(d, nullptr).run();
}

void enumerate_graphs(const DegreeSequence& d, const std::function<void(const Graph&)>& visit) {
  require_enumerable(d);
  const int n = d.n();
  std::function<void(const std::vector<Edge>&)> wrap = [&](const std::vector<Edge>& e) { visit(Graph(n, e)); };
  Realizer(d, &wrap).run();
}

double log_rational(const Rational& r) {
  if (r <= 0) throw InvalidArgument("logarithm of a nonpositive rational");
  long en = 0;
  long ed = 0;
  double mn = mpz_get_d_2exp(&en, r.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, r.get_den_mpz_t());
  return std::log(mn) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

McKayEstimate mckay_count(const DegreeSequence& d) {
  if (d.norm1() % 2 != 0) throw InvalidArgument("McKay formula requires an even degree sum");
  if (d.has_zero()) throw InvalidArgument("McKay formula requires positive degrees; drop zero-degree vertices");
  McKayEstimate est;
  const auto norm = static_cast<unsigned long>(d.norm1());
  BigInt den = factorial(norm / 2);
  den <<= norm / 2;
  Rational sum_sq = 0;
  for (int x : d.degrees()) {
    den *= factorial(static_cast<unsigned long>(x));
    sum_sq += static_cast<long>(x) * (x - 1);
  }
  est.leading = Rational(factorial(norm), den);
  est.leading.canonicalize();
  est.lambda = norm == 0 ? Rational(0) : Rational(sum_sq / (2 * Rational(static_cast<long>(norm))));
  const long d1 = d.n() > 0 ? d[0] : 0;
  est.delta_hat = 2 + Rational(d1) * (ratio(3 * d1, 2) + 1);
  est.valid = est.delta_hat < Rational(static_cast<long>(norm), 3);
  const double lam = est.lambda.get_d();
  est.log_estimate = log_rational(est.leading) - lam - lam * lam;
  const double lead = est.leading.get_d();
  est.estimate = std::isfinite(lead) ? lead * std::exp(-lam - lam * lam) : std::exp(est.log_estimate);
  return est;
}

// ---------------------------------------------------------------------------

DegreeSequence reduced_first(const DegreeSequence& d) {
  d.require_bivalued();
  const int d1 = d.class_values()[0];
  const int d2 = d.class_values()[1];
  const int n1 = d.class_sizes()[0];
  const int n2 = d.class_sizes()[1];
  if (d2 > n1) throw InvalidArgument("no neighborhood of size d2 inside U1");
  std::vector<int> out;
  for (int i = 0; i < n1; ++i) out.push_back(i < d2 ? d1 - 1 : d1);
  for (int i = 0; i < n2; ++i) out.push_back(i == 0 ? 0 : d2);
  return DegreeSequence(std::move(out));
}

DegreeSequence reduced_second(const DegreeSequence& d, int w) {
  d.require_bivalued();
  const int d1 = d.class_values()[0];
  const int d2 = d.class_values()[1];
  const int n1 = d.class_sizes()[0];
  const int n2 = d.class_sizes()[1];
  if (w < 0 || w > d2 || 2 * d2 - w > n1 || n2 < 2) throw InvalidArgument("no such pair of neighborhoods");
  std::vector<int> out;
  for (int i = 0; i < n1; ++i) {
    if (i < w) {
      out.push_back(d1 - 2);
    } else if (i < w + 2 * (d2 - w)) {
      out.push_back(d1 - 1);
    } else {
      out.push_back(d1);
    }
  }
  for (int i = 0; i < n2; ++i) out.push_back(i < 2 ? 0 : d2);
  return DegreeSequence(std::move(out));
}

std::vector<std::pair<double, double>> chebyshev_tail(double ex, double variance, const std::vector<double>& ts) {
  std::vector<std::pair<double, double>> out;
  for (double t : ts) {
    if (!(t < ex)) continue;
    double gap = ex - t;
    out.emplace_back(t, std::min(1.0, std::max(0.0, variance) / (gap * gap)));
  }
  return out;
}

namespace {

void finish_report(MomentReport& r, const std::vector<double>& ts) {
  if (r.ex_exact && r.exx_exact) {
    r.ex = r.ex_exact->get_d();
    r.exx = r.exx_exact->get_d();
    Rational var = *r.exx_exact + *r.ex_exact - *r.ex_exact * *r.ex_exact;
    r.variance = var.get_d();
    r.ratio = *r.ex_exact == 0 ? 0.0 : Rational(*r.exx_exact / (*r.ex_exact * *r.ex_exact)).get_d();
  } else {
    r.variance = r.exx + r.ex - r.ex * r.ex;
    r.ratio = r.ex == 0.0 ? 0.0 : r.exx / (r.ex * r.ex);
  }
  r.chebyshev_tail = chebyshev_tail(r.ex, r.variance, ts);
}

DegreeSequence drop_zeros(const DegreeSequence& d) {
  std::vector<int> out;
  for (int x : d.degrees()) {
    if (x > 0) out.push_back(x);
  }
  return DegreeSequence(std::move(out));
}

}  // namespace

MomentReport gnd_isolated_moments(const DegreeSequence& d, const GndMomentOptions& options) {
  d.require_bivalued();
  const int d1 = d.class_values()[0];
  const int d2 = d.class_values()[1];
  const int n1 = d.class_sizes()[0];
  const int n2 = d.class_sizes()[1];
  const auto un1 = static_cast<unsigned long>(n1);
  const auto ud2 = static_cast<unsigned long>(d2);
  (void)d1;

  MomentReport r;
  if (options.method == MomentMethod::exact) {
    r.method = "exact";
    const BigInt total = count_graphs_exact(d);
    if (total == 0) throw InvalidArgument("degree sequence has no realizations");
    Rational ex = 0;
    if (d2 <= n1) {
      ex = Rational(BigInt(n2) * binomial(un1, ud2) * count_graphs_exact(reduced_first(d)), total);
      ex.canonicalize();
    }
    Rational exx = 0;
    if (n2 >= 2 && d2 <= n1) {
      BigInt sum = 0;
      for (int w = 0; w <= d2; ++w) {
        if (2 * d2 - w > n1) continue;
        sum += binomial(ud2, static_cast<unsigned long>(w)) *
               binomial(un1 - ud2, static_cast<unsigned long>(d2 - w)) * count_graphs_exact(reduced_second(d, w));
      }
      exx = Rational(BigInt(n2) * (n2 - 1) * binomial(un1, ud2) * sum, total);
      exx.canonicalize();
    }
    r.ex_exact = ex;
    r.exx_exact = exx;
  } else {
    r.method = "asymptotic";
    auto log_count = [&](const DegreeSequence& s) {
      McKayEstimate e = mckay_count(drop_zeros(s));
      if (!e.valid) r.all_valid = false;
      return e.log_estimate;
    };
    const double log_total = log_count(d);
    if (d2 <= n1) {
      r.ex = static_cast<double>(n2) * binomial(un1, ud2).get_d() * std::exp(log_count(reduced_first(d)) - log_total);
    }
    if (n2 >= 2 && d2 <= n1) {
      double sum = 0.0;
      for (int w = 0; w <= d2; ++w) {
        if (2 * d2 - w > n1) continue;
        BigInt weight = binomial(ud2, static_cast<unsigned long>(w)) * binomial(un1 - ud2, static_cast<unsigned long>(d2 - w));
        sum += weight.get_d() * std::exp(log_count(reduced_second(d, w)) - log_total);
      }
      r.exx = static_cast<double>(n2) * (n2 - 1) * binomial(un1, ud2).get_d() * sum;
    }
    if (options.enforce_validity && !r.all_valid) {
      throw InvalidArgument("McKay validity condition fails for a sequence involved in the moments");
    }
  }
  finish_report(r, options.tail_points);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

double pow_complement(double p, double e) {
  if (e == 0.0) return 1.0;
  if (p >= 1.0) return 0.0;
  return std::exp(e * std::log1p(-p));
}

}  // namespace

MomentReport bivalued_obstruction_moments(ObstructionCase c, long n1, long n2, const Rational& p, const Rational& q,
                                          bool exact, const std::vector<double>& tail_points) {
  if (c == ObstructionCase::k_valued) throw InvalidArgument("use chung_lu_obstruction_moments for k-valued sequences");
  if (n1 < 0 || n2 < 0) throw InvalidArgument("negative class size");
  if (p < 0 || p > 1 || q < 0 || q > 1) throw InvalidArgument("probability outside [0,1]");
  const bool with_p = c == ObstructionCase::d1;
  MomentReport r;
  r.method = exact ? "exact" : "closed_form";
  if (exact) {
    Rational ex = 0;
    Rational exx = 0;
    if (n2 >= 1) {
      ex = n2 * pow(Rational(1 - q), static_cast<unsigned long>(n2 - 1));
      if (with_p) ex *= pow(Rational(1 - p), static_cast<unsigned long>(n1));
    }
    if (n2 >= 2) {
      exx = Rational(n2 * (n2 - 1)) * pow(Rational(1 - q), static_cast<unsigned long>(2 * n2 - 3));
      if (with_p) exx *= pow(Rational(1 - p), static_cast<unsigned long>(2 * n1));
    }
    r.ex_exact = ex;
    r.exx_exact = exx;
  } else {
    const double pd = p.get_d();
    const double qd = q.get_d();
    const auto dn1 = static_cast<double>(n1);
    const auto dn2 = static_cast<double>(n2);
    if (n2 >= 1) r.ex = dn2 * pow_complement(qd, dn2 - 1) * (with_p ? pow_complement(pd, dn1) : 1.0);
    if (n2 >= 2) r.exx = dn2 * (dn2 - 1) * pow_complement(qd, 2 * dn2 - 3) * (with_p ? pow_complement(pd, 2 * dn1) : 1.0);
  }
  finish_report(r, tail_points);
  return r;
}

MomentReport chung_lu_obstruction_moments(const DegreeSequence& d, ObstructionCase c, bool exact,
                                          const std::vector<double>& tail_points) {
  if (d.has_zero()) throw InvalidArgument("Chung-Lu model requires positive degrees");
  const Rational norm(static_cast<long>(d.norm1()));
  auto entry = [&](long a, long b) { return min(Rational(Rational(a * b) / norm), Rational(1)); };
  const auto& values = d.class_values();
  const auto& sizes = d.class_sizes();
  if (c != ObstructionCase::k_valued) {
    d.require_bivalued();
    return bivalued_obstruction_moments(c, sizes[0], sizes[1], entry(values[0], values[1]),
                                        entry(values[1], values[1]), exact, tail_points);
  }
  if (values.size() < 2) throw InvalidArgument("k-valued case needs at least two degree classes");
  const std::size_t k = values.size() - 1;
  const long nk = sizes[k];
  MomentReport r;
  r.method = exact ? "exact" : "closed_form";
  if (exact) {
    Rational ex = 0;
    Rational exx = 0;
    const Rational pkk = entry(values[k], values[k]);
    if (nk >= 1) {
      ex = nk * pow(Rational(1 - pkk), static_cast<unsigned long>(nk - 1));
      for (std::size_t j = 0; j < k; ++j) {
        ex *= pow(Rational(1 - entry(values[k], values[j])), static_cast<unsigned long>(sizes[j]));
      }
    }
    if (nk >= 2) {
      exx = Rational(nk * (nk - 1)) * pow(Rational(1 - pkk), static_cast<unsigned long>(2 * nk - 3));
      for (std::size_t j = 0; j < k; ++j) {
        exx *= pow(Rational(1 - entry(values[k], values[j])), static_cast<unsigned long>(2 * sizes[j]));
      }
    }
    r.ex_exact = ex;
    r.exx_exact = exx;
  } else {
    const double pkk = entry(values[k], values[k]).get_d();
    const auto dnk = static_cast<double>(nk);
    double rest1 = 1.0;
    double rest2 = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double pj = entry(values[k], values[j]).get_d();
      rest1 *= pow_complement(pj, sizes[j]);
      rest2 *= pow_complement(pj, 2.0 * sizes[j]);
    }
    if (nk >= 1) r.ex = dnk * pow_complement(pkk, dnk - 1) * rest1;
    if (nk >= 2) r.exx = dnk * (dnk - 1) * pow_complement(pkk, 2 * dnk - 3) * rest2;
  }
  finish_report(r, tail_points);
  return r;
}

// ---------------------------------------------------------------------------

Rational z_value(const Rational& a, const Rational& t, std::int64_t norm, std::int64_t k_d2) {
  const Rational denom_b(static_cast<long>(2 * norm - k_d2));
  if (norm <= 0 || denom_b <= 0) throw InvalidArgument("degenerate denominators in Z");
  const Rational ap = a / (2 * Rational(static_cast<long>(norm)));
  const Rational bp = (a - t) / denom_b;
  return (ap - bp) * (1 + ap + bp);
}

namespace {

Rational z_from_sums(const Rational& a, long norm, const Rational& b, long reduced_norm) {
  const Rational ap = a / (2 * Rational(norm));
  const Rational bp = b / (2 * Rational(reduced_norm));
  return (ap - bp) * (1 + ap + bp);
}

}  // namespace

MomentDiagnostics moment_diagnostics(const DegreeSequence& d) {
  d.require_bivalued();
  const long d1 = d.class_values()[0];
  const long d2 = d.class_values()[1];
  if (d2 < 1) throw InvalidArgument("moment diagnostics need d2 >= 1");
  const long norm = static_cast<long>(d.norm1());
  MomentDiagnostics out;
  out.a = 0;
  for (int x : d.degrees()) out.a += static_cast<long>(x) * (x - 1);

  auto term = [&](int w, const Rational& t, long k) {
    ZTerm z;
    z.w = w;
    z.t = t;
    z.a_prime = out.a / (2 * Rational(norm));
    z.b_prime = (out.a - t) / Rational(2 * norm - k * d2);
    z.z = z_value(out.a, t, norm, k * d2);
    return z;
  };
  out.first = term(0, Rational(d2 * (d2 + 2 * d1 - 3)), 2);
  out.max_abs_second = 0;
  for (long w = 0; w <= d2; ++w) {
    out.second.push_back(term(static_cast<int>(w), Rational(2 * d2 * (d2 + d1 - 3) + 2 * w), 8));
    out.max_abs_second = max(out.max_abs_second, abs(out.second.back().z));
  }

  // The actual reduced sequences: v removed with d2 neighbors in U1 lowered by one, and the
  // two-vertex analogue with w shared neighbors.
  out.z_first_reduced = z_from_sums(out.a, norm, out.a - d2 * (d2 + 2 * d1 - 3), norm - 2 * d2);
  for (long w = 0; w <= d2; ++w) {
    out.z_second_reduced.push_back(
        z_from_sums(out.a, norm, out.a - (2 * d2 * (d2 + 2 * d1 - 3) - 2 * w), norm - 4 * d2));
  }
  return out;
}

// ---------------------------------------------------------------------------

ConditionReport condition_report(const DegreeSequence& d, double delta) {
  ConditionReport r;
  r.n = d.n();
  r.delta = delta;
  if (d.n() == 0) throw InvalidArgument("empty degree sequence");
  const double n = d.n();
  const double log_n = std::log(n);
  const double norm = static_cast<double>(d.norm1());
  const double d1 = d[0];
  const double dn = d[d.n() - 1];
  r.d1_sq_over_norm = norm > 0 ? d1 * d1 / norm : std::numeric_limits<double>::infinity();
  r.dn_over_log_n = log_n > 0 ? dn / log_n : std::numeric_limits<double>::infinity();
  r.bivalued = d.is_bivalued();
  if (r.bivalued) {
    const double v2 = d.class_values()[1];
    const double n1 = d.class_sizes()[0];
    const double n2 = d.class_sizes()[1];
    r.d2_sq_over_n1 = v2 * v2 / n1;
    r.d1_sq_over_sqrt_n_d2 = v2 > 0 ? d1 * d1 / std::sqrt(n * v2) : std::numeric_limits<double>::infinity();
    r.log_n_over_d2 = v2 > 0 ? log_n / v2 : std::numeric_limits<double>::infinity();
    r.n2_sq_d2_cube_over_norm_sq = n2 * n2 * v2 * v2 * v2 / (norm * norm);
    r.n1_over_n_delta = n1 / std::pow(n, delta);
  } else {
    r.warnings.push_back("sequence is not bi-valued; only the degree-condition ratios are reported");
  }
  auto flag = [&](const char* name, std::optional<double> v) {
    if (v && *v >= 1.0) r.warnings.push_back(std::string(name) + " = " + std::to_string(*v) + " is not small");
  };
  flag("d1^2/||d||_1", r.d1_sq_over_norm);
  flag("d2^2/n1", r.d2_sq_over_n1);
  flag("d1^2/sqrt(n d2)", r.d1_sq_over_sqrt_n_d2);
  flag("log n/d2", r.log_n_over_d2);
  flag("n2^2 d2^3/||d||_1^2", r.n2_sq_d2_cube_over_norm_sq);
  flag("n1/n^delta", r.n1_over_n_delta);
  if (r.dn_over_log_n < 1.0) {
    r.warnings.push_back("d_n/log n = " + std::to_string(r.dn_over_log_n) + " is not large");
  }
  return r;
}

}  // namespace nuspread
