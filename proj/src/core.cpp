#include "nuspread/core.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "nuspread/error.hpp"

namespace nuspread {

bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t i0 = i;
      std::size_t j0 = j;
      while (i < a.size() && digit(a[i])) ++i;
      while (j < b.size() && digit(b[j])) ++j;
      auto ra = a.substr(i0, i - i0);
      auto rb = b.substr(j0, j - j0);
      while (ra.size() > 1 && ra.front() == '0') ra.remove_prefix(1);
      while (rb.size() > 1 && rb.front() == '0') rb.remove_prefix(1);
      if (ra.size() != rb.size()) return ra.size() < rb.size();
      if (ra != rb) return ra < rb;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

std::string edge_name(int u, int v) {
  if (u > v) std::swap(u, v);
  return std::to_string(u) + "-" + std::to_string(v);
}

// ---------------------------------------------------------------------------
// GroundSet

GroundSet::GroundSet(std::vector<std::string> items, std::optional<int> arity)
    : items_(std::move(items)), arity_(arity) {
  std::sort(items_.begin(), items_.end(), [](const std::string& a, const std::string& b) {
    return natural_less(a, b);
  });
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i > 0 && items_[i] == items_[i - 1]) {
      throw InvalidArgument("duplicate ground-set item '" + items_[i] + "'");
    }
    index_.emplace(items_[i], i);
  }
}

GroundSet GroundSet::complete_graph_edges(int n) {
  if (n < 0) throw InvalidArgument("negative vertex count");
  std::vector<std::string> items;
  items.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) items.push_back(edge_name(u, v));
  }
  return GroundSet(std::move(items), 2);
}

std::optional<std::size_t> GroundSet::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t GroundSet::require_index(std::string_view name) const {
  auto idx = index_of(name);
  if (!idx) throw InvalidArgument("item '" + std::string(name) + "' is not in the ground set");
  return *idx;
}

Subset GroundSet::full_mask() const {
  if (items_.size() > kMaxGroundItems) {
    throw InfeasibleSize("ground set of " + std::to_string(items_.size()) + " items exceeds the " +
                         std::to_string(kMaxGroundItems) + "-item subset encoding");
  }
  return items_.size() == 64 ? ~Subset{0} : ((Subset{1} << items_.size()) - 1);
}

Subset GroundSet::mask_of(const std::vector<std::string>& names) const {
  full_mask();
  Subset s = 0;
  for (const auto& name : names) s |= Subset{1} << require_index(name);
  return s;
}

std::vector<std::string> GroundSet::names_of(Subset s) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < items_.size() && i < 64; ++i) {
    if (s & (Subset{1} << i)) out.push_back(items_[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ProbVector

ProbVector::ProbVector(GroundSet ground, std::vector<Rational> values)
    : ground_(std::move(ground)), values_(std::move(values)) {
  if (values_.size() != ground_.size()) {
    throw InvalidArgument("probability vector has " + std::to_string(values_.size()) +
                          " entries for a ground set of " + std::to_string(ground_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    values_[i].canonicalize();
    if (values_[i] < 0 || values_[i] > 1) {
      throw InvalidArgument("probability for '" + ground_.item(i) + "' is outside [0,1]: " +
                            to_string(values_[i]));
    }
  }
}

ProbVector ProbVector::constant(GroundSet ground, const Rational& value) {
  std::vector<Rational> values(ground.size(), value);
  return ProbVector(std::move(ground), std::move(values));
}

std::vector<double> ProbVector::to_doubles() const {
  std::vector<double> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(v.get_d());
  return out;
}

// ---------------------------------------------------------------------------
// SubsetFamily

namespace {

void require_enumerable(const GroundSet& ground, const char* what) {
  if (ground.size() > kEnumerationLimit) {
    throw InfeasibleSize(std::string(what) + ": enumeration infeasible for |X| = " +
                         std::to_string(ground.size()) + " (limit " + std::to_string(kEnumerationLimit) +
                         ")");
  }
}

void require_same_ground(const GroundSet& a, const GroundSet& b) {
  if (!(a == b)) throw InvalidArgument("family and probability vector live on different ground sets");
}

// Marks every superset of a member; the returned bitmap is indexed by mask.
std::vector<char> superset_bitmap(const GroundSet& ground, const std::vector<Subset>& members) {
  const std::size_t n = ground.size();
  std::vector<char> seen(std::size_t{1} << n, 0);
  std::vector<Subset> frontier;
  for (Subset s : members) {
    if (!seen[s]) {
      seen[s] = 1;
      frontier.push_back(s);
    }
  }
  while (!frontier.empty()) {
    Subset s = frontier.back();
    frontier.pop_back();
    for (std::size_t i = 0; i < n; ++i) {
      Subset t = s | (Subset{1} << i);
      if (!seen[t]) {
        seen[t] = 1;
        frontier.push_back(t);
      }
    }
  }
  return seen;
}

}  // namespace

SubsetFamily::SubsetFamily(GroundSet ground, std::vector<Subset> members, bool claims_increasing,
                           std::optional<int> ell)
    : ground_(std::move(ground)), members_(std::move(members)), claims_increasing_(claims_increasing),
      ell_(ell) {
  const Subset full = ground_.full_mask();
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (Subset s : members_) {
    if (!is_subset(s, full)) throw InvalidArgument("family member is not a subset of the ground set");
  }
  if (claims_increasing_ && ground_.size() <= kIncreasingCheckLimit && !is_increasing(*this)) {
    throw InvalidArgument("family is declared increasing but is not closed under supersets");
  }
  if (ell_) {
    if (*ell_ < 0) throw InvalidArgument("ell must be nonnegative");
    if (max_minimal_size() > *ell_) {
      throw InvalidArgument("family has a minimal member larger than ell = " + std::to_string(*ell_));
    }
  }
}

SubsetFamily SubsetFamily::from_names(GroundSet ground, const std::vector<std::vector<std::string>>& members,
                                      bool claims_increasing, std::optional<int> ell) {
  std::vector<Subset> masks;
  masks.reserve(members.size());
  for (const auto& m : members) masks.push_back(ground.mask_of(m));
  return SubsetFamily(std::move(ground), std::move(masks), claims_increasing, ell);
}

bool SubsetFamily::contains(Subset s) const { return std::binary_search(members_.begin(), members_.end(), s); }

std::vector<Subset> SubsetFamily::minimal_members() const {
  std::vector<Subset> by_size = members_;
  std::stable_sort(by_size.begin(), by_size.end(),
                   [](Subset a, Subset b) { return subset_size(a) < subset_size(b); });
  std::vector<Subset> minimal;
  for (Subset s : by_size) {
    bool dominated = std::any_of(minimal.begin(), minimal.end(), [s](Subset m) { return is_subset(m, s); });
    if (!dominated) minimal.push_back(s);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

int SubsetFamily::max_minimal_size() const {
  int best = 0;
  for (Subset s : minimal_members()) best = std::max(best, subset_size(s));
  return best;
}

bool is_increasing(const SubsetFamily& family) {
  require_enumerable(family.ground(), "is_increasing");
  const std::size_t n = family.ground().size();
  for (Subset s : family.members()) {
    for (std::size_t i = 0; i < n; ++i) {
      Subset t = s | (Subset{1} << i);
      if (t != s && !family.contains(t)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Measures

Rational mu_exact(const SubsetFamily& family, const ProbVector& p) {
  require_same_ground(family.ground(), p.ground());
  require_enumerable(family.ground(), "mu_exact");
  const std::size_t n = p.size();
  std::vector<Rational> complement(n);
  for (std::size_t i = 0; i < n; ++i) complement[i] = 1 - p[i];
  Rational total = 0;
  Rational term;
  for (Subset s : family.members()) {
    term = 1;
    for (std::size_t i = 0; i < n; ++i) {
      term *= (s >> i) & 1 ? p[i] : complement[i];
      if (term == 0) break;
    }
    total += term;
  }
  return total;
}

SubsetFamily up_closure(const SubsetFamily& generators) {
  require_enumerable(generators.ground(), "up_closure");
  auto seen = superset_bitmap(generators.ground(), generators.members());
  std::vector<Subset> members;
  for (Subset s = 0; s < seen.size(); ++s) {
    if (seen[s]) members.push_back(s);
  }
  return SubsetFamily(generators.ground(), std::move(members), true);
}

Rational expected_cover_count(const SubsetFamily& g, const ProbVector& q) {
  require_same_ground(g.ground(), q.ground());
  Rational total = 0;
  Rational term;
  for (Subset s : g.members()) {
    term = 1;
    for (Subset t = s; t; t &= t - 1) term *= q[static_cast<std::size_t>(__builtin_ctzll(t))];
    total += term;
  }
  return total;
}

int transform_exponent(int ell) {
  if (ell < 1) throw InvalidArgument("ell must be at least 1");
  // floor(log2(2*ell)) is the index of the highest set bit of 2*ell.
  const auto two_ell = static_cast<unsigned long long>(ell) * 2;
  const int floor_log = static_cast<int>(std::bit_width(two_ell)) - 1;
  return 4 * floor_log + 7;
}

namespace {

ProbVector map_components(const ProbVector& p, auto&& fn) {
  std::vector<Rational> out;
  out.reserve(p.size());
  for (const auto& v : p.values()) out.push_back(fn(v));
  return ProbVector(p.ground(), std::move(out));
}

}  // namespace

ProbVector t_ell_transform(const ProbVector& q, int ell) {
  const auto m = static_cast<unsigned long>(transform_exponent(ell));
  return map_components(q, [m](const Rational& v) { return Rational(1 - pow(Rational(1 - v), m)); });
}

ProbVector boost_vector(const ProbVector& p, int k) {
  if (k < 1) throw InvalidArgument("boost factor k must be at least 1");
  const auto kk = static_cast<unsigned long>(k);
  return map_components(p, [kk](const Rational& v) { return Rational(1 - pow(Rational(1 - v), kk)); });
}

ProbVector scale_capped(const ProbVector& p, int k) {
  if (k < 0) throw InvalidArgument("scale factor must be nonnegative");
  return map_components(p, [k](const Rational& v) { return min(Rational(v * k), Rational(1)); });
}

Rational faithful_threshold_value(const Rational& mu) {
  if (mu < 0 || mu > 1) throw InvalidArgument("measure outside [0,1]");
  if (mu <= Rational(1, 2)) return mu;
  if (mu == 1) throw InvalidArgument("threshold map is unbounded at mu = 1");
  return Rational(1) / (4 * (1 - mu));
}

Rational faithful_threshold_map(const SubsetFamily& family, const ProbVector& p) {
  require_enumerable(family.ground(), "faithful_threshold_map");
  const std::size_t total = std::size_t{1} << family.ground().size();
  if (family.empty() || family.size() == total) {
    throw InvalidArgument("threshold map requires a family other than the empty family and 2^X");
  }
  if (!is_increasing(family)) throw InvalidArgument("threshold map requires an increasing family");
  return faithful_threshold_value(mu_exact(family, p));
}

BigInt falling_factorial(unsigned long n, unsigned long x) {
  if (x > n) return 0;
  BigInt r = 1;
  for (unsigned long i = 0; i < x; ++i) r *= n - i;
  return r;
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace nuspread
