#pragma once

// Maps Psi_{P,Q,R} = (Q R_0 : ... : Q R_{n-1} : P) and their reduction
// Psi~_R = (R_0 : ... : R_{n-1}), the recursive birationality test,
// hypersurface blow-downs, and the finite-field fiber and contraction oracles.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cremona/ratmap.hpp"
#include "cremona/rng.hpp"

namespace cremona {

template <class K>
struct ZnSplit {
  HomPoly<K> high;
  HomPoly<K> low;
};

/// p = z_last * high + low, both free of the last variable.
template <class K>
ZnSplit<K> zn_split(const HomPoly<K>& p) {
  const std::size_t last = p.nvars() - 1;
  if (p.degree_in(last) > 1)
    throw InvalidArgument("z" + std::to_string(last) + "-degree of " + format_poly(p) + " exceeds 1");
  return {p.coefficient_in(last, 1), p.coefficient_in(last, 0)};
}

/// P and Q live in z_0..z_n; R holds n forms in z_0..z_{n-1}.
template <class K>
struct PanSpec {
  std::size_t n = 0;
  HomPoly<K> P;
  HomPoly<K> Q;
  std::vector<HomPoly<K>> R;

  std::uint32_t d() const { return P.is_zero() ? 0 : *P.degree(); }
  std::uint32_t l() const { return Q.is_zero() ? 0 : *Q.degree(); }

  /// Every violated condition, one message each; empty when the data is valid.
  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (n < 2) out.push_back("n must be at least 2");
    if (P.nvars() != n + 1) out.push_back("P must be a form in z0..z" + std::to_string(n));
    if (Q.nvars() != n + 1) out.push_back("Q must be a form in z0..z" + std::to_string(n));
    if (R.size() != n) out.push_back("R must have exactly n = " + std::to_string(n) + " components");
    if (!out.empty()) return out;
    if (P.is_zero()) out.push_back("P is zero");
    if (Q.is_zero()) out.push_back("Q is zero");
    if (!out.empty()) return out;
    if (l() < 1) out.push_back("deg Q must be at least 1");
    if (d() < l() + 1) out.push_back("deg P must exceed deg Q");
    bool all_zero = true;
    for (std::size_t i = 0; i < R.size(); ++i) {
      if (R[i].nvars() != n) {
        out.push_back("R" + std::to_string(i) + " must be a form in z0..z" + std::to_string(n - 1));
        continue;
      }
      if (R[i].is_zero()) continue;
      all_zero = false;
      if (*R[i].degree() + l() != d())
        out.push_back("R" + std::to_string(i) + " must have degree deg P - deg Q = " + std::to_string(d() - l()));
    }
    if (all_zero) out.push_back("R is identically zero");
    const std::size_t last = n;
    if (P.degree_in(last) > 1) out.push_back("z" + std::to_string(n) + "-degree of P exceeds 1");
    if (Q.degree_in(last) > 1) out.push_back("z" + std::to_string(n) + "-degree of Q exceeds 1");
    if (P.degree_in(last) < 1 && Q.degree_in(last) < 1)
      out.push_back("P_{d-1} and Q_{l-1} are both zero");
    if (out.empty()) {
      auto g = gcd(P, Q);
      if (!g.is_constant()) out.push_back("gcd(P, Q) = " + format_poly(g) + " is not 1");
    }
    return out;
  }

  void validate() const {
    auto v = violations();
    if (v.empty()) return;
    std::string msg = "invalid Pan data: ";
    for (std::size_t i = 0; i < v.size(); ++i) msg += (i ? "; " : "") + v[i];
    throw InvalidArgument(msg);
  }
};

template <class K>
RatMap<K> build_psi(const PanSpec<K>& s) {
  s.validate();
  std::vector<HomPoly<K>> comps;
  for (const auto& r : s.R) comps.push_back(s.Q * r.with_extra_variables(1));
  comps.push_back(s.P);
  return RatMap<K>::new_normalized(std::move(comps));
}

template <class K>
RatMap<K> build_psi_tilde(const PanSpec<K>& s) {
  s.validate();
  return RatMap<K>::new_normalized(s.R);
}

// ---------------------------------------------------------------------------
// Finite-field enumeration. Points of P^m(GF(p)) are stored flat with the
// first nonzero coordinate equal to 1.

namespace detail {

/// Coefficients and exponents as machine integers, for fast evaluation mod p.
struct ModForm {
  std::vector<std::vector<std::uint32_t>> exps;
  std::vector<std::uint64_t> coeffs;

  explicit ModForm(const HomPoly<ModP>& f) {
    for (const auto& [m, c] : f.terms()) {
      exps.push_back(m.exponents());
      coeffs.push_back(c.value());
    }
  }

  std::uint64_t eval(const std::uint32_t* x, std::uint64_t p) const {
    std::uint64_t s = 0;
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
      std::uint64_t v = coeffs[t];
      const auto& e = exps[t];
      for (std::size_t i = 0; i < e.size() && v; ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) v = v * x[i] % p;
      s += v;
    }
    return s % p;
  }
};

inline std::uint64_t point_key(const std::uint32_t* x, std::size_t len, std::uint64_t p) {
  std::uint64_t k = 0;
  for (std::size_t i = len; i-- > 0;) k = k * p + x[i];
  return k;
}

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) { return detail::mod_inverse(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(p)); }

/// Scales so the first nonzero entry is 1; false when all entries vanish.
inline bool normalize_point(std::vector<std::uint32_t>& x, std::uint64_t p) {
  std::size_t i = 0;
  while (i < x.size() && x[i] == 0) ++i;
  if (i == x.size()) return false;
  if (x[i] != 1) {
    std::uint64_t s = inverse_mod(x[i], p);
    for (auto& v : x) v = static_cast<std::uint32_t>(v * s % p);
  }
  return true;
}

constexpr std::size_t kMaxEnumeratedPoints = 20'000'000;

}  // namespace detail

/// Every point of P^m(GF(p)), flat, m+1 coordinates each.
inline std::vector<std::uint32_t> projective_points(std::size_t m, std::uint32_t p) {
  double count = 0;
  for (std::size_t i = 0; i <= m; ++i) count = count * p + 1;
  if (count * (m + 1) > static_cast<double>(detail::kMaxEnumeratedPoints))
    throw InvalidArgument("P^" + std::to_string(m) + "(GF(" + std::to_string(p) + ")) is too large to enumerate");
  std::vector<std::uint32_t> out;
  out.reserve(static_cast<std::size_t>(count) * (m + 1));
  std::vector<std::uint32_t> x(m + 1);
  for (std::size_t lead = 0; lead <= m; ++lead) {
    std::fill(x.begin(), x.end(), 0);
    x[lead] = 1;
    // Odometer over the coordinates after the leading one.
    while (true) {
      out.insert(out.end(), x.begin(), x.end());
      std::size_t i = m + 1;
      while (i-- > lead + 1) {
        if (++x[i] < p) break;
        x[i] = 0;
      }
      if (i == lead) break;
    }
  }
  return out;
}

inline std::string format_point(const std::vector<std::uint32_t>& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ":" : "") + std::to_string(x[i]);
  return s + ")";
}

/// The reduced map evaluated on all of P^m(GF(p)), with images grouped.
class FiberTable {
 public:
  template <class K>
  FiberTable(const RatMap<K>& f, std::uint32_t p) : FiberTable(reduce_mod(f, p)) {}

  explicit FiberTable(const RatMap<ModP>& f) : p_(f.field().p), m_(f.n()), points_(projective_points(f.n(), f.field().p)) {
    for (const auto& c : f.components()) comps_.emplace_back(c);
    for (const auto& c : f.components()) {
      std::vector<detail::ModForm> row;
      for (std::size_t j = 0; j <= m_; ++j) row.emplace_back(c.derivative(j));
      partials_.push_back(std::move(row));
    }
    const std::size_t w = m_ + 1, count = points_.size() / w;
    image_key_.assign(count, kBase);
    std::vector<std::uint32_t> y(w);
    for (std::size_t idx = 0; idx < count; ++idx) {
      for (std::size_t i = 0; i < w; ++i) y[i] = static_cast<std::uint32_t>(comps_[i].eval(&points_[idx * w], p_));
      if (!detail::normalize_point(y, p_)) continue;
      const std::uint64_t k = detail::point_key(y.data(), w, p_);
      image_key_[idx] = k;
      fibers_[k].push_back(static_cast<std::uint32_t>(idx));
    }
  }

  std::uint32_t prime() const { return p_; }
  std::size_t dim() const { return m_; }
  std::size_t size() const { return image_key_.size(); }
  bool is_base(std::size_t idx) const { return image_key_[idx] == kBase; }
  std::vector<std::uint32_t> point(std::size_t idx) const {
    return {points_.begin() + idx * (m_ + 1), points_.begin() + (idx + 1) * (m_ + 1)};
  }
  std::vector<std::uint32_t> image(std::size_t idx) const {
    std::vector<std::uint32_t> y(m_ + 1);
    for (std::size_t i = 0; i <= m_; ++i) y[i] = static_cast<std::uint32_t>(comps_[i].eval(&points_[idx * (m_ + 1)], p_));
    detail::normalize_point(y, p_);
    return y;
  }
  /// Source indices sharing the image of idx (idx off the base locus).
  const std::vector<std::uint32_t>& fiber_of(std::size_t idx) const { return fibers_.at(image_key_[idx]); }
  const std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>& fibers() const { return fibers_; }

  /// Members of the fiber through idx at which the map is etale.
  std::vector<std::uint32_t> etale_fiber_of(std::size_t idx) const {
    std::vector<std::uint32_t> out;
    for (auto j : fiber_of(idx))
      if (is_etale(j)) out.push_back(j);
    return out;
  }

  /// The map is a local isomorphism at idx: the affine Jacobian in the
  /// source chart of the leading coordinate and the target chart of the
  /// first nonvanishing component is invertible.
  bool is_etale(std::size_t idx) const {
    if (is_base(idx)) return false;
    const std::uint32_t* x = &points_[idx * (m_ + 1)];
    std::size_t k = 0;
    while (x[k] == 0) ++k;
    std::vector<std::uint64_t> fv(m_ + 1);
    for (std::size_t i = 0; i <= m_; ++i) fv[i] = comps_[i].eval(x, p_);
    std::size_t t = 0;
    while (fv[t] == 0) ++t;
    PrimeField F(p_);
    std::vector<std::vector<ModP>> J;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == t) continue;
      std::vector<ModP> row;
      for (std::size_t j = 0; j <= m_; ++j) {
        if (j == k) continue;
        const std::uint64_t a = fv[t] * partials_[i][j].eval(x, p_) % p_;
        const std::uint64_t b = fv[i] * partials_[t][j].eval(x, p_) % p_;
        row.push_back(ModP(static_cast<std::uint32_t>((a + p_ - b) % p_), p_));
      }
      J.push_back(std::move(row));
    }
    return !determinant(std::move(J), F).is_zero();
  }

 private:
  static constexpr std::uint64_t kBase = UINT64_MAX;
  std::uint64_t p_;
  std::size_t m_;
  std::vector<std::uint32_t> points_;
  std::vector<detail::ModForm> comps_;
  std::vector<std::vector<detail::ModForm>> partials_;
  std::vector<std::uint64_t> image_key_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> fibers_;
};

struct FiberReport {
  std::uint32_t prime = 0;
  std::size_t trials = 0;
  std::size_t attempts = 0;
  /// etale points in the fiber -> number of etale trials that saw it
  std::map<std::size_t, std::size_t> histogram;
  std::size_t estimate = 0;
  /// The largest set of etale points found sharing one image, and that image.
  std::vector<std::vector<std::uint32_t>> witness;
  std::vector<std::uint32_t> witness_image;
};

/// A birational map is an open immersion on its etale locus, so two etale
/// points with one image rule birationality out. Counting only etale fiber
/// members keeps contracted loci through special images from inflating the
/// count. Over GF(p) a degree-k cover often shows fewer than k rational
/// points (cubics on P^1 can even permute the rational points), so the
/// estimate is 1 only when no trial saw a collision, and otherwise the most
/// frequent colliding size.
inline std::size_t fiber_estimate(const std::map<std::size_t, std::size_t>& histogram) {
  std::size_t trials = 0, best = 1, best_count = 0;
  for (const auto& [size, count] : histogram) {
    trials += count;
    if (size > 1 && count > best_count) best = size, best_count = count;
  }
  return trials == 0 ? 0 : best;
}

inline FiberReport fiber_statistics(const FiberTable& table, std::size_t trials, Rng& rng) {
  if (trials == 0) throw InvalidArgument("at least one trial is required");
  FiberReport r;
  r.prime = table.prime();
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < table.size(); ++i)
    if (!table.is_base(i)) usable.push_back(i);
  if (usable.empty())
    throw DegenerateReduction("all trials hit degenerate loci over GF(" + std::to_string(r.prime) +
                              "): every point is a base point");
  const std::size_t max_attempts = trials * 50;
  while (r.trials < trials && r.attempts < max_attempts) {
    ++r.attempts;
    const std::size_t idx = usable[rng.below(usable.size())];
    if (!table.is_etale(idx)) continue;
    ++r.trials;
    const auto fib = table.etale_fiber_of(idx);
    ++r.histogram[fib.size()];
    if (fib.size() > r.witness.size()) {
      r.witness.clear();
      for (auto j : fib) r.witness.push_back(table.point(j));
      r.witness_image = table.image(idx);
    }
  }
  if (r.trials == 0)
    throw DegenerateReduction("all trials hit degenerate loci over GF(" + std::to_string(r.prime) + ")");
  r.estimate = fiber_estimate(r.histogram);
  return r;
}

template <class K>
FiberReport generic_fiber_size(const RatMap<K>& f, std::uint32_t p, std::size_t trials, Rng& rng) {
  return fiber_statistics(FiberTable(f, p), trials, rng);
}

struct SkippedPrime {
  std::uint32_t prime = 0;
  std::string reason;
};

struct FiberSummary {
  std::vector<FiberReport> per_prime;
  /// Primes whose reduction is unusable: bad, degree-dropping or degenerate.
  std::vector<SkippedPrime> skipped;
  /// The estimate rule applied to the histograms of all primes pooled: 1 iff
  /// no prime saw two etale points with a common image.
  std::size_t modal = 0;
};

inline std::uint64_t prime_seed(std::uint64_t seed, std::uint32_t p) {
  std::uint64_t x = (seed + 0x9E3779B97F4A7C15ull) * 0xBF58476D1CE4E5B9ull ^ (std::uint64_t{p} << 17);
  return x ^ (x >> 29);
}

template <class K>
FiberSummary generic_fiber_size(const RatMap<K>& f, const std::vector<std::uint32_t>& primes, std::size_t trials,
                                std::uint64_t seed) {
  if (primes.empty()) throw InvalidArgument("no primes given");
  FiberSummary s;
  std::map<std::size_t, std::size_t> pooled;
  for (auto p : primes) {
    try {
      if constexpr (!std::is_same_v<K, ModP>) {
        if (reduce_mod(f, p).degree() != f.degree()) {
          s.skipped.push_back({p, "degree drops on reduction"});
          continue;
        }
      }
      Rng rng(prime_seed(seed, p));
      s.per_prime.push_back(generic_fiber_size(f, p, trials, rng));
    } catch (const BadPrime& e) {
      s.skipped.push_back({p, e.what()});
      continue;
    } catch (const DegenerateReduction& e) {
      s.skipped.push_back({p, e.what()});
      continue;
    }
    for (const auto& [size, count] : s.per_prime.back().histogram) pooled[size] += count;
  }
  if (s.per_prime.empty()) {
    std::string why;
    for (const auto& k : s.skipped) why += (why.empty() ? "" : "; ") + k.reason;
    throw DegenerateReduction("no usable prime: " + why);
  }
  s.modal = fiber_estimate(pooled);
  return s;
}

// ---------------------------------------------------------------------------
// Birationality.

enum class Verdict { birational, not_birational, undetermined };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::birational: return "birational";
    case Verdict::not_birational: return "not_birational";
    case Verdict::undetermined: return "undetermined";
  }
  return "?";
}

struct FiberWitness {
  std::uint32_t prime = 0;
  std::vector<std::vector<std::uint32_t>> points;
  std::vector<std::uint32_t> image;
};

struct CriterionResult {
  Verdict verdict = Verdict::undetermined;
  /// "exact", "certified" (involution), "witnessed" or "probabilistic"; empty when undetermined.
  std::string tag;
  std::vector<std::string> trail;
  std::optional<FiberWitness> witness;
};

struct CriterionOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 20;
  std::vector<std::uint32_t> primes{7, 11, 13};
};

namespace detail {

template <class K>
std::string map_label(const RatMap<K>& f) {
  return "P^" + std::to_string(f.n()) + " map of degree " + std::to_string(f.degree());
}

/// Largest set of etale points sharing an image, from the first prime that has two.
template <class K>
std::optional<FiberWitness> find_multi_fiber(const RatMap<K>& f, const std::vector<std::uint32_t>& primes) {
  for (auto p : primes) {
    std::optional<FiberTable> t;
    try {
      t.emplace(f, p);
    } catch (const FieldError&) {  // bad prime, or a GF(q) map asked about p != q
      continue;
    }
    std::vector<std::uint32_t> best;
    for (const auto& [key, fib] : t->fibers()) {
      if (fib.size() < std::max<std::size_t>(best.size(), 2)) continue;
      auto et = t->etale_fiber_of(fib.front());
      if (et.size() < 2 || et.size() < best.size()) continue;
      // ties go to the smallest point index, independent of hash order
      if (et.size() > best.size() || et.front() < best.front()) best = std::move(et);
    }
    if (best.empty()) continue;
    FiberWitness w{p, {}, t->image(best.front())};
    for (auto j : best) w.points.push_back(t->point(j));
    return w;
  }
  return std::nullopt;
}

/// Psi-shape of a map of P^m, m >= 2: the first m components share a factor
/// Q with deg_{z_m} Q <= 1, the cofactors are free of z_m, and the last
/// component has z_m-degree <= 1. Returns the cofactors as a map of P^{m-1}
/// (or nullopt), plus a flag for constant cofactors.
template <class K>
struct PsiShape {
  std::optional<RatMap<K>> tilde;
  bool constant_tilde = false;
  std::uint32_t l = 0;
};

template <class K>
std::optional<PsiShape<K>> psi_shape(const RatMap<K>& f) {
  const std::size_t m = f.n();
  if (m < 2) return std::nullopt;
  const auto& comps = f.components();
  if (comps[m].degree_in(m) > 1) return std::nullopt;
  std::vector<HomPoly<K>> head(comps.begin(), comps.begin() + m);
  bool any = false;
  for (const auto& h : head) any = any || !h.is_zero();
  if (!any) return std::nullopt;
  auto g = gcd_with_cofactors(std::span<const HomPoly<K>>(head));
  const std::uint32_t l = *g.gcd.degree();
  if (l < 1 || g.gcd.degree_in(m) > 1) return std::nullopt;
  for (const auto& c : g.cofactors)
    if (!c.is_free_of(m)) return std::nullopt;
  const bool p_high = comps[m].degree_in(m) == 1;
  const bool q_high = g.gcd.degree_in(m) == 1;
  if (!p_high && !q_high) return std::nullopt;
  PsiShape<K> s;
  s.l = l;
  std::vector<HomPoly<K>> r;
  for (const auto& c : g.cofactors) r.push_back(c.without_trailing_variables(1));
  std::uint32_t dr = 0;
  for (const auto& c : r)
    if (!c.is_zero()) dr = *c.degree();
  if (dr == 0) {
    s.constant_tilde = true;
    return s;
  }
  s.tilde = RatMap<K>::new_normalized(std::move(r));
  return s;
}

/// Necessary for f o f = id and much cheaper than composing: fixed sample
/// points return to themselves. Points hitting a base locus prove nothing.
template <class K>
bool may_be_involution(const RatMap<K>& f) {
  const std::size_t w = f.n() + 1;
  for (std::size_t s = 0; s < 4; ++s) {
    std::vector<K> x;
    for (std::size_t i = 0; i < w; ++i) x.push_back(f.field().from_int(static_cast<long>(1 + (7 * i * i + 13 * s + 5 * i * s) % 17)));
    const ProjPoint<K> pt(std::move(x));
    try {
      if (!(f.apply(f.apply(pt)) == pt)) return false;
    } catch (const BasePointError&) {
    }
  }
  return true;
}

template <class K>
void decide(const RatMap<K>& f, const CriterionOptions& opt, CriterionResult& out) {
  const std::size_t m = f.n();
  const std::string label = map_label(f);
  if (f.degree() == 0) {
    out.trail.push_back(label + ": constant map");
    out.verdict = Verdict::not_birational;
    out.tag = "exact";
    return;
  }
  if (f.degree() == 1) {
    std::vector<std::vector<K>> a(m + 1, std::vector<K>(m + 1, f.field().zero()));
    for (std::size_t i = 0; i <= m; ++i)
      for (std::size_t j = 0; j <= m; ++j) a[i][j] = f[i].coefficient(Monomial::variable(m + 1, j));
    const bool inv = !determinant(std::move(a), f.field()).is_zero();
    out.trail.push_back(label + ": linear, matrix " + (inv ? "invertible" : "singular"));
    out.verdict = inv ? Verdict::birational : Verdict::not_birational;
    out.tag = "exact";
    return;
  }
  if (may_be_involution(f) && compose(f, f).is_identity()) {
    out.trail.push_back(label + ": involution, f o f = id");
    out.verdict = Verdict::birational;
    out.tag = "certified";
    return;
  }
  if (m == 1) {
    out.trail.push_back(label + ": a map of P^1 of degree > 1 has degree-many preimages");
    out.verdict = Verdict::not_birational;
    out.tag = "exact";
    if constexpr (std::is_same_v<K, ModP>)
      out.witness = find_multi_fiber(f, {f.field().p});
    else
      out.witness = find_multi_fiber(f, opt.primes);
    return;
  }
  if (auto s = psi_shape(f)) {
    if (s->constant_tilde) {
      out.trail.push_back(label + ": Psi-shape with constant reduced map, image is a curve");
      out.verdict = Verdict::not_birational;
      out.tag = "exact";
      return;
    }
    out.trail.push_back(label + ": Psi-shape with deg Q = " + std::to_string(s->l) +
                        ", birational iff its reduced map " + format_map(*s->tilde) + " is");
    decide(*s->tilde, opt, out);
    return;
  }
  // No structural shortcut: fall back to the fiber oracle.
  // A map over GF(p) can only be sampled over its own field.
  std::vector<std::uint32_t> primes = opt.primes;
  if constexpr (std::is_same_v<K, ModP>) primes = {f.field().p};
  FiberSummary sum;
  try {
    sum = generic_fiber_size(f, primes, opt.trials, opt.seed);
  } catch (const DegenerateReduction& e) {
    out.trail.push_back(label + ": " + e.what());
  }
  for (const auto& k : sum.skipped) out.trail.push_back(label + ": GF(" + std::to_string(k.prime) + ") skipped, " + k.reason);
  std::size_t ones = 0;
  for (const auto& r : sum.per_prime) {
    ones += r.estimate == 1;
    out.trail.push_back(label + ": GF(" + std::to_string(r.prime) + ") fiber estimate " + std::to_string(r.estimate) +
                        " over " + std::to_string(r.trials) + " etale trials");
  }
  out.tag.clear();
  if (sum.per_prime.empty()) {
    out.verdict = Verdict::undetermined;
  } else if (ones == sum.per_prime.size()) {
    out.verdict = Verdict::birational;
    out.tag = "probabilistic";
  } else if (sum.modal > 1) {
    out.verdict = Verdict::not_birational;
    out.tag = "witnessed";
    for (const auto& r : sum.per_prime)
      if (r.estimate > 1) {
        out.witness = FiberWitness{r.prime, r.witness, r.witness_image};
        break;
      }
  } else {
    out.verdict = Verdict::undetermined;
    out.trail.push_back(label + ": fiber estimates disagree across primes");
  }
}

}  // namespace detail

/// Decides birationality of an arbitrary self-map with the same recursion.
template <class K>
CriterionResult classify_map(const RatMap<K>& f, const CriterionOptions& opt = {}) {
  CriterionResult out;
  detail::decide(f, opt, out);
  return out;
}

/// Psi is birational iff Psi~_R is; the reduced map is decided recursively.
template <class K>
CriterionResult birationality_criterion(const PanSpec<K>& s, const CriterionOptions& opt = {}) {
  s.validate();
  CriterionResult out;
  auto tilde = build_psi_tilde(s);
  out.trail.push_back("Pan data valid (n = " + std::to_string(s.n) + ", d = " + std::to_string(s.d()) +
                      ", l = " + std::to_string(s.l()) + "); Psi birational iff " + format_map(tilde) + " is");
  detail::decide(tilde, opt, out);
  return out;
}

// ---------------------------------------------------------------------------
// Blow-downs of hypersurfaces through p = (0:...:0:1).

struct BlowdownSpec {
  std::size_t n = 0;
  HomPoly<Rational> q;
  HomPoly<Rational> h;
  std::uint32_t d = 0;
  HomPoly<Rational> P;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
};

struct BlowdownResult {
  BlowdownSpec spec;
  PanSpec<Rational> pan;
  RatMap<Rational> psi;
};

/// Form of the given degree with every coefficient uniform in [lo, hi].
inline HomPoly<Rational> random_form(std::size_t nvars, std::uint32_t degree, Rng& rng, long lo = -3, long hi = 3) {
  RationalField Q;
  std::vector<HomPoly<Rational>::Term> terms;
  for (auto& m : monomials_of_degree(nvars, degree)) terms.emplace_back(std::move(m), Q.from_int(rng.between(lo, hi)));
  return HomPoly<Rational>::from_terms(Q, nvars, std::move(terms));
}

/// Q = h^{d-l-1} q', R_i = z_i and P = z_n P_{d-1} + P_d with seeded random
/// h and P, redrawn until P_{d-1} != 0 and gcd(P, h q') = 1.
inline BlowdownResult blowdown_build(const HomPoly<Rational>& q, std::uint32_t d, std::uint64_t seed,
                                     std::size_t max_attempts = 64) {
  if (q.is_zero()) throw InvalidArgument("q' is zero");
  const std::size_t nv = q.nvars(), n = nv - 1;
  if (n < 2) throw InvalidArgument("blow-downs need n >= 2");
  const std::uint32_t l = *q.degree();
  if (l == 0) throw InvalidArgument("q' must have degree at least 1");
  if (q.degree_in(n) > 1)
    throw InvalidArgument("z" + std::to_string(n) + "-degree of q' exceeds 1: multiplicity at (0:...:0:1) is below l-1");
  if (q.degree_in(n) == static_cast<int>(l))
    throw InvalidArgument("q' does not vanish at (0:...:0:1)");
  if (d < l + 1) throw InvalidArgument("target degree must be at least deg q' + 1");

  RationalField Q;
  Rng rng(seed);
  const auto zn = HomPoly<Rational>::variable(Q, nv, n);
  std::string last_reason;
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    HomPoly<Rational> h = random_form(n, 1, rng, -5, 5).with_extra_variables(1);
    HomPoly<Rational> high = random_form(n, d - 1, rng).with_extra_variables(1);
    HomPoly<Rational> low = random_form(n, d, rng).with_extra_variables(1);
    if (h.is_zero()) {
      last_reason = "h was zero";
      continue;
    }
    if (high.is_zero()) {
      last_reason = "P_{d-1} was zero";
      continue;
    }
    HomPoly<Rational> P = low.is_zero() ? zn * high : zn * high + low;
    if (!gcd(P, h * q).is_constant()) {
      last_reason = "gcd(P, h q') was nontrivial";
      continue;
    }
    PanSpec<Rational> pan{n, P, h.pow(d - l - 1) * q, {}};
    for (std::size_t i = 0; i < n; ++i) pan.R.push_back(HomPoly<Rational>::variable(Q, n, i));
    auto psi = build_psi(pan);
    return {BlowdownSpec{n, q, h, d, P, seed, attempt}, std::move(pan), std::move(psi)};
  }
  throw BudgetExceeded("blow-down retry budget of " + std::to_string(max_attempts) +
                       " attempts exhausted; last rejection: " + last_reason);
}

struct ContractionReport {
  std::uint32_t prime = 0;
  std::size_t points_on_hypersurface = 0;
  std::size_t base_points = 0;
  std::size_t distinct_images = 0;
  bool pass = false;
  /// Set when every usable point has the same image.
  std::optional<std::vector<std::uint32_t>> image;
};

/// Enumerates q' = 0 in P^n(GF(p)) off the base locus of f; passes iff all
/// images coincide.
template <class K>
ContractionReport contraction_check(const RatMap<K>& f, const HomPoly<K>& q, std::uint32_t p) {
  if (q.nvars() != f.n() + 1) throw ArityError("hypersurface and map live in different dimensions");
  if (q.is_zero()) throw InvalidArgument("q' is zero");
  auto qp = reduce_mod(q, p);
  if (qp.is_zero() || !(qp.leading_monomial() == q.leading_monomial()))
    throw BadPrime("p = " + std::to_string(p) + " divides the leading coefficient of q'");
  FiberTable table(f, p);
  detail::ModForm qf(qp);
  ContractionReport r;
  r.prime = p;
  std::optional<std::vector<std::uint32_t>> first;
  std::map<std::vector<std::uint32_t>, std::size_t> images;
  for (std::size_t i = 0; i < table.size(); ++i) {
    auto x = table.point(i);
    if (qf.eval(x.data(), p) != 0) continue;
    ++r.points_on_hypersurface;
    if (table.is_base(i)) {
      ++r.base_points;
      continue;
    }
    ++images[table.image(i)];
  }
  if (images.empty())
    throw InvalidArgument("no usable points: q' = 0 has " + std::to_string(r.points_on_hypersurface) +
                          " points over GF(" + std::to_string(p) + "), all in the base locus");
  r.distinct_images = images.size();
  r.pass = images.size() == 1;
  if (r.pass) r.image = images.begin()->first;
  return r;
}

}  // namespace cremona
