#pragma once

// Sparse homogeneous polynomials in z0..z_{m-1} over an exact field.
//
// Terms are kept sorted in graded-lexicographic order, largest first, with
// z0 > z1 > ... ; the leading term is always terms().front().

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cremona/errors.hpp"
#include "cremona/field.hpp"

namespace cremona {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exponents) : e_(std::move(exponents)) {
    degree_ = std::accumulate(e_.begin(), e_.end(), 0u);
  }

  static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1) {
    Monomial m(nvars);
    m.e_.at(index) = power;
    m.degree_ = power;
    return m;
  }

  std::size_t nvars() const { return e_.size(); }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t operator[](std::size_t i) const { return e_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return e_; }

  void set(std::size_t i, std::uint32_t power) {
    degree_ = degree_ - e_[i] + power;
    e_[i] = power;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    r.degree_ += o.degree_;
    return r;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  /// Quotient o / *this; caller guarantees divisibility.
  Monomial quotient_of(const Monomial& o) const {
    Monomial r = o;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= e_[i];
    r.degree_ -= degree_;
    return r;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> e_;
  std::uint32_t degree_ = 0;
};

/// Negative, zero or positive as a is smaller, equal or larger in grlex.
inline int grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (std::size_t i = 0; i < a.nvars(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

namespace detail {

// Packed monomial: total degree in the top byte, then one byte per exponent,
// z0 first. Integer order on keys is grlex order.
inline bool packable(std::size_t nvars, std::uint32_t degree) { return nvars <= 7 && degree <= 255; }

inline std::uint64_t pack(const Monomial& m) {
  std::uint64_t k = std::uint64_t{m.degree()} << 56;
  for (std::size_t i = 0; i < m.nvars(); ++i) k |= std::uint64_t{m[i]} << (48 - 8 * i);
  return k;
}

inline Monomial unpack(std::uint64_t k, std::size_t nvars) {
  std::vector<std::uint32_t> e(nvars);
  for (std::size_t i = 0; i < nvars; ++i) e[i] = static_cast<std::uint32_t>((k >> (48 - 8 * i)) & 0xff);
  return Monomial(std::move(e));
}

}  // namespace detail

template <class K>
class HomPoly {
 public:
  using Field = typename K::Field;
  using Term = std::pair<Monomial, K>;

  HomPoly(Field field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static HomPoly constant(Field field, std::size_t nvars, const K& c) {
    HomPoly p(field, nvars);
    if (!c.is_zero()) p.terms_.emplace_back(Monomial(nvars), c);
    return p;
  }

  static HomPoly variable(Field field, std::size_t nvars, std::size_t index) {
    return monomial(field, Monomial::variable(nvars, index), field.one());
  }

  static HomPoly monomial(Field field, const Monomial& m, const K& c) {
    HomPoly p(field, m.nvars());
    if (!c.is_zero()) {
      p.terms_.emplace_back(m, c);
      p.degree_ = m.degree();
    }
    return p;
  }

  /// Builds from arbitrary terms: merges duplicates, drops zeros, checks homogeneity.
  static HomPoly from_terms(Field field, std::size_t nvars, std::vector<Term> terms) {
    std::map<Monomial, K, GrlexGreater> acc;
    for (auto& [m, c] : terms) {
      if (m.nvars() != nvars) throw ArityError("monomial arity does not match polynomial");
      accumulate(acc, m, c);
    }
    return from_map(field, nvars, std::move(acc));
  }

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  /// Total degree; empty for the zero polynomial.
  std::optional<std::uint32_t> degree() const {
    if (terms_.empty()) return std::nullopt;
    return degree_;
  }

  std::uint32_t degree_or_throw() const {
    if (terms_.empty()) throw InvalidArgument("the zero polynomial has no degree");
    return degree_;
  }

  bool is_constant() const { return terms_.empty() || degree_ == 0; }

  const K& leading_coefficient() const {
    if (terms_.empty()) throw InvalidArgument("zero polynomial has no leading coefficient");
    return terms_.front().second;
  }
  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw InvalidArgument("zero polynomial has no leading monomial");
    return terms_.front().first;
  }

  /// Coefficient of a monomial (zero when absent).
  K coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& key) {
      return grlex_compare(t.first, key) > 0;
    });
    if (it != terms_.end() && it->first == m) return it->second;
    return field_.zero();
  }

  HomPoly operator-() const {
    HomPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  HomPoly operator+(const HomPoly& o) const { return merge(o, false); }
  HomPoly operator-(const HomPoly& o) const { return merge(o, true); }
  HomPoly& operator+=(const HomPoly& o) { return *this = merge(o, false); }
  HomPoly& operator-=(const HomPoly& o) { return *this = merge(o, true); }

  HomPoly operator*(const HomPoly& o) const {
    check_compatible(o);
    if (is_zero() || o.is_zero()) return HomPoly(field_, nvars_);
    if (o.size() == 1) return times_term(o.terms_.front().first, o.terms_.front().second);
    if (size() == 1) return o.times_term(terms_.front().first, terms_.front().second);
    if (detail::packable(nvars_, degree_ + o.degree_)) return multiply_packed(o);
    std::map<Monomial, K, GrlexGreater> acc;
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) accumulate(acc, ma * mb, ca * cb);
    return from_map(field_, nvars_, std::move(acc));
  }
  HomPoly& operator*=(const HomPoly& o) { return *this = *this * o; }

  HomPoly scaled(const K& c) const {
    if (c.is_zero()) return HomPoly(field_, nvars_);
    HomPoly r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }

  HomPoly times_term(const Monomial& m, const K& c) const {
    if (c.is_zero()) return HomPoly(field_, nvars_);
    HomPoly r(field_, nvars_);
    r.terms_.reserve(terms_.size());
    for (const auto& [mm, cc] : terms_) r.terms_.emplace_back(mm * m, cc * c);
    r.degree_ = degree_ + m.degree();
    return r;
  }

  HomPoly pow(std::uint32_t e) const {
    HomPoly r = constant(field_, nvars_, field_.one());
    HomPoly b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  /// Scales so the leading coefficient is 1 (zero stays zero).
  HomPoly monic() const {
    if (is_zero() || leading_coefficient().is_one()) return *this;
    return scaled(leading_coefficient().inverse());
  }

  friend bool operator==(const HomPoly& a, const HomPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Largest exponent of z_var; -1 for the zero polynomial.
  int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first[var]));
    return d;
  }

  bool is_free_of(std::size_t var) const { return degree_in(var) <= 0; }

  /// Coefficient of z_var^k, as a polynomial in the same variables (free of z_var).
  HomPoly coefficient_in(std::size_t var, std::uint32_t k) const {
    HomPoly r(field_, nvars_);
    for (const auto& [m, c] : terms_)
      if (m[var] == k) {
        Monomial mm = m;
        mm.set(var, 0);
        r.terms_.emplace_back(std::move(mm), c);
      }
    // Removing the same power from every term preserves the order.
    if (!r.terms_.empty()) r.degree_ = r.terms_.front().first.degree();
    return r;
  }

  /// Componentwise minimum of the exponents: the largest monomial dividing every term.
  Monomial monomial_content() const {
    if (terms_.empty()) return Monomial(nvars_);
    std::vector<std::uint32_t> e = terms_.front().first.exponents();
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = std::min(e[i], t.first[i]);
    return Monomial(std::move(e));
  }

  /// Exact division by a monomial.
  HomPoly divided_by_monomial(const Monomial& m) const {
    HomPoly r(field_, nvars_);
    r.terms_.reserve(terms_.size());
    for (const auto& [mm, c] : terms_) {
      if (!m.divides(mm)) throw NotDivisible();
      r.terms_.emplace_back(m.quotient_of(mm), c);
    }
    if (!r.terms_.empty()) r.degree_ = degree_ - m.degree();
    return r;
  }

  HomPoly derivative(std::size_t var) const {
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial mm = m;
      mm.set(var, m[var] - 1);
      out.emplace_back(std::move(mm), c * field_.from_int(static_cast<long>(m[var])));
    }
    return from_terms(field_, nvars_, std::move(out));
  }

  K evaluate(std::span<const K> point) const {
    if (point.size() != nvars_) throw ArityError("evaluation point has wrong length");
    K sum = field_.zero();
    for (const auto& [m, c] : terms_) {
      K term = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m[i]) term *= power(point[i], m[i]);
      sum += term;
    }
    return sum;
  }

  /// p(images[0], ..., images[m-1]). Nonzero images must share one degree.
  HomPoly substitute(std::span<const HomPoly> images) const {
    if (images.size() != nvars_) throw ArityError("substitution needs one image per variable");
    std::size_t target = images.front().nvars();
    std::optional<std::uint32_t> e;
    for (const auto& img : images) {
      if (img.nvars() != target) throw ArityError("substitution images have different arities");
      if (!(img.field_ == field_)) throw FieldMismatch();
      if (auto d = img.degree()) {
        if (e && *e != *d) throw HomogeneityError("substitution images have unequal degrees");
        e = d;
      }
    }
    // powers[i][k] = images[i]^k, filled lazily up to the largest exponent used.
    std::vector<std::vector<HomPoly>> powers(nvars_);
    auto power_of = [&](std::size_t i, std::uint32_t k) -> const HomPoly& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(field_, target, field_.one()));
      while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
      return cache[k];
    };
    if (terms_.empty()) return HomPoly(field_, target);
    // Terms sharing exponents of z0..z_{v-1} are contiguous and sorted by the
    // exponent of z_v, so p = sum_k z_v^k p_k recurses on each block.
    auto rec = [&](auto&& self, std::size_t b, std::size_t e, std::size_t v) -> HomPoly {
      if (e - b == 1) {
        const auto& [m, c] = terms_[b];
        HomPoly prod = constant(field_, target, c);
        for (std::size_t i = v; i < nvars_ && !prod.is_zero(); ++i)
          if (m[i]) prod *= power_of(i, m[i]);
        return prod;
      }
      HomPoly sum(field_, target);
      for (std::size_t i = b; i < e;) {
        std::size_t j = i;
        while (j < e && terms_[j].first[v] == terms_[i].first[v]) ++j;
        HomPoly part = self(self, i, j, v + 1);
        const std::uint32_t k = terms_[i].first[v];
        sum += k ? part * power_of(v, k) : part;
        i = j;
      }
      return sum;
    };
    return rec(rec, 0, terms_.size(), 0);
  }

  /// Same polynomial viewed in `count` extra trailing variables.
  HomPoly with_extra_variables(std::size_t count) const {
    HomPoly r(field_, nvars_ + count);
    for (const auto& [m, c] : terms_) {
      auto e = m.exponents();
      e.resize(nvars_ + count, 0);
      r.terms_.emplace_back(Monomial(std::move(e)), c);
    }
    r.degree_ = degree_;
    return r;
  }

  /// Drops trailing variables, which must not occur.
  HomPoly without_trailing_variables(std::size_t count) const {
    if (count > nvars_) throw ArityError("cannot drop more variables than present");
    HomPoly r(field_, nvars_ - count);
    for (const auto& [m, c] : terms_) {
      auto e = m.exponents();
      for (std::size_t i = nvars_ - count; i < nvars_; ++i)
        if (e[i] != 0) throw ArityError("dropped variable occurs in the polynomial");
      e.resize(nvars_ - count);
      r.terms_.emplace_back(Monomial(std::move(e)), c);
    }
    r.degree_ = degree_;
    return r;
  }

  /// Applies a coefficient map into another field (reduction mod p, embeddings).
  template <class F2, class Fn>
  HomPoly<typename F2::Element> map_coefficients(const F2& target, Fn&& fn) const {
    std::vector<typename HomPoly<typename F2::Element>::Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.emplace_back(m, fn(c));
    return HomPoly<typename F2::Element>::from_terms(target, nvars_, std::move(out));
  }

 private:
  template <class>
  friend class HomPoly;

  // Keys preserve grlex order and turn monomial products into sums.
  HomPoly multiply_packed(const HomPoly& o) const {
    std::vector<std::uint64_t> kb;
    kb.reserve(o.terms_.size());
    for (const auto& t : o.terms_) kb.push_back(detail::pack(t.first));
    std::unordered_map<std::uint64_t, K> acc;
    acc.reserve(std::min<std::size_t>(terms_.size() * kb.size(), std::size_t{1} << 20));
    K prod = field_.zero();
    for (const auto& [ma, ca] : terms_) {
      const std::uint64_t ka = detail::pack(ma);
      for (std::size_t j = 0; j < kb.size(); ++j) {
        prod = ca;
        prod *= o.terms_[j].second;
        auto [it, inserted] = acc.try_emplace(ka + kb[j], prod);
        if (!inserted) it->second += prod;
      }
    }
    std::vector<std::pair<std::uint64_t, K>> sorted;
    sorted.reserve(acc.size());
    for (auto& [k, c] : acc)
      if (!c.is_zero()) sorted.emplace_back(k, std::move(c));
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    HomPoly r(field_, nvars_);
    r.terms_.reserve(sorted.size());
    for (auto& [k, c] : sorted) r.terms_.emplace_back(detail::unpack(k, nvars_), std::move(c));
    r.degree_ = degree_ + o.degree_;
    return r;
  }

  static void accumulate(std::map<Monomial, K, GrlexGreater>& acc, const Monomial& m, const K& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = acc.try_emplace(m, c);
    if (!inserted) it->second += c;
  }

  static HomPoly from_map(Field field, std::size_t nvars, std::map<Monomial, K, GrlexGreater>&& acc) {
    HomPoly p(field, nvars);
    p.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) {
      if (c.is_zero()) continue;
      if (!p.terms_.empty() && m.degree() != p.degree_)
        throw HomogeneityError("polynomial is not homogeneous");
      p.degree_ = m.degree();
      p.terms_.emplace_back(m, std::move(c));
    }
    return p;
  }

  void check_compatible(const HomPoly& o) const {
    if (o.nvars_ != nvars_) throw ArityError("polynomials have different numbers of variables");
    if (!(o.field_ == field_)) throw FieldMismatch();
  }

  HomPoly merge(const HomPoly& o, bool subtract) const {
    check_compatible(o);
    if (o.is_zero()) return *this;
    if (is_zero()) return subtract ? -o : o;
    if (degree_ != o.degree_) throw HomogeneityError("adding polynomials of different degrees");
    HomPoly r(field_, nvars_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      int cmp = a == terms_.end() ? -1 : b == o.terms_.end() ? 1 : grlex_compare(a->first, b->first);
      if (cmp > 0) {
        r.terms_.push_back(*a++);
      } else if (cmp < 0) {
        r.terms_.emplace_back(b->first, subtract ? -b->second : b->second);
        ++b;
      } else {
        K c = subtract ? a->second - b->second : a->second + b->second;
        if (!c.is_zero()) r.terms_.emplace_back(a->first, std::move(c));
        ++a;
        ++b;
      }
    }
    r.degree_ = degree_;
    return r;
  }

  Field field_;
  std::size_t nvars_;
  std::vector<Term> terms_;
  std::uint32_t degree_ = 0;
};

/// Quotient a / b when b divides a; nullopt otherwise.
template <class K>
std::optional<HomPoly<K>> try_divide(const HomPoly<K>& a, const HomPoly<K>& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.nvars() != b.nvars()) throw ArityError("polynomials have different numbers of variables");
  using P = HomPoly<K>;
  if (a.is_zero()) return P(a.field(), a.nvars());
  if (*a.degree() < *b.degree()) return std::nullopt;
  if (b.size() == 1) {
    const auto& [bm, bc] = b.terms().front();
    if (!bm.divides(a.monomial_content())) return std::nullopt;
    return a.divided_by_monomial(bm).scaled(bc.inverse());
  }
  const Monomial& lm = b.leading_monomial();
  const K lc_inv = b.leading_coefficient().inverse();
  std::map<Monomial, K, GrlexGreater> rem;
  for (const auto& [m, c] : a.terms()) rem.emplace(m, c);
  std::vector<typename P::Term> quotient;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lm.divides(top->first)) return std::nullopt;
    Monomial qm = lm.quotient_of(top->first);
    K qc = top->second * lc_inv;
    for (const auto& [m, c] : b.terms()) {
      Monomial prod = m * qm;
      K delta = c * qc;
      auto [it, inserted] = rem.try_emplace(prod, -delta);
      if (!inserted) {
        it->second -= delta;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
    quotient.emplace_back(std::move(qm), std::move(qc));
  }
  return P::from_terms(a.field(), a.nvars(), std::move(quotient));
}

/// Exact quotient; throws NotDivisible instead of truncating.
/// All monomials of total degree `degree` in `nvars` variables, grlex descending.
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint32_t degree) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> e(nvars, 0);
  auto rec = [&](auto& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == nvars) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (std::uint32_t k = left + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (nvars == 0) throw ArityError("no variables");
  rec(rec, 0, degree);
  return out;
}

template <class K>
HomPoly<K> exact_div(const HomPoly<K>& a, const HomPoly<K>& b) {
  auto q = try_divide(a, b);
  if (!q) throw NotDivisible();
  return std::move(*q);
}

template <class K>
bool divides(const HomPoly<K>& b, const HomPoly<K>& a) {
  return try_divide(a, b).has_value();
}

}  // namespace cremona
