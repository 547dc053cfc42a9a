#pragma once

// Multivariate GCD of homogeneous polynomials.
//
// A polynomial is viewed as univariate in its highest-index variable with
// coefficients in the ring of the remaining variables. Contents are split off
// recursively and the primitive parts go through a subresultant remainder
// sequence. Every coefficient that appears along the way is itself homogeneous,
// so all arithmetic stays inside HomPoly.

#include <algorithm>
#include <optional>
#include <type_traits>
#include <span>
#include <stdexcept>
#include <vector>

#include "cremona/poly.hpp"

namespace cremona {

template <class K>
HomPoly<K> gcd(const HomPoly<K>& a, const HomPoly<K>& b);

namespace detail {

template <class K>
using UPoly = std::vector<HomPoly<K>>;

template <class K>
void trim(UPoly<K>& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

template <class K>
UPoly<K> to_univariate(const HomPoly<K>& p, std::size_t var) {
  UPoly<K> u;
  int d = p.degree_in(var);
  for (int k = 0; k <= d; ++k) u.push_back(p.coefficient_in(var, static_cast<std::uint32_t>(k)));
  return u;
}

template <class K>
HomPoly<K> from_univariate(const UPoly<K>& u, std::size_t var, const HomPoly<K>& zero) {
  HomPoly<K> r = zero;
  for (std::size_t k = 0; k < u.size(); ++k)
    if (!u[k].is_zero())
      r += u[k].times_term(Monomial::variable(zero.nvars(), var, static_cast<std::uint32_t>(k)),
                           zero.field().one());
  return r;
}

template <class K>
HomPoly<K> one_like(const HomPoly<K>& p) {
  return HomPoly<K>::constant(p.field(), p.nvars(), p.field().one());
}

/// gcd of all nonzero entries (monic); 1 when everything is constant.
template <class K>
HomPoly<K> gcd_list(std::vector<HomPoly<K>> ps) {
  std::erase_if(ps, [](const HomPoly<K>& p) { return p.is_zero(); });
  if (ps.empty()) throw InvalidArgument("gcd of an all-zero list");
  std::sort(ps.begin(), ps.end(), [](const HomPoly<K>& x, const HomPoly<K>& y) {
    if (*x.degree() != *y.degree()) return *x.degree() < *y.degree();
    return x.size() < y.size();
  });
  HomPoly<K> g = ps.front().monic();
  for (std::size_t i = 1; i < ps.size() && !g.is_constant(); ++i) g = gcd(g, ps[i]);
  return g;
}

template <class K>
HomPoly<K> content(const UPoly<K>& u) {
  return gcd_list(std::vector<HomPoly<K>>(u.begin(), u.end()));
}

template <class K>
UPoly<K> divide_all(const UPoly<K>& u, const HomPoly<K>& c) {
  UPoly<K> r;
  r.reserve(u.size());
  for (const auto& x : u) r.push_back(x.is_zero() ? x : exact_div(x, c));
  return r;
}

/// Pseudo-remainder lc(B)^(deg A - deg B + 1) * A mod B.
template <class K>
UPoly<K> pseudo_remainder(UPoly<K> r, const UPoly<K>& b) {
  const std::size_t k = b.size() - 1;
  const HomPoly<K>& lcb = b.back();
  int e = static_cast<int>(r.size()) - static_cast<int>(k);
  while (!r.empty() && r.size() - 1 >= k) {
    std::size_t s = r.size() - 1 - k;
    HomPoly<K> t = r.back();
    for (auto& x : r) x = x * lcb;
    for (std::size_t j = 0; j <= k; ++j)
      if (!b[j].is_zero()) r[j + s] -= t * b[j];
    trim(r);
    --e;
  }
  if (e > 0) {
    HomPoly<K> f = lcb.pow(static_cast<std::uint32_t>(e));
    for (auto& x : r) x = x * f;
  }
  return r;
}

/// Primitive gcd of two primitive polynomials of positive degree in the main variable.
template <class K>
UPoly<K> subresultant_gcd(UPoly<K> a, UPoly<K> b) {
  if (a.size() < b.size()) std::swap(a, b);
  HomPoly<K> g = one_like(a.back());
  HomPoly<K> h = g;
  for (;;) {
    const std::size_t delta = a.size() - b.size();
    UPoly<K> r = pseudo_remainder(a, b);
    if (r.empty()) break;
    if (r.size() == 1) return UPoly<K>{one_like(g)};
    a = std::move(b);
    HomPoly<K> divisor = g * h.pow(static_cast<std::uint32_t>(delta));
    b = divide_all(r, divisor);
    g = a.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact_div(g.pow(static_cast<std::uint32_t>(delta)), h.pow(static_cast<std::uint32_t>(delta - 1)));
    }
  }
  return divide_all(b, content(b));
}

template <class K>
std::size_t highest_variable(const HomPoly<K>& p) {
  std::size_t v = 0;
  for (const auto& t : p.terms())
    for (std::size_t i = p.nvars(); i-- > v;)
      if (t.first[i] != 0) {
        v = i;
        break;
      }
  return v;
}

// Over Q, a common factor h of a and b survives reduction mod any p that
// keeps both images nonzero (Gauss's lemma on primitive integer multiples).
// So a constant gcd mod p proves a and b coprime, which is the usual case and
// avoids coefficient growth in the rational remainder sequence.
inline constexpr std::uint32_t kCoprimalityPrime = 2147483629u;

template <class K>
bool coprime_mod_p(const HomPoly<K>& a, const HomPoly<K>& b) {
  if constexpr (std::is_same_v<K, Rational>) {
    const PrimeField F(kCoprimalityPrime);
    auto reduce = [&](const HomPoly<Rational>& f) -> std::optional<HomPoly<ModP>> {
      std::vector<typename HomPoly<ModP>::Term> terms;
      for (const auto& [m, c] : f.terms()) {
        if (mpz_divisible_ui_p(c.value().get_den_mpz_t(), kCoprimalityPrime)) return std::nullopt;
        terms.emplace_back(m, F.from_rational(c.value()));
      }
      auto r = HomPoly<ModP>::from_terms(F, f.nvars(), std::move(terms));
      if (r.is_zero()) return std::nullopt;
      return r;
    };
    auto ra = reduce(a), rb = reduce(b);
    return ra && rb && gcd(*ra, *rb).is_constant();
  } else {
    return false;
  }
}

// Both arguments nonzero with trivial monomial content.
template <class K>
HomPoly<K> gcd_primitive_monomials(const HomPoly<K>& a, const HomPoly<K>& b) {
  if (a.is_constant() || b.is_constant()) return one_like(a);
  if (coprime_mod_p(a, b)) return one_like(a);
  const std::size_t v = std::max(highest_variable(a), highest_variable(b));
  if (b.is_free_of(v) || a.is_free_of(v)) {
    const HomPoly<K>& with = a.is_free_of(v) ? b : a;
    const HomPoly<K>& without = a.is_free_of(v) ? a : b;
    std::vector<HomPoly<K>> parts;
    for (auto& c : to_univariate(with, v)) parts.push_back(std::move(c));
    parts.push_back(without);
    return gcd_list(std::move(parts));
  }
  UPoly<K> ua = to_univariate(a, v), ub = to_univariate(b, v);
  HomPoly<K> ca = content(ua), cb = content(ub);
  HomPoly<K> c = gcd(ca, cb);
  UPoly<K> g = subresultant_gcd(divide_all(ua, ca), divide_all(ub, cb));
  HomPoly<K> zero(a.field(), a.nvars());
  return c * from_univariate(g, v, zero);
}

template <class K>
HomPoly<K> gcd_unchecked(const HomPoly<K>& a, const HomPoly<K>& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const Monomial ma = a.monomial_content(), mb = b.monomial_content();
  std::vector<std::uint32_t> e(a.nvars());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(ma[i], mb[i]);
  HomPoly<K> g = gcd_primitive_monomials(a.divided_by_monomial(ma), b.divided_by_monomial(mb));
  return g.times_term(Monomial(std::move(e)), a.field().one()).monic();
}

}  // namespace detail

/// Monic greatest common divisor (leading grlex coefficient 1).
template <class K>
HomPoly<K> gcd(const HomPoly<K>& a, const HomPoly<K>& b) {
  if (a.nvars() != b.nvars()) throw ArityError("gcd of polynomials with different arities");
  if (!(a.field() == b.field())) throw FieldMismatch();
  if (a.is_zero() && b.is_zero()) throw InvalidArgument("gcd of two zero polynomials");
  return detail::gcd_unchecked(a, b);
}

template <class K>
struct GcdResult {
  HomPoly<K> gcd;
  /// inputs[i] = gcd * cofactors[i]
  std::vector<HomPoly<K>> cofactors;
};

/// gcd of a list together with the cofactors. The cofactors come from exact
/// division, which doubles as a check that the gcd really divides every input.
template <class K>
GcdResult<K> gcd_with_cofactors(std::span<const HomPoly<K>> ps) {
  if (ps.empty()) throw InvalidArgument("gcd of an empty list");
  for (const auto& p : ps)
    if (p.nvars() != ps.front().nvars()) throw ArityError("gcd of polynomials with different arities");
  HomPoly<K> g = detail::gcd_list(std::vector<HomPoly<K>>(ps.begin(), ps.end()));
  GcdResult<K> out{g, {}};
  for (const auto& p : ps) {
    auto q = try_divide(p, g);
    if (!q) throw std::logic_error("gcd does not divide its input");
    out.cofactors.push_back(std::move(*q));
  }
  return out;
}

template <class K>
HomPoly<K> gcd_many(std::span<const HomPoly<K>> ps) {
  return gcd_with_cofactors(ps).gcd;
}

template <class K>
HomPoly<K> gcd_many(const std::vector<HomPoly<K>>& ps) {
  return gcd_many(std::span<const HomPoly<K>>(ps));
}

}  // namespace cremona
