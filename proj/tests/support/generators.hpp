#pragma once

// Hand-rolled random generators for the property tests. Everything is driven
// by cremona::Rng so a failing case is reproduced from its seed alone.

#include <string>
#include <vector>

#include "cremona/constructions.hpp"
#include "cremona/pan.hpp"
#include "cremona/ratmap.hpp"
#include "cremona/rng.hpp"

namespace gen {

using cremona::HomPoly;
using cremona::Monomial;
using cremona::Rational;
using cremona::RatMap;
using cremona::Rng;

inline Rational rational(Rng& r, long num = 9, long den = 9) {
  return Rational(r.between(-num, num), r.between(1, den));
}

inline Rational nonzero_rational(Rng& r, long num = 9, long den = 9) {
  return Rational(r.nonzero_between(-num, num), r.between(1, den));
}

/// Element of the field with small random content.
template <class F>
typename F::Element element(const F& f, Rng& r) {
  if constexpr (std::is_same_v<F, cremona::RationalField>) {
    return rational(r);
  } else if constexpr (std::is_same_v<F, cremona::PrimeField>) {
    return f.from_int(static_cast<long>(r.below(f.p)));
  } else {
    std::vector<mpq_class> c(f.p - 1);
    for (auto& q : c) q = mpq_class(r.between(-4, 4), r.between(1, 3));
    return cremona::Cyclotomic(f.p, std::move(c));
  }
}

/// Homogeneous form with each monomial present with probability density/8.
template <class F>
HomPoly<typename F::Element> form(const F& f, std::size_t nvars, std::uint32_t degree, Rng& r, unsigned density = 4) {
  using K = typename F::Element;
  std::vector<typename HomPoly<K>::Term> terms;
  for (auto& m : cremona::monomials_of_degree(nvars, degree))
    if (r.below(8) < density) terms.emplace_back(std::move(m), element(f, r));
  return HomPoly<K>::from_terms(f, nvars, std::move(terms));
}

template <class F>
HomPoly<typename F::Element> nonzero_form(const F& f, std::size_t nvars, std::uint32_t degree, Rng& r,
                                          unsigned density = 4) {
  for (;;) {
    auto p = form(f, nvars, degree, r, density);
    if (!p.is_zero()) return p;
  }
}

/// Random map of P^n of the given degree with no zero component.
template <class F>
RatMap<typename F::Element> map(const F& f, std::size_t n, std::uint32_t degree, Rng& r) {
  std::vector<HomPoly<typename F::Element>> comps;
  for (std::size_t i = 0; i <= n; ++i) comps.push_back(nonzero_form(f, n + 1, degree, r));
  return RatMap<typename F::Element>::new_normalized(std::move(comps));
}

/// Invertible linear map of P^n with small integer entries.
inline RatMap<Rational> linear_automorphism(std::size_t n, Rng& r) {
  cremona::RationalField Q;
  for (;;) {
    std::vector<std::vector<Rational>> m(n + 1, std::vector<Rational>(n + 1, Q.zero()));
    for (auto& row : m)
      for (auto& x : row) x = Q.from_int(r.between(-3, 3));
    if (cremona::determinant(m, Q).is_zero()) continue;
    return cremona::LinearMap<Rational>(Q, std::move(m)).to_ratmap();
  }
}

/// Random reduced-or-not word over the given letter names.
inline cremona::GroupWord word(const std::vector<std::string>& names, std::size_t max_len, Rng& r) {
  cremona::GroupWord w;
  const std::size_t len = r.below(max_len + 1);
  for (std::size_t i = 0; i < len; ++i)
    w.letters.push_back({names[r.below(names.size())], r.below(2) ? 1 : -1});
  return w;
}

// ---------------------------------------------------------------------------
// Pan data.

enum class RKind { linear, sigma, power, generic, psi_shape };

inline const char* to_string(RKind k) {
  switch (k) {
    case RKind::linear: return "linear";
    case RKind::sigma: return "sigma";
    case RKind::power: return "power";
    case RKind::generic: return "generic";
    case RKind::psi_shape: return "psi_shape";
  }
  return "?";
}

struct PanCase {
  cremona::PanSpec<Rational> spec;
  RKind kind;
};

/// Composite of a map given by components with a random linear change of variables.
inline std::vector<HomPoly<Rational>> precompose_linear(const std::vector<HomPoly<Rational>>& comps, Rng& r) {
  auto L = linear_automorphism(comps.size() - 1, r);
  std::vector<HomPoly<Rational>> out;
  for (const auto& c : comps) out.push_back(c.substitute(L.components()));
  return out;
}

/// R of the requested kind: n forms in z0..z_{n-1} of degree deg.
inline std::vector<HomPoly<Rational>> r_components(std::size_t n, std::uint32_t deg, RKind kind, Rng& r) {
  cremona::RationalField Q;
  std::vector<HomPoly<Rational>> R;
  switch (kind) {
    case RKind::linear:
      return linear_automorphism(n - 1, r).components();
    case RKind::sigma:
      return precompose_linear(cremona::sigma(Q, n - 1).components(), r);
    case RKind::power:
      for (std::size_t i = 0; i < n; ++i) R.push_back(HomPoly<Rational>::variable(Q, n, i).pow(deg));
      return precompose_linear(R, r);
    case RKind::generic:
      for (std::size_t i = 0; i < n; ++i) R.push_back(nonzero_form(Q, n, deg, r, 6));
      return R;
    case RKind::psi_shape: {
      // (q z0 : q z1 : z2 a + b) on P^2 with deg q = 1, a linear, b quadratic in z0, z1.
      for (;;) {
        auto q = nonzero_form(Q, 2, 1, r, 8).with_extra_variables(1);
        auto a = nonzero_form(Q, 2, 1, r, 8).with_extra_variables(1);
        auto b = form(Q, 2, 2, r, 6).with_extra_variables(1);
        auto z = [&](std::size_t i) { return HomPoly<Rational>::variable(Q, 3, i); };
        auto last = b.is_zero() ? z(2) * a : z(2) * a + b;
        if (!cremona::gcd(q, last).is_constant()) continue;
        return {q * z(0), q * z(1), last};
      }
    }
  }
  return R;
}

/// At every prime the reduction keeps its degree and has an etale point
/// off the base locus, so the fiber oracle can sample it.
template <class K>
bool reduces_well(const RatMap<K>& f, const std::vector<std::uint32_t>& primes) {
  for (auto p : primes) {
    try {
      auto red = cremona::reduce_mod(f, p);
      if (red.degree() != f.degree()) return false;
      cremona::FiberTable t(red);
      bool etale = false;
      for (std::size_t i = 0; i < t.size() && !etale; ++i) etale = !t.is_base(i) && t.is_etale(i);
      if (!etale) return false;
    } catch (const cremona::Error&) {
      return false;
    }
  }
  return true;
}

/// Valid Pan data with n in {2, 3} and d <= max_d whose Psi and Psi~ reduce
/// well modulo every prime in `primes`.
inline PanCase pan_case(Rng& r, const std::vector<std::uint32_t>& primes, std::uint32_t max_d = 4) {
  cremona::RationalField Q;
  for (;;) {
    const std::size_t n = 2 + r.below(2);
    std::vector<RKind> kinds{RKind::generic, RKind::power, RKind::linear};
    if (n == 3) kinds.insert(kinds.end(), {RKind::sigma, RKind::psi_shape});
    const RKind kind = kinds[r.below(kinds.size())];
    std::uint32_t rdeg;
    switch (kind) {
      case RKind::linear: rdeg = 1; break;
      case RKind::sigma: rdeg = static_cast<std::uint32_t>(n - 1); break;
      case RKind::psi_shape: rdeg = 2; break;
      default: rdeg = 1 + static_cast<std::uint32_t>(r.below(max_d - 1));
    }
    if (rdeg + 1 > max_d) continue;
    const std::uint32_t l = 1 + static_cast<std::uint32_t>(r.below(max_d - rdeg));
    const std::uint32_t d = l + rdeg;
    auto zn = HomPoly<Rational>::variable(Q, n + 1, n);
    auto split_form = [&](std::uint32_t deg) {
      auto high = form(Q, n, deg - 1, r, 5).with_extra_variables(1);
      auto low = form(Q, n, deg, r, 5).with_extra_variables(1);
      if (high.is_zero()) return low;
      return low.is_zero() ? zn * high : zn * high + low;
    };
    cremona::PanSpec<Rational> s{n, split_form(d), split_form(l), r_components(n, rdeg, kind, r)};
    if (!s.violations().empty()) continue;
    if (!reduces_well(cremona::build_psi(s), primes) || !reduces_well(cremona::build_psi_tilde(s), primes)) continue;
    return {std::move(s), kind};
  }
}

}  // namespace gen
