#pragma once

// Catalog of explicit maps and the named identities relating them.
//
// Maps given in the affine chart z_n = 1 are homogenized through
// from_affine_chart; the rest are written projectively.

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cremona/rng.hpp"
#include "cremona/words.hpp"

namespace cremona {

inline constexpr std::size_t kDefaultMaxN = 6;

namespace detail {

template <class F>
HomPoly<typename F::Element> z(const F& f, std::size_t n, std::size_t i) {
  return HomPoly<typename F::Element>::variable(f, n + 1, i);
}

template <class F>
HomPoly<typename F::Element> times(const F& f, long k, const HomPoly<typename F::Element>& p) {
  return p.scaled(f.from_int(k));
}

template <class F>
SparsePoly<typename F::Element> chart_var(const F& f, std::size_t n, std::size_t i) {
  return SparsePoly<typename F::Element>::variable(f, n, i);
}

template <class F>
SparsePoly<typename F::Element> chart_const(const F& f, std::size_t n, long c) {
  return SparsePoly<typename F::Element>::constant(f, n, f.from_int(c));
}

template <class F>
RatMap<typename F::Element> make(std::vector<HomPoly<typename F::Element>> comps) {
  return RatMap<typename F::Element>::new_normalized(std::move(comps));
}

inline void check_n(std::size_t n, std::size_t max_n = kDefaultMaxN) {
  if (n < 2 || n > max_n)
    throw InvalidArgument("unsupported dimension n = " + std::to_string(n) + " (supported: 2.." +
                          std::to_string(max_n) + ")");
}

}  // namespace detail

// --- sigma_n and the quadratic map varsigma ---------------------------------

/// sigma_n: the i-th component is the product of every z_j with j != i.
template <class F>
RatMap<typename F::Element> sigma(const F& f, std::size_t n) {
  std::vector<HomPoly<typename F::Element>> c;
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<std::uint32_t> e(n + 1, 1);
    e[i] = 0;
    c.push_back(HomPoly<typename F::Element>::monomial(f, Monomial(std::move(e)), f.one()));
  }
  return detail::make<F>(std::move(c));
}

/// (z0 z_{n-1} : ... : z_{n-2} z_{n-1} : z_{n-1} z_n : z_n^2)
template <class F>
RatMap<typename F::Element> varsigma(const F& f, std::size_t n) {
  using detail::z;
  std::vector<HomPoly<typename F::Element>> c;
  for (std::size_t i = 0; i + 1 < n; ++i) c.push_back(z(f, n, i) * z(f, n, n - 1));
  c.push_back(z(f, n, n - 1) * z(f, n, n));
  c.push_back(z(f, n, n) * z(f, n, n));
  return detail::make<F>(std::move(c));
}

/// Chart inverse of varsigma: (z_i z_n : z_{n-1}^2 : z_{n-1} z_n).
template <class F>
RatMap<typename F::Element> varsigma_inverse(const F& f, std::size_t n) {
  using detail::z;
  std::vector<HomPoly<typename F::Element>> c;
  for (std::size_t i = 0; i + 1 < n; ++i) c.push_back(z(f, n, i) * z(f, n, n));
  c.push_back(z(f, n, n - 1) * z(f, n, n - 1));
  c.push_back(z(f, n, n - 1) * z(f, n, n));
  return detail::make<F>(std::move(c));
}

/// (z2 - z1 : ... : z_n - z1 : z1 : z1 - z0)
template <class F>
RatMap<typename F::Element> varsigma_a1(const F& f, std::size_t n) {
  using detail::z;
  std::vector<HomPoly<typename F::Element>> c;
  for (std::size_t i = 2; i <= n; ++i) c.push_back(z(f, n, i) - z(f, n, 1));
  c.push_back(z(f, n, 1));
  c.push_back(z(f, n, 1) - z(f, n, 0));
  return detail::make<F>(std::move(c));
}

/// (z_{n-1} + z_n : z_n : z0 : ... : z_{n-2})
template <class F>
RatMap<typename F::Element> varsigma_a2(const F& f, std::size_t n) {
  using detail::z;
  std::vector<HomPoly<typename F::Element>> c{z(f, n, n - 1) + z(f, n, n), z(f, n, n)};
  for (std::size_t i = 0; i + 1 < n; ++i) c.push_back(z(f, n, i));
  return detail::make<F>(std::move(c));
}

/// (z0 + z_n : ... : z_{n-2} + z_n : z_{n-1} - z_n : z_n)
template <class F>
RatMap<typename F::Element> varsigma_a3(const F& f, std::size_t n) {
  using detail::z;
  std::vector<HomPoly<typename F::Element>> c;
  for (std::size_t i = 0; i + 1 < n; ++i) c.push_back(z(f, n, i) + z(f, n, n));
  c.push_back(z(f, n, n - 1) - z(f, n, n));
  c.push_back(z(f, n, n));
  return detail::make<F>(std::move(c));
}

/// Element of H in the chart: (a_i z_i z_{n-1}^k, ..., a_{n-1} z_{n-1}), k any integer.
/// varsigma is the case a = 1, k = 1.
template <class F>
RatMap<typename F::Element> h_map(const F& f, std::size_t n, const std::vector<typename F::Element>& alpha, long k) {
  using K = typename F::Element;
  if (alpha.size() != n) throw ArityError("h_map needs n scalars");
  for (const auto& a : alpha)
    if (a.is_zero()) throw InvalidArgument("h_map scalars must be nonzero");
  auto last = detail::chart_var(f, n, n - 1);
  auto pw = last.pow(static_cast<std::uint32_t>(k < 0 ? -k : k));
  auto one = detail::chart_const(f, n, 1);
  std::vector<RationalExpr<K>> chart;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto num = detail::chart_var(f, n, i).scaled(alpha[i]);
    chart.push_back(k >= 0 ? RationalExpr<K>{num * pw, one} : RationalExpr<K>{num, pw});
  }
  chart.push_back({last.scaled(alpha[n - 1]), one});
  return from_affine_chart(chart);
}

// --- psi and -id -------------------------------------------------------------

/// Chart map ((z_i + 1) / (z_i - 1))_i.
template <class F>
RatMap<typename F::Element> psi(const F& f, std::size_t n) {
  std::vector<RationalExpr<typename F::Element>> chart;
  for (std::size_t i = 0; i < n; ++i) {
    auto x = detail::chart_var(f, n, i);
    auto one = detail::chart_const(f, n, 1);
    chart.push_back({x + one, x - one});
  }
  return from_affine_chart(chart);
}

/// (z_i + z_n : z_n), the chart translation by 1.
template <class F>
RatMap<typename F::Element> psi_a1(const F& f, std::size_t n) {
  using detail::z;
  std::vector<HomPoly<typename F::Element>> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(z(f, n, i) + z(f, n, n));
  c.push_back(z(f, n, n));
  return detail::make<F>(std::move(c));
}

/// (z_i - z_n : 2 z_n), the chart map (z_i - 1) / 2.
template <class F>
RatMap<typename F::Element> psi_a2(const F& f, std::size_t n) {
  using detail::z;
  std::vector<HomPoly<typename F::Element>> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(z(f, n, i) - z(f, n, n));
  c.push_back(detail::times(f, 2, z(f, n, n)));
  return detail::make<F>(std::move(c));
}

/// -id of the chart: (-z0 : ... : -z_{n-1} : z_n).
template <class F>
RatMap<typename F::Element> minus_id(const F& f, std::size_t n) {
  using detail::z;
  std::vector<HomPoly<typename F::Element>> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(-z(f, n, i));
  c.push_back(z(f, n, n));
  return detail::make<F>(std::move(c));
}

// --- the quadratic tame map ------------------------------------------------

/// (z0 z_n + z1^2 : z1 z_n : ... : z_{n-1} z_n : z_n^2)
template <class F>
RatMap<typename F::Element> tame(const F& f, std::size_t n) {
  using detail::z;
  std::vector<HomPoly<typename F::Element>> c{z(f, n, 0) * z(f, n, n) + z(f, n, 1) * z(f, n, 1)};
  for (std::size_t i = 1; i < n; ++i) c.push_back(z(f, n, i) * z(f, n, n));
  c.push_back(z(f, n, n) * z(f, n, n));
  return detail::make<F>(std::move(c));
}

/// The linear factors g1..g4 (index 1..4).
template <class F>
RatMap<typename F::Element> tame_factor(const F& f, std::size_t n, int which) {
  using detail::times;
  using detail::z;
  auto Z = [&](std::size_t i) { return z(f, n, i); };
  std::vector<HomPoly<typename F::Element>> c;
  switch (which) {
    case 1:
      c = {Z(2) - Z(1) + Z(0), times(f, 2, Z(1)) - Z(0)};
      for (std::size_t i = 3; i <= n; ++i) c.push_back(Z(i));
      c.push_back(Z(1) - Z(0));
      break;
    case 2:
      c = {Z(0) + Z(2), Z(0), Z(1)};
      for (std::size_t i = 3; i <= n; ++i) c.push_back(Z(i));
      break;
    case 3:
      c = {-Z(1), Z(0) + Z(2) - times(f, 3, Z(1)), Z(0)};
      for (std::size_t i = 3; i <= n; ++i) c.push_back(Z(i));
      break;
    case 4:
      c = {Z(1) - Z(n), -times(f, 2, Z(n)) - Z(0), times(f, 2, Z(n)) - Z(1)};
      for (std::size_t i = 2; i < n; ++i) c.push_back(-Z(i));
      break;
    default:
      throw InvalidArgument("tame factors are numbered 1..4");
  }
  return detail::make<F>(std::move(c));
}

// --- tau_i, eta, h_n ------------------------------------------------------

/// Swaps z_i and z_{n-1}; i <= n-2.
template <class F>
RatMap<typename F::Element> tau(const F& f, std::size_t n, std::size_t i) {
  if (i + 2 > n) throw InvalidArgument("tau_i needs i <= n-2");
  std::vector<HomPoly<typename F::Element>> c;
  for (std::size_t j = 0; j <= n; ++j) c.push_back(detail::z(f, n, j));
  std::swap(c[i], c[n - 1]);
  return detail::make<F>(std::move(c));
}

/// Chart map (z0, ..., z_{n-2}, 1 / z_{n-1}).
template <class F>
RatMap<typename F::Element> eta(const F& f, std::size_t n) {
  std::vector<RationalExpr<typename F::Element>> chart;
  auto one = detail::chart_const(f, n, 1);
  for (std::size_t i = 0; i + 1 < n; ++i) chart.push_back({detail::chart_var(f, n, i), one});
  chart.push_back({one, detail::chart_var(f, n, n - 1)});
  return from_affine_chart(chart);
}

/// Chart map (z0 / (z0 - 1), (z0 - z_i) / (z0 - 1)); homogenizes to a linear map.
template <class F>
RatMap<typename F::Element> hn(const F& f, std::size_t n) {
  std::vector<RationalExpr<typename F::Element>> chart;
  auto x0 = detail::chart_var(f, n, 0);
  auto den = x0 - detail::chart_const(f, n, 1);
  chart.push_back({x0, den});
  for (std::size_t i = 1; i < n; ++i) chart.push_back({x0 - detail::chart_var(f, n, i), den});
  return from_affine_chart(chart);
}

template <class F>
RatMap<typename F::Element> hn_dual(const F& f, std::size_t n) {
  return LinearMap<typename F::Element>::from_ratmap(hn(f, n)).dual().to_ratmap();
}

// --- diagonal maps, g_p, h_p, the translation ------------------------------

/// (a0 z0 : ... : a_n z_n)
template <class F>
RatMap<typename F::Element> diag(const F& f, const std::vector<typename F::Element>& alpha) {
  return LinearMap<typename F::Element>::diagonal(f, alpha).to_ratmap();
}

/// Chart diagonal (a0 z0, ..., a_{n-1} z_{n-1}), i.e. diag(a, 1).
template <class F>
RatMap<typename F::Element> chart_diag(const F& f, std::vector<typename F::Element> alpha) {
  alpha.push_back(f.one());
  return diag(f, alpha);
}

/// A primitive p-th root of unity of the field.
template <class F>
typename F::Element primitive_root(const F& f, std::uint32_t p) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  if constexpr (std::is_same_v<F, CyclotomicField>) {
    if (f.p == p) return f.zeta();
  } else if constexpr (std::is_same_v<F, PrimeField>) {
    if (p != f.p && (f.p - 1) % p == 0)
      for (std::uint32_t g = 2; g < f.p; ++g) {
        auto r = power(f.from_int(g), static_cast<long>((f.p - 1) / p));
        if (!r.is_one()) return r;
      }
  }
  if (p == 2 && !(f.descriptor().kind == FieldKind::PrimeField && f.descriptor().p == 2)) return -f.one();
  throw InvalidArgument("field " + f.descriptor().to_string() + " has no primitive " + std::to_string(p) +
                        "-th root of unity");
}

/// Chart map (xi z0, ..., xi z_{n-1}).
template <class F>
RatMap<typename F::Element> g_p(const F& f, std::size_t n, const typename F::Element& xi) {
  return chart_diag(f, std::vector<typename F::Element>(n, xi));
}

/// Chart map (xi z0, ..., xi z_{n-2}, z_{n-1}).
template <class F>
RatMap<typename F::Element> h_p(const F& f, std::size_t n, const typename F::Element& xi) {
  std::vector<typename F::Element> a(n, xi);
  a.back() = f.one();
  return chart_diag(f, a);
}

/// (z0 : z1 + z_n : ... : z_{n-1} + z_n : z_n)
template <class F>
RatMap<typename F::Element> translation(const F& f, std::size_t n) {
  using detail::z;
  std::vector<HomPoly<typename F::Element>> c{z(f, n, 0)};
  for (std::size_t i = 1; i < n; ++i) c.push_back(z(f, n, i) + z(f, n, n));
  c.push_back(z(f, n, n));
  return detail::make<F>(std::move(c));
}

/// (z0 : 3 z1 : ... : 3 z_{n-1} : z_n)
template <class F>
RatMap<typename F::Element> translation_a(const F& f, std::size_t n) {
  std::vector<typename F::Element> a(n + 1, f.from_int(3));
  a.front() = a.back() = f.one();
  return diag(f, a);
}

/// (2 z0 : z1 + z_n : ... : z_{n-1} + z_n : 2 z_n)
template <class F>
RatMap<typename F::Element> translation_b(const F& f, std::size_t n) {
  using detail::times;
  using detail::z;
  std::vector<HomPoly<typename F::Element>> c{times(f, 2, z(f, n, 0))};
  for (std::size_t i = 1; i < n; ++i) c.push_back(z(f, n, i) + z(f, n, n));
  c.push_back(times(f, 2, z(f, n, n)));
  return detail::make<F>(std::move(c));
}

/// (a z0 + b z1 : c z0 + d z1 : z2 : ... : z_n), preserving the pencil z0 = t z1.
template <class F>
RatMap<typename F::Element> pencil_generator(const F& f, std::size_t n, const typename F::Element& a,
                                             const typename F::Element& b, const typename F::Element& c,
                                             const typename F::Element& d) {
  using detail::z;
  std::vector<HomPoly<typename F::Element>> comps{z(f, n, 0).scaled(a) + z(f, n, 1).scaled(b),
                                                  z(f, n, 0).scaled(c) + z(f, n, 1).scaled(d)};
  for (std::size_t i = 2; i <= n; ++i) comps.push_back(z(f, n, i));
  return detail::make<F>(std::move(comps));
}

// ---------------------------------------------------------------------------

using IntParams = std::vector<std::pair<std::string, long long>>;

template <class K>
struct NamedConstruction {
  std::string name;
  std::size_t n = 0;
  IntParams params;
  RatMap<K> map;
  std::optional<GroupWord> decomposition;
  Alphabet<K> alphabet;
};

template <class K>
struct BuildParams {
  std::optional<std::uint32_t> p;
  std::optional<std::vector<K>> alpha;
  std::optional<std::size_t> i;
  std::optional<long> k;
};

inline const std::vector<std::string>& construction_names() {
  static const std::vector<std::string> names{"sigma", "varsigma", "psi",      "minus_id", "tame",
                                              "tau",   "eta",      "hn",       "hn_dual",  "diag",
                                              "g_p",   "h_p",      "t",        "t_a",      "t_b",
                                              "h_map"};
  return names;
}

namespace detail {

template <class F>
Alphabet<typename F::Element> tau_eta_alphabet(const F& f, std::size_t n) {
  Alphabet<typename F::Element> a;
  for (std::size_t i = 0; i + 1 < n; ++i) a.add("t" + std::to_string(i), tau(f, n, i));
  a.add("e", eta(f, n));
  return a;
}

inline GroupWord tau_eta_word(std::size_t n) {
  std::string w;
  for (std::size_t i = 0; i + 1 < n; ++i) w += "t" + std::to_string(i) + " e t" + std::to_string(i) + " ";
  return GroupWord::parse(w + "e");
}

template <class F>
Alphabet<typename F::Element> varsigma_alphabet(const F& f, std::size_t n) {
  Alphabet<typename F::Element> a;
  a.add("s", sigma(f, n));
  a.add("a1", varsigma_a1(f, n));
  a.add("a2", varsigma_a2(f, n));
  a.add("a3", varsigma_a3(f, n));
  return a;
}

}  // namespace detail

/// Builds a catalog map with its decomposition; the decomposition is checked.
template <class F>
NamedConstruction<typename F::Element> build(const std::string& name, std::size_t n, const F& f,
                                             const BuildParams<typename F::Element>& params = {},
                                             std::size_t max_n = kDefaultMaxN) {
  using K = typename F::Element;
  detail::check_n(n, max_n);
  NamedConstruction<K> c{name, n, {}, RatMap<K>::identity(f, n), std::nullopt, {}};
  auto need_p = [&] {
    if (!params.p) throw InvalidArgument("'" + name + "' needs the parameter p");
    c.params.push_back({"p", *params.p});
    return primitive_root(f, *params.p);
  };
  if (name == "sigma") {
    c.map = sigma(f, n);
    c.alphabet = detail::tau_eta_alphabet(f, n);
    c.decomposition = detail::tau_eta_word(n);
  } else if (name == "varsigma") {
    c.map = varsigma(f, n);
    c.alphabet = detail::varsigma_alphabet(f, n);
    c.decomposition = GroupWord::parse("a1 s a2 s a3");
  } else if (name == "psi") {
    c.map = psi(f, n);
    c.alphabet.add("s", sigma(f, n));
    c.alphabet.add("a1", psi_a1(f, n));
    c.alphabet.add("a2", psi_a2(f, n));
    c.decomposition = GroupWord::parse("a1 s a2");
  } else if (name == "minus_id") {
    c.map = minus_id(f, n);
  } else if (name == "tame") {
    c.map = tame(f, n);
    c.alphabet.add("s", sigma(f, n));
    for (int i = 1; i <= 4; ++i) c.alphabet.add("g" + std::to_string(i), tame_factor(f, n, i));
    c.decomposition = GroupWord::parse("g1 s g2 s g3 s g2 s g4");
  } else if (name == "tau") {
    if (!params.i) throw InvalidArgument("'tau' needs the index i");
    c.params.push_back({"i", static_cast<long long>(*params.i)});
    c.map = tau(f, n, *params.i);
  } else if (name == "eta") {
    c.map = eta(f, n);
  } else if (name == "hn") {
    c.map = hn(f, n);
  } else if (name == "hn_dual") {
    c.map = hn_dual(f, n);
  } else if (name == "diag") {
    if (!params.alpha) throw InvalidArgument("'diag' needs the scalars alpha");
    c.map = diag(f, *params.alpha);
    if (c.map.n() != n) throw ArityError("'diag' needs n+1 scalars");
  } else if (name == "g_p") {
    c.map = g_p(f, n, need_p());
  } else if (name == "h_p") {
    K xi = need_p();
    c.map = h_p(f, n, xi);
    c.alphabet.add("v", varsigma(f, n), varsigma_inverse(f, n));
    c.alphabet.add("g", g_p(f, n, xi));
    c.decomposition = GroupWord::parse("v g v^-1 g^-1");
  } else if (name == "t") {
    c.map = translation(f, n);
    c.alphabet.add("a", translation_a(f, n));
    c.alphabet.add("b", translation_b(f, n));
    c.decomposition = GroupWord::parse("a b a^-1 b^-1");
  } else if (name == "t_a") {
    c.map = translation_a(f, n);
  } else if (name == "t_b") {
    c.map = translation_b(f, n);
  } else if (name == "h_map") {
    const long k = params.k.value_or(1);
    c.params.push_back({"k", k});
    c.map = h_map(f, n, params.alpha.value_or(std::vector<K>(n, f.one())), k);
  } else {
    throw UnknownName("unknown construction '" + name + "'");
  }
  if (c.decomposition && !(evaluate(*c.decomposition, c.alphabet, f, n) == c.map))
    throw std::logic_error("decomposition of '" + name + "' does not evaluate to the map");
  return c;
}

// ---------------------------------------------------------------------------
// Named identities.

struct IdentityReport {
  std::string check;
  std::size_t n = 0;
  IntParams params;
  bool pass = false;
  double millis = 0;
  IntParams detail;
  std::vector<std::string> witness;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 20;  // random diagonals per randomized identity
  std::vector<std::uint32_t> primes{3, 5};
  std::size_t max_n = kDefaultMaxN;
};

inline const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names{
      "sigma_involution",       "varsigma_decomposition",        "psi_decomposition_and_conjugacy",
      "tame_decomposition",     "diag_sigma_relation",           "eta_diag_relation",
      "sigma_tau_eta_product",  "hn_sigma_order_three",          "hn_dual_sigma_not_order_three",
      "translation_commutator", "birkhoff_triple"};
  return names;
}

namespace detail {

inline std::string clip(std::string s) {
  if (s.size() > 240) s = s.substr(0, 237) + "...";
  return s;
}

/// Differing components of two maps, for failure reports.
template <class K>
std::vector<std::string> differences(const std::string& label, const RatMap<K>& lhs, const RatMap<K>& rhs) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i <= lhs.n(); ++i)
    if (!(lhs[i] == rhs[i]))
      out.push_back(clip(label + " component " + std::to_string(i) + ": " + format_poly(lhs[i]) + " vs " +
                         format_poly(rhs[i])));
  return out;
}

/// Accumulates equalities for one report.
struct Checker {
  IdentityReport& report;
  bool ok = true;

  template <class K>
  void equal(const std::string& label, const RatMap<K>& lhs, const RatMap<K>& rhs) {
    if (lhs == rhs) return;
    ok = false;
    auto d = differences(label, lhs, rhs);
    report.witness.insert(report.witness.end(), d.begin(), d.end());
  }

  void require(const std::string& label, bool cond) {
    if (cond) return;
    ok = false;
    report.witness.push_back(label);
  }
};

inline Rational random_rational(Rng& rng) {
  return Rational(rng.nonzero_between(-9, 9), rng.between(1, 9));
}

inline std::vector<Rational> random_scalars(Rng& rng, std::size_t count) {
  std::vector<Rational> a;
  for (std::size_t i = 0; i < count; ++i) a.push_back(random_rational(rng));
  return a;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::size_t n, std::uint64_t salt) {
  std::uint64_t x = seed * 0x9E3779B97F4A7C15ull + n * 0xBF58476D1CE4E5B9ull + salt;
  x ^= x >> 31;
  return x;
}

inline void run_identity(IdentityReport& r, const VerifyOptions& opt, std::optional<std::uint32_t> p) {
  const RationalField Q;
  const std::size_t n = r.n;
  Checker chk{r};
  const auto s = sigma(Q, n);

  if (r.check == "sigma_involution") {
    auto raw = compose_raw(s, s);
    auto id = RatMap<Rational>::new_normalized(raw);
    r.detail = {{"raw_degree", *raw.front().degree()}, {"degree", id.degree()}};
    chk.require("raw degree is not n^2", *raw.front().degree() == n * n);
    chk.equal("sigma o sigma vs id", id, RatMap<Rational>::identity(Q, n));
  } else if (r.check == "varsigma_decomposition") {
    auto c = build("varsigma", n, Q, {}, opt.max_n);
    auto w = evaluate(*c.decomposition, c.alphabet);
    r.detail = {{"degree", c.map.degree()}};
    chk.equal("a1 s a2 s a3 vs varsigma", w, c.map);
    chk.require("varsigma does not have degree 2", c.map.degree() == 2);
  } else if (r.check == "psi_decomposition_and_conjugacy") {
    auto c = build("psi", n, Q, {}, opt.max_n);
    auto w = evaluate(*c.decomposition, c.alphabet);
    chk.equal("a1 s a2 vs psi", w, c.map);
    auto conj = conjugate(minus_id(Q, n), Invertible<Rational>::of(c.map));
    chk.equal("psi (-id) psi^-1 vs sigma", conj, s);
  } else if (r.check == "tame_decomposition") {
    auto c = build("tame", n, Q, {}, opt.max_n);
    chk.equal("g1 s g2 s g3 s g2 s g4 vs tame", evaluate(*c.decomposition, c.alphabet), c.map);
    r.detail = {{"degree", c.map.degree()}};
  } else if (r.check == "diag_sigma_relation") {
    Rng rng(mix_seed(opt.seed, n, 1));
    r.params.push_back({"samples", static_cast<long long>(opt.samples)});
    for (std::size_t k = 0; k < opt.samples; ++k) {
      auto alpha = random_scalars(rng, n + 1);
      std::vector<Rational> sq, inv_sq;
      for (const auto& a : alpha) {
        sq.push_back(a * a);
        inv_sq.push_back((a * a).inverse());
      }
      auto d = Invertible<Rational>::of(diag(Q, alpha));
      auto lhs = conjugate(s, d);
      chk.equal("d s d^-1 vs d^2 s (sample " + std::to_string(k) + ")", lhs, compose(diag(Q, sq), s));
      chk.equal("d s d^-1 vs s d^-2 (sample " + std::to_string(k) + ")", lhs, compose(s, diag(Q, inv_sq)));
    }
  } else if (r.check == "eta_diag_relation") {
    Rng rng(mix_seed(opt.seed, n, 2));
    r.params.push_back({"samples", static_cast<long long>(opt.samples)});
    const auto e = eta(Q, n);
    for (std::size_t k = 0; k < opt.samples; ++k) {
      auto alpha = random_scalars(rng, n);
      auto beta = alpha;
      beta.back() = beta.back().inverse();
      chk.equal("d_beta eta vs eta d_alpha (sample " + std::to_string(k) + ")", compose(chart_diag(Q, beta), e),
                compose(e, chart_diag(Q, alpha)));
    }
  } else if (r.check == "sigma_tau_eta_product") {
    auto a = tau_eta_alphabet(Q, n);
    chk.equal("(t0 e t0)...(t_{n-2} e t_{n-2}) e vs sigma", evaluate(tau_eta_word(n), a), s);
  } else if (r.check == "hn_sigma_order_three") {
    auto h = hn(Q, n);
    chk.require("h_n is not linear", h.degree() == 1);
    chk.equal("(h_n s)^3 vs id", iterate(compose(h, s), 3), RatMap<Rational>::identity(Q, n));
  } else if (r.check == "hn_dual_sigma_not_order_three") {
    auto cube = iterate(compose(hn_dual(Q, n), s), 3);
    r.detail = {{"degree", cube.degree()}};
    chk.require("(h_n^v s)^3 is the identity", !cube.is_identity());
  } else if (r.check == "translation_commutator") {
    auto a = Invertible<Rational>::of(translation_a(Q, n));
    auto b = Invertible<Rational>::of(translation_b(Q, n));
    chk.equal("[a, b] vs t", commutator(a, b), translation(Q, n));
  } else if (r.check == "birkhoff_triple") {
    if (!p) throw InvalidArgument("'birkhoff_triple' needs the prime p");
    r.params.push_back({"p", *p});
    CyclotomicField C(*p);
    const auto xi = C.zeta();
    Invertible<Cyclotomic> v{varsigma(C, n), varsigma_inverse(C, n)};
    auto g = Invertible<Cyclotomic>::of(g_p(C, n, xi));
    auto h = Invertible<Cyclotomic>::of(h_p(C, n, xi));
    auto rep = birkhoff_check(v, g, h, *p);
    if (!rep.commutator_is_c) chk.equal("[varsigma, g_p] vs h_p", commutator(v, g), h.map);
    chk.require("[varsigma, h_p] is not the identity", rep.a_commutes_with_c);
    chk.require("[g_p, h_p] is not the identity", rep.b_commutes_with_c);
    chk.require("h_p^p is not the identity", rep.c_order_divides_p);
  } else {
    throw UnknownName("unknown identity '" + r.check + "'");
  }
  r.pass = chk.ok;
}

}  // namespace detail

/// Runs one named identity exactly; failures carry the differing components.
inline IdentityReport verify_identity(const std::string& name, std::size_t n, const VerifyOptions& opt = {},
                                      std::optional<std::uint32_t> p = std::nullopt) {
  const auto& names = identity_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw UnknownName("unknown identity '" + name + "'");
  detail::check_n(n, opt.max_n);
  IdentityReport r;
  r.check = name;
  r.n = n;
  const auto start = std::chrono::steady_clock::now();
  detail::run_identity(r, opt, p);
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Every registry identity for every n, in registry order, then n, then p.
inline std::vector<IdentityReport> verify_suite(const std::vector<std::size_t>& ns, const VerifyOptions& opt = {},
                                                const std::vector<std::string>& only = {}) {
  std::vector<IdentityReport> out;
  for (const auto& name : identity_names()) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    for (std::size_t n : ns) {
      if (name == "birkhoff_triple") {
        for (auto p : opt.primes) out.push_back(verify_identity(name, n, opt, p));
      } else {
        out.push_back(verify_identity(name, n, opt));
      }
    }
  }
  return out;
}

}  // namespace cremona
