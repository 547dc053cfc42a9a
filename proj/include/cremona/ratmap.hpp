#pragma once

// Rational self-maps of P^n, points, and linear automorphisms.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cremona/gcd.hpp"
#include "cremona/poly.hpp"
#include "cremona/poly_io.hpp"

namespace cremona {

template <class K>
class ProjPoint {
 public:
  /// Scales so the first nonzero coordinate is 1.
  explicit ProjPoint(std::vector<K> coords) : c_(std::move(coords)) {
    if (c_.empty()) throw ArityError("a projective point needs at least one coordinate");
    std::size_t i = 0;
    while (i < c_.size() && c_[i].is_zero()) ++i;
    if (i == c_.size()) throw InvalidArgument("all coordinates of a projective point are zero");
    if (!c_[i].is_one()) {
      K s = c_[i].inverse();
      for (auto& x : c_) x *= s;
    }
  }

  std::size_t n() const { return c_.size() - 1; }
  const std::vector<K>& coords() const { return c_; }
  const K& operator[](std::size_t i) const { return c_[i]; }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? ":" : "") + c_[i].to_string();
    return s + ")";
  }

 private:
  std::vector<K> c_;
};

template <class K>
class RatMap {
 public:
  using Field = typename K::Field;
  using Poly = HomPoly<K>;

  /// Divides out the gcd of the components and scales the leading grlex
  /// coefficient of the first nonzero component to 1. Idempotent.
  static RatMap new_normalized(std::vector<Poly> comps) {
    check_shape(comps);
    std::vector<Poly> nonzero;
    for (const auto& c : comps)
      if (!c.is_zero()) nonzero.push_back(c);
    auto g = gcd_with_cofactors(std::span<const Poly>(nonzero));
    std::size_t j = 0;
    for (auto& c : comps)
      if (!c.is_zero()) c = std::move(g.cofactors[j++]);
    K s = comps[first_nonzero(comps)].leading_coefficient().inverse();
    if (!s.is_one())
      for (auto& c : comps) c = c.scaled(s);
    return RatMap(std::move(comps));
  }

  /// Same checks as new_normalized but keeps common factors; for raw composites.
  static std::vector<Poly> checked_components(std::vector<Poly> comps) {
    check_shape(comps);
    return comps;
  }

  static RatMap identity(const Field& field, std::size_t n) {
    std::vector<Poly> comps;
    for (std::size_t i = 0; i <= n; ++i) comps.push_back(Poly::variable(field, n + 1, i));
    return RatMap(std::move(comps));
  }

  const Field& field() const { return comps_.front().field(); }
  std::size_t n() const { return comps_.size() - 1; }
  std::uint32_t degree() const { return *comps_[first_nonzero(comps_)].degree(); }
  const std::vector<Poly>& components() const { return comps_; }
  const Poly& operator[](std::size_t i) const { return comps_[i]; }

  bool is_identity() const { return *this == identity(field(), n()); }

  /// Image of a point; BasePointError when every component vanishes there.
  ProjPoint<K> apply(const ProjPoint<K>& p) const {
    if (p.n() != n()) throw ArityError("point and map live in different dimensions");
    std::vector<K> out;
    out.reserve(comps_.size());
    bool all_zero = true;
    for (const auto& c : comps_) {
      out.push_back(c.evaluate(p.coords()));
      all_zero = all_zero && out.back().is_zero();
    }
    if (all_zero) throw BasePointError();
    return ProjPoint<K>(std::move(out));
  }

  friend bool operator==(const RatMap& a, const RatMap& b) { return a.comps_ == b.comps_; }

 private:
  explicit RatMap(std::vector<Poly> comps) : comps_(std::move(comps)) {}

  static std::size_t first_nonzero(const std::vector<Poly>& comps) {
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (!comps[i].is_zero()) return i;
    throw InvalidArgument("all components of the map are zero");
  }

  static void check_shape(const std::vector<Poly>& comps) {
    if (comps.size() < 2) throw ArityError("a self-map of P^n needs n+1 >= 2 components");
    const std::size_t nvars = comps.front().nvars();
    if (nvars != comps.size()) throw ArityError("a map of P^n needs n+1 components in n+1 variables");
    std::optional<std::uint32_t> d;
    for (const auto& c : comps) {
      if (c.nvars() != nvars) throw ArityError("components have different arities");
      if (!(c.field() == comps.front().field())) throw FieldMismatch();
      if (auto cd = c.degree()) {
        if (d && *d != *cd) throw HomogeneityError("components have unequal degrees");
        d = cd;
      }
    }
    // Degree 0 is allowed: normalizing proportional components gives a constant map.
    if (!d) throw InvalidArgument("all components of the map are zero");
  }

  std::vector<Poly> comps_;
};

/// Components of f(g(z)) before cancelling common factors; degree deg f * deg g.
template <class K>
std::vector<HomPoly<K>> compose_raw(const RatMap<K>& f, const RatMap<K>& g) {
  if (f.n() != g.n()) throw ArityError("composing maps of different dimensions");
  std::vector<HomPoly<K>> out;
  out.reserve(f.n() + 1);
  for (const auto& c : f.components()) out.push_back(c.substitute(g.components()));
  return out;
}

/// f o g, i.e. z -> f(g(z)), normalized.
template <class K>
RatMap<K> compose(const RatMap<K>& f, const RatMap<K>& g) {
  return RatMap<K>::new_normalized(compose_raw(f, g));
}

/// f^e for e >= 0.
template <class K>
RatMap<K> iterate(const RatMap<K>& f, std::uint32_t e) {
  RatMap<K> r = RatMap<K>::identity(f.field(), f.n());
  for (std::uint32_t i = 0; i < e; ++i) r = compose(r, f);
  return r;
}

/// Proportionality of two component lists: f_i g_j = f_j g_i for all i, j.
template <class K>
bool proportional(std::span<const HomPoly<K>> f, std::span<const HomPoly<K>> g) {
  if (f.size() != g.size()) return false;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (!(f[i] * g[j] - f[j] * g[i]).is_zero()) return false;
  return true;
}

/// Homogenizes affine-chart components in z0..z_{n-1} with respect to z_n over
/// their least common denominator.
template <class K>
RatMap<K> from_affine_chart(const std::vector<RationalExpr<K>>& chart) {
  using Poly = HomPoly<K>;
  if (chart.empty()) throw ArityError("an affine chart map needs at least one component");
  const std::size_t n = chart.size();
  std::uint32_t e = 0;
  for (const auto& c : chart) {
    if (c.num.nvars() != n || c.den.nvars() != n) throw ArityError("chart component arity mismatch");
    if (c.den.is_zero()) throw DivisionByZero();
    e = std::max<std::uint32_t>(e, static_cast<std::uint32_t>(std::max(c.num.degree(), c.den.degree())));
  }
  // Component i is N_i / D_i with N_i, D_i homogeneous of degree e; multiplying
  // through by L = lcm(D_i) gives (N_i L / D_i : L), all of degree deg L.
  std::vector<Poly> nums, dens;
  for (const auto& c : chart) {
    nums.push_back(c.num.is_zero() ? Poly(c.num.field(), n + 1) : c.num.homogenize(e));
    dens.push_back(c.den.homogenize(e));
  }
  // lcm of the denominators, reduced by gcds as it grows.
  Poly lcm = dens.front();
  for (std::size_t i = 1; i < n; ++i) lcm = exact_div(lcm * dens[i], gcd(lcm, dens[i]));
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < n; ++i) comps.push_back(nums[i] * exact_div(lcm, dens[i]));
  comps.push_back(lcm);
  return RatMap<K>::new_normalized(std::move(comps));
}

// ---------------------------------------------------------------------------

/// Determinant of a square matrix by Gaussian elimination.
template <class K>
K determinant(std::vector<std::vector<K>> a, const typename K::Field& field) {
  const std::size_t m = a.size();
  K d = field.one();
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    while (piv < m && a[piv][c].is_zero()) ++piv;
    if (piv == m) return field.zero();
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = -d;
    }
    d *= a[c][c];
    K inv = a[c][c].inverse();
    for (std::size_t r = c + 1; r < m; ++r) {
      if (a[r][c].is_zero()) continue;
      K f = a[r][c] * inv;
      for (std::size_t j = c; j < m; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return d;
}

/// Invertible (n+1)x(n+1) matrix acting by z -> M z; equal up to scalars.
template <class K>
class LinearMap {
 public:
  using Field = typename K::Field;
  using Matrix = std::vector<std::vector<K>>;

  LinearMap(Field field, Matrix m) : field_(field), m_(std::move(m)) {
    if (m_.size() < 2) throw ArityError("matrix must be at least 2x2");
    for (const auto& row : m_)
      if (row.size() != m_.size()) throw ArityError("matrix must be square");
    if (det().is_zero()) throw SingularMatrix();
  }

  static LinearMap identity(const Field& field, std::size_t n) {
    Matrix m(n + 1, std::vector<K>(n + 1, field.zero()));
    for (std::size_t i = 0; i <= n; ++i) m[i][i] = field.one();
    return LinearMap(field, std::move(m));
  }

  static LinearMap diagonal(const Field& field, const std::vector<K>& d) {
    Matrix m(d.size(), std::vector<K>(d.size(), field.zero()));
    for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
    return LinearMap(field, std::move(m));
  }

  /// Matrix of a degree-1 map.
  static LinearMap from_ratmap(const RatMap<K>& f) {
    if (f.degree() != 1) throw InvalidArgument("map is not linear (degree " + std::to_string(f.degree()) + ")");
    const std::size_t m = f.n() + 1;
    Matrix mat(m, std::vector<K>(m, f.field().zero()));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) mat[i][j] = f[i].coefficient(Monomial::variable(m, j));
    return LinearMap(f.field(), std::move(mat));
  }

  RatMap<K> to_ratmap() const {
    const std::size_t m = m_.size();
    std::vector<HomPoly<K>> comps;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<typename HomPoly<K>::Term> ts;
      for (std::size_t j = 0; j < m; ++j)
        if (!m_[i][j].is_zero()) ts.emplace_back(Monomial::variable(m, j), m_[i][j]);
      comps.push_back(HomPoly<K>::from_terms(field_, m, std::move(ts)));
    }
    return RatMap<K>::new_normalized(std::move(comps));
  }

  const Field& field() const { return field_; }
  std::size_t n() const { return m_.size() - 1; }
  const Matrix& matrix() const { return m_; }
  const K& operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }

  /// Matrix product; as maps, (a * b) = a o b.
  friend LinearMap operator*(const LinearMap& a, const LinearMap& b) {
    if (a.m_.size() != b.m_.size()) throw ArityError("matrix sizes differ");
    const std::size_t m = a.m_.size();
    Matrix r(m, std::vector<K>(m, a.field_.zero()));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) {
        if (a.m_[i][k].is_zero()) continue;
        for (std::size_t j = 0; j < m; ++j) r[i][j] += a.m_[i][k] * b.m_[k][j];
      }
    return LinearMap(a.field_, std::move(r));
  }

  K det() const { return determinant(m_, field_); }

  /// Exact inverse by Gauss-Jordan elimination.
  LinearMap inverse() const {
    const std::size_t m = m_.size();
    Matrix a = m_;
    Matrix inv(m, std::vector<K>(m, field_.zero()));
    for (std::size_t i = 0; i < m; ++i) inv[i][i] = field_.one();
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t piv = c;
      while (piv < m && a[piv][c].is_zero()) ++piv;
      if (piv == m) throw SingularMatrix();
      std::swap(a[piv], a[c]);
      std::swap(inv[piv], inv[c]);
      K s = a[c][c].inverse();
      for (std::size_t j = 0; j < m; ++j) {
        a[c][j] *= s;
        inv[c][j] *= s;
      }
      for (std::size_t r = 0; r < m; ++r) {
        if (r == c || a[r][c].is_zero()) continue;
        K f = a[r][c];
        for (std::size_t j = 0; j < m; ++j) {
          a[r][j] -= f * a[c][j];
          inv[r][j] -= f * inv[c][j];
        }
      }
    }
    return LinearMap(field_, std::move(inv));
  }

  LinearMap transpose() const {
    const std::size_t m = m_.size();
    Matrix t(m, std::vector<K>(m, field_.zero()));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) t[j][i] = m_[i][j];
    return LinearMap(field_, std::move(t));
  }

  /// g^v = (g^T)^-1.
  LinearMap dual() const { return transpose().inverse(); }

  /// Representative whose first nonzero entry (row-major) is 1.
  LinearMap canonical() const {
    for (const auto& row : m_)
      for (const auto& x : row)
        if (!x.is_zero()) {
          K s = x.inverse();
          Matrix r = m_;
          for (auto& rr : r)
            for (auto& y : rr) y *= s;
          return LinearMap(field_, std::move(r));
        }
    throw SingularMatrix();
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < m_.size(); ++i)
      for (std::size_t j = 0; j < m_.size(); ++j)
        if (i != j && !m_[i][j].is_zero()) return false;
    return true;
  }

  std::vector<K> diagonal_entries() const {
    std::vector<K> d;
    for (std::size_t i = 0; i < m_.size(); ++i) d.push_back(m_[i][i]);
    return d;
  }

  /// Projective equality.
  friend bool operator==(const LinearMap& a, const LinearMap& b) {
    return a.canonical().m_ == b.canonical().m_;
  }

 private:
  Field field_;
  Matrix m_;
};

// ---------------------------------------------------------------------------
// Text form: "[c0; c1; ...; cn]". The projective form has n+1 homogeneous
// components in z0..z_n; the chart form has n rational expressions in
// z0..z_{n-1}.

namespace detail {

struct MapSlice {
  std::string_view text;
  std::size_t offset;
};

inline std::vector<MapSlice> split_map_text(std::string_view text) {
  std::size_t open = text.find_first_not_of(" \t\r\n");
  if (open == std::string_view::npos || text[open] != '[') throw ParseError("expected '['", open == std::string_view::npos ? 0 : open);
  std::size_t close = text.find_last_not_of(" \t\r\n");
  if (text[close] != ']' || close == open) throw ParseError("expected ']'", close);
  std::vector<MapSlice> out;
  std::size_t start = open + 1;
  int depth = 0;
  for (std::size_t i = open + 1; i < close; ++i) {
    if (text[i] == '(') ++depth;
    else if (text[i] == ')') --depth;
    else if (text[i] == '[' || text[i] == ']') throw ParseError("unexpected bracket", i);
    else if (text[i] == ';' && depth == 0) {
      out.push_back({text.substr(start, i - start), start});
      start = i + 1;
    }
  }
  out.push_back({text.substr(start, close - start), start});
  return out;
}

}  // namespace detail

template <class K>
RatMap<K> parse_map(std::string_view text, const typename K::Field& field) {
  auto parts = detail::split_map_text(text);
  std::vector<HomPoly<K>> comps;
  for (const auto& part : parts) comps.push_back(parse_poly<K>(part.text, parts.size(), field, part.offset));
  return RatMap<K>::new_normalized(std::move(comps));
}

/// Chart form: n components, each `num` or `num/den`, in z0..z_{n-1}.
template <class K>
RatMap<K> parse_chart_map(std::string_view text, const typename K::Field& field) {
  auto parts = detail::split_map_text(text);
  std::vector<RationalExpr<K>> chart;
  for (const auto& part : parts) chart.push_back(parse_rational_expr<K>(part.text, parts.size(), field, part.offset));
  return from_affine_chart(chart);
}

template <class K>
std::string format_map(const RatMap<K>& f) {
  std::string s = "[";
  for (std::size_t i = 0; i <= f.n(); ++i) s += (i ? "; " : "") + format_poly(f[i]);
  return s + "]";
}

// ---------------------------------------------------------------------------
// Reduction modulo a prime.

/// Image of a rational polynomial in GF(p)[z]; BadPrime if p divides a denominator.
template <class K>
HomPoly<ModP> reduce_mod(const HomPoly<K>& f, std::uint32_t p) {
  PrimeField target(p);
  if constexpr (std::is_same_v<K, Rational>) {
    return f.map_coefficients(target, [&](const Rational& c) { return target.from_rational(c.value()); });
  } else if constexpr (std::is_same_v<K, ModP>) {
    if (f.field().p != p) throw FieldMismatch();
    return f;
  } else {
    throw InvalidArgument("finite-field reduction is only defined for maps over Q");
  }
}

template <class K>
RatMap<ModP> reduce_mod(const RatMap<K>& f, std::uint32_t p) {
  std::vector<HomPoly<ModP>> comps;
  for (const auto& c : f.components()) comps.push_back(reduce_mod(c, p));
  return RatMap<ModP>::new_normalized(std::move(comps));
}

}  // namespace cremona
