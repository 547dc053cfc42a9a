#pragma once

// Text form of polynomials.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' ['-'] integer)?
//   atom   := integer | 'z'<index> | 'zeta' | '(' expr ')'
//
// Division is by nonzero constants only, except in rational-function mode
// (affine charts), where any nonzero denominator is allowed.

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "cremona/poly.hpp"

namespace cremona {

/// Polynomial without the homogeneity constraint; used for parsing and affine charts.
template <class K>
class SparsePoly {
 public:
  using Field = typename K::Field;
  using Terms = std::map<Monomial, K, GrlexGreater>;

  SparsePoly(Field field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static SparsePoly constant(Field field, std::size_t nvars, const K& c) {
    SparsePoly p(field, nvars);
    if (!c.is_zero()) p.terms_.emplace(Monomial(nvars), c);
    return p;
  }
  static SparsePoly variable(Field field, std::size_t nvars, std::size_t index) {
    SparsePoly p(field, nvars);
    p.terms_.emplace(Monomial::variable(nvars, index), field.one());
    return p;
  }
  static SparsePoly from_hom(const HomPoly<K>& h) {
    SparsePoly p(h.field(), h.nvars());
    for (const auto& [m, c] : h.terms()) p.terms_.emplace(m, c);
    return p;
  }

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || terms_.begin()->first.degree() == 0; }
  K constant_value() const { return terms_.empty() ? field_.zero() : terms_.begin()->second; }

  /// Largest total degree; -1 for zero.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree()); }

  SparsePoly operator-() const {
    SparsePoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  SparsePoly operator+(const SparsePoly& o) const {
    SparsePoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  SparsePoly operator-(const SparsePoly& o) const { return *this + (-o); }
  SparsePoly operator*(const SparsePoly& o) const {
    SparsePoly r(field_, nvars_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  SparsePoly scaled(const K& c) const {
    SparsePoly r(field_, nvars_);
    for (const auto& [m, cc] : terms_) r.add_term(m, cc * c);
    return r;
  }
  SparsePoly pow(std::uint32_t e) const {
    SparsePoly r = constant(field_, nvars_, field_.one());
    for (std::uint32_t i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  /// The homogeneous polynomial with these terms; throws unless homogeneous.
  HomPoly<K> to_hom() const {
    std::vector<typename HomPoly<K>::Term> ts(terms_.begin(), terms_.end());
    return HomPoly<K>::from_terms(field_, nvars_, std::move(ts));
  }

  /// z_new^e * p(z / z_new) in one extra trailing variable, e >= degree().
  HomPoly<K> homogenize(std::uint32_t e) const {
    std::vector<typename HomPoly<K>::Term> ts;
    for (const auto& [m, c] : terms_) {
      auto ex = m.exponents();
      ex.push_back(e - m.degree());
      ts.emplace_back(Monomial(std::move(ex)), c);
    }
    return HomPoly<K>::from_terms(field_, nvars_ + 1, std::move(ts));
  }

  K evaluate(std::span<const K> point) const {
    K sum = field_.zero();
    for (const auto& [m, c] : terms_) {
      K t = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m[i]) t *= power(point[i], m[i]);
      sum += t;
    }
    return sum;
  }

 private:
  void add_term(const Monomial& m, const K& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Field field_;
  std::size_t nvars_;
  Terms terms_;
};

/// Quotient of two sparse polynomials (not reduced).
template <class K>
struct RationalExpr {
  SparsePoly<K> num;
  SparsePoly<K> den;
};

namespace detail {

template <class K>
class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t nvars, typename K::Field field, bool allow_rational,
             std::size_t offset)
      : text_(text), nvars_(nvars), field_(field), allow_rational_(allow_rational), offset_(offset) {}

  RationalExpr<K> parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail("empty expression");
    RationalExpr<K> r = expr();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return r;
  }

 private:
  using Poly = SparsePoly<K>;
  using Expr = RationalExpr<K>;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, offset_ + pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    throw ParseError(what, offset_ + at);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr constant(const K& c) const { return {Poly::constant(field_, nvars_, c), one()}; }
  Poly one() const { return Poly::constant(field_, nvars_, field_.one()); }

  static Expr add(const Expr& a, const Expr& b, bool subtract) {
    if (a.den.is_constant() && b.den.is_constant() && a.den.constant_value() == b.den.constant_value()) {
      return {subtract ? a.num - b.num : a.num + b.num, a.den};
    }
    Poly lhs = a.num * b.den, rhs = b.num * a.den;
    return {subtract ? lhs - rhs : lhs + rhs, a.den * b.den};
  }

  Expr expr() {
    Expr r = term();
    for (;;) {
      if (accept('+')) r = add(r, term(), false);
      else if (accept('-')) r = add(r, term(), true);
      else return r;
    }
  }

  Expr term() {
    Expr r = unary();
    for (;;) {
      if (accept('*')) {
        Expr b = unary();
        r = {r.num * b.num, r.den * b.den};
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expr b = unary();
        if (b.num.is_zero()) fail_at("division by zero", at);
        if (!allow_rational_ && !(b.num.is_constant() && b.den.is_constant()))
          fail_at("division by a non-constant polynomial", at);
        if (b.num.is_constant() && b.den.is_constant()) {
          K s = b.den.constant_value() / b.num.constant_value();
          r = {r.num.scaled(s), r.den};
        } else {
          r = {r.num * b.den, r.den * b.num};
        }
      } else {
        return r;
      }
    }
  }

  Expr unary() {
    if (accept('-')) {
      Expr r = unary();
      return {-r.num, r.den};
    }
    if (accept('+')) return unary();
    return power_expr();
  }

  Expr power_expr() {
    Expr base = atom();
    if (!accept('^')) return base;
    skip_ws();
    bool negative = accept('-');
    skip_ws();
    std::size_t at = pos_;
    std::string digits = read_digits();
    if (digits.empty()) fail("expected an exponent");
    if (digits.size() > 4) fail_at("exponent too large", at);
    auto e = static_cast<std::uint32_t>(std::stoul(digits));
    if (negative) {
      if (!allow_rational_ && !(base.num.is_constant() && base.den.is_constant()))
        fail_at("negative exponent of a non-constant polynomial", at);
      if (base.num.is_zero()) fail_at("division by zero", at);
      std::swap(base.num, base.den);
    }
    return {base.num.pow(e), base.den.pow(e)};
  }

  std::string read_digits() {
    std::string d;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) d.push_back(text_[pos_++]);
    return d;
  }

  Expr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits = read_digits();
      return constant(field_.from_rational(mpq_class(mpz_class(digits))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        name.push_back(text_[pos_++]);
      if (name == "zeta") {
        if constexpr (std::is_same_v<K, Cyclotomic>) {
          return constant(field_.zeta());
        } else {
          fail_at("'zeta' is only available over CYC(p)", start);
        }
      }
      if (name.size() >= 2 && name[0] == 'z' &&
          name.find_first_not_of("0123456789", 1) == std::string::npos && name.size() <= 6) {
        std::size_t index = std::stoul(name.substr(1));
        if (index >= nvars_)
          fail_at("unknown variable '" + name + "' (expected z0..z" + std::to_string(nvars_ - 1) + ")", start);
        return {Poly::variable(field_, nvars_, index), one()};
      }
      fail_at("unknown variable '" + name + "'", start);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t nvars_;
  typename K::Field field_;
  bool allow_rational_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a rational expression in z0..z_{nvars-1}.
template <class K>
RationalExpr<K> parse_rational_expr(std::string_view text, std::size_t nvars, const typename K::Field& field,
                                    std::size_t offset = 0) {
  return detail::ExprParser<K>(text, nvars, field, true, offset).parse();
}

/// Parses a (not necessarily homogeneous) polynomial.
template <class K>
SparsePoly<K> parse_sparse(std::string_view text, std::size_t nvars, const typename K::Field& field,
                           std::size_t offset = 0) {
  auto r = detail::ExprParser<K>(text, nvars, field, false, offset).parse();
  return r.num.scaled(r.den.constant_value().inverse());
}

/// Parses a homogeneous polynomial; inhomogeneous input raises HomogeneityError.
template <class K>
HomPoly<K> parse_poly(std::string_view text, std::size_t nvars, const typename K::Field& field,
                      std::size_t offset = 0) {
  return parse_sparse<K>(text, nvars, field, offset).to_hom();
}

// ---------------------------------------------------------------------------

inline std::vector<std::string> default_variable_names(std::size_t nvars) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("z" + std::to_string(i));
  return names;
}

namespace detail {

template <class K>
std::pair<bool, K> split_sign(const K& c) {
  if constexpr (std::is_same_v<K, Rational>) {
    if (c.sign() < 0) return {true, -c};
  } else if constexpr (std::is_same_v<K, Cyclotomic>) {
    if (c.is_rational() && sgn(c.coefficients()[0]) < 0) return {true, -c};
  }
  return {false, c};
}

inline std::string monomial_string(const Monomial& m, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

}  // namespace detail

/// Canonical text: terms in descending grlex order, e.g. `z0^2 - 2*z1*z2`.
template <class K>
std::string format_poly(const HomPoly<K>& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    auto [negative, mag] = detail::split_sign(c);
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    std::string mono = detail::monomial_string(m, names);
    if (mono.empty()) out += mag.to_string();
    else if (mag.is_one()) out += mono;
    else out += mag.to_string() + "*" + mono;
  }
  return out;
}

template <class K>
std::string format_poly(const HomPoly<K>& p) {
  return format_poly(p, default_variable_names(p.nvars()));
}

}  // namespace cremona
