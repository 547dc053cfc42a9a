#pragma once

// Exact coefficient fields: the rationals, prime fields GF(p) and the
// cyclotomic fields Q(zeta_p) for odd primes p.
//
// Every element type carries enough of its field to do arithmetic on its own;
// combining elements of different fields (GF(5) with GF(7), CYC(3) with CYC(5))
// raises FieldMismatch.

#include <gmpxx.h>

#include <cctype>
#include <climits>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "cremona/errors.hpp"

namespace cremona {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

enum class FieldKind { Rationals, PrimeField, Cyclotomic };

/// Runtime description of a coefficient field, as selected on the command line.
struct FieldDescriptor {
  FieldKind kind = FieldKind::Rationals;
  std::uint32_t p = 0;

  static FieldDescriptor rationals() { return {}; }

  static FieldDescriptor prime_field(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
      throw InvalidArgument("GF(p) needs a prime p < 2^31, got " + std::to_string(p));
    return {FieldKind::PrimeField, static_cast<std::uint32_t>(p)};
  }

  // The dense payload has p-1 rational coefficients; the bound keeps
  // multiplication (quadratic in p) reasonable.
  static FieldDescriptor cyclotomic(std::uint64_t p) {
    if (p < 3 || p > 10007 || !is_prime(p))
      throw InvalidArgument("CYC(p) needs an odd prime p <= 10007, got " + std::to_string(p));
    return {FieldKind::Cyclotomic, static_cast<std::uint32_t>(p)};
  }

  /// Accepts `Q`, `GF(p)` and `CYC(p)` (whitespace-insensitive).
  static FieldDescriptor parse(std::string_view text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s == "Q") return rationals();
    auto parse_arg = [&](std::string_view prefix) -> std::optional<std::uint64_t> {
      if (s.size() <= prefix.size() + 2 || s.compare(0, prefix.size(), prefix) != 0 ||
          s[prefix.size()] != '(' || s.back() != ')')
        return std::nullopt;
      std::string digits = s.substr(prefix.size() + 1, s.size() - prefix.size() - 2);
      if (digits.empty() || digits.size() > 12) return std::nullopt;
      for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      return std::stoull(digits);
    };
    if (auto p = parse_arg("GF")) return prime_field(*p);
    if (auto p = parse_arg("CYC")) return cyclotomic(*p);
    throw InvalidArgument("unknown field '" + std::string(text) + "' (expected Q, GF(p) or CYC(p))");
  }

  std::string to_string() const {
    switch (kind) {
      case FieldKind::Rationals: return "Q";
      case FieldKind::PrimeField: return "GF(" + std::to_string(p) + ")";
      case FieldKind::Cyclotomic: return "CYC(" + std::to_string(p) + ")";
    }
    return "?";
  }

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

class Rational;
class ModP;
class Cyclotomic;

// ---------------------------------------------------------------------------
// Field objects. They are small values used to build constants.

struct RationalField {
  using Element = Rational;
  Rational zero() const;
  Rational one() const;
  Rational from_int(long n) const;
  Rational from_rational(const mpq_class& q) const;
  FieldDescriptor descriptor() const { return FieldDescriptor::rationals(); }
  friend bool operator==(const RationalField&, const RationalField&) = default;
};

struct PrimeField {
  using Element = ModP;
  std::uint32_t p = 2;

  explicit PrimeField(std::uint32_t prime = 2) : p(prime) {}
  explicit PrimeField(const FieldDescriptor& d) : p(d.p) {
    if (d.kind != FieldKind::PrimeField) throw FieldMismatch();
  }
  ModP zero() const;
  ModP one() const;
  ModP from_int(long n) const;
  /// Throws BadPrime when p divides the denominator.
  ModP from_rational(const mpq_class& q) const;
  FieldDescriptor descriptor() const { return {FieldKind::PrimeField, p}; }
  friend bool operator==(const PrimeField&, const PrimeField&) = default;
};

struct CyclotomicField {
  using Element = Cyclotomic;
  std::uint32_t p = 3;

  explicit CyclotomicField(std::uint32_t prime = 3) : p(prime) {}
  explicit CyclotomicField(const FieldDescriptor& d) : p(d.p) {
    if (d.kind != FieldKind::Cyclotomic) throw FieldMismatch();
  }
  Cyclotomic zero() const;
  Cyclotomic one() const;
  Cyclotomic from_int(long n) const;
  Cyclotomic from_rational(const mpq_class& q) const;
  /// The class of x modulo the p-th cyclotomic polynomial.
  Cyclotomic zeta() const;
  FieldDescriptor descriptor() const { return {FieldKind::Cyclotomic, p}; }
  friend bool operator==(const CyclotomicField&, const CyclotomicField&) = default;
};

// ---------------------------------------------------------------------------

namespace detail {

inline std::string rational_string(const mpq_class& q) { return q.get_str(); }

inline std::uint32_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

inline std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw DivisionByZero();
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

inline mpz_class int128_to_mpz(__int128 x) {
  const bool neg = x < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
  mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & ~0ull));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

inline std::uint32_t reduce_mpz(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace detail

/// Arbitrary-precision rational number in lowest terms. Values whose numerator
/// and denominator fit in 64 bits stay inline; anything larger lives in a GMP
/// rational, and results that shrink back are demoted.
class Rational {
 public:
  using Field = RationalField;

  Rational() = default;
  Rational(long n) : num_(n) {  // NOLINT(google-explicit-constructor)
    if (n == LONG_MIN) set_small(n, 1);
  }
  explicit Rational(const mpq_class& v) { assign(mpq_class(v)); }
  Rational(long num, long den) {
    if (den == 0) throw DivisionByZero();
    set_small(num, den);
  }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  mpq_class value() const {
    if (big_) return *big_;
    mpq_class q;
    mpz_set_si(q.get_num_mpz_t(), num_);
    mpz_set_si(q.get_den_mpz_t(), den_);
    return q;
  }
  Field field() const { return {}; }
  int sign() const { return big_ ? sgn(*big_) : (num_ > 0) - (num_ < 0); }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const { return !big_ ? den_ == 1 : big_->get_den() == 1; }
  bool is_rational() const { return true; }

  Rational inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (!big_ && num_ != INT64_MIN) return num_ > 0 ? small(den_, num_) : small(-den_, -num_);
    return from_mpq(mpq_class(1) / value());
  }

  Rational operator-() const {
    if (!big_ && num_ != INT64_MIN) return small(-num_, den_);
    return from_mpq(mpq_class(-value()));
  }

  Rational& operator+=(const Rational& o) { return add(o, false); }
  Rational& operator-=(const Rational& o) { return add(o, true); }

  Rational& operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
      std::int64_t r;
      if (den_ == 1 && o.den_ == 1 && !__builtin_mul_overflow(num_, o.num_, &r)) {
        num_ = r;
        return *this;
      }
      // Cross-cancel, then multiply in 128 bits.
      std::int64_t g1 = std::gcd(num_, o.den_), g2 = std::gcd(o.num_, den_);
      if (g1 == 0) g1 = 1;
      if (g2 == 0) g2 = 1;
      __int128 n = static_cast<__int128>(num_ / g1) * (o.num_ / g2);
      __int128 d = static_cast<__int128>(den_ / g2) * (o.den_ / g1);
      if (fits(n) && fits(d)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
        if (num_ == 0) den_ = 1;
        return *this;
      }
    }
    assign(value() * o.value());
    return *this;
  }

  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    return *this *= o.inverse();
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) {
    // Both sides are canonical, so a small value never equals a big one.
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }

  std::string to_string() const {
    if (big_) return detail::rational_string(*big_);
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  static bool fits(__int128 x) { return x > INT64_MIN && x <= INT64_MAX; }

  static Rational small(std::int64_t n, std::int64_t d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }

  static Rational from_mpq(mpq_class q) {
    Rational r;
    r.assign(std::move(q));
    return r;
  }

  void set_small(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    if (n == 0) d = 1;
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      big_.reset();
    } else {
      mpq_class q(detail::int128_to_mpz(n), detail::int128_to_mpz(d));
      q.canonicalize();
      assign(std::move(q));
    }
  }

  /// Stores a canonical mpq, demoting to the inline form when it fits.
  void assign(mpq_class q) {
    q.canonicalize();
    if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t()) &&
        mpz_cmp_si(q.get_num_mpz_t(), LONG_MIN) != 0) {
      num_ = mpz_get_si(q.get_num_mpz_t());
      den_ = mpz_get_si(q.get_den_mpz_t());
      big_.reset();
    } else {
      big_ = std::make_unique<mpq_class>(std::move(q));
    }
  }

  Rational& add(const Rational& o, bool subtract) {
    if (!big_ && !o.big_) {
      std::int64_t r;
      if (den_ == 1 && o.den_ == 1 &&
          !(subtract ? __builtin_sub_overflow(num_, o.num_, &r) : __builtin_add_overflow(num_, o.num_, &r))) {
        num_ = r;
        return *this;
      }
      __int128 a = static_cast<__int128>(num_) * o.den_, b = static_cast<__int128>(o.num_) * den_;
      set_small(subtract ? a - b : a + b, static_cast<__int128>(den_) * o.den_);
      return *this;
    }
    assign(subtract ? mpq_class(value() - o.value()) : mpq_class(value() + o.value()));
    return *this;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

/// Element of GF(p), stored as its least non-negative residue.
class ModP {
 public:
  using Field = PrimeField;

  ModP(std::uint32_t value, std::uint32_t p) : v_(value % p), p_(p) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  Field field() const { return PrimeField(p_); }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_rational() const { return true; }

  ModP inverse() const {
    if (v_ == 0) throw DivisionByZero();
    return {detail::mod_inverse(v_, p_), p_};
  }

  ModP operator-() const { return {v_ == 0 ? 0 : p_ - v_, p_}; }
  ModP& operator+=(const ModP& o) {
    check(o);
    std::uint64_t s = std::uint64_t{v_} + o.v_;
    v_ = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    check(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : static_cast<std::uint32_t>(std::uint64_t{v_} + p_ - o.v_);
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    check(o);
    v_ = static_cast<std::uint32_t>(std::uint64_t{v_} * o.v_ % p_);
    return *this;
  }
  ModP& operator/=(const ModP& o) {
    check(o);
    return *this *= o.inverse();
  }
  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend bool operator==(const ModP& a, const ModP& b) {
    a.check(b);
    return a.v_ == b.v_;
  }

  std::string to_string() const { return std::to_string(v_); }
  friend std::ostream& operator<<(std::ostream& os, const ModP& r) { return os << r.to_string(); }

 private:
  void check(const ModP& o) const {
    if (o.p_ != p_) throw FieldMismatch();
  }

  std::uint32_t v_;
  std::uint32_t p_;
};

/// Element of Q(zeta_p), p an odd prime, as a rational combination of
/// 1, zeta, ..., zeta^(p-2). This basis makes the representation canonical.
class Cyclotomic {
 public:
  using Field = CyclotomicField;

  Cyclotomic(std::uint32_t p, std::vector<mpq_class> coeffs) : p_(p), c_(std::move(coeffs)) {
    if (c_.size() != p_ - 1) throw InvalidArgument("cyclotomic payload must have p-1 coefficients");
    for (auto& q : c_) q.canonicalize();
  }

  std::uint32_t modulus() const { return p_; }
  const std::vector<mpq_class>& coefficients() const { return c_; }
  Field field() const { return CyclotomicField(p_); }

  bool is_zero() const {
    for (const auto& q : c_)
      if (sgn(q) != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) return false;
    return true;
  }
  bool is_one() const { return is_rational() && c_[0] == 1; }

  /// Image under the Galois automorphism zeta -> zeta^k (k coprime to p).
  Cyclotomic galois(std::uint32_t k) const {
    std::vector<mpq_class> wide(p_);
    for (std::size_t j = 0; j < c_.size(); ++j) wide[(j * k) % p_] += c_[j];
    return {p_, fold(std::move(wide))};
  }

  // Inverse via the norm: a * prod_{k=2}^{p-1} sigma_k(a) is rational.
  Cyclotomic inverse() const {
    if (is_zero()) throw DivisionByZero();
    Cyclotomic cofactor = CyclotomicField(p_).one();
    for (std::uint32_t k = 2; k < p_; ++k) cofactor *= galois(k);
    Cyclotomic norm = *this * cofactor;
    mpq_class n = norm.c_[0];
    for (auto& q : cofactor.c_) q /= n;
    return cofactor;
  }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
  }
  Cyclotomic& operator+=(const Cyclotomic& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Cyclotomic& operator*=(const Cyclotomic& o) {
    check(o);
    std::vector<mpq_class> wide(p_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i]) == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        if (sgn(o.c_[j]) == 0) continue;
        wide[(i + j) % p_] += c_[i] * o.c_[j];
      }
    }
    c_ = fold(std::move(wide));
    return *this;
  }
  Cyclotomic& operator/=(const Cyclotomic& o) {
    check(o);
    return *this *= o.inverse();
  }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    a.check(b);
    return a.c_ == b.c_;
  }

  /// `0`, `3/2`, `zeta`, `(1 + 2*zeta^3)`, ...
  std::string to_string() const {
    if (is_rational()) return detail::rational_string(c_[0]);
    std::string out;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (sgn(c_[j]) == 0) continue;
      mpq_class mag = abs(c_[j]);
      bool neg = sgn(c_[j]) < 0;
      if (out.empty()) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      std::string power = j == 1 ? "zeta" : "zeta^" + std::to_string(j);
      if (j == 0) out += mag.get_str();
      else if (mag == 1) out += power;
      else out += mag.get_str() + "*" + power;
    }
    bool single = out.find(' ') == std::string::npos && out[0] != '-';
    return single ? out : "(" + out + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& r) { return os << r.to_string(); }

 private:
  // Reduce a vector modulo x^p - 1 further modulo Phi_p.
  std::vector<mpq_class> fold(std::vector<mpq_class> wide) const {
    mpq_class top = wide[p_ - 1];
    wide.pop_back();
    if (sgn(top) != 0)
      for (auto& q : wide) q -= top;
    return wide;
  }

  void check(const Cyclotomic& o) const {
    if (o.p_ != p_) throw FieldMismatch();
  }

  std::uint32_t p_;
  std::vector<mpq_class> c_;
};

// ---------------------------------------------------------------------------

inline Rational RationalField::zero() const { return Rational(0); }
inline Rational RationalField::one() const { return Rational(1); }
inline Rational RationalField::from_int(long n) const { return Rational(n); }
inline Rational RationalField::from_rational(const mpq_class& q) const { return Rational(q); }

inline ModP PrimeField::zero() const { return {0, p}; }
inline ModP PrimeField::one() const { return {1, p}; }
inline ModP PrimeField::from_int(long n) const {
  long r = n % static_cast<long>(p);
  if (r < 0) r += p;
  return {static_cast<std::uint32_t>(r), p};
}
inline ModP PrimeField::from_rational(const mpq_class& q) const {
  std::uint32_t den = detail::reduce_mpz(q.get_den(), p);
  if (den == 0)
    throw BadPrime("prime " + std::to_string(p) + " divides the denominator of " + q.get_str());
  return ModP(detail::reduce_mpz(q.get_num(), p), p) / ModP(den, p);
}

inline Cyclotomic CyclotomicField::zero() const { return {p, std::vector<mpq_class>(p - 1)}; }
inline Cyclotomic CyclotomicField::one() const { return from_int(1); }
inline Cyclotomic CyclotomicField::from_int(long n) const { return from_rational(mpq_class(n)); }
inline Cyclotomic CyclotomicField::from_rational(const mpq_class& q) const {
  std::vector<mpq_class> c(p - 1);
  c[0] = q;
  return {p, std::move(c)};
}
inline Cyclotomic CyclotomicField::zeta() const {
  std::vector<mpq_class> c(p - 1);
  c[1] = 1;
  return {p, std::move(c)};
}

/// Primitive p-th root of unity of a field; only cyclotomic fields have one here.
template <class F>
typename F::Element root_of_unity(const F& field) {
  if constexpr (std::is_same_v<F, CyclotomicField>) {
    return field.zeta();
  } else {
    throw InvalidArgument("field " + field.descriptor().to_string() + " has no designated root of unity");
  }
}

template <class K>
K power(K base, long e) {
  if (e < 0) {
    base = base.inverse();
    e = -e;
  }
  K r = base.field().one();
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Exact square roots. `nullopt` means no root was found: for Q and GF(p) that
// is a proof that none exists, for Q(zeta_p) only elements of the form
// r * zeta^k are handled.

inline std::optional<Rational> exact_sqrt(const Rational& a) {
  const mpq_class q = a.value();
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
    return std::nullopt;
  mpz_class n = sqrt(mpz_class(q.get_num()));
  mpz_class d = sqrt(mpz_class(q.get_den()));
  return Rational(mpq_class(n, d));
}

inline std::optional<ModP> exact_sqrt(const ModP& a) {
  const std::uint32_t p = a.modulus();
  if (a.is_zero() || p == 2) return a;
  if (detail::mod_pow(a.value(), (p - 1) / 2, p) != 1) return std::nullopt;
  // Tonelli-Shanks.
  std::uint32_t q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint32_t z = 2;
  while (detail::mod_pow(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s, c = detail::mod_pow(z, q, p), t = detail::mod_pow(a.value(), q, p),
                r = detail::mod_pow(a.value(), (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return ModP(static_cast<std::uint32_t>(r), p);
}

inline std::optional<Cyclotomic> exact_sqrt(const Cyclotomic& a) {
  const std::uint32_t p = a.modulus();
  const auto& c = a.coefficients();
  if (a.is_zero()) return a;
  // a = r * zeta^k for k <= p-2 has a single nonzero coordinate;
  // zeta^(p-1) = -(1 + ... + zeta^(p-2)) has all coordinates equal.
  std::optional<std::uint32_t> k;
  mpq_class r;
  std::size_t nonzero = 0;
  for (std::size_t j = 0; j < c.size(); ++j)
    if (sgn(c[j]) != 0) {
      ++nonzero;
      k = static_cast<std::uint32_t>(j);
      r = c[j];
    }
  if (nonzero != 1) {
    bool all_equal = true;
    for (const auto& q : c) all_equal = all_equal && q == c[0];
    if (!all_equal) return std::nullopt;
    k = p - 1;
    r = -c[0];
  }
  auto root = exact_sqrt(Rational(r));
  if (!root) return std::nullopt;
  std::uint64_t half = (std::uint64_t{*k} * ((p + 1) / 2)) % p;
  return power(CyclotomicField(p).zeta(), static_cast<long>(half)) *
         CyclotomicField(p).from_rational(root->value());
}

}  // namespace cremona
