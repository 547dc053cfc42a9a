#pragma once

// Words over named generators, evaluated to rational maps left to right:
// the word `a s b` is the map a o s o b.

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cremona/ratmap.hpp"

namespace cremona {

/// Inverse of a linear map or an involution; other maps raise InverseUnavailable.
template <class K>
RatMap<K> try_inverse(const RatMap<K>& f) {
  if (f.degree() == 1) return LinearMap<K>::from_ratmap(f).inverse().to_ratmap();
  if (compose(f, f).is_identity()) return f;
  throw InverseUnavailable("no inverse known for a map of degree " + std::to_string(f.degree()));
}

template <class K>
struct Invertible {
  RatMap<K> map;
  RatMap<K> inverse;

  static Invertible of(const RatMap<K>& f) { return {f, try_inverse(f)}; }
  Invertible inverted() const { return {inverse, map}; }
};

template <class K>
Invertible<K> operator*(const Invertible<K>& a, const Invertible<K>& b) {
  return {compose(a.map, b.map), compose(b.inverse, a.inverse)};
}

/// [f, g] = f o g o f^-1 o g^-1.
template <class K>
RatMap<K> commutator(const Invertible<K>& f, const Invertible<K>& g) {
  return compose(compose(f.map, g.map), compose(f.inverse, g.inverse));
}

/// by o f o by^-1.
template <class K>
RatMap<K> conjugate(const RatMap<K>& f, const Invertible<K>& by) {
  return compose(compose(by.map, f), by.inverse);
}

// ---------------------------------------------------------------------------

struct Letter {
  std::string name;
  int exponent = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

struct GroupWord {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  /// Whitespace-separated letters `name` or `name^k` (k a nonzero integer).
  static GroupWord parse(std::string_view text) {
    GroupWord w;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    while (i < text.size()) {
      const std::size_t start = i;
      if (!(std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        throw ParseError(std::string("unexpected '") + text[i] + "' in word", i);
      std::string name;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        name.push_back(text[i++]);
      long e = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        const std::size_t at = i;
        bool neg = i < text.size() && text[i] == '-';
        if (neg) ++i;
        std::string digits;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits.push_back(text[i++]);
        if (digits.empty() || digits.size() > 4) throw ParseError("bad exponent", at);
        e = std::stol(digits) * (neg ? -1 : 1);
        if (e == 0) throw ParseError("zero exponent", at);
      }
      if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
        throw ParseError(std::string("unexpected '") + text[i] + "' after letter '" + name + "'", i);
      (void)start;
      for (long k = 0; k < (e < 0 ? -e : e); ++k) w.letters.push_back({name, e < 0 ? -1 : 1});
      skip();
    }
    return w;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& l : letters) {
      if (!s.empty()) s += ' ';
      s += l.name;
      if (l.exponent < 0) s += "^-1";
    }
    return s;
  }

  GroupWord inverse() const {
    GroupWord r;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) r.letters.push_back({it->name, -it->exponent});
    return r;
  }

  friend GroupWord operator*(GroupWord a, const GroupWord& b) {
    a.letters.insert(a.letters.end(), b.letters.begin(), b.letters.end());
    return a;
  }
  friend bool operator==(const GroupWord&, const GroupWord&) = default;
};

template <class K>
struct Generator {
  std::string name;
  RatMap<K> map;
  RatMap<K> inverse;
  bool involution = false;
};

template <class K>
class Alphabet {
 public:
  /// Registers a generator with an explicit inverse, checked both ways.
  void add(const std::string& name, const RatMap<K>& map, const RatMap<K>& inverse) {
    if (!compose(map, inverse).is_identity() || !compose(inverse, map).is_identity())
      throw InvalidArgument("supplied inverse of '" + name + "' is wrong");
    insert(name, map, inverse);
  }

  /// Registers a generator whose inverse can be computed (linear maps, involutions).
  void add(const std::string& name, const RatMap<K>& map) {
    insert(name, map, try_inverse(map));
  }

  bool contains(const std::string& name) const { return gens_.count(name) != 0; }

  const Generator<K>& at(const std::string& name) const {
    auto it = gens_.find(name);
    if (it == gens_.end()) throw UnknownName("unknown generator '" + name + "'");
    return it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : gens_) out.push_back(k);
    return out;
  }

  RatMap<K> letter_map(const Letter& l) const {
    const auto& g = at(l.name);
    return l.exponent > 0 ? g.map : g.inverse;
  }

 private:
  void insert(const std::string& name, const RatMap<K>& map, const RatMap<K>& inverse) {
    if (!gens_.empty() && gens_.begin()->second.map.n() != map.n())
      throw ArityError("generator '" + name + "' lives in a different dimension");
    gens_.insert_or_assign(name, Generator<K>{name, map, inverse, map == inverse});
  }

  std::map<std::string, Generator<K>> gens_;
};

/// Cancels x x^-1 and repeated involutions; involutive letters lose their sign.
template <class K>
GroupWord reduce(const GroupWord& w, const Alphabet<K>& alphabet) {
  GroupWord r;
  for (Letter l : w.letters) {
    if (alphabet.at(l.name).involution) l.exponent = 1;
    if (!r.letters.empty() && r.letters.back().name == l.name && r.letters.back().exponent == -l.exponent) {
      r.letters.pop_back();
    } else if (!r.letters.empty() && r.letters.back() == l && alphabet.at(l.name).involution) {
      r.letters.pop_back();
    } else {
      r.letters.push_back(l);
    }
  }
  return r;
}

/// Left-to-right composition; the empty word is the identity of P^n.
template <class K>
RatMap<K> evaluate(const GroupWord& w, const Alphabet<K>& alphabet, const typename K::Field& field, std::size_t n) {
  RatMap<K> r = RatMap<K>::identity(field, n);
  for (const auto& l : w.letters) {
    auto m = alphabet.letter_map(l);
    if (m.n() != n) throw ArityError("generator '" + l.name + "' lives in a different dimension");
    r = compose(r, m);
  }
  return r;
}

/// Evaluates a nonempty word.
template <class K>
RatMap<K> evaluate(const GroupWord& w, const Alphabet<K>& alphabet) {
  if (w.empty()) throw InvalidArgument("the empty word needs an explicit field and dimension");
  const auto& first = alphabet.letter_map(w.letters.front());
  return evaluate(w, alphabet, first.field(), first.n());
}

template <class K>
Invertible<K> evaluate_invertible(const GroupWord& w, const Alphabet<K>& alphabet) {
  return {evaluate(w, alphabet), evaluate(w.inverse(), alphabet)};
}

/// Text binding names to maps, one `name = [c0; ...; cn]` per line; `#` starts a comment.
template <class K>
Alphabet<K> parse_alphabet(std::string_view text, const typename K::Field& field) {
  Alphabet<K> a;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'name = [map]' on line " + std::to_string(lineno), 0);
    std::string name = line.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (name.empty()) throw ParseError("missing name on line " + std::to_string(lineno), 0);
    a.add(name, parse_map<K>(std::string_view(line).substr(eq + 1), field));
  }
  return a;
}

// ---------------------------------------------------------------------------

/// Whether the field has a primitive p-th root of unity.
template <class F>
bool has_primitive_root(const F& field, std::uint32_t p) {
  if (p == 2) return !(field.descriptor().kind == FieldKind::PrimeField && field.descriptor().p == 2);
  if constexpr (std::is_same_v<F, CyclotomicField>) return field.p == p;
  if constexpr (std::is_same_v<F, PrimeField>) return (field.p - 1) % p == 0;
  return false;
}

struct BirkhoffReport {
  std::uint32_t p = 0;
  bool commutator_is_c = false;  // [a, b] = c
  bool a_commutes_with_c = false;
  bool b_commutes_with_c = false;
  bool c_order_divides_p = false;  // c^p = id

  bool all() const { return commutator_is_c && a_commutes_with_c && b_commutes_with_c && c_order_divides_p; }
};

/// Birkhoff relations for a triple (a, b, c) and a prime p.
template <class K>
BirkhoffReport birkhoff_check(const Invertible<K>& a, const Invertible<K>& b, const Invertible<K>& c,
                              std::uint32_t p) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  if (!has_primitive_root(a.map.field(), p))
    throw InvalidArgument("field " + a.map.field().descriptor().to_string() + " has no primitive " +
                          std::to_string(p) + "-th root of unity");
  BirkhoffReport r;
  r.p = p;
  r.commutator_is_c = commutator(a, b) == c.map;
  r.a_commutes_with_c = commutator(a, c).is_identity();
  r.b_commutes_with_c = commutator(b, c).is_identity();
  r.c_order_divides_p = iterate(c.map, p).is_identity();
  return r;
}

// ---------------------------------------------------------------------------
// Rewriting a word as a product of conjugates of sigma:
//   d s d^-1 = d^2 s           (d diagonal)
//   D = E d^2 E^-1 = (E d s d^-1 E^-1) (E s E^-1)

/// A diagonalization M = E D E^-1 of a linear letter.
template <class K>
struct Eigenbasis {
  LinearMap<K> eigenvectors;  // E
  std::vector<K> eigenvalues;  // diagonal of D
};

template <class K>
struct ConjugateProduct {
  /// w = prod_i (g_i s g_i^-1)
  std::vector<LinearMap<K>> conjugators;
  RatMap<K> value;
};

namespace detail {

/// gamma with diag(gamma)^2 = diag(d) projectively, if one exists.
template <class K>
std::optional<std::vector<K>> projective_square_root(const std::vector<K>& d) {
  std::vector<K> out;
  for (const auto& x : d) {
    auto r = exact_sqrt(x / d.front());
    if (!r) return std::nullopt;
    out.push_back(*r);
  }
  return out;
}

}  // namespace detail

/// Conjugators g_i with w = prod (g_i s g_i^-1), where s names sigma. Letters
/// must be sigma, diagonal, or carry an eigenbasis in `factorizations`; the
/// result is re-verified by composition before it is returned.
template <class K>
ConjugateProduct<K> conjugate_product_rewrite(const GroupWord& word, const Alphabet<K>& alphabet,
                                              const std::string& sigma_name = "s",
                                              const std::map<std::string, Eigenbasis<K>>& factorizations = {}) {
  const GroupWord w = reduce(word, alphabet);
  const RatMap<K>& sigma = alphabet.at(sigma_name).map;
  const auto& field = sigma.field();
  const std::size_t n = sigma.n();
  const LinearMap<K> id = LinearMap<K>::identity(field, n);
  std::vector<LinearMap<K>> out;

  for (std::size_t i = 0; i < w.size(); ++i) {
    const Letter& l = w.letters[i];
    if (l.name == sigma_name) {
      out.push_back(id);
      continue;
    }
    const RatMap<K> m = alphabet.letter_map(l);
    if (m.degree() != 1)
      throw UnsupportedRewrite("letter '" + l.name + "' is not linear and not sigma");
    const LinearMap<K> lin = LinearMap<K>::from_ratmap(m);
    LinearMap<K> basis = id;
    std::vector<K> eig;
    if (lin.is_diagonal()) {
      eig = lin.diagonal_entries();
    } else if (auto it = factorizations.find(l.name); it != factorizations.end()) {
      basis = it->second.eigenvectors;
      eig = it->second.eigenvalues;
      if (l.exponent < 0)
        for (auto& x : eig) x = x.inverse();
      if (!(basis * LinearMap<K>::diagonal(field, eig) * basis.inverse() == lin))
        throw InvalidArgument("supplied eigenbasis does not diagonalize '" + l.name + "'");
    } else {
      throw UnsupportedRewrite("letter '" + l.name + "' is not diagonal and has no eigenbasis");
    }
    auto gamma = detail::projective_square_root(eig);
    if (!gamma)
      throw UnsupportedRewrite("eigenvalues of '" + l.name + "' are not squares up to a common scalar");
    const LinearMap<K> conj = basis * LinearMap<K>::diagonal(field, *gamma);
    const bool next_is_sigma = i + 1 < w.size() && w.letters[i + 1].name == sigma_name;
    out.push_back(conj);
    if (lin.is_diagonal() && next_is_sigma) {
      ++i;  // d^2 s = d s d^-1
    } else {
      out.push_back(basis);
    }
  }

  RatMap<K> value = RatMap<K>::identity(field, n);
  for (const auto& g : out) {
    Invertible<K> gi{g.to_ratmap(), g.inverse().to_ratmap()};
    value = compose(value, conjugate(sigma, gi));
  }
  const RatMap<K> expected = evaluate(w, alphabet, field, n);
  if (!(value == expected)) throw std::logic_error("conjugate product does not reproduce the word");
  return {std::move(out), std::move(value)};
}

}  // namespace cremona
