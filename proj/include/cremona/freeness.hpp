#pragma once

// The action of <g_0, ..., g_k, s> on the invariant pencil z0 = t z1 as
// Moebius maps with symbolic coefficients: s acts as t -> 1/t and g_i as
// t -> (a_i t + b_i)/(c_i t + d_i). A word acts trivially on the pencil iff
// its matrix is scalar, so a non-scalar polynomial matrix certifies that the
// word is nontrivial for parameters off the locus R_M where it turns scalar.

#include <array>
#include <chrono>
#include <string>
#include <vector>

#include "cremona/poly_io.hpp"
#include "cremona/words.hpp"

namespace cremona {

/// Parameter variables a_i, b_i, c_i, d_i sit at positions 4i .. 4i+3.
struct MobiusPolyMatrix {
  using Poly = HomPoly<Rational>;
  std::array<Poly, 4> e;  // row-major: e[0] e[1] / e[2] e[3]

  const Poly& operator()(int i, int j) const { return e[2 * i + j]; }

  static MobiusPolyMatrix identity(std::size_t nparams) {
    RationalField Q;
    auto one = Poly::constant(Q, nparams, Q.one());
    Poly zero(Q, nparams);
    return {{one, zero, zero, one}};
  }

  friend MobiusPolyMatrix operator*(const MobiusPolyMatrix& x, const MobiusPolyMatrix& y) {
    return {{x.e[0] * y.e[0] + x.e[1] * y.e[2], x.e[0] * y.e[1] + x.e[1] * y.e[3], x.e[2] * y.e[0] + x.e[3] * y.e[2],
             x.e[2] * y.e[1] + x.e[3] * y.e[3]}};
  }

  /// Projective inverse.
  MobiusPolyMatrix adjugate() const { return {{e[3], -e[1], -e[2], e[0]}}; }

  Poly det() const { return e[0] * e[3] - e[1] * e[2]; }

  /// Scalar as a polynomial matrix: off-diagonal zero and equal diagonal.
  bool is_scalar() const { return e[1].is_zero() && e[2].is_zero() && (e[0] - e[3]).is_zero(); }

  /// Generators of the locus where the matrix becomes scalar.
  std::vector<Poly> scalar_locus() const {
    std::vector<Poly> out;
    for (const Poly& p : {e[1], e[2], e[0] - e[3]})
      if (!p.is_zero()) out.push_back(p.monic());
    return out;
  }

  friend bool operator==(const MobiusPolyMatrix&, const MobiusPolyMatrix&) = default;
};

/// Projective equality: x * y-entry cross products agree.
inline bool projectively_equal(const MobiusPolyMatrix& x, const MobiusPolyMatrix& y) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!(x.e[i] * y.e[j] - x.e[j] * y.e[i]).is_zero()) return false;
  bool xz = true, yz = true;
  for (int i = 0; i < 4; ++i) xz = xz && x.e[i].is_zero(), yz = yz && y.e[i].is_zero();
  return xz == yz;
}

inline std::vector<std::string> parameter_names(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i <= k; ++i)
    for (const char* c : {"a", "b", "c", "d"}) names.push_back(c + std::to_string(i));
  return names;
}

inline std::string generator_name(std::size_t i) { return "g" + std::to_string(i); }
inline const std::string kSigmaLetter = "s";

/// Letter matrices for g_0..g_k and s; inverses are adjugates.
class MobiusAlphabet {
 public:
  explicit MobiusAlphabet(std::size_t k) : k_(k), nparams_(4 * (k + 1)), sigma_(make_sigma(nparams_)) {
    RationalField Q;
    for (std::size_t i = 0; i <= k; ++i) {
      auto v = [&](std::size_t j) { return MobiusPolyMatrix::Poly::variable(Q, nparams_, 4 * i + j); };
      gens_.push_back({{v(0), v(1), v(2), v(3)}});
    }
  }

  std::size_t k() const { return k_; }
  std::size_t nparams() const { return nparams_; }
  const MobiusPolyMatrix& sigma() const { return sigma_; }
  const MobiusPolyMatrix& generator(std::size_t i) const { return gens_.at(i); }

  MobiusPolyMatrix letter(const Letter& l) const {
    if (l.name == kSigmaLetter) return sigma_;
    if (l.name.size() > 1 && l.name[0] == 'g') {
      std::size_t i = 0;
      try {
        i = std::stoul(l.name.substr(1));
      } catch (const std::exception&) {
        throw UnknownName(l.name);
      }
      if (i < gens_.size() && generator_name(i) == l.name) return l.exponent > 0 ? gens_[i] : gens_[i].adjugate();
    }
    throw UnknownName(l.name);
  }

 private:
  static MobiusPolyMatrix make_sigma(std::size_t nparams) {
    RationalField Q;
    auto one = MobiusPolyMatrix::Poly::constant(Q, nparams, Q.one());
    MobiusPolyMatrix::Poly zero(Q, nparams);
    return {{zero, one, one, zero}};
  }

  std::size_t k_, nparams_;
  MobiusPolyMatrix sigma_;
  std::vector<MobiusPolyMatrix> gens_;
};

inline MobiusAlphabet representation_matrices(std::size_t k) { return MobiusAlphabet(k); }

/// Ordered product of the letter matrices; identity for the empty word.
inline MobiusPolyMatrix evaluate_word_matrix(const GroupWord& w, const MobiusAlphabet& alphabet) {
  MobiusPolyMatrix m = MobiusPolyMatrix::identity(alphabet.nparams());
  for (const auto& l : w.letters) m = m * alphabet.letter(l);
  return m;
}

/// Free reduction with s self-inverse.
inline GroupWord reduce_free_word(const GroupWord& w) {
  GroupWord r;
  for (Letter l : w.letters) {
    if (l.name == kSigmaLetter) l.exponent = 1;
    if (!r.letters.empty() && r.letters.back().name == l.name &&
        (r.letters.back().exponent == -l.exponent || l.name == kSigmaLetter))
      r.letters.pop_back();
    else
      r.letters.push_back(l);
  }
  return r;
}

/// Numeric value of the matrix at a parameter point.
inline std::array<Rational, 4> substitute_parameters(const MobiusPolyMatrix& m, const std::vector<Rational>& values) {
  if (values.size() != m.e[0].nvars()) throw ArityError("parameter point has wrong length");
  std::array<Rational, 4> out{Rational(0), Rational(0), Rational(0), Rational(0)};
  for (int i = 0; i < 4; ++i) out[i] = m.e[i].evaluate(values);
  return out;
}

inline bool is_scalar(const std::array<Rational, 4>& m) { return m[1].is_zero() && m[2].is_zero() && m[0] == m[3]; }

struct WordCertificate {
  GroupWord word;
  /// The word over {g_i, s} whose matrix was checked; equals `word` for free products.
  GroupWord expanded;
  /// Total degree per entry, -1 for a zero entry.
  std::array<int, 4> entry_degrees{};
  bool non_scalar = false;
  std::vector<HomPoly<Rational>> locus;
};

struct FreenessOptions {
  /// Word budget; enumeration stops with complete = false beyond it.
  std::size_t max_words = 5'000'000;
  bool keep_certificates = true;
};

struct FreenessReport {
  std::size_t max_len = 0;
  std::size_t k = 0;
  bool subgroup = false;
  std::size_t words = 0;
  std::size_t failures = 0;
  bool complete = true;
  bool pass = false;
  double millis = 0;
  std::vector<WordCertificate> certificates;
};

namespace detail {

struct EnumLetter {
  Letter letter;
  MobiusPolyMatrix matrix;
  GroupWord expansion;
};

inline bool cancels(const Letter& a, const Letter& b) {
  if (a.name != b.name) return false;
  return a.name == kSigmaLetter || a.exponent == -b.exponent;
}

inline FreenessReport enumerate_words(const std::vector<EnumLetter>& letters, std::size_t max_len, std::size_t k,
                                      bool subgroup, const FreenessOptions& opt) {
  if (max_len < 1) throw InvalidArgument("max-len must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  FreenessReport rep;
  rep.max_len = max_len;
  rep.k = k;
  rep.subgroup = subgroup;
  struct Node {
    GroupWord word;
    GroupWord expanded;
    MobiusPolyMatrix m;
  };
  std::vector<Node> level{{GroupWord{}, GroupWord{}, MobiusPolyMatrix::identity(4 * (k + 1))}};
  for (std::size_t len = 1; len <= max_len && rep.complete; ++len) {
    std::vector<Node> next;
    for (const auto& node : level) {
      for (const auto& l : letters) {
        if (!node.word.empty() && cancels(node.word.letters.back(), l.letter)) continue;
        if (rep.words == opt.max_words) {
          rep.complete = false;
          break;
        }
        Node child{node.word * GroupWord{{l.letter}}, reduce_free_word(node.expanded * l.expansion), node.m * l.matrix};
        ++rep.words;
        const bool ok = !child.m.is_scalar();
        rep.failures += !ok;
        if (opt.keep_certificates || !ok) {
          WordCertificate c{child.word, child.expanded, {}, ok, child.m.scalar_locus()};
          for (int i = 0; i < 4; ++i) c.entry_degrees[i] = child.m.e[i].is_zero() ? -1 : static_cast<int>(*child.m.e[i].degree());
          rep.certificates.push_back(std::move(c));
        }
        if (len < max_len) next.push_back(std::move(child));
      }
      if (!rep.complete) break;
    }
    level = std::move(next);
  }
  rep.pass = rep.complete && rep.failures == 0;
  rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace detail

/// Every nonempty reduced word of length <= max_len over {g_i^{+-1}, s}.
inline FreenessReport certify_free_product(std::size_t max_len, std::size_t k, const FreenessOptions& opt = {}) {
  MobiusAlphabet a(k);
  std::vector<detail::EnumLetter> letters;
  for (std::size_t i = 0; i <= k; ++i)
    for (int e : {1, -1}) {
      Letter l{generator_name(i), e};
      letters.push_back({l, a.letter(l), GroupWord{{l}}});
    }
  Letter s{kSigmaLetter, 1};
  letters.push_back({s, a.sigma(), GroupWord{{s}}});
  return detail::enumerate_words(letters, max_len, k, false, opt);
}

/// Every nonempty reduced word of length <= max_len in h_i = g_i s and inverses.
inline FreenessReport certify_free_subgroup(std::size_t max_len, std::size_t k, const FreenessOptions& opt = {}) {
  MobiusAlphabet a(k);
  std::vector<detail::EnumLetter> letters;
  const Letter s{kSigmaLetter, 1};
  for (std::size_t i = 0; i <= k; ++i) {
    const Letter g{generator_name(i), 1}, gi{generator_name(i), -1};
    letters.push_back({{"h" + std::to_string(i), 1}, a.letter(g) * a.sigma(), GroupWord{{g, s}}});
    letters.push_back({{"h" + std::to_string(i), -1}, a.sigma() * a.letter(gi), GroupWord{{s, gi}}});
  }
  return detail::enumerate_words(letters, max_len, k, true, opt);
}

}  // namespace cremona
