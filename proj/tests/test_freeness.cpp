#include <gtest/gtest.h>

#include "cremona/constructions.hpp"
#include "cremona/freeness.hpp"
#include "support/generators.hpp"

using namespace cremona;

namespace {

const RationalField Q;

using Poly = MobiusPolyMatrix::Poly;

Poly var(std::size_t nparams, std::size_t i) { return Poly::variable(Q, nparams, i); }

// Reduced words of length 1..L by explicit depth-first enumeration. `cancel`
// says whether two adjacent letters reduce.
template <class Cancel>
std::size_t count_reduced(const std::vector<Letter>& letters, std::size_t L, Cancel cancel) {
  std::size_t total = 0;
  std::vector<Letter> w;
  auto rec = [&](auto&& self) -> void {
    if (!w.empty()) ++total;
    if (w.size() == L) return;
    for (const auto& l : letters) {
      if (!w.empty() && cancel(w.back(), l)) continue;
      w.push_back(l);
      self(self);
      w.pop_back();
    }
  };
  rec(rec);
  return total;
}

std::vector<Rational> random_parameters(std::size_t count, Rng& r) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < count; ++i) v.push_back(gen::rational(r));
  return v;
}

}  // namespace

TEST(Freeness, RepresentationMatrices) {
  auto a = representation_matrices(0);
  EXPECT_EQ(a.nparams(), 4u);
  const auto one = Poly::constant(Q, 4, Rational(1));
  const Poly zero(Q, 4);
  EXPECT_EQ(a.sigma(), (MobiusPolyMatrix{{zero, one, one, zero}}));
  EXPECT_EQ(a.generator(0), (MobiusPolyMatrix{{var(4, 0), var(4, 1), var(4, 2), var(4, 3)}}));
  EXPECT_EQ(parameter_names(1), (std::vector<std::string>{"a0", "b0", "c0", "d0", "a1", "b1", "c1", "d1"}));
}

TEST(Freeness, WordMatrices) {
  auto a = representation_matrices(0);
  EXPECT_EQ(evaluate_word_matrix(GroupWord::parse("g0"), a), a.generator(0));
  auto gs = evaluate_word_matrix(GroupWord::parse("g0 s"), a);
  EXPECT_EQ(gs, (MobiusPolyMatrix{{var(4, 1), var(4, 0), var(4, 3), var(4, 2)}}));
  EXPECT_EQ(evaluate_word_matrix(GroupWord::parse("s s"), a), MobiusPolyMatrix::identity(4));
  auto ggi = evaluate_word_matrix(GroupWord::parse("g0 g0^-1"), a);
  EXPECT_TRUE(ggi.is_scalar());
  EXPECT_EQ(ggi.e[0], a.generator(0).det());
  EXPECT_TRUE(evaluate_word_matrix(GroupWord{}, a).is_scalar());
  EXPECT_THROW(evaluate_word_matrix(GroupWord::parse("g1"), a), UnknownName);
  EXPECT_THROW(evaluate_word_matrix(GroupWord::parse("x"), a), UnknownName);
}

TEST(Freeness, ScalarLocusOfConjugatedSigma) {
  auto a = representation_matrices(0);
  auto m = evaluate_word_matrix(GroupWord::parse("g0 s g0^-1 s"), a);
  EXPECT_FALSE(m.is_scalar());
  auto at_identity = substitute_parameters(m, {1, 0, 0, 1});
  EXPECT_TRUE(is_scalar(at_identity));
  for (const auto& p : m.scalar_locus()) EXPECT_TRUE(p.evaluate(std::vector<Rational>{1, 0, 0, 1}).is_zero());
  EXPECT_FALSE(m.scalar_locus().empty());
}

TEST(Freeness, FreeProductCertificates) {
  auto r2 = certify_free_product(2, 0);
  EXPECT_TRUE(r2.pass);
  EXPECT_EQ(r2.words, 3u + 6u);
  auto r6 = certify_free_product(6, 0);
  EXPECT_TRUE(r6.pass);
  auto r4 = certify_free_product(4, 0);
  EXPECT_TRUE(r4.pass);
  for (const auto& c : r4.certificates) {
    EXPECT_FALSE(c.word.empty());
    EXPECT_TRUE(c.non_scalar);
    EXPECT_EQ(c.word, c.expanded);
  }
  EXPECT_THROW(certify_free_product(0, 0), InvalidArgument);
}

TEST(Freeness, SubgroupCertificates) {
  auto r = certify_free_subgroup(3, 1);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.words, 4u + 12u + 36u);
  for (const auto& c : r.certificates) {
    GroupWord raw;
    for (const auto& l : c.word.letters)
      raw = raw * GroupWord::parse(l.exponent > 0 ? "g" + l.name.substr(1) + " s" : "s g" + l.name.substr(1) + "^-1");
    EXPECT_EQ(c.expanded, reduce_free_word(raw)) << c.word.to_string();
    EXPECT_EQ(c.word.to_string().find("h0 h0^-1"), std::string::npos);
  }
}

TEST(Freeness, WordCountsMatchIndependentEnumeration) {
  const std::vector<Letter> product{{"g0", 1}, {"g0", -1}, {"s", 1}};
  auto free_cancel = [](const Letter& x, const Letter& y) {
    return x.name == y.name && (x.name == "s" || x.exponent == -y.exponent);
  };
  const std::size_t product_words = count_reduced(product, 8, free_cancel);
  EXPECT_EQ(product_words, 765u);
  EXPECT_EQ(certify_free_product(8, 0, {.max_words = 5'000'000, .keep_certificates = false}).words, product_words);

  const std::vector<Letter> sub{{"h0", 1}, {"h0", -1}, {"h1", 1}, {"h1", -1}};
  const std::size_t sub_words = count_reduced(sub, 5, free_cancel);
  EXPECT_EQ(sub_words, 484u);
  EXPECT_EQ(certify_free_subgroup(5, 1, {.max_words = 5'000'000, .keep_certificates = false}).words, sub_words);
}

TEST(Freeness, BudgetStopsEnumeration) {
  auto r = certify_free_product(8, 0, {.max_words = 100, .keep_certificates = false});
  EXPECT_FALSE(r.complete);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.words, 100u);
}

TEST(FreenessProperty, ReductionPreservesMatrix) {
  Rng r(501);
  auto a = representation_matrices(1);
  for (int i = 0; i < 1000; ++i) {
    auto w = gen::word({"g0", "g1", "s"}, 6, r);
    ASSERT_TRUE(projectively_equal(evaluate_word_matrix(reduce_free_word(w), a), evaluate_word_matrix(w, a)))
        << w.to_string();
  }
}

TEST(FreenessProperty, DeterminantIsMultiplicative) {
  Rng r(502);
  auto a = representation_matrices(1);
  for (int i = 0; i < 1000; ++i) {
    auto w = gen::word({"g0", "g1", "s"}, 6, r);
    Poly expect = Poly::constant(Q, a.nparams(), Rational(1));
    for (const auto& l : w.letters)
      expect = l.name == "s" ? -expect : expect * a.generator(l.name == "g0" ? 0 : 1).det();
    ASSERT_EQ(evaluate_word_matrix(w, a).det(), expect) << w.to_string();
  }
}

TEST(FreenessProperty, CertifiedWordsStayNontrivialOffTheirLocus) {
  Rng r(503);
  auto rep = certify_free_product(5, 1);
  ASSERT_TRUE(rep.pass);
  auto a = representation_matrices(1);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto& c = rep.certificates[r.below(rep.certificates.size())];
    auto params = random_parameters(a.nparams(), r);
    bool off_locus = false;
    for (const auto& p : c.locus) off_locus = off_locus || !p.evaluate(params).is_zero();
    if (!off_locus) continue;
    auto m = substitute_parameters(evaluate_word_matrix(c.expanded, a), params);
    ASSERT_FALSE(is_scalar(m)) << c.word.to_string();
    ++checked;
  }
  EXPECT_GT(checked, 900u);
}

TEST(FreenessProperty, MatricesMatchPencilAction) {
  // The Moebius matrix of a word predicts z0/z1 of the image of (t:1:2:3)
  // under the same word evaluated with projective maps.
  Rng r(504);
  auto a = representation_matrices(1);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    auto params = random_parameters(a.nparams(), r);
    Alphabet<Rational> maps;
    maps.add("s", sigma(Q, 3));
    bool singular = false;
    for (std::size_t g = 0; g < 2; ++g) {
      const auto* p = &params[4 * g];
      if ((p[0] * p[3] - p[1] * p[2]).is_zero()) singular = true;
      else maps.add(generator_name(g), pencil_generator(Q, 3, p[0], p[1], p[2], p[3]));
    }
    if (singular) continue;
    auto w = gen::word({"g0", "g1", "s"}, 4, r);
    const Rational t = gen::rational(r);
    auto m = substitute_parameters(evaluate_word_matrix(w, a), params);
    const Rational num = m[0] * t + m[1], den = m[2] * t + m[3];
    try {
      auto y = evaluate(w, maps, Q, 3).apply(ProjPoint<Rational>({t, 1, 2, 3}));
      if (den.is_zero() || y[1].is_zero()) continue;
      ASSERT_EQ(y[0] / y[1], num / den) << w.to_string();
      ++checked;
    } catch (const BasePointError&) {
    }
  }
  EXPECT_GT(checked, 100);
}
