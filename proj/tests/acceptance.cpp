// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Every equality is exact; the only tolerances are the wall-clock limits below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "cremona/constructions.hpp"
#include "cremona/freeness.hpp"
#include "cremona/gcd.hpp"
#include "cremona/pan.hpp"
#include "support/cli_run.hpp"
#include "support/pan_checks.hpp"

using namespace cremona;

namespace {

const RationalField Q;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Limits in seconds. A criterion with a per-n limit checks each n itself and
// reports the slowest one; the total limit still applies.
constexpr double kPerNSigma = 1.0;
constexpr double kPerNVarsigma = 1.0;
constexpr double kPerNTame = 5.0;
constexpr double kBirkhoffTotal = 10.0;
constexpr double kPanOracleTotal = 60.0;
constexpr double kFreenessTotal = 60.0;
constexpr double kUnboundedTotal = 300.0;  // criteria with no stated limit

constexpr std::size_t kPanSpecs = 100;
constexpr std::uint64_t kPanFirstSeed = 1000;
constexpr std::size_t kBlowdowns = 24;
constexpr int kPropertyCases = 1000;

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

// Runs one named identity for each n; fails on a red report or a slow n.
Outcome identities(const std::vector<std::string>& names, const std::vector<std::size_t>& ns, double per_n_limit) {
  Outcome o;
  double slowest = 0;
  for (std::size_t n : ns) {
    const auto t = std::chrono::steady_clock::now();
    for (const auto& name : names) {
      auto r = verify_identity(name, n);
      if (!r.pass) fail(o, name + " n=" + std::to_string(n) + (r.witness.empty() ? "" : ": " + r.witness[0]));
    }
    const double s = seconds_since(t);
    slowest = std::max(slowest, s);
    if (s > per_n_limit) fail(o, "n=" + std::to_string(n) + " took " + std::to_string(s) + " s");
  }
  if (o.pass) o.detail = "slowest n " + std::to_string(slowest) + " s";
  return o;
}

Outcome criterion_1() { return identities({"sigma_involution"}, {2, 3, 4, 5}, kPerNSigma); }

Outcome criterion_2() {
  auto o = identities({"varsigma_decomposition"}, {3, 4, 5}, kPerNVarsigma);
  for (std::size_t n : {3u, 4u, 5u})
    if (varsigma(Q, n).degree() != 2) fail(o, "deg varsigma != 2 at n=" + std::to_string(n));
  return o;
}

Outcome criterion_3() { return identities({"tame_decomposition"}, {3, 4}, kPerNTame); }

Outcome criterion_4() { return identities({"psi_decomposition_and_conjugacy"}, {2, 3, 4}, kUnboundedTotal); }

Outcome criterion_5() {
  auto o = identities({"diag_sigma_relation"}, {2, 3, 4}, kUnboundedTotal);
  if (VerifyOptions{}.samples < 20) fail(o, "fewer than 20 diagonals");
  return o;
}

Outcome criterion_6() {
  auto o = identities({"sigma_tau_eta_product", "eta_diag_relation"}, {3, 4}, kUnboundedTotal);
  auto p = identities({"hn_sigma_order_three", "hn_dual_sigma_not_order_three"}, {2, 3, 4}, kUnboundedTotal);
  if (!p.pass) fail(o, p.detail);
  return o;
}

Outcome criterion_7() {
  auto o = identities({"translation_commutator"}, {3, 4}, kUnboundedTotal);
  Rng r(7007);
  for (std::size_t n : {3u, 4u}) {
    for (int k = 0; k < 20; ++k) {
      std::vector<Rational> sq;
      for (std::size_t i = 0; i <= n; ++i) {
        auto a = Rational(r.nonzero_between(-9, 9), r.between(1, 9));
        sq.push_back(a * a);
      }
      Alphabet<Rational> a;
      a.add("s", sigma(Q, n));
      a.add("d", diag(Q, sq));
      auto w = GroupWord::parse("d s");
      auto rw = conjugate_product_rewrite(w, a);
      // Re-verify: the product of the conjugates is the word's value.
      RatMap<Rational> product = RatMap<Rational>::identity(Q, n);
      for (const auto& c : rw.conjugators)
        product = compose(product, conjugate(sigma(Q, n), Invertible<Rational>::of(c.to_ratmap())));
      if (rw.value != evaluate(w, a) || product != rw.value) fail(o, "rewrite of d^2 s differs at n=" + std::to_string(n));
    }
  }
  return o;
}

Outcome criterion_8() {
  Outcome o;
  const auto t = std::chrono::steady_clock::now();
  for (auto [n, p] : {std::pair<std::size_t, std::uint32_t>{2, 3}, {3, 3}, {2, 5}}) {
    auto r = verify_identity("birkhoff_triple", n, {}, p);
    if (!r.pass) fail(o, "n=" + std::to_string(n) + " p=" + std::to_string(p));
  }
  const double s = seconds_since(t);
  if (s > kBirkhoffTotal) fail(o, "took " + std::to_string(s) + " s");
  if (o.pass) o.detail = std::to_string(s) + " s";
  return o;
}

Outcome criterion_9() {
  Outcome o;
  const auto t = std::chrono::steady_clock::now();
  std::size_t birational = 0, probabilistic = 0;
  for (std::uint64_t seed = kPanFirstSeed; seed < kPanFirstSeed + kPanSpecs; ++seed) {
    auto a = gen::agreement_case(seed);
    if (!a.ok) fail(o, "seed " + std::to_string(seed) + ": " + a.detail);
    birational += a.verdict.verdict == Verdict::birational;
    probabilistic += a.verdict.tag == "probabilistic";
  }
  const double s = seconds_since(t);
  if (s > kPanOracleTotal) fail(o, "took " + std::to_string(s) + " s");
  if (o.pass)
    o.detail = std::to_string(kPanSpecs) + " specs, " + std::to_string(birational) + " birational (" +
               std::to_string(probabilistic) + " probabilistic), " + std::to_string(s) + " s";
  return o;
}

Outcome criterion_10() {
  Outcome o;
  Rng r(1010);
  for (std::uint64_t seed = 0; seed < kBlowdowns; ++seed) {
    const std::uint32_t l = 2 + static_cast<std::uint32_t>(seed % 2);
    auto q = gen::blowdown_hypersurface(l, r);
    auto bd = blowdown_build(q, l + 1, seed);
    if (bd.psi.degree() != l + 1) fail(o, "degree of blow-down of " + format_poly(q));
    for (std::uint32_t p : {7u, 11u}) {
      auto c = contraction_check(bd.psi, q, p);
      if (!c.pass || !c.image || format_point(*c.image) != "(0:0:0:1)")
        fail(o, "contraction of " + format_poly(q) + " over GF(" + std::to_string(p) + ")");
    }
  }
  if (o.pass) o.detail = std::to_string(kBlowdowns) + " hypersurfaces";
  return o;
}

Outcome criterion_11() {
  Outcome o;
  const auto t = std::chrono::steady_clock::now();
  const FreenessOptions opt{.max_words = 5'000'000, .keep_certificates = false};
  auto a = certify_free_product(8, 0, opt);
  auto b = certify_free_subgroup(5, 1, opt);
  if (!a.pass) fail(o, "free product: " + std::to_string(a.failures) + " scalar words");
  if (!b.pass) fail(o, "subgroup: " + std::to_string(b.failures) + " scalar words");
  const double s = seconds_since(t);
  if (s > kFreenessTotal) fail(o, "took " + std::to_string(s) + " s");
  if (o.pass)
    o.detail = std::to_string(a.words) + " + " + std::to_string(b.words) + " words, " + std::to_string(s) + " s";
  return o;
}

Outcome criterion_12() {
  Outcome o;
  Rng r(1212);
  for (int i = 0; i < kPropertyCases; ++i) {
    const std::size_t nv = 2 + r.below(3);
    auto g = gen::nonzero_form(Q, nv, r.below(3), r);
    auto a = g * gen::nonzero_form(Q, nv, 1 + r.below(2), r);
    auto b = g * gen::nonzero_form(Q, nv, 1 + r.below(2), r);
    auto h = gcd(a, b);
    if (!divides(g, h) || exact_div(a, h) * h != a || !gcd(exact_div(a, h), exact_div(b, h)).is_constant())
      fail(o, "gcd/exact_div case " + std::to_string(i));
  }
  for (int i = 0; i < kPropertyCases; ++i) {
    const std::size_t nv = 2 + r.below(2);
    auto a = gen::nonzero_form(Q, nv, 1 + r.below(2), r);
    auto b = gen::nonzero_form(Q, nv, 1 + r.below(2), r);
    std::vector<HomPoly<Rational>> images;
    const std::uint32_t e = 1 + r.below(2);
    for (std::size_t k = 0; k < nv; ++k) images.push_back(gen::nonzero_form(Q, nv, e, r));
    if ((a * b).substitute(images) != a.substitute(images) * b.substitute(images) ||
        (a + a).substitute(images) != a.substitute(images) + a.substitute(images))
      fail(o, "substitution case " + std::to_string(i));
  }
  for (int i = 0; i < kPropertyCases; ++i) {
    const std::size_t n = 1 + r.below(2);
    auto f = gen::map(Q, n, 1 + r.below(2), r);
    auto g = r.below(2) ? gen::linear_automorphism(n, r) : gen::map(Q, n, 2, r);
    auto h = gen::map(Q, n, 1 + r.below(2), r);
    if (compose(compose(f, g), h) != compose(f, compose(g, h))) fail(o, "associativity case " + std::to_string(i));
  }
  PrimeField F(11);
  for (int i = 0; i < kPropertyCases; ++i) {
    const std::size_t nv = 1 + r.below(5);
    auto p = gen::form(Q, nv, r.below(5), r);
    auto q = gen::form(F, nv, r.below(4), r);
    auto m = gen::map(Q, 1 + r.below(2), 1 + r.below(2), r);
    if (parse_poly<Rational>(format_poly(p), nv, Q) != p || parse_poly<ModP>(format_poly(q), nv, F) != q ||
        parse_map<Rational>(format_map(m), Q) != m)
      fail(o, "round trip case " + std::to_string(i));
  }
  if (o.pass) o.detail = "4 x " + std::to_string(kPropertyCases) + " cases";
  return o;
}

Outcome criterion_13() {
  Outcome o;
  const std::string report = "verify --n 2,3 --all --seed 13";
  auto x = gen::run_cli(report), y = gen::run_cli(report);
  if (x.exit_code != 0 || x.out.empty()) fail(o, "verify run failed");
  if (x.out != y.out) fail(o, "verify reports differ between runs");
  const std::string pan = "pan check --n 2 --P 'z0^2*z2 + z1^3' --Q z0 --R '[z0^2; z1^2]' --seed 4";
  if (gen::run_cli(pan).out != gen::run_cli(pan).out) fail(o, "pan reports differ between runs");
  const std::string s2 = "--map '[z1*z2; z0*z2; z0*z1]' ";
  const int ok = gen::run_cli("compose " + s2 + s2 + "--expect id").exit_code;
  const int bad = gen::run_cli("compose " + s2 + s2 + "--expect '[z1; z0; z2]'").exit_code;
  const int usage = gen::run_cli("compose " + s2 + "--bogus").exit_code;
  if (ok != 0 || bad != 1 || usage != 2)
    fail(o, "exit codes " + std::to_string(ok) + "/" + std::to_string(bad) + "/" + std::to_string(usage));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"sigma_n involution", criterion_1},
      {"varsigma decomposition", criterion_2},
      {"tame decomposition", criterion_3},
      {"psi conjugacy", criterion_4},
      {"diagonal-sigma relation", criterion_5},
      {"tau-eta product and h_n order", criterion_6},
      {"translation commutator and rewrite", criterion_7},
      {"Birkhoff triple", criterion_8},
      {"pan criterion vs fiber oracle", criterion_9},
      {"pan blow-down contraction", criterion_10},
      {"free product certificates", criterion_11},
      {"engine properties", criterion_12},
      {"CLI determinism and exit codes", criterion_13},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double s = seconds_since(t);
    if (s > kUnboundedTotal) fail(o, "exceeded " + std::to_string(kUnboundedTotal) + " s");
    failed += !o.pass;
    std::printf("%s %2zu %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, s,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
