#pragma once

// Checks shared by the pan unit tests and the acceptance binary.

#include <sstream>
#include <string>

#include "support/generators.hpp"

namespace gen {

inline const std::vector<std::uint32_t> kOraclePrimes{7, 11, 13};

/// Criterion verdict against the fiber oracle on the full Psi for one seeded spec.
struct Agreement {
  std::uint64_t seed = 0;
  RKind kind = RKind::generic;
  cremona::CriterionResult verdict;
  cremona::FiberSummary fibers;
  bool ok = false;
  std::string detail;
};

/// Agreement means: the verdict is decided, "birational" iff the pooled
/// oracle estimate is 1, every prime was usable, and a probabilistic
/// birational verdict saw fiber 1 at every prime.
inline Agreement agreement_case(std::uint64_t seed, std::size_t trials = 20) {
  Agreement a;
  a.seed = seed;
  Rng r(1000 + seed);
  auto c = pan_case(r, kOraclePrimes);
  a.kind = c.kind;
  a.verdict = cremona::birationality_criterion(c.spec, {seed, trials, kOraclePrimes});
  a.fibers = cremona::generic_fiber_size(cremona::build_psi(c.spec), kOraclePrimes, trials, seed);
  std::ostringstream why;
  a.ok = true;
  if (a.verdict.verdict == cremona::Verdict::undetermined) a.ok = false, why << "undetermined; ";
  if ((a.fibers.modal == 1) != (a.verdict.verdict == cremona::Verdict::birational))
    a.ok = false, why << "oracle estimate " << a.fibers.modal << " vs verdict " << to_string(a.verdict.verdict) << "; ";
  if (!a.fibers.skipped.empty()) a.ok = false, why << a.fibers.skipped.size() << " prime(s) skipped; ";
  if (a.verdict.tag == "probabilistic")
    for (const auto& pr : a.fibers.per_prime)
      if (pr.estimate != 1) a.ok = false, why << "probabilistic verdict but GF(" << pr.prime << ") estimate " << pr.estimate << "; ";
  a.detail = why.str() + "kind " + to_string(c.kind) + ", Psi = " + cremona::format_map(cremona::build_psi(c.spec));
  return a;
}

/// q' on P^3 of degree l with deg_{z3} q' <= 1 and small integer coefficients,
/// whose leading coefficient survives reduction mod 7 and 11.
inline HomPoly<Rational> blowdown_hypersurface(std::uint32_t l, Rng& r) {
  cremona::RationalField Q;
  for (;;) {
    auto low = cremona::random_form(3, l, r).with_extra_variables(1);
    auto high = cremona::random_form(3, l - 1, r).with_extra_variables(1);
    auto q = high.is_zero() ? low : HomPoly<Rational>::variable(Q, 4, 3) * high + low;
    if (q.is_zero() || *q.degree() != l) continue;
    return q;
  }
}

}  // namespace gen
