// The standard involution of P^n: its raw self-composite has degree n^2 and
// collapses to the identity once the common factor is removed.

#include <iostream>

#include "cremona/constructions.hpp"

int main() {
  using namespace cremona;
  const RationalField Q;
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto s = sigma(Q, n);
    const auto raw = compose_raw(s, s);
    std::cout << "n=" << n << "  sigma = " << format_map(s) << '\n'
              << "     raw degree " << *raw.front().degree() << ", normalized " << format_map(compose(s, s)) << '\n';
  }

  // Over GF(7) the involution is also defined pointwise off the coordinate hyperplanes.
  const PrimeField F(7);
  const auto s7 = sigma(F, 2);
  const ProjPoint<ModP> x({F.from_int(1), F.from_int(2), F.from_int(3)});
  std::cout << "GF(7): sigma" << x.to_string() << " = " << s7.apply(x).to_string() << '\n';
}
