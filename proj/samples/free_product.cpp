// Exact certificates that short reduced words in a generic Moebius map g and
// the involution s = [[0,1],[1,0]] are never scalar.

#include <iostream>

#include "cremona/freeness.hpp"

int main() {
  using namespace cremona;
  const auto r = certify_free_product(4, 0);
  const auto names = parameter_names(0);
  for (const auto& c : r.certificates) {
    std::cout << c.word.to_string() << "  entry degrees";
    for (auto d : c.entry_degrees) std::cout << ' ' << d;
    std::cout << "  scalar only where";
    for (const auto& p : c.locus) std::cout << "  " << format_poly(p, names) << " = 0";
    std::cout << '\n';
  }
  std::cout << r.words << " words, " << (r.pass ? "all non-scalar" : "some scalar") << '\n';

  const auto h = certify_free_subgroup(5, 1, {.max_words = 5'000'000, .keep_certificates = false});
  std::cout << "subgroup <g0 s, g1 s>: " << h.words << " reduced words up to length 5, "
            << (h.pass ? "all non-scalar" : "some scalar") << '\n';
}
