// Builds two maps of the form (Q R : P) on P^2 and decides birationality.

#include <iostream>

#include "cremona/pan.hpp"

namespace {

using namespace cremona;

void report(const char* title, const PanSpec<Rational>& spec) {
  const auto psi = build_psi(spec);
  const auto r = birationality_criterion(spec);
  std::cout << title << "\n  Psi = " << format_map(psi) << "\n  verdict " << to_string(r.verdict) << " (" << r.tag
            << ")\n";
  for (const auto& step : r.trail) std::cout << "    " << step << '\n';
  if (r.witness) {
    std::cout << "    fiber over GF(" << r.witness->prime << "):";
    for (const auto& x : r.witness->points) std::cout << ' ' << format_point(x);
    std::cout << '\n';
  }
}

}  // namespace

int main() {
  const RationalField Q;
  auto P = [&](const char* text, std::size_t nvars) { return parse_poly<Rational>(text, nvars, Q); };
  report("linear R", {2, P("z2*z0 + z1^2", 3), P("z0", 3), {P("z0", 2), P("z1", 2)}});
  report("squaring R", {2, P("z2*z0^2 + z1^3", 3), P("z0", 3), {P("z0^2", 2), P("z1^2", 2)}});

  // A quadric through the apex of P^3, blown down by a cubic.
  auto q = P("z0*z3 + z1*z2 - z2^2", 4);
  auto bd = blowdown_build(q, 3, 1);
  std::cout << "blow-down of " << format_poly(q) << "\n  " << format_map(bd.psi) << '\n';
  for (std::uint32_t p : {7u, 11u}) {
    auto c = contraction_check(bd.psi, q, p);
    std::cout << "  GF(" << p << "): " << c.points_on_hypersurface << " points on q' map to "
              << (c.image ? format_point(*c.image) : std::string("several points")) << '\n';
  }
}
