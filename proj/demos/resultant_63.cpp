// Norm computation for a quartic newform: charpoly of a_3' and R_3.
#include "frey/sieve.hpp"

#include <iostream>

int main() {
  using namespace frey;
  const IntPoly field({25, -30, -18, 6, 1});
  const RatPoly a3({Rational(-2), Rational(-13, 10), Rational(3, 5), Rational(1, 10)});
  const auto cp = charpoly_of_element(field, a3);
  const auto p3 = pq_poly(PrimeModulus(3), trace_set(PrimeModulus(3)));
  const BigInt r = resultant(cp, p3);
  std::cout << "field    " << field.str() << "\n";
  std::cout << "charpoly " << cp.str() << "\n";
  std::cout << "P_3      " << p3.str('X') << "\n";
  std::cout << "R_3      " << r << " =";
  for (const auto& [p, e] : factor(r)) std::cout << ' ' << p << '^' << e;
  std::cout << "\n";
}
