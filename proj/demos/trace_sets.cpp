// Prints the possible a_q of E(a,b) for the first few admissible primes.
#include "frey/frey.hpp"

#include <iostream>

int main() {
  for (frey::u64 q : {3, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    const auto& ts = frey::trace_set(frey::PrimeModulus(q));
    std::cout << "q=" << q << ":";
    for (auto v : ts.values) std::cout << ' ' << v;
    std::cout << '\n';
  }
}
