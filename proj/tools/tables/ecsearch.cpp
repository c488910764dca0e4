// Box search for integral Weierstrass models whose discriminant is supported on a
// fixed set of primes. Prints one JSON array [a1,a2,a3,a4,a6] per line.
//
//   ecsearch --a4 1000 --a6 10000 --primes 2,3,5,7,13

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <vector>

using i128 = __int128;

namespace {

bool supported(i128 d, const std::vector<int>& primes) {
  if (d == 0) return false;
  if (d < 0) d = -d;
  for (int p : primes)
    while (d % p == 0) d /= p;
  return d == 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"S-unit discriminant box search"};
  long a4max = 1000, a6max = 10000;
  std::vector<int> primes{2, 3, 5, 7, 13};
  app.add_option("--a4", a4max);
  app.add_option("--a6", a6max);
  app.add_option("--primes", primes)->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  for (long a1 = 0; a1 <= 1; ++a1)
    for (long a2 = -1; a2 <= 1; ++a2)
      for (long a3 = 0; a3 <= 1; ++a3)
        for (long a4 = -a4max; a4 <= a4max; ++a4) {
          const i128 b2 = a1 * a1 + 4 * a2;
          const i128 b4 = 2 * a4 + a1 * a3;
          for (long a6 = -a6max; a6 <= a6max; ++a6) {
            const i128 b6 = a3 * a3 + 4 * static_cast<i128>(a6);
            const i128 b8 = a1 * a1 * static_cast<i128>(a6) + 4 * a2 * static_cast<i128>(a6) - a1 * a3 * a4 +
                            a2 * a3 * a3 - static_cast<i128>(a4) * a4;
            const i128 disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
            if (supported(disc, primes))
              std::cout << '[' << a1 << ',' << a2 << ',' << a3 << ',' << a4 << ',' << a6 << "]\n";
          }
        }
  return 0;
}
