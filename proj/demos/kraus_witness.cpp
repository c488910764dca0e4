// Walks the q = np+1 search for one prime and shows why each rejected n fails.
#include "frey/criterion.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using namespace frey;
  const u64 p = argc > 1 ? std::stoull(argv[1]) : 17;
  const auto store = NewformStore::load(argc > 2 ? argv[2] : "data/newforms.json");
  for (Branch b : {Branch::K, Branch::A}) {
    std::cout << "branch " << branch_name(b) << " (" << CriterionConfig{}.label(b) << ")\n";
    for (u64 n = 2; n <= 200; n += 2) {
      if (!is_prime(n * p + 1)) continue;
      const auto r = evaluate_form(p, n, b, store);
      std::cout << "  n=" << n << " q=" << n * p + 1 << " zetas=" << r.checked_zetas;
      if (r.passed) {
        std::cout << " witness\n";
        break;
      }
      std::cout << " fails (" << r.failed << ")\n";
    }
  }
}
