#pragma once

#include "frey/cli.hpp"

#include <gtest/gtest.h>

namespace frey::test {

inline const NewformStore& fixture() {
  static const NewformStore store = NewformStore::load(FREY_FIXTURE);
  return store;
}

inline std::vector<i64> set(std::initializer_list<i64> v) {
  std::vector<i64> out(v);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace frey::test
