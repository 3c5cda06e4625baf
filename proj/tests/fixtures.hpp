#pragma once

// Hand-built lattices used across the test suites.  Indexing follows the
// linear-extension convention: 0 = bottom, n-1 = top.

#include <vector>

#include "slimlat/lattice.hpp"

namespace fixtures {

using slimlat::FiniteLattice;

inline FiniteLattice chain(int n) {
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return FiniteLattice::build(n, covers, true);
}

// Boolean square: atoms 1, 2.
inline FiniteLattice b4() {
  return FiniteLattice::build(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, true);
}

// Seven-element patch lattice: zl=1, zr=2, l=3, m=4, r=5.
inline FiniteLattice s7() {
  return FiniteLattice::build(
      7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 6}, {4, 6}, {5, 6}},
      true);
}

// C2 x C3 with the indexing 0=(0,0), 1=(1,0), 2=(0,1), 3=(1,1), 4=(0,2),
// 5=(1,2).
inline FiniteLattice g23() {
  return FiniteLattice::build(6, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 5}, {4, 5}},
                              true);
}

// Modular diamond with three atoms; slim fails here.
inline FiniteLattice m3() {
  return FiniteLattice::build(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}},
                              true);
}

// Pentagon: 0 < 1 < 3 < 4 and 0 < 2 < 4; semimodularity fails at (2, 1).
inline FiniteLattice n5() {
  return FiniteLattice::build(5, {{0, 1}, {1, 3}, {0, 2}, {3, 4}, {2, 4}}, true);
}

}  // namespace fixtures
