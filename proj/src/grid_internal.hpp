#pragma once

#include "braidforge/grid.hpp"

namespace braidforge::detail {

inline int mod(int x, int m) {
  const int r = x % m;
  return r < 0 ? r + m : r;
}

// apply_elementary_move without the membership check; mv must come from
// enumerate_elementary_moves(s).
GridState apply_move_unchecked(const GridState& s, const ElementaryMove& mv);

}  // namespace braidforge::detail
