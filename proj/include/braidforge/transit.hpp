#pragma once

#include <array>
#include <utility>
#include <vector>

#include "braidforge/braid.hpp"
#include "braidforge/grid.hpp"

namespace braidforge {

struct TransitionTrace {
  enum class Source { Braid, Grid };
  Source source = Source::Braid;
  // braid -> grid: the two columns created for each letter
  std::vector<std::array<int, 2>> letter_to_arcs;
  // braid -> grid: columns added so every strand's horizontal arcs close up
  std::vector<int> jog_columns;
  // grid -> braid: letters emitted while sweeping each column
  std::vector<std::vector<int>> column_to_letters;
};

// Strands live in disjoint height bands (strand i below strand i+1). Each
// letter becomes two adjacent columns where the strands of tracks i and i+1
// trade bands; the row order inside a band is solved afterwards so that the
// letter's single crossing has the right sign. Tracks that are touched fewer
// than twice, or whose in-band order would be cyclic, get one extra jog column.
std::pair<ArcPresentation, TransitionTrace> braid_to_grid(const BraidWord& w);

std::pair<BraidWord, TransitionTrace> grid_to_braid(const ArcPresentation& g);

// Flattened braid of a sheared diagram (intervals ignored).
BraidWord flatten(const ArcPresentation& g);

}  // namespace braidforge
