#pragma once

#include <compare>

namespace vlcsim::proto {

// Integer cell coordinates on the garage grid. Map tiles are addressed by
// the same coordinates (one tile per cell).
struct CellIndex {
  int x = 0;
  int y = 0;
  auto operator<=>(const CellIndex&) const = default;
};

using TileId = CellIndex;

}  // namespace vlcsim::proto
