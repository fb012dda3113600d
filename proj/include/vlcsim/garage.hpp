#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vlcsim/grid.hpp"
#include "vlcsim/json_strict.hpp"

namespace vlcsim::proto {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// One ceiling LED and the set of cells its light cone reaches.
struct LedUnit {
  std::string id;
  Vec2 position;
  std::set<CellIndex> cells;
};

// One infrastructure photodetector and the set of cells inside its FoV.
struct DetectorUnit {
  std::string id;
  Vec2 position;
  std::set<CellIndex> cells;
};

struct GarageLayout {
  int grid_w = 0;
  int grid_h = 0;
  double cell_size_m = 1.0;
  std::map<std::string, LedUnit> leds;
  std::map<std::string, DetectorUnit> detectors;
  std::set<CellIndex> parking_spots;
  std::set<CellIndex> lanes;
};

struct VehiclePose {
  Vec2 position;             // meters
  double heading_rad = 0.0;  // 0 points along +x
};

bool in_bounds(const GarageLayout& layout, CellIndex cell);
CellIndex cell_of(const GarageLayout& layout, Vec2 position);  // DomainError outside

// Relevance rule: cells within Chebyshev radius of the vehicle's cell whose
// displacement has a non-negative component along the heading (the forward
// half-plane, own cell included), clipped to the grid.
std::vector<CellIndex> relevant_tiles(const GarageLayout& layout, CellIndex vehicle_cell,
                                      double heading_rad, int radius);

// For each LED whose coverage contains the vehicle's cell, the relevant
// tiles ahead of the vehicle. Empty when no LED covers the cell.
std::set<std::pair<std::string, TileId>> plan_dissemination(const GarageLayout& layout,
                                                            const VehiclePose& pose, int radius);

// Detectors whose FoV cell set contains the vehicle's cell.
std::vector<std::string> detector_capture(const GarageLayout& layout, const VehiclePose& pose);

void validate_layout(const GarageLayout& layout);  // throws ConfigError
GarageLayout load_garage_layout(const Json& j, const std::string& context);
GarageLayout load_garage_layout_file(const std::string& path);

}  // namespace vlcsim::proto
