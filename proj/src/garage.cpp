#include "vlcsim/garage.hpp"

#include <cmath>

#include "vlcsim/errors.hpp"

namespace vlcsim::proto {

bool in_bounds(const GarageLayout& layout, CellIndex cell) {
  return cell.x >= 0 && cell.x < layout.grid_w && cell.y >= 0 && cell.y < layout.grid_h;
}

CellIndex cell_of(const GarageLayout& layout, Vec2 position) {
  const CellIndex cell{static_cast<int>(std::floor(position.x / layout.cell_size_m)),
                       static_cast<int>(std::floor(position.y / layout.cell_size_m))};
  if (!in_bounds(layout, cell))
    throw DomainError("position (" + std::to_string(position.x) + ", " +
                      std::to_string(position.y) + ") lies outside the garage");
  return cell;
}

std::vector<CellIndex> relevant_tiles(const GarageLayout& layout, CellIndex vehicle_cell,
                                      double heading_rad, int radius) {
  if (radius < 0) throw DomainError("relevance radius must be non-negative");
  const double hx = std::cos(heading_rad);
  const double hy = std::sin(heading_rad);
  std::vector<CellIndex> out;
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dx * hx + dy * hy < -1e-9) continue;  // behind the vehicle
      const CellIndex c{vehicle_cell.x + dx, vehicle_cell.y + dy};
      if (in_bounds(layout, c)) out.push_back(c);
    }
  return out;
}

std::set<std::pair<std::string, TileId>> plan_dissemination(const GarageLayout& layout,
                                                            const VehiclePose& pose, int radius) {
  const CellIndex cell = cell_of(layout, pose.position);
  const std::vector<CellIndex> tiles =
      relevant_tiles(layout, cell, pose.heading_rad, radius);
  std::set<std::pair<std::string, TileId>> out;
  for (const auto& [id, led] : layout.leds)
    if (led.cells.count(cell))
      for (CellIndex t : tiles) out.emplace(id, t);
  return out;
}

std::vector<std::string> detector_capture(const GarageLayout& layout, const VehiclePose& pose) {
  const CellIndex cell = cell_of(layout, pose.position);
  std::vector<std::string> out;
  for (const auto& [id, det] : layout.detectors)
    if (det.cells.count(cell)) out.push_back(id);
  return out;
}

void validate_layout(const GarageLayout& layout) {
  if (layout.grid_w < 1 || layout.grid_h < 1)
    throw ConfigError("garage grid must be at least 1x1");
  if (!(layout.cell_size_m > 0.0))
    throw ConfigError("garage cell size must be positive");
  for (const auto& [id, led] : layout.leds) {
    if (led.cells.empty()) throw ConfigError("LED '" + id + "' covers no cells");
    for (CellIndex c : led.cells)
      if (!in_bounds(layout, c))
        throw ConfigError("LED '" + id + "' references cell (" + std::to_string(c.x) + "," +
                          std::to_string(c.y) + ") outside the grid");
  }
  for (const auto& [id, det] : layout.detectors) {
    if (det.cells.empty()) throw ConfigError("detector '" + id + "' covers no cells");
    for (CellIndex c : det.cells)
      if (!in_bounds(layout, c))
        throw ConfigError("detector '" + id + "' references cell (" + std::to_string(c.x) + "," +
                          std::to_string(c.y) + ") outside the grid");
  }
  for (CellIndex c : layout.parking_spots)
    if (!in_bounds(layout, c)) throw ConfigError("parking spot outside the grid");
  for (CellIndex c : layout.lanes)
    if (!in_bounds(layout, c)) throw ConfigError("lane cell outside the grid");
}

namespace {

CellIndex load_cell(const Json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ConfigError(context + ": cells must be [x, y] integer pairs");
  return CellIndex{j[0].get<int>(), j[1].get<int>()};
}

std::set<CellIndex> load_cells(const Json& j, const std::string& context) {
  std::set<CellIndex> out;
  if (!j.is_array()) throw ConfigError(context + ": expected an array of cells");
  for (const Json& c : j) out.insert(load_cell(c, context));
  return out;
}

Vec2 load_vec2(JsonObject& o) {
  Vec2 v;
  v.x = o.number("x");
  v.y = o.number("y");
  return v;
}

}  // namespace

GarageLayout load_garage_layout(const Json& j, const std::string& context) {
  JsonObject o(j, context);
  GarageLayout layout;
  layout.grid_w = static_cast<int>(o.integer("grid_w"));
  layout.grid_h = static_cast<int>(o.integer("grid_h"));
  layout.cell_size_m = o.number("cell_size_m");

  for (const Json& item : o.array("leds")) {
    JsonObject lo(item, context + ".leds");
    LedUnit led;
    led.id = lo.text("id");
    JsonObject po(lo.object("position"), context + ".leds.position");
    led.position = load_vec2(po);
    po.finish();
    led.cells = load_cells(lo.array("cells"), context + ".leds[" + led.id + "]");
    lo.finish();
    if (!layout.leds.emplace(led.id, led).second)
      throw ConfigError(context + ": duplicate LED id '" + led.id + "'");
  }
  for (const Json& item : o.array("detectors")) {
    JsonObject d(item, context + ".detectors");
    DetectorUnit det;
    det.id = d.text("id");
    JsonObject po(d.object("position"), context + ".detectors.position");
    det.position = load_vec2(po);
    po.finish();
    det.cells = load_cells(d.array("cells"), context + ".detectors[" + det.id + "]");
    d.finish();
    if (!layout.detectors.emplace(det.id, det).second)
      throw ConfigError(context + ": duplicate detector id '" + det.id + "'");
  }
  if (const Json* spots = o.array_or_null("parking_spots"))
    layout.parking_spots = load_cells(*spots, context + ".parking_spots");
  if (const Json* lanes = o.array_or_null("lanes"))
    layout.lanes = load_cells(*lanes, context + ".lanes");
  o.finish();
  validate_layout(layout);
  return layout;
}

GarageLayout load_garage_layout_file(const std::string& path) {
  return load_garage_layout(parse_json_file(path), path);
}

}  // namespace vlcsim::proto
