#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vlcsim/segmentation.hpp"
#include "vlcsim/v2i_messages.hpp"

namespace vlcsim::proto {

// Infrastructure-side tile table. Tiles start at version 0 with a fixed
// synthetic base payload; each accepted vehicle report bumps the version of
// the tile covering the vehicle's cell and rewrites it as a fused record
// holding the latest report per vehicle, sorted by vehicle id.
class MapServer {
 public:
  explicit MapServer(size_t base_payload_bytes);

  // Returns the ids of tiles whose version changed (empty when the report's
  // timestamp is not newer than the last fused one for that vehicle).
  // detector_id records which receiver captured the report.
  std::vector<TileId> fuse_report(const VehicleReport& report, CellIndex vehicle_cell,
                                  const std::string& detector_id);

  uint32_t tile_version(TileId id) const;  // 0 until first fuse
  MapTile snapshot_tile(TileId id) const;
  // Versions of every tile that has been fused at least once.
  std::map<TileId, uint32_t> versions() const;
  // Capturing detector of the last fused report, empty if none.
  std::string last_detector(uint32_t vehicle_id) const;

 private:
  struct TileRecord {
    uint32_t version = 0;
    std::map<uint32_t, VehicleReport> dynamic_objects;  // latest per vehicle
  };

  size_t base_payload_bytes_;
  std::map<TileId, TileRecord> tiles_;
  std::map<uint32_t, uint64_t> last_fused_ts_;     // per vehicle
  std::map<uint32_t, std::string> last_detector_;  // per vehicle
};

}  // namespace vlcsim::proto
