#include "vlcsim/map_server.hpp"

namespace vlcsim::proto {

MapServer::MapServer(size_t base_payload_bytes) : base_payload_bytes_(base_payload_bytes) {}

std::vector<TileId> MapServer::fuse_report(const VehicleReport& report, CellIndex vehicle_cell,
                                           const std::string& detector_id) {
  const auto last = last_fused_ts_.find(report.vehicle_id);
  if (last != last_fused_ts_.end() && report.timestamp_ms <= last->second)
    return {};  // stale or duplicate

  last_fused_ts_[report.vehicle_id] = report.timestamp_ms;
  last_detector_[report.vehicle_id] = detector_id;
  TileRecord& rec = tiles_[vehicle_cell];
  rec.version += 1;
  rec.dynamic_objects[report.vehicle_id] = report;
  return {vehicle_cell};
}

uint32_t MapServer::tile_version(TileId id) const {
  const auto it = tiles_.find(id);
  return it == tiles_.end() ? 0 : it->second.version;
}

MapTile MapServer::snapshot_tile(TileId id) const {
  MapTile tile;
  tile.tile_id = id;
  const auto it = tiles_.find(id);
  if (it == tiles_.end()) {
    tile.version = 0;
    tile.payload_kind = PayloadKind::Pointcloud;
    tile.payload.assign(base_payload_bytes_, 0);
    return tile;
  }
  tile.version = it->second.version;
  tile.payload_kind = PayloadKind::Fused;
  tile.payload.assign(base_payload_bytes_, 0);
  for (const auto& [vid, report] : it->second.dynamic_objects) {
    const std::vector<uint8_t> rec = encode_vehicle_report(report);
    tile.payload.insert(tile.payload.end(), rec.begin(), rec.end());
  }
  return tile;
}

std::map<TileId, uint32_t> MapServer::versions() const {
  std::map<TileId, uint32_t> out;
  for (const auto& [id, rec] : tiles_) out[id] = rec.version;
  return out;
}

std::string MapServer::last_detector(uint32_t vehicle_id) const {
  const auto it = last_detector_.find(vehicle_id);
  return it == last_detector_.end() ? std::string() : it->second;
}

}  // namespace vlcsim::proto
