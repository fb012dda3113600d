#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vlcsim/garage.hpp"
#include "vlcsim/map_server.hpp"
#include "vlcsim/ofdm_config.hpp"
#include "vlcsim/segmentation.hpp"

namespace vlcsim::proto {

struct VehicleSpawn {
  uint32_t id = 0;
  uint64_t spawn_time_ms = 0;
  Vec2 position;
  double heading_deg = 0.0;
  double speed_mps = 0.0;
  double acceleration_mps2 = 0.0;
  bool brake = false;
};

struct SimConfig {
  uint64_t tick_ms = 50;
  uint64_t report_period_ms = 100;
  size_t segment_payload_bytes = 300;
  size_t tile_payload_bytes = 600;
  int relevance_radius = 1;
  // Link quality of vehicle-to-detector and LED-to-vehicle links; delivery
  // probabilities come from the analytic QAM BER at these SNRs.
  double uplink_snr_db = 30.0;
  double downlink_snr_db = 30.0;
  phy::OfdmConfig modem;  // sets the per-LED byte rate and the QAM order
  std::vector<VehicleSpawn> vehicles;
};

SimConfig load_sim_config(const Json& j, const std::string& context);
SimConfig load_sim_config_file(const std::string& path);

// Deterministic closed-loop world: vehicles report their bus state upward
// through detectors into the map server; LEDs stream the relevant tiles
// back down, segment by segment, under the PHY rate budget. Every state
// change lands in an append-only NDJSON event log whose replay reproduces
// the final state fingerprint.
class GarageSim {
 public:
  GarageSim(GarageLayout layout, SimConfig cfg, uint64_t seed);

  void step();
  void run(uint64_t ticks);

  uint64_t time_ms() const { return time_ms_; }
  const std::vector<std::string>& event_log() const { return events_; }
  const GarageLayout& layout() const { return layout_; }
  const MapServer& server() const { return server_; }

  struct Summary {
    uint64_t reports_sent = 0;
    uint64_t reports_delivered = 0;  // captured by at least one detector
    std::map<uint32_t, uint64_t> tiles_completed;    // tile_rx count per vehicle
    std::map<uint32_t, uint64_t> distinct_tiles;     // distinct tile ids per vehicle
    std::map<std::string, uint64_t> led_tx_bytes;    // wire bytes sent per LED
  };
  Summary summary() const;

  // Canonical JSON of time, per-vehicle pose/speed, received tile versions,
  // and server tile versions. replay_state_fingerprint over the event log
  // must reproduce it exactly.
  std::string state_fingerprint() const;

 private:
  struct ActiveVehicle {
    VehicleSpawn spec;
    Vec2 pos;
    double heading_rad = 0.0;
    double speed = 0.0;
    CellIndex cell{};
    uint64_t next_report_ms = 0;
    std::map<TileId, Reassembler> reassembly;
    std::map<TileId, uint32_t> received_version;  // last completed per tile
  };

  struct LedQueue {
    std::deque<Segment> queue;
    double credit_bytes = 0.0;
    std::map<TileId, uint32_t> enqueued_version;  // absent = never enqueued
  };

  void emit(Json event);

  GarageLayout layout_;
  SimConfig cfg_;
  uint64_t seed_;
  uint64_t time_ms_ = 0;
  uint64_t tick_index_ = 0;
  double bytes_per_tick_ = 0.0;
  double ber_up_ = 0.0;
  double ber_down_ = 0.0;
  std::vector<bool> spawned_;
  std::map<uint32_t, ActiveVehicle> vehicles_;
  std::map<std::string, LedQueue> led_queues_;
  MapServer server_;
  std::vector<std::string> events_;
  Summary summary_;
  std::map<uint32_t, std::set<TileId>> ever_received_;
};

std::string replay_state_fingerprint(const std::vector<std::string>& event_lines,
                                     uint64_t final_time_ms);

}  // namespace vlcsim::proto
