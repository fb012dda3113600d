#include "vlcsim/simulation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "vlcsim/ber_harness.hpp"
#include "vlcsim/mathutil.hpp"
#include "vlcsim/rng.hpp"
#include "vlcsim/scenario.hpp"

namespace vlcsim::proto {

SimConfig load_sim_config(const Json& j, const std::string& context) {
  JsonObject o(j, context);
  SimConfig cfg;
  cfg.tick_ms = o.uinteger_or("tick_ms", cfg.tick_ms);
  cfg.report_period_ms = o.uinteger_or("report_period_ms", cfg.report_period_ms);
  cfg.segment_payload_bytes = o.uinteger_or("segment_payload_bytes", cfg.segment_payload_bytes);
  cfg.tile_payload_bytes = o.uinteger_or("tile_payload_bytes", cfg.tile_payload_bytes);
  cfg.relevance_radius = static_cast<int>(o.integer_or("relevance_radius", cfg.relevance_radius));
  cfg.uplink_snr_db = o.number_or("uplink_snr_db", cfg.uplink_snr_db);
  cfg.downlink_snr_db = o.number_or("downlink_snr_db", cfg.downlink_snr_db);
  if (const Json* modem = o.object_or_null("modem"))
    cfg.modem = harness::load_ofdm_config(*modem, context + ".modem");

  if (cfg.tick_ms < 1) throw ConfigError(context + ": field 'tick_ms' must be at least 1");
  if (cfg.report_period_ms < 1)
    throw ConfigError(context + ": field 'report_period_ms' must be at least 1");
  if (cfg.segment_payload_bytes < 1)
    throw ConfigError(context + ": field 'segment_payload_bytes' must be at least 1");
  if (cfg.tile_payload_bytes > (1u << 20))
    throw ConfigError(context + ": field 'tile_payload_bytes' exceeds the 1 MiB tile cap");
  if (cfg.relevance_radius < 0)
    throw ConfigError(context + ": field 'relevance_radius' must be non-negative");
  if (!std::isfinite(cfg.uplink_snr_db) || !std::isfinite(cfg.downlink_snr_db))
    throw ConfigError(context + ": link SNR fields must be finite");

  if (const Json* arr = o.array_or_null("vehicles")) {
    for (size_t i = 0; i < arr->size(); ++i) {
      JsonObject vo((*arr)[i], context + ".vehicles[" + std::to_string(i) + "]");
      VehicleSpawn v;
      v.id = static_cast<uint32_t>(vo.uinteger("id"));
      v.spawn_time_ms = vo.uinteger_or("spawn_time_ms", 0);
      v.position.x = vo.number("x");
      v.position.y = vo.number("y");
      v.heading_deg = vo.number_or("heading_deg", 0.0);
      v.speed_mps = vo.number_or("speed_mps", 0.0);
      v.acceleration_mps2 = vo.number_or("acceleration_mps2", 0.0);
      v.brake = vo.boolean_or("brake", false);
      vo.finish();
      if (v.speed_mps < 0.0)
        throw ConfigError(context + ": vehicle speed must be non-negative");
      for (const VehicleSpawn& other : cfg.vehicles)
        if (other.id == v.id)
          throw ConfigError(context + ": duplicate vehicle id " + std::to_string(v.id));
      cfg.vehicles.push_back(v);
    }
  }
  o.finish();
  return cfg;
}

SimConfig load_sim_config_file(const std::string& path) {
  return load_sim_config(parse_json_file(path), path);
}

GarageSim::GarageSim(GarageLayout layout, SimConfig cfg, uint64_t seed)
    : layout_(std::move(layout)),
      cfg_(std::move(cfg)),
      seed_(seed),
      server_(cfg_.tile_payload_bytes) {
  validate_layout(layout_);
  const double rate_bps = phy::compute_data_rate(cfg_.modem);
  bytes_per_tick_ = rate_bps / 8.0 * static_cast<double>(cfg_.tick_ms) / 1000.0;
  ber_up_ = harness::theoretical_ber_qam(cfg_.uplink_snr_db, cfg_.modem.modulation_order);
  ber_down_ = harness::theoretical_ber_qam(cfg_.downlink_snr_db, cfg_.modem.modulation_order);
  spawned_.assign(cfg_.vehicles.size(), false);
  for (const auto& [id, led] : layout_.leds) led_queues_[id];
  for (const VehicleSpawn& v : cfg_.vehicles) {
    try {
      cell_of(layout_, v.position);
    } catch (const DomainError&) {
      throw ConfigError("vehicle " + std::to_string(v.id) + " spawns outside the garage");
    }
  }
}

void GarageSim::emit(Json event) {
  event["time_ms"] = time_ms_;
  events_.push_back(event.dump());
}

void GarageSim::run(uint64_t ticks) {
  for (uint64_t i = 0; i < ticks; ++i) step();
}

void GarageSim::step() {
  const uint64_t t_new = time_ms_ + cfg_.tick_ms;
  GaussianSampler rng(derive_seed(seed_, "tick", tick_index_));
  const double dt = static_cast<double>(cfg_.tick_ms) / 1000.0;
  time_ms_ = t_new;

  // Activations due in this tick.
  for (size_t i = 0; i < cfg_.vehicles.size(); ++i) {
    if (spawned_[i] || cfg_.vehicles[i].spawn_time_ms > t_new) continue;
    spawned_[i] = true;
    const VehicleSpawn& s = cfg_.vehicles[i];
    ActiveVehicle v;
    v.spec = s;
    v.pos = s.position;
    v.heading_rad = deg_to_rad(s.heading_deg);
    v.speed = s.speed_mps;
    v.next_report_ms = s.spawn_time_ms;
    vehicles_[s.id] = std::move(v);
    emit(Json{{"kind", "spawn"},
              {"vehicle", s.id},
              {"x", s.position.x},
              {"y", s.position.y},
              {"heading_deg", s.heading_deg},
              {"speed", s.speed_mps}});
  }

  // Constant-acceleration kinematics; leaving the grid despawns.
  std::vector<uint32_t> exited;
  for (auto& [id, v] : vehicles_) {
    const double v_new = std::max(0.0, v.speed + v.spec.acceleration_mps2 * dt);
    const double disp = 0.5 * (v.speed + v_new) * dt;
    v.pos.x += disp * std::cos(v.heading_rad);
    v.pos.y += disp * std::sin(v.heading_rad);
    v.speed = v_new;
    const double w = layout_.grid_w * layout_.cell_size_m;
    const double h = layout_.grid_h * layout_.cell_size_m;
    if (v.pos.x < 0.0 || v.pos.x >= w || v.pos.y < 0.0 || v.pos.y >= h) {
      exited.push_back(id);
      continue;
    }
    v.cell = cell_of(layout_, v.pos);
  }
  for (uint32_t id : exited) {
    vehicles_.erase(id);
    emit(Json{{"kind", "exit"}, {"vehicle", id}});
  }
  for (const auto& [id, v] : vehicles_)
    emit(Json{{"kind", "state"},
              {"vehicle", id},
              {"x", v.pos.x},
              {"y", v.pos.y},
              {"speed", v.speed},
              {"cell", Json::array({v.cell.x, v.cell.y})}});

  // Uplink: periodic report through every covering detector.
  const double p_report = std::pow(1.0 - ber_up_, 8.0 * kVehicleReportBytes);
  for (auto& [id, v] : vehicles_) {
    if (t_new < v.next_report_ms) continue;
    v.next_report_ms = t_new + cfg_.report_period_ms;
    VehicleReport report;
    report.vehicle_id = id;
    report.timestamp_ms = t_new;
    report.speed_mps = static_cast<float>(v.speed);
    report.acceleration_mps2 = static_cast<float>(v.spec.acceleration_mps2);
    report.deceleration_mps2 =
        static_cast<float>(std::max(0.0, -v.spec.acceleration_mps2));
    report.brake_status = v.spec.brake;
    ++summary_.reports_sent;
    emit(Json{{"kind", "report_tx"}, {"vehicle", id}, {"ts", t_new}});

    bool any = false;
    const VehiclePose pose{v.pos, v.heading_rad};
    for (const std::string& det_id : detector_capture(layout_, pose)) {
      if (rng.uniform01() >= p_report) continue;
      any = true;
      emit(Json{{"kind", "report_rx"}, {"vehicle", id}, {"detector", det_id}});
      for (TileId t : server_.fuse_report(report, v.cell, det_id))
        emit(Json{{"kind", "fused"},
                  {"tile", Json::array({t.x, t.y})},
                  {"version", server_.tile_version(t)},
                  {"vehicle", id}});
    }
    if (any) ++summary_.reports_delivered;
  }

  // Planning: enqueue any relevant tile whose current version an LED has
  // not queued yet.
  for (const auto& [id, v] : vehicles_) {
    const VehiclePose pose{v.pos, v.heading_rad};
    for (const auto& [led_id, tile] : plan_dissemination(layout_, pose, cfg_.relevance_radius)) {
      const uint32_t version = server_.tile_version(tile);
      LedQueue& q = led_queues_[led_id];
      const auto it = q.enqueued_version.find(tile);
      if (it != q.enqueued_version.end() && it->second >= version) continue;
      q.enqueued_version[tile] = version;
      const std::vector<Segment> segs =
          chunk_tile(server_.snapshot_tile(tile), cfg_.segment_payload_bytes);
      for (const Segment& s : segs) q.queue.push_back(s);
      emit(Json{{"kind", "enqueued"},
                {"led", led_id},
                {"tile", Json::array({tile.x, tile.y})},
                {"version", version},
                {"segments", segs.size()}});
    }
  }

  // Downlink: each LED spends its byte budget broadcasting queued segments
  // to every vehicle inside its coverage.
  for (auto& [led_id, q] : led_queues_) {
    q.credit_bytes += bytes_per_tick_;
    const LedUnit& led = layout_.leds.at(led_id);
    while (!q.queue.empty()) {
      const Segment& seg = q.queue.front();
      const double wire = static_cast<double>(segment_wire_bytes(seg.bytes.size()));
      if (q.credit_bytes < wire) break;
      q.credit_bytes -= wire;
      summary_.led_tx_bytes[led_id] += static_cast<uint64_t>(wire);
      const double p_seg = std::pow(1.0 - ber_down_, 8.0 * wire);
      for (auto& [vid, v] : vehicles_) {
        if (!led.cells.count(v.cell)) continue;
        const bool delivered = rng.uniform01() < p_seg;
        emit(Json{{"kind", "segment"},
                  {"led", led_id},
                  {"tile", Json::array({seg.tile_id.x, seg.tile_id.y})},
                  {"version", seg.version},
                  {"seq", seg.seq_no},
                  {"vehicle", vid},
                  {"delivered", delivered}});
        if (!delivered) continue;
        if (v.reassembly[seg.tile_id].add(seg)) {
          v.received_version[seg.tile_id] = seg.version;
          ++summary_.tiles_completed[vid];
          ever_received_[vid].insert(seg.tile_id);
          summary_.distinct_tiles[vid] = ever_received_[vid].size();
          emit(Json{{"kind", "tile_rx"},
                    {"vehicle", vid},
                    {"tile", Json::array({seg.tile_id.x, seg.tile_id.y})},
                    {"version", seg.version}});
        }
      }
      q.queue.pop_front();
    }
    if (q.queue.empty()) q.credit_bytes = 0.0;  // no banking while idle
  }

  ++tick_index_;
}

GarageSim::Summary GarageSim::summary() const { return summary_; }

namespace {

Json fingerprint_json(uint64_t time_ms,
                      const std::map<uint32_t, std::array<double, 3>>& vehicles,
                      const std::map<uint32_t, std::map<std::pair<int, int>, uint32_t>>& tiles,
                      const std::map<std::pair<int, int>, uint32_t>& server) {
  Json out;
  out["time_ms"] = time_ms;
  Json vs = Json::array();
  for (const auto& [id, pose] : vehicles) {
    Json tl = Json::array();
    const auto it = tiles.find(id);
    if (it != tiles.end())
      for (const auto& [tile, ver] : it->second)
        tl.push_back(Json::array({tile.first, tile.second, ver}));
    vs.push_back(Json{{"id", id},
                      {"x", pose[0]},
                      {"y", pose[1]},
                      {"speed", pose[2]},
                      {"tiles", tl}});
  }
  out["vehicles"] = vs;
  Json sv = Json::array();
  for (const auto& [tile, ver] : server)
    sv.push_back(Json::array({tile.first, tile.second, ver}));
  out["server"] = sv;
  return out;
}

}  // namespace

std::string GarageSim::state_fingerprint() const {
  std::map<uint32_t, std::array<double, 3>> vehicles;
  std::map<uint32_t, std::map<std::pair<int, int>, uint32_t>> tiles;
  for (const auto& [id, v] : vehicles_) {
    vehicles[id] = {v.pos.x, v.pos.y, v.speed};
    for (const auto& [tile, ver] : v.received_version)
      tiles[id][{tile.x, tile.y}] = ver;
  }
  std::map<std::pair<int, int>, uint32_t> server;
  for (const auto& [tile, ver] : server_.versions()) server[{tile.x, tile.y}] = ver;
  return fingerprint_json(time_ms_, vehicles, tiles, server).dump();
}

std::string replay_state_fingerprint(const std::vector<std::string>& event_lines,
                                     uint64_t final_time_ms) {
  std::map<uint32_t, std::array<double, 3>> vehicles;
  std::map<uint32_t, std::map<std::pair<int, int>, uint32_t>> tiles;
  std::map<std::pair<int, int>, uint32_t> server;
  for (const std::string& line : event_lines) {
    const Json e = parse_json_text(line, "event log");
    const std::string kind = e.at("kind").get<std::string>();
    if (kind == "spawn") {
      const uint32_t id = e.at("vehicle").get<uint32_t>();
      vehicles[id] = {e.at("x").get<double>(), e.at("y").get<double>(),
                      e.at("speed").get<double>()};
    } else if (kind == "state") {
      const uint32_t id = e.at("vehicle").get<uint32_t>();
      vehicles[id] = {e.at("x").get<double>(), e.at("y").get<double>(),
                      e.at("speed").get<double>()};
    } else if (kind == "exit") {
      const uint32_t id = e.at("vehicle").get<uint32_t>();
      vehicles.erase(id);
      tiles.erase(id);
    } else if (kind == "fused") {
      server[{e.at("tile")[0].get<int>(), e.at("tile")[1].get<int>()}] =
          e.at("version").get<uint32_t>();
    } else if (kind == "tile_rx") {
      const uint32_t id = e.at("vehicle").get<uint32_t>();
      tiles[id][{e.at("tile")[0].get<int>(), e.at("tile")[1].get<int>()}] =
          e.at("version").get<uint32_t>();
    }
  }
  return fingerprint_json(final_time_ms, vehicles, tiles, server).dump();
}

}  // namespace vlcsim::proto
