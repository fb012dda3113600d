#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vlcsim/errors.hpp"
#include "vlcsim/garage.hpp"
#include "vlcsim/json_strict.hpp"
#include "vlcsim/simulation.hpp"

using namespace vlcsim;
using namespace vlcsim::proto;

namespace {

GarageLayout one_led_layout() {
  GarageLayout g;
  g.grid_w = 3;
  g.grid_h = 3;
  g.cell_size_m = 2.0;
  LedUnit led;
  led.id = "L";
  led.position = {3.0, 3.0};
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x) led.cells.insert({x, y});
  g.leds["L"] = led;
  DetectorUnit det;
  det.id = "D";
  det.position = {3.0, 3.0};
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x) det.cells.insert({x, y});
  g.detectors["D"] = det;
  return g;
}

SimConfig clean_link_config() {
  SimConfig cfg;
  cfg.tick_ms = 50;
  cfg.report_period_ms = 100;
  cfg.segment_payload_bytes = 300;
  cfg.tile_payload_bytes = 600;
  cfg.relevance_radius = 1;
  cfg.uplink_snr_db = 60.0;
  cfg.downlink_snr_db = 60.0;
  return cfg;
}

VehicleSpawn stationary_vehicle() {
  VehicleSpawn v;
  v.id = 1;
  v.spawn_time_ms = 0;
  v.position = {3.0, 3.0};  // cell (1,1)
  v.heading_deg = 0.0;
  v.speed_mps = 0.0;
  return v;
}

// Events of one kind in log order.
std::vector<Json> events_of(const GarageSim& sim, const std::string& kind) {
  std::vector<Json> out;
  for (const std::string& line : sim.event_log()) {
    Json e = parse_json_text(line, "event");
    if (e.at("kind").get<std::string>() == kind) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

TEST_CASE("an empty world ticks time forward and logs nothing") {
  GarageSim sim(one_led_layout(), clean_link_config(), 5);
  sim.run(10);
  CHECK(sim.time_ms() == 500);
  CHECK(sim.event_log().empty());
  const auto s = sim.summary();
  CHECK(s.reports_sent == 0);
  CHECK(s.reports_delivered == 0);
  CHECK(s.tiles_completed.empty());
  CHECK(s.led_tx_bytes.empty());
  CHECK(replay_state_fingerprint(sim.event_log(), sim.time_ms()) == sim.state_fingerprint());
}

TEST_CASE("a stationary vehicle receives exactly the planned forward tiles") {
  SimConfig cfg = clean_link_config();
  cfg.vehicles = {stationary_vehicle()};
  const GarageLayout layout = one_led_layout();
  GarageSim sim(layout, cfg, 7);
  sim.run(40);

  // The plan for cell (1,1) heading east under the all-cells LED.
  const auto plan = plan_dissemination(layout, {{3.0, 3.0}, 0.0}, 1);
  std::set<std::pair<int, int>> planned;
  for (const auto& [led, tile] : plan) planned.emplace(tile.x, tile.y);
  REQUIRE(planned.size() == 6);

  std::set<std::pair<int, int>> received;
  for (const Json& e : events_of(sim, "tile_rx"))
    received.emplace(e.at("tile")[0].get<int>(), e.at("tile")[1].get<int>());
  CHECK(received == planned);

  const auto s = sim.summary();
  CHECK(s.reports_sent > 0);
  CHECK(s.reports_delivered == s.reports_sent);  // clean uplink
  CHECK(s.distinct_tiles.at(1) == 6);
  CHECK(s.tiles_completed.at(1) >= 6);
  CHECK(s.led_tx_bytes.count("L") == 1);
}

TEST_CASE("a hopeless link delivers no reports and no tiles") {
  SimConfig cfg = clean_link_config();
  cfg.uplink_snr_db = -100.0;
  cfg.downlink_snr_db = -100.0;
  cfg.vehicles = {stationary_vehicle()};
  GarageSim sim(one_led_layout(), cfg, 11);
  sim.run(40);

  const auto s = sim.summary();
  CHECK(s.reports_sent > 0);
  CHECK(s.reports_delivered == 0);
  CHECK(s.tiles_completed.empty());
  CHECK(events_of(sim, "tile_rx").empty());
  CHECK(events_of(sim, "fused").empty());
  // The base map still goes on air; it just never lands.
  CHECK_FALSE(events_of(sim, "segment").empty());
  for (const Json& e : events_of(sim, "segment"))
    CHECK_FALSE(e.at("delivered").get<bool>());
}

TEST_CASE("per-led transmitted bytes respect the phy rate budget") {
  SimConfig cfg = clean_link_config();
  cfg.vehicles = {stationary_vehicle()};
  // Shrink the budget so the queue is rate-limited: 8 kbps -> 50 B/tick.
  cfg.modem.iq_rate_hz = 4000.0;
  const uint64_t ticks = 60;
  GarageSim sim(one_led_layout(), cfg, 3);
  sim.run(ticks);

  const double rate_bps = phy::compute_data_rate(cfg.modem);
  const double budget = rate_bps / 8.0 * (cfg.tick_ms / 1000.0) * static_cast<double>(ticks);
  const auto s = sim.summary();
  REQUIRE(s.led_tx_bytes.count("L") == 1);
  CHECK(static_cast<double>(s.led_tx_bytes.at("L")) <= budget);
  // And the link actually ran near the cap rather than idling.
  CHECK(static_cast<double>(s.led_tx_bytes.at("L")) > 0.5 * budget);
}

TEST_CASE("same seed reproduces the event log, different seed diverges") {
  SimConfig cfg = clean_link_config();
  cfg.downlink_snr_db = 10.0;  // lossy enough that delivery is a coin with memory
  cfg.vehicles = {stationary_vehicle()};

  GarageSim a(one_led_layout(), cfg, 42);
  GarageSim b(one_led_layout(), cfg, 42);
  a.run(30);
  b.run(30);
  CHECK(a.event_log() == b.event_log());
  CHECK(a.state_fingerprint() == b.state_fingerprint());

  GarageSim c(one_led_layout(), cfg, 43);
  c.run(30);
  CHECK(a.event_log() != c.event_log());
}

TEST_CASE("replaying the event log reproduces the state fingerprint") {
  SimConfig cfg = clean_link_config();
  cfg.downlink_snr_db = 12.0;
  cfg.vehicles = {stationary_vehicle()};
  VehicleSpawn mover;
  mover.id = 2;
  mover.spawn_time_ms = 200;
  mover.position = {0.5, 3.0};
  mover.heading_deg = 0.0;
  mover.speed_mps = 2.0;
  mover.acceleration_mps2 = 0.5;
  cfg.vehicles.push_back(mover);

  GarageSim sim(one_led_layout(), cfg, 17);
  for (int i = 0; i < 5; ++i) {
    sim.run(12);
    CHECK(replay_state_fingerprint(sim.event_log(), sim.time_ms()) ==
          sim.state_fingerprint());
  }
}

TEST_CASE("vehicles spawn on schedule, move, and despawn at the boundary") {
  SimConfig cfg = clean_link_config();
  VehicleSpawn v;
  v.id = 9;
  v.spawn_time_ms = 300;
  v.position = {4.9, 3.0};
  v.heading_deg = 0.0;
  v.speed_mps = 2.0;  // exits x >= 6 after ~0.55 s of motion
  cfg.vehicles = {v};
  GarageSim sim(one_led_layout(), cfg, 2);
  sim.run(30);

  const auto spawns = events_of(sim, "spawn");
  REQUIRE(spawns.size() == 1);
  CHECK(spawns[0].at("time_ms").get<uint64_t>() == 300);
  CHECK(spawns[0].at("vehicle").get<uint32_t>() == 9);

  const auto exits = events_of(sim, "exit");
  REQUIRE(exits.size() == 1);
  CHECK(exits[0].at("time_ms").get<uint64_t>() > 300);

  // Position advances monotonically along +x until the exit.
  double last_x = 0.0;
  for (const Json& e : events_of(sim, "state")) {
    const double x = e.at("x").get<double>();
    CHECK(x > last_x);
    last_x = x;
  }
  CHECK(last_x < 6.0);

  // After the exit the world is empty again and the replay agrees.
  const Json fp = parse_json_text(sim.state_fingerprint(), "fingerprint");
  CHECK(fp.at("vehicles").empty());
  CHECK(replay_state_fingerprint(sim.event_log(), sim.time_ms()) == sim.state_fingerprint());
}

TEST_CASE("observed tile versions never decrease anywhere in the log") {
  SimConfig cfg = clean_link_config();
  cfg.downlink_snr_db = 14.0;  // drops force retransmissions across versions
  cfg.report_period_ms = 100;
  cfg.vehicles = {stationary_vehicle()};
  GarageSim sim(one_led_layout(), cfg, 23);
  sim.run(80);

  std::map<std::pair<uint32_t, std::pair<int, int>>, uint32_t> seen;
  for (const Json& e : events_of(sim, "tile_rx")) {
    const auto key = std::make_pair(
        e.at("vehicle").get<uint32_t>(),
        std::make_pair(e.at("tile")[0].get<int>(), e.at("tile")[1].get<int>()));
    const uint32_t version = e.at("version").get<uint32_t>();
    const auto it = seen.find(key);
    if (it != seen.end()) CHECK(version > it->second);
    seen[key] = version;
  }
  CHECK_FALSE(seen.empty());

  std::map<std::pair<int, int>, uint32_t> fused;
  for (const Json& e : events_of(sim, "fused")) {
    const auto key = std::make_pair(e.at("tile")[0].get<int>(), e.at("tile")[1].get<int>());
    const uint32_t version = e.at("version").get<uint32_t>();
    const auto it = fused.find(key);
    if (it != fused.end()) CHECK(version == it->second + 1);
    fused[key] = version;
  }
  CHECK_FALSE(fused.empty());
}

TEST_CASE("scenario documents load with defaults and reject bad fields") {
  const std::string text = R"({
    "tick_ms": 20,
    "vehicles": [{"id": 4, "x": 1.0, "y": 1.0, "speed_mps": 0.5}]
  })";
  const SimConfig cfg = load_sim_config(parse_json_text(text, "scenario"), "scenario");
  CHECK(cfg.tick_ms == 20);
  CHECK(cfg.report_period_ms == 100);  // default
  REQUIRE(cfg.vehicles.size() == 1);
  CHECK(cfg.vehicles[0].id == 4);
  CHECK(cfg.vehicles[0].heading_deg == 0.0);

  auto reject = [](const std::string& body, const char* needle) {
    CHECK_THROWS_WITH_AS((void)load_sim_config(parse_json_text(body, "scenario"), "scenario"),
                         doctest::Contains(needle), ConfigError);
  };
  reject(R"({"tick_ms": 0})", "tick_ms");
  reject(R"({"segment_payload_bytes": 0})", "segment_payload_bytes");
  reject(R"({"relevance_radius": -1})", "relevance_radius");
  reject(R"({"tile_payload_bytes": 2000000})", "tile_payload_bytes");
  reject(R"({"warp_factor": 9})", "warp_factor");
  reject(R"({"vehicles": [{"id": 1, "x": 0, "y": 0}, {"id": 1, "x": 1, "y": 1}]})",
         "duplicate vehicle");
  reject(R"({"vehicles": [{"id": 1, "x": 0, "y": 0, "speed_mps": -2}]})", "speed");
}

TEST_CASE("spawning outside the garage is a configuration error") {
  SimConfig cfg = clean_link_config();
  VehicleSpawn v = stationary_vehicle();
  v.position = {100.0, 100.0};
  cfg.vehicles = {v};
  CHECK_THROWS_WITH_AS(GarageSim(one_led_layout(), cfg, 1), doctest::Contains("outside"),
                       ConfigError);
}

#ifdef VLCSIM_PRESET_DIR
TEST_CASE("the shipped garage presets run a closed loop end to end") {
  const std::string dir = VLCSIM_PRESET_DIR;
  const GarageLayout layout = load_garage_layout_file(dir + "/garage-layout.json");
  const SimConfig cfg = load_sim_config_file(dir + "/garage-scenario.json");
  GarageSim sim(layout, cfg, 1);
  sim.run(40);
  const auto s = sim.summary();
  CHECK(s.reports_sent > 0);
  CHECK(s.reports_delivered > 0);
  CHECK_FALSE(s.tiles_completed.empty());
  CHECK(replay_state_fingerprint(sim.event_log(), sim.time_ms()) == sim.state_fingerprint());
}
#endif
