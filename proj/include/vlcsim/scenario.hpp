#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vlcsim/json_strict.hpp"
#include "vlcsim/modem.hpp"
#include "vlcsim/ofdm_config.hpp"
#include "vlcsim/optical_channel.hpp"

namespace vlcsim::harness {

// Modem settings parsed from JSON. Unknown fields are rejected so typos
// surface as ConfigError instead of silently falling back to defaults.
phy::OfdmConfig load_ofdm_config(const Json& j, const std::string& context);
phy::OfdmConfig load_ofdm_config_file(const std::string& path);

// One emitter-to-detector link: either direct line of sight or a single
// wall bounce (optionally summed with a residual direct path).
struct ChannelScenario {
  enum class Kind { Los, Dlos };
  Kind kind = Kind::Los;
  optics::LedSpec led;
  optics::DetectorSpec detector;
  optics::LinkGeometry los;            // kind == Los
  double wall_reflectance = 0.0;       // kind == Dlos
  double wall_patch_area_m2 = 0.0;     // kind == Dlos
  optics::LinkGeometry leg1;           // emitter to wall patch
  optics::LinkGeometry leg2;           // wall patch to detector
  bool has_partial_los = false;
  optics::LinkGeometry partial_los;    // residual direct path added to the bounce
  optics::NoiseSpec noise;
};

ChannelScenario load_channel_scenario(const Json& j, const std::string& context);

// DC channel gain in W/W for the configured geometry (before responsivity).
double scenario_link_gain(const ChannelScenario& sc);

enum class SweepAxis { SnrDb, DistanceM, IncidenceAngleDeg };

// Stopping rule for one Monte Carlo point: always send min_bits, then keep
// going until min_errors errors are seen or max_bits is reached.
struct BerPolicy {
  uint64_t min_bits = 100000;
  uint64_t min_errors = 100;
  uint64_t max_bits = 100000000;
  uint64_t frame_payload_bits = 7184;
};

struct SweepSpec {
  SweepAxis axis = SweepAxis::SnrDb;
  std::vector<double> values;
  BerPolicy policy;
};

struct SweepDocument {
  phy::OfdmConfig modem;
  ChannelScenario scenario;
  SweepSpec sweep;
};

SweepDocument load_sweep_document(const Json& j, const std::string& context);
SweepDocument load_sweep_document_file(const std::string& path);

}  // namespace vlcsim::harness
