#include <doctest.h>

#include <cmath>
#include <vector>

#include "vlcsim/errors.hpp"
#include "vlcsim/ofdm_config.hpp"

using namespace vlcsim;
using namespace vlcsim::phy;

namespace {

OfdmConfig fullband_config() {
  OfdmConfig cfg;
  cfg.n_fft = 64;
  cfg.n_pilot = 4;
  cfg.modulation_order = 4;
  cfg.iq_rate_hz = 200000.0;
  cfg.cp_len = 0;
  cfg.hermitian_mode = false;
  return cfg;
}

}  // namespace

TEST_CASE("headline data rate is exactly 375 kbps") {
  // 200 kHz * 2 bits * 60 data bins / 64 bins.
  CHECK(compute_data_rate(fullband_config()) == 375000.0);
}

TEST_CASE("hermitian mode with a cyclic prefix") {
  OfdmConfig cfg = fullband_config();
  cfg.hermitian_mode = true;
  cfg.cp_len = 16;
  // 27 data bins of [1, 32) after 4 pilots, over 80 transmitted samples.
  CHECK(compute_data_rate(cfg) == 135000.0);
  const OfdmLayout lay = resolve_layout(cfg);
  CHECK(lay.n_data == 27);
  CHECK(lay.reals_per_iq == 1);
  CHECK(lay.symbol_len_reals == 80);
}

TEST_CASE("rate scales with pilot count and modulation order") {
  OfdmConfig cfg = fullband_config();
  cfg.n_pilot = 0;
  CHECK(compute_data_rate(cfg) == 400000.0);
  cfg = fullband_config();
  cfg.modulation_order = 16;
  CHECK(compute_data_rate(cfg) == 750000.0);
}

TEST_CASE("default pilot placement is evenly spread and reproducible") {
  const std::vector<PilotTone> p = default_pilot_pattern(64, 4, false);
  REQUIRE(p.size() == 4);
  CHECK(p[0].index == 8);
  CHECK(p[1].index == 24);
  CHECK(p[2].index == 40);
  CHECK(p[3].index == 56);
  const std::vector<PilotTone> h = default_pilot_pattern(64, 4, true);
  REQUIRE(h.size() == 4);
  CHECK(h[0].index == 4);
  CHECK(h[1].index == 12);
  CHECK(h[2].index == 20);
  CHECK(h[3].index == 28);
  for (const PilotTone& t : p) CHECK(std::abs(std::abs(t.value) - 1.0) < 1e-12);
  const std::vector<PilotTone> again = default_pilot_pattern(64, 4, false);
  for (size_t i = 0; i < 4; ++i) {
    CHECK(again[i].index == p[i].index);
    CHECK(again[i].value == p[i].value);
  }
}

TEST_CASE("resolved layout partitions the bins") {
  const OfdmLayout lay = resolve_layout(fullband_config());
  CHECK(lay.n_data == 60);
  CHECK(lay.bits_per_sym == 2);
  CHECK(lay.bits_per_ofdm_symbol == 120);
  CHECK(lay.reals_per_iq == 2);
  CHECK(lay.symbol_len_reals == 128);
  REQUIRE(lay.data_indices.size() == 60);
  CHECK(lay.data_indices.front() == 0);  // the bias bin carries data
  for (size_t i = 1; i < lay.data_indices.size(); ++i)
    CHECK(lay.data_indices[i] > lay.data_indices[i - 1]);
  for (const PilotTone& t : lay.pilots)
    for (unsigned d : lay.data_indices) CHECK(d != t.index);
}

TEST_CASE("explicit pilot patterns are honoured") {
  OfdmConfig cfg = fullband_config();
  cfg.n_pilot = 2;
  cfg.pilot_pattern = {{10, cplx(0.0, 1.0)}, {50, cplx(-1.0, 0.0)}};
  const OfdmLayout lay = resolve_layout(cfg);
  CHECK(lay.n_data == 62);
  CHECK(lay.pilots[0].index == 10);
  CHECK(lay.pilots[1].index == 50);
}

TEST_CASE("invalid configurations are rejected with the field named") {
  OfdmConfig cfg = fullband_config();
  cfg.n_fft = 48;
  CHECK_THROWS_WITH_AS(resolve_layout(cfg), doctest::Contains("n_fft"), ConfigError);

  cfg = fullband_config();
  cfg.modulation_order = 8;
  CHECK_THROWS_WITH_AS(resolve_layout(cfg), doctest::Contains("modulation_order"), ConfigError);

  cfg = fullband_config();
  cfg.cp_len = 64;
  CHECK_THROWS_WITH_AS(resolve_layout(cfg), doctest::Contains("cp_len"), ConfigError);

  cfg = fullband_config();
  cfg.iq_rate_hz = 0.0;
  CHECK_THROWS_WITH_AS(resolve_layout(cfg), doctest::Contains("iq_rate_hz"), ConfigError);

  cfg = fullband_config();
  cfg.preamble_len = 31;
  CHECK_THROWS_WITH_AS(resolve_layout(cfg), doctest::Contains("preamble_len"), ConfigError);

  cfg = fullband_config();
  cfg.n_pilot = 64;
  CHECK_THROWS_WITH_AS(resolve_layout(cfg), doctest::Contains("n_pilot"), ConfigError);

  cfg = fullband_config();
  cfg.n_pilot = 1;
  cfg.pilot_pattern = {{0, cplx(1.0, 0.0)}};
  CHECK_THROWS_WITH_AS(resolve_layout(cfg), doctest::Contains("pilot_pattern"), ConfigError);

  cfg.pilot_pattern = {{64, cplx(1.0, 0.0)}};
  CHECK_THROWS_AS(resolve_layout(cfg), ConfigError);

  cfg.n_pilot = 2;
  cfg.pilot_pattern = {{10, cplx(1.0, 0.0)}, {10, cplx(1.0, 0.0)}};
  CHECK_THROWS_WITH_AS(resolve_layout(cfg), doctest::Contains("duplicate"), ConfigError);

  cfg.pilot_pattern = {{10, cplx(0.5, 0.0)}, {20, cplx(1.0, 0.0)}};
  CHECK_THROWS_WITH_AS(resolve_layout(cfg), doctest::Contains("magnitude"), ConfigError);

  cfg = fullband_config();
  cfg.hermitian_mode = true;
  cfg.n_pilot = 1;
  cfg.pilot_pattern = {{40, cplx(1.0, 0.0)}};  // outside [1, 32)
  CHECK_THROWS_AS(resolve_layout(cfg), ConfigError);
}
