#pragma once
#include <cstdint>
#include <vector>

#include "vlcsim/fft.hpp"

namespace vlcsim::phy {

struct PilotTone {
  unsigned index = 0;
  cplx value{1.0, 0.0};  // unit magnitude
};

// Modem parameter set. hermitian_mode=false is "fullband" accounting: all
// non-pilot bins (including DC and Nyquist) carry data and the frame is
// serialized as interleaved I,Q reals. hermitian_mode=true loads bins
// [1, n_fft/2) with conjugate mirroring, producing a real time signal with
// half the data capacity.
struct OfdmConfig {
  unsigned n_fft = 64;
  unsigned n_pilot = 4;
  unsigned modulation_order = 4;
  double iq_rate_hz = 200000.0;
  unsigned cp_len = 16;
  bool hermitian_mode = false;
  double dc_bias_db = 7.0;              // bias relative to unit AC RMS
  std::vector<PilotTone> pilot_pattern; // empty -> default evenly spaced pattern
  unsigned preamble_len = 128;          // real samples; even
};

// Validated, resolved view of a config.
struct OfdmLayout {
  OfdmConfig cfg;
  std::vector<PilotTone> pilots;        // resolved, sorted by index
  std::vector<unsigned> data_indices;   // sorted ascending
  unsigned n_data = 0;                  // data bins per OFDM symbol
  unsigned bits_per_sym = 0;            // per QAM symbol
  unsigned reals_per_iq = 2;            // 1 in hermitian mode
  unsigned bits_per_ofdm_symbol = 0;    // n_data * bits_per_sym
  unsigned symbol_len_reals = 0;        // (cp_len + n_fft) * reals_per_iq
};

// Evenly spaced pilots over the allowed index set with unit-magnitude
// pseudo-random phases from a fixed seed.
std::vector<PilotTone> default_pilot_pattern(unsigned n_fft, unsigned n_pilot,
                                             bool hermitian_mode);

// Validates and resolves; throws ConfigError naming the offending field.
OfdmLayout resolve_layout(const OfdmConfig& cfg);

// iq_rate_hz * bits_per_sym * n_data / (n_fft + cp_len).
double compute_data_rate(const OfdmConfig& cfg);

}  // namespace vlcsim::phy
