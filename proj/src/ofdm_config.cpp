#include "vlcsim/ofdm_config.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "vlcsim/errors.hpp"
#include "vlcsim/qam.hpp"
#include "vlcsim/rng.hpp"

namespace vlcsim::phy {
namespace {

constexpr uint64_t kPilotPhaseSeed = 0x564C4357;  // "VLCW"

// Index set pilots and data may occupy. Full-band I/Q mode excludes only DC
// (pilots must not sit on the bias bin); hermitian mode uses [1, n_fft/2).
std::vector<unsigned> pilot_candidate_indices(unsigned n_fft, bool hermitian_mode) {
  std::vector<unsigned> u;
  const unsigned hi = hermitian_mode ? n_fft / 2 : n_fft;
  for (unsigned k = 1; k < hi; ++k) u.push_back(k);
  return u;
}

}  // namespace

std::vector<PilotTone> default_pilot_pattern(unsigned n_fft, unsigned n_pilot,
                                             bool hermitian_mode) {
  const std::vector<unsigned> u = pilot_candidate_indices(n_fft, hermitian_mode);
  GaussianSampler rng(derive_seed(kPilotPhaseSeed, "pilot-phase"));
  std::vector<PilotTone> pilots;
  pilots.reserve(n_pilot);
  for (unsigned j = 0; j < n_pilot; ++j) {
    const size_t rank = static_cast<size_t>((j + 0.5) * static_cast<double>(u.size()) / n_pilot);
    const double phase = 2.0 * std::numbers::pi * rng.uniform01();
    pilots.push_back({u[rank], cplx(std::cos(phase), std::sin(phase))});
  }
  return pilots;
}

OfdmLayout resolve_layout(const OfdmConfig& cfg) {
  if (cfg.n_fft < 4 || !std::has_single_bit(cfg.n_fft))
    throw ConfigError("n_fft must be a power of two >= 4, got " + std::to_string(cfg.n_fft));
  if (!is_supported_qam_order(cfg.modulation_order))
    throw ConfigError("modulation_order must be a power of 4 and at least 4, got " +
                      std::to_string(cfg.modulation_order));
  if (!(cfg.iq_rate_hz > 0.0) || !std::isfinite(cfg.iq_rate_hz))
    throw ConfigError("iq_rate_hz must be positive and finite");
  if (cfg.cp_len >= cfg.n_fft)
    throw ConfigError("cp_len must be smaller than n_fft, got " + std::to_string(cfg.cp_len));
  if (!std::isfinite(cfg.dc_bias_db)) throw ConfigError("dc_bias_db must be finite");
  if (cfg.preamble_len < 2 || cfg.preamble_len % 2 != 0)
    throw ConfigError("preamble_len must be even and at least 2, got " +
                      std::to_string(cfg.preamble_len));

  const unsigned usable = cfg.hermitian_mode ? cfg.n_fft / 2 - 1 : cfg.n_fft;
  if (cfg.n_pilot >= usable)
    throw ConfigError("n_pilot must be smaller than the number of usable subcarriers (" +
                      std::to_string(usable) + "), got " + std::to_string(cfg.n_pilot));

  OfdmLayout lay;
  lay.cfg = cfg;
  lay.pilots = cfg.pilot_pattern.empty()
                   ? default_pilot_pattern(cfg.n_fft, cfg.n_pilot, cfg.hermitian_mode)
                   : cfg.pilot_pattern;
  if (lay.pilots.size() != cfg.n_pilot)
    throw ConfigError("pilot_pattern has " + std::to_string(lay.pilots.size()) +
                      " entries but n_pilot is " + std::to_string(cfg.n_pilot));

  std::sort(lay.pilots.begin(), lay.pilots.end(),
            [](const PilotTone& a, const PilotTone& b) { return a.index < b.index; });
  std::set<unsigned> pilot_idx;
  const unsigned pilot_hi = cfg.hermitian_mode ? cfg.n_fft / 2 : cfg.n_fft;
  for (const PilotTone& p : lay.pilots) {
    if (p.index == 0 || p.index >= pilot_hi)
      throw ConfigError("pilot_pattern index " + std::to_string(p.index) +
                        " outside the allowed range [1, " + std::to_string(pilot_hi) + ")");
    if (!pilot_idx.insert(p.index).second)
      throw ConfigError("pilot_pattern contains duplicate index " + std::to_string(p.index));
    if (std::fabs(std::abs(p.value) - 1.0) > 1e-9)
      throw ConfigError("pilot_pattern value at index " + std::to_string(p.index) +
                        " must have unit magnitude");
  }

  const unsigned data_hi = cfg.hermitian_mode ? cfg.n_fft / 2 : cfg.n_fft;
  const unsigned data_lo = cfg.hermitian_mode ? 1 : 0;
  for (unsigned k = data_lo; k < data_hi; ++k)
    if (!pilot_idx.count(k)) lay.data_indices.push_back(k);

  lay.n_data = static_cast<unsigned>(lay.data_indices.size());
  lay.bits_per_sym = bits_per_qam_symbol(cfg.modulation_order);
  lay.reals_per_iq = cfg.hermitian_mode ? 1 : 2;
  lay.bits_per_ofdm_symbol = lay.n_data * lay.bits_per_sym;
  lay.symbol_len_reals = (cfg.cp_len + cfg.n_fft) * lay.reals_per_iq;
  return lay;
}

double compute_data_rate(const OfdmConfig& cfg) {
  const OfdmLayout lay = resolve_layout(cfg);
  return cfg.iq_rate_hz * static_cast<double>(lay.bits_per_sym) *
         static_cast<double>(lay.n_data) / static_cast<double>(cfg.n_fft + cfg.cp_len);
}

}  // namespace vlcsim::phy
