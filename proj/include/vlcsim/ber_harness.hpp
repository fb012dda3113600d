#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vlcsim/scenario.hpp"

namespace vlcsim::harness {

struct BerResult {
  std::string axis;
  double value = 0.0;
  uint64_t bits_sent = 0;
  uint64_t bit_errors = 0;
  double ber = 0.0;
  double measured_snr_db = 0.0;
  uint64_t sync_failures = 0;
};

// Exact bit error rate of Gray-coded square QAM over AWGN at the given
// per-symbol SNR (Es/N0). For order 4 this reduces to Q(sqrt(Es/N0)).
double theoretical_ber_qam(double snr_per_symbol_db, unsigned modulation_order = 4);

// Monte Carlo BER for one channel point: seeded random frames through
// modulate -> apply_channel -> synchronize -> demap, errors counted over
// every raw frame bit. Runs until min_bits is reached, then continues until
// min_errors errors or max_bits. Frames that fail sync are counted and
// force-decoded at offset zero so their bits stay in the denominator.
BerResult run_ber_point(const phy::OfdmConfig& modem_cfg, const ChannelScenario& scenario,
                        const BerPolicy& policy, uint64_t seed);

// One BerResult per axis value, in input order. Per-point seeds derive from
// (master_seed, point index) so a parallel evaluation would match this
// sequential one.
std::vector<BerResult> run_sweep(const SweepDocument& doc, uint64_t master_seed);

enum class ResultFormat { Csv, Json };

// CSV columns: axis,value,bits_sent,bit_errors,ber,measured_snr_db,
// sync_failures. JSON mirrors the fields and adds a Wilson 95% interval on
// the BER (ber_ci_low, ber_ci_high).
std::string format_results(const std::vector<BerResult>& results, ResultFormat format);
void write_results(const std::vector<BerResult>& results, const std::string& path,
                   ResultFormat format);
std::vector<BerResult> parse_results_json(const std::string& text);

}  // namespace vlcsim::harness
