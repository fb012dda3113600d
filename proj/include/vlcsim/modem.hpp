#pragma once
#include <cstdint>
#include <vector>

#include "vlcsim/ofdm_config.hpp"
#include "vlcsim/waveform.hpp"

namespace vlcsim::phy {

struct FramePayload {
  std::vector<uint8_t> bits;
};

struct LinkMetrics {
  double snr_db = 0.0;            // decision-directed EVM estimate
  uint64_t frame_bits = 0;        // payload bits
  uint64_t raw_bits = 0;          // header + payload + padding bits
  double sync_quality = 0.0;
  // EVM accumulators so callers can pool the estimate across frames.
  double evm_signal_sum = 0.0;
  double evm_error_sum = 0.0;
  uint64_t equalized_symbols = 0;
};

struct DemodResult {
  FramePayload payload;
  LinkMetrics metrics;
  size_t frame_start = 0;
  size_t frame_end = 0;  // one past the last sample the frame occupies
};

// Cap used in place of +infinity when the error power is zero.
inline constexpr double kSnrCapDb = 200.0;
// Minimum normalized preamble cross-correlation for a sync to count.
inline constexpr double kSyncQualityThreshold = 0.3;

// Decision-directed SNR estimate over equalized symbols. Requires at least
// 100 symbols; zero error power returns the kSnrCapDb sentinel.
double estimate_snr_db(const std::vector<cplx>& equalized, unsigned modulation_order);

// Frame structure: preamble (two identical pseudo-random zero-mean +-1
// halves), then OFDM symbols carrying a 16-bit payload-length header, the
// payload, and zero padding. The preamble and the symbol section are each
// scaled to unit RMS before the DC bias is added and negatives are clipped.
class OfdmModem {
 public:
  static constexpr uint64_t kMaxPayloadBits = 65535;

  explicit OfdmModem(const OfdmConfig& cfg);  // throws ConfigError

  const OfdmLayout& layout() const { return lay_; }
  const std::vector<double>& preamble() const { return preamble_; }
  double dc_bias_linear() const { return bias_; }

  size_t symbols_for_payload(size_t payload_bits) const;
  size_t frame_len_reals(size_t n_symbols) const;
  // 16-bit length header + payload + zero padding to the symbol boundary.
  std::vector<uint8_t> frame_raw_bits(const FramePayload& payload) const;

  struct ModulatedFrame {
    std::vector<double> ac;  // pre-bias signal, unit RMS
    Waveform wave;
    size_t n_symbols = 0;
  };
  ModulatedFrame modulate_frame_detail(const FramePayload& payload) const;
  Waveform modulate_frame(const FramePayload& payload) const;

  // Best frame-start index by coarse half-autocorrelation plus refined
  // normalized cross-correlation; throws SyncError below the quality
  // threshold. *quality_out receives the refined metric when non-null.
  size_t synchronize(const Waveform& rx, double* quality_out = nullptr) const;

  // Pooled least-squares channel estimate from the pilot bins of all given
  // symbols, complex-linearly interpolated across bins with constant
  // extrapolation at the edges. Returns one gain per subcarrier.
  std::vector<cplx> estimate_channel(const std::vector<std::vector<cplx>>& symbol_bins) const;

  // Sync, bias removal, CP strip, FFT, equalization, hard demap, header
  // strip.
  DemodResult demodulate_frame(const Waveform& rx) const;

  // Measurement-path demodulation with known frame start and symbol count;
  // returns all raw bits (header + payload + padding) without interpreting
  // the header.
  std::vector<uint8_t> demodulate_raw(const Waveform& rx, size_t frame_start, size_t n_symbols,
                                      LinkMetrics* metrics) const;

 private:
  std::vector<cplx> symbol_bins_at(const std::vector<double>& samples, size_t symbol_start,
                                   double bias_est) const;
  std::vector<uint8_t> equalize_and_demap(const std::vector<std::vector<cplx>>& bins,
                                          LinkMetrics* metrics) const;

  OfdmLayout lay_;
  std::vector<double> preamble_;
  double bias_ = 0.0;
};

}  // namespace vlcsim::phy
