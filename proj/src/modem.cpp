#include "vlcsim/modem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vlcsim/errors.hpp"
#include "vlcsim/qam.hpp"
#include "vlcsim/rng.hpp"

namespace vlcsim::phy {
namespace {

constexpr uint64_t kPreambleSeed = 0x564C4357;
constexpr unsigned kHeaderBits = 16;

std::vector<double> make_preamble(unsigned len) {
  const unsigned h = len / 2;
  std::vector<double> half(h);
  for (unsigned i = 0; i < h; ++i) half[i] = (i < (h + 1) / 2) ? 1.0 : -1.0;
  GaussianSampler rng(derive_seed(kPreambleSeed, "preamble", len));
  for (unsigned i = h - 1; i > 0; --i)
    std::swap(half[i], half[rng.uniform_below(i + 1)]);
  std::vector<double> p(half);
  p.insert(p.end(), half.begin(), half.end());
  return p;
}

double mean_over(const std::vector<double>& v, size_t begin, size_t count) {
  double s = 0.0;
  for (size_t i = 0; i < count; ++i) s += v[begin + i];
  return count ? s / static_cast<double>(count) : 0.0;
}

cplx nearest_constellation_point(cplx y, unsigned order) {
  uint8_t bits[16];
  qam_demap_symbol(y, order, bits);
  return qam_map_symbol(bits, order);
}

}  // namespace

double estimate_snr_db(const std::vector<cplx>& equalized, unsigned modulation_order) {
  if (equalized.size() < 100)
    throw DomainError("estimate_snr_db needs at least 100 symbols, got " +
                      std::to_string(equalized.size()));
  double sig = 0.0, err = 0.0;
  for (cplx y : equalized) {
    const cplx ref = nearest_constellation_point(y, modulation_order);
    sig += std::norm(ref);
    err += std::norm(y - ref);
  }
  if (err == 0.0) return kSnrCapDb;
  return 10.0 * std::log10(sig / err);
}

OfdmModem::OfdmModem(const OfdmConfig& cfg)
    : lay_(resolve_layout(cfg)),
      preamble_(make_preamble(cfg.preamble_len)),
      bias_(std::pow(10.0, cfg.dc_bias_db / 20.0)) {}

size_t OfdmModem::symbols_for_payload(size_t payload_bits) const {
  if (payload_bits == 0) return 0;
  const size_t raw = kHeaderBits + payload_bits;
  return (raw + lay_.bits_per_ofdm_symbol - 1) / lay_.bits_per_ofdm_symbol;
}

size_t OfdmModem::frame_len_reals(size_t n_symbols) const {
  return lay_.cfg.preamble_len + n_symbols * lay_.symbol_len_reals;
}

std::vector<uint8_t> OfdmModem::frame_raw_bits(const FramePayload& payload) const {
  if (payload.bits.size() > kMaxPayloadBits)
    throw FramingError("payload of " + std::to_string(payload.bits.size()) +
                       " bits exceeds the maximum frame length of " +
                       std::to_string(kMaxPayloadBits) + " bits");
  const size_t n_sym = symbols_for_payload(payload.bits.size());
  std::vector<uint8_t> raw;
  raw.reserve(n_sym * lay_.bits_per_ofdm_symbol);
  const uint16_t len = static_cast<uint16_t>(payload.bits.size());
  for (int i = 15; i >= 0; --i) raw.push_back((len >> i) & 1);
  raw.insert(raw.end(), payload.bits.begin(), payload.bits.end());
  raw.resize(n_sym * lay_.bits_per_ofdm_symbol, 0);
  return raw;
}

OfdmModem::ModulatedFrame OfdmModem::modulate_frame_detail(const FramePayload& payload) const {
  const unsigned n = lay_.cfg.n_fft;
  const unsigned cp = lay_.cfg.cp_len;
  ModulatedFrame out;
  out.ac = preamble_;
  out.n_symbols = symbols_for_payload(payload.bits.size());

  if (out.n_symbols > 0) {
    const std::vector<uint8_t> raw = frame_raw_bits(payload);
    const std::vector<cplx> syms = map_bits(raw, lay_.cfg.modulation_order);
    std::vector<double> data;
    data.reserve(out.n_symbols * lay_.symbol_len_reals);
    for (size_t m = 0; m < out.n_symbols; ++m) {
      std::vector<cplx> x(n, cplx(0.0, 0.0));
      for (size_t j = 0; j < lay_.n_data; ++j)
        x[lay_.data_indices[j]] = syms[m * lay_.n_data + j];
      for (const PilotTone& p : lay_.pilots) x[p.index] = p.value;
      if (lay_.cfg.hermitian_mode)
        for (unsigned k = 1; k < n / 2; ++k) x[n - k] = std::conj(x[k]);
      fft(x, true);
      auto emit = [&](unsigned t) {
        if (lay_.cfg.hermitian_mode) {
          data.push_back(x[t].real());
        } else {
          data.push_back(x[t].real());
          data.push_back(x[t].imag());
        }
      };
      for (unsigned t = n - cp; t < n; ++t) emit(t);
      for (unsigned t = 0; t < n; ++t) emit(t);
    }
    double power = 0.0;
    for (double d : data) power += d * d;
    const double scale = 1.0 / std::sqrt(power / static_cast<double>(data.size()));
    for (double d : data) out.ac.push_back(d * scale);
  }

  out.wave.sample_rate_hz = lay_.cfg.iq_rate_hz;
  out.wave.samples.reserve(out.ac.size());
  for (double s : out.ac) out.wave.samples.push_back(std::max(s + bias_, 0.0));
  return out;
}

Waveform OfdmModem::modulate_frame(const FramePayload& payload) const {
  return modulate_frame_detail(payload).wave;
}

size_t OfdmModem::synchronize(const Waveform& rx, double* quality_out) const {
  const std::vector<double>& r = rx.samples;
  const size_t P = lay_.cfg.preamble_len;
  const size_t L = r.size();
  if (L < P) throw SyncError("waveform of " + std::to_string(L) +
                             " samples is shorter than the " + std::to_string(P) +
                             "-sample preamble");

  const size_t h = P / 2;
  const size_t last = L - P;

  // Coarse: sliding Pearson correlation of the two preamble halves with
  // per-half means, so constant stretches (dark or idle light) have zero
  // variance and score zero instead of aliasing as a perfect plateau.
  size_t coarse_best = 0;
  double coarse_metric = -1.0;
  double sab = 0.0, sa = 0.0, sb = 0.0, sa2 = 0.0, sb2 = 0.0;
  for (size_t i = 0; i < h; ++i) {
    const double a = r[i], b = r[i + h];
    sab += a * b;
    sa += a;
    sb += b;
    sa2 += a * a;
    sb2 += b * b;
  }
  const double hn = static_cast<double>(h);
  // A later candidate must beat the incumbent by more than accumulated
  // floating-point drift, so the earliest of equal peaks wins.
  for (size_t d = 0;; ++d) {
    const double c = sab - sa * sb / hn;
    const double v1 = sa2 - sa * sa / hn;
    const double v2 = sb2 - sb * sb / hn;
    // Variances this far below the raw window power are cancellation
    // residue from constant stretches, not structure.
    const double floor1 = 1e-12 * sa2, floor2 = 1e-12 * sb2;
    const double m = (v1 > floor1 && v2 > floor2) ? c * c / (v1 * v2) : 0.0;
    if (m > coarse_metric + 1e-9) {
      coarse_metric = m;
      coarse_best = d;
    }
    if (d == last) break;
    const double a0 = r[d], b0 = r[d + h], b1 = r[d + 2 * h];
    sab += b0 * b1 - a0 * b0;
    sa += b0 - a0;
    sb += b1 - b0;
    sa2 += b0 * b0 - a0 * a0;
    sb2 += b1 * b1 - b0 * b0;
  }

  // Fine: normalized cross-correlation against the known preamble in a
  // window around the coarse candidate.
  const size_t win = 2 * lay_.cfg.n_fft;
  const size_t lo = coarse_best > win ? coarse_best - win : 0;
  const size_t hi = std::min(last, coarse_best + win);
  double ep = 0.0, psum = 0.0;
  for (double p : preamble_) {
    ep += p * p;
    psum += p;
  }
  size_t best = lo;
  double best_q = -1.0;
  for (size_t d = lo; d <= hi; ++d) {
    double c = 0.0, sum = 0.0, sum2 = 0.0;
    for (size_t i = 0; i < P; ++i) {
      const double v = r[d + i];
      c += preamble_[i] * v;
      sum += v;
      sum2 += v * v;
    }
    const double wmean = sum / static_cast<double>(P);
    c -= wmean * psum;  // psum is 0 for even half lengths
    const double er = sum2 - static_cast<double>(P) * wmean * wmean;
    const double q = (er > 1e-12 * sum2) ? c * c / (ep * er) : 0.0;
    if (q > best_q + 1e-12) {
      best_q = q;
      best = d;
    }
  }
  if (quality_out) *quality_out = best_q;
  if (best_q < kSyncQualityThreshold)
    throw SyncError("no preamble correlation above threshold (best quality " +
                    std::to_string(best_q) + ")");
  return best;
}

std::vector<cplx> OfdmModem::symbol_bins_at(const std::vector<double>& samples,
                                            size_t symbol_start, double bias_est) const {
  const unsigned n = lay_.cfg.n_fft;
  const size_t body = symbol_start + static_cast<size_t>(lay_.cfg.cp_len) * lay_.reals_per_iq;
  std::vector<cplx> x(n);
  if (lay_.cfg.hermitian_mode) {
    for (unsigned t = 0; t < n; ++t) x[t] = cplx(samples[body + t] - bias_est, 0.0);
  } else {
    for (unsigned t = 0; t < n; ++t)
      x[t] = cplx(samples[body + 2 * t] - bias_est, samples[body + 2 * t + 1] - bias_est);
  }
  fft(x, false);
  return x;
}

std::vector<cplx> OfdmModem::estimate_channel(
    const std::vector<std::vector<cplx>>& symbol_bins) const {
  const unsigned n = lay_.cfg.n_fft;
  std::vector<cplx> h(n, cplx(1.0, 0.0));
  if (lay_.pilots.empty() || symbol_bins.empty()) return h;

  std::vector<cplx> pilot_gain(lay_.pilots.size());
  for (size_t p = 0; p < lay_.pilots.size(); ++p) {
    cplx acc(0.0, 0.0);
    for (const auto& bins : symbol_bins) acc += bins[lay_.pilots[p].index];
    acc /= static_cast<double>(symbol_bins.size());
    if (std::abs(acc) == 0.0)
      throw DegenerateChannelError("zero-valued pilot observation at subcarrier " +
                                   std::to_string(lay_.pilots[p].index));
    pilot_gain[p] = acc / lay_.pilots[p].value;
  }

  // Complex-linear interpolation between pilots, constant extrapolation
  // outside the outermost pilots.
  for (unsigned k = 0; k < n; ++k) {
    const unsigned first = lay_.pilots.front().index;
    const unsigned last = lay_.pilots.back().index;
    if (k <= first) {
      h[k] = pilot_gain.front();
    } else if (k >= last) {
      h[k] = pilot_gain.back();
    } else {
      size_t p = 0;
      while (lay_.pilots[p + 1].index < k) ++p;
      const double x0 = lay_.pilots[p].index, x1 = lay_.pilots[p + 1].index;
      const double t = (static_cast<double>(k) - x0) / (x1 - x0);
      h[k] = pilot_gain[p] * (1.0 - t) + pilot_gain[p + 1] * t;
    }
  }
  return h;
}

std::vector<uint8_t> OfdmModem::equalize_and_demap(const std::vector<std::vector<cplx>>& bins,
                                                   LinkMetrics* metrics) const {
  const std::vector<cplx> h = estimate_channel(bins);
  std::vector<cplx> eq;
  eq.reserve(bins.size() * lay_.n_data);
  for (const auto& sym : bins)
    for (unsigned k : lay_.data_indices) {
      const cplx g = (std::abs(h[k]) < 1e-300) ? cplx(1.0, 0.0) : h[k];
      eq.push_back(sym[k] / g);
    }

  if (metrics) {
    double sig = 0.0, err = 0.0;
    for (cplx y : eq) {
      const cplx ref = nearest_constellation_point(y, lay_.cfg.modulation_order);
      sig += std::norm(ref);
      err += std::norm(y - ref);
    }
    metrics->evm_signal_sum = sig;
    metrics->evm_error_sum = err;
    metrics->equalized_symbols = eq.size();
    metrics->snr_db = eq.empty() ? std::numeric_limits<double>::quiet_NaN()
                     : (err == 0.0 ? kSnrCapDb : 10.0 * std::log10(sig / err));
  }
  return demap_symbols(eq, lay_.cfg.modulation_order);
}

DemodResult OfdmModem::demodulate_frame(const Waveform& rx) const {
  DemodResult res;
  double quality = 0.0;
  const size_t start = synchronize(rx, &quality);
  res.frame_start = start;
  res.metrics.sync_quality = quality;

  const size_t P = lay_.cfg.preamble_len;
  const double bias_est = mean_over(rx.samples, start, P);
  const size_t data_begin = start + P;
  const size_t navail = (rx.samples.size() - data_begin) / lay_.symbol_len_reals;

  if (navail == 0) {
    res.frame_end = data_begin;
    res.metrics.snr_db = std::numeric_limits<double>::quiet_NaN();
    return res;
  }

  std::vector<std::vector<cplx>> bins;
  bins.reserve(navail);
  for (size_t m = 0; m < navail; ++m)
    bins.push_back(symbol_bins_at(rx.samples, data_begin + m * lay_.symbol_len_reals, bias_est));

  // Decode the header from the first symbol to learn the frame extent.
  std::vector<uint8_t> all = equalize_and_demap(bins, nullptr);
  uint16_t payload_bits = 0;
  for (unsigned i = 0; i < 16; ++i)
    payload_bits = static_cast<uint16_t>((payload_bits << 1) | (all[i] & 1));

  const size_t needed = (kHeaderBits + payload_bits + lay_.bits_per_ofdm_symbol - 1) /
                        lay_.bits_per_ofdm_symbol;
  if (needed > navail)
    throw FramingError("truncated frame: header declares " + std::to_string(payload_bits) +
                       " payload bits (" + std::to_string(needed) + " symbols) but only " +
                       std::to_string(navail) + " symbols are present");

  bins.resize(needed);
  std::vector<uint8_t> raw = equalize_and_demap(bins, &res.metrics);
  res.metrics.sync_quality = quality;
  res.metrics.raw_bits = raw.size();
  res.metrics.frame_bits = payload_bits;
  res.payload.bits.assign(raw.begin() + kHeaderBits, raw.begin() + kHeaderBits + payload_bits);
  res.frame_end = data_begin + needed * lay_.symbol_len_reals;
  return res;
}

std::vector<uint8_t> OfdmModem::demodulate_raw(const Waveform& rx, size_t frame_start,
                                               size_t n_symbols, LinkMetrics* metrics) const {
  const size_t P = lay_.cfg.preamble_len;
  if (frame_start + frame_len_reals(n_symbols) > rx.samples.size())
    throw FramingError("waveform too short for " + std::to_string(n_symbols) +
                       " symbols at offset " + std::to_string(frame_start));
  const double bias_est = mean_over(rx.samples, frame_start, P);
  const size_t data_begin = frame_start + P;
  std::vector<std::vector<cplx>> bins;
  bins.reserve(n_symbols);
  for (size_t m = 0; m < n_symbols; ++m)
    bins.push_back(symbol_bins_at(rx.samples, data_begin + m * lay_.symbol_len_reals, bias_est));
  std::vector<uint8_t> raw = equalize_and_demap(bins, metrics);
  if (metrics) {
    metrics->raw_bits = raw.size();
    metrics->frame_bits = 0;
  }
  return raw;
}

}  // namespace vlcsim::phy
