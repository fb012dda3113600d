#include "vlcsim/ber_harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "vlcsim/mathutil.hpp"
#include "vlcsim/modem.hpp"
#include "vlcsim/qam.hpp"
#include "vlcsim/rng.hpp"

namespace vlcsim::harness {

double theoretical_ber_qam(double snr_per_symbol_db, unsigned modulation_order) {
  if (!phy::is_supported_qam_order(modulation_order))
    throw ConfigError("unsupported modulation order " + std::to_string(modulation_order));
  if (!std::isfinite(snr_per_symbol_db))
    throw DomainError("SNR must be finite");
  const double gs = std::pow(10.0, snr_per_symbol_db / 10.0);
  const unsigned bits = phy::bits_per_qam_symbol(modulation_order);
  const unsigned levels = 1u << (bits / 2);
  const unsigned bits_per_axis = bits / 2;
  const double x = std::sqrt(3.0 * gs / (modulation_order - 1.0));

  // Exact per-bit error probability of Gray-coded L-PAM on each axis,
  // averaged over the bit positions (Cho-Yoon closed form).
  double total = 0.0;
  for (unsigned k = 1; k <= bits_per_axis; ++k) {
    const unsigned span = 1u << (k - 1);
    const unsigned imax = levels - (levels >> k);
    double pk = 0.0;
    for (unsigned i = 0; i < imax; ++i) {
      const double sign = ((i * span / levels) % 2 == 0) ? 1.0 : -1.0;
      const double weight =
          static_cast<double>(span) -
          std::floor(static_cast<double>(i) * span / levels + 0.5);
      pk += sign * weight * q_function((2.0 * i + 1.0) * x);
    }
    total += (2.0 / levels) * pk;
  }
  return total / bits_per_axis;
}

namespace {

phy::FramePayload random_payload(uint64_t seed, uint64_t n_bits) {
  GaussianSampler prng(seed);
  phy::FramePayload payload;
  payload.bits.resize(n_bits);
  uint64_t word = 0;
  unsigned avail = 0;
  for (auto& b : payload.bits) {
    if (avail == 0) {
      word = prng.next_u64();
      avail = 64;
    }
    b = static_cast<uint8_t>(word & 1);
    word >>= 1;
    --avail;
  }
  return payload;
}

}  // namespace

BerResult run_ber_point(const phy::OfdmConfig& modem_cfg, const ChannelScenario& scenario,
                        const BerPolicy& policy, uint64_t seed) {
  const phy::OfdmModem modem(modem_cfg);
  const double gain = scenario_link_gain(scenario);

  BerResult res;
  double sig_sum = 0.0, err_sum = 0.0;
  uint64_t frame_idx = 0;
  while (res.bits_sent < policy.min_bits ||
         (res.bit_errors < policy.min_errors && res.bits_sent < policy.max_bits)) {
    const phy::FramePayload payload =
        random_payload(derive_seed(seed, "payload", frame_idx), policy.frame_payload_bits);
    const std::vector<uint8_t> raw_tx = modem.frame_raw_bits(payload);
    const Waveform tx = modem.modulate_frame(payload);
    const Waveform rx =
        optics::apply_channel(tx, gain, scenario.detector.responsivity_a_per_w, scenario.noise,
                              derive_seed(seed, "noise", frame_idx));

    size_t start = 0;
    try {
      start = modem.synchronize(rx);
    } catch (const SyncError&) {
      ++res.sync_failures;
      start = 0;
    }
    const size_t n_symbols = modem.symbols_for_payload(payload.bits.size());
    if (start + modem.frame_len_reals(n_symbols) > rx.samples.size()) start = 0;

    phy::LinkMetrics metrics;
    const std::vector<uint8_t> raw_rx = modem.demodulate_raw(rx, start, n_symbols, &metrics);
    for (size_t i = 0; i < raw_tx.size(); ++i)
      res.bit_errors += raw_tx[i] != raw_rx[i];
    res.bits_sent += raw_tx.size();
    sig_sum += metrics.evm_signal_sum;
    err_sum += metrics.evm_error_sum;
    ++frame_idx;
  }

  res.ber = res.bits_sent ? static_cast<double>(res.bit_errors) / res.bits_sent : 0.0;
  res.measured_snr_db =
      err_sum > 0.0 ? std::min(10.0 * std::log10(sig_sum / err_sum), phy::kSnrCapDb)
                    : phy::kSnrCapDb;
  return res;
}

std::vector<BerResult> run_sweep(const SweepDocument& doc, uint64_t master_seed) {
  std::vector<BerResult> results;
  results.reserve(doc.sweep.values.size());
  for (size_t i = 0; i < doc.sweep.values.size(); ++i) {
    const double v = doc.sweep.values[i];
    ChannelScenario sc = doc.scenario;
    std::string axis;
    switch (doc.sweep.axis) {
      case SweepAxis::SnrDb:
        axis = "snr_db";
        sc.noise.mode = optics::NoiseMode::FixedElectricalSnrDb;
        sc.noise.value = v;
        break;
      case SweepAxis::DistanceM:
        axis = "distance_m";
        if (sc.kind == ChannelScenario::Kind::Los)
          sc.los.distance_m = v;
        else
          sc.leg2.distance_m = v;
        break;
      case SweepAxis::IncidenceAngleDeg:
        axis = "incidence_angle_deg";
        if (sc.kind == ChannelScenario::Kind::Los)
          sc.los.incidence_angle_deg = v;
        else
          sc.leg2.incidence_angle_deg = v;
        break;
    }
    BerResult r =
        run_ber_point(doc.modem, sc, doc.sweep.policy, derive_seed(master_seed, "sweep-point", i));
    r.axis = axis;
    r.value = v;
    results.push_back(r);
  }
  return results;
}

namespace {

std::string num(double v) { return Json(v).dump(); }

void wilson_interval(uint64_t errors, uint64_t bits, double* lo, double* hi) {
  if (bits == 0) {
    *lo = 0.0;
    *hi = 1.0;
    return;
  }
  const double z = 1.96;
  const double n = static_cast<double>(bits);
  const double p = static_cast<double>(errors) / n;
  const double denom = 1.0 + z * z / n;
  const double center = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  *lo = std::max(0.0, center - half);
  *hi = std::min(1.0, center + half);
}

}  // namespace

std::string format_results(const std::vector<BerResult>& results, ResultFormat format) {
  if (format == ResultFormat::Csv) {
    std::string out = "axis,value,bits_sent,bit_errors,ber,measured_snr_db,sync_failures\n";
    for (const BerResult& r : results) {
      out += r.axis;
      out += ',';
      out += num(r.value);
      out += ',';
      out += std::to_string(r.bits_sent);
      out += ',';
      out += std::to_string(r.bit_errors);
      out += ',';
      out += num(r.ber);
      out += ',';
      out += num(r.measured_snr_db);
      out += ',';
      out += std::to_string(r.sync_failures);
      out += '\n';
    }
    return out;
  }
  Json arr = Json::array();
  for (const BerResult& r : results) {
    double lo = 0.0, hi = 1.0;
    wilson_interval(r.bit_errors, r.bits_sent, &lo, &hi);
    arr.push_back(Json{{"axis", r.axis},
                       {"value", r.value},
                       {"bits_sent", r.bits_sent},
                       {"bit_errors", r.bit_errors},
                       {"ber", r.ber},
                       {"measured_snr_db", r.measured_snr_db},
                       {"sync_failures", r.sync_failures},
                       {"ber_ci_low", lo},
                       {"ber_ci_high", hi}});
  }
  return arr.dump(2) + "\n";
}

void write_results(const std::vector<BerResult>& results, const std::string& path,
                   ResultFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << format_results(results, format);
  if (!out) throw IoError(path + ": write failed");
}

std::vector<BerResult> parse_results_json(const std::string& text) {
  const Json j = parse_json_text(text, "results");
  if (!j.is_array()) throw ConfigError("results: expected a JSON array");
  std::vector<BerResult> out;
  for (size_t i = 0; i < j.size(); ++i) {
    JsonObject o(j[i], "results[" + std::to_string(i) + "]");
    BerResult r;
    r.axis = o.text("axis");
    r.value = o.number("value");
    r.bits_sent = o.uinteger("bits_sent");
    r.bit_errors = o.uinteger("bit_errors");
    r.ber = o.number("ber");
    r.measured_snr_db = o.number("measured_snr_db");
    r.sync_failures = o.uinteger("sync_failures");
    o.number_or("ber_ci_low", 0.0);
    o.number_or("ber_ci_high", 1.0);
    o.finish();
    out.push_back(r);
  }
  return out;
}

}  // namespace vlcsim::harness
