#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vlcsim/ber_harness.hpp"
#include "vlcsim/errors.hpp"
#include "vlcsim/modem.hpp"
#include "vlcsim/scenario.hpp"
#include "vlcsim/simulation.hpp"
#include "vlcsim/waveform.hpp"

namespace {

using namespace vlcsim;

std::string format_number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15)
    return std::to_string(static_cast<long long>(v));
  return Json(v).dump();
}

phy::OfdmConfig config_or_default(const std::string& path) {
  return path.empty() ? phy::OfdmConfig{} : harness::load_ofdm_config_file(path);
}

int run_rate(const std::string& config_path) {
  const phy::OfdmConfig cfg = config_or_default(config_path);
  const double rate = phy::compute_data_rate(cfg);
  std::cout << "data rate: " << format_number(rate) << " bps\n";
  return 0;
}

// Whole-byte frame ceiling below the 16-bit payload-length limit.
constexpr size_t kFrameChunkBits = (phy::OfdmModem::kMaxPayloadBits / 8) * 8;

int run_modulate(const std::string& in_path, const std::string& config_path,
                 const std::string& out_path) {
  const phy::OfdmConfig cfg = config_or_default(config_path);
  const phy::OfdmModem modem(cfg);
  const std::vector<uint8_t> bits = read_bits(in_path);
  if (bits.empty())
    std::cerr << "warning: empty input, writing a preamble-only frame\n";

  Waveform all;
  all.sample_rate_hz = cfg.iq_rate_hz;
  size_t frames = 0;
  size_t offset = 0;
  do {
    const size_t n = std::min(kFrameChunkBits, bits.size() - offset);
    phy::FramePayload payload;
    payload.bits.assign(bits.begin() + offset, bits.begin() + offset + n);
    const Waveform w = modem.modulate_frame(payload);
    all.samples.insert(all.samples.end(), w.samples.begin(), w.samples.end());
    ++frames;
    offset += n;
  } while (offset < bits.size());
  write_waveform(all, out_path);

  std::cout << "frames: " << frames << "\n";
  std::cout << "payload bits: " << bits.size() << "\n";
  std::cout << "samples: " << all.samples.size() << "\n";
  std::cout << "data rate: " << format_number(phy::compute_data_rate(cfg)) << " bps\n";
  return 0;
}

int run_demodulate(const std::string& in_path, const std::string& config_path,
                   const std::string& out_path, const std::string& metrics_path) {
  const phy::OfdmConfig cfg = config_or_default(config_path);
  const phy::OfdmModem modem(cfg);
  const Waveform rx = read_waveform(in_path);

  std::vector<uint8_t> bits;
  uint64_t frames = 0, sync_failures = 0;
  double sig_sum = 0.0, err_sum = 0.0;
  size_t offset = 0;
  while (rx.samples.size() - offset >= cfg.preamble_len) {
    Waveform window;
    window.sample_rate_hz = rx.sample_rate_hz;
    window.samples.assign(rx.samples.begin() + offset, rx.samples.end());
    phy::DemodResult res;
    try {
      res = modem.demodulate_frame(window);
    } catch (const SyncError&) {
      if (frames == 0) throw;
      break;  // trailing samples hold no further frame
    } catch (const FramingError&) {
      if (frames == 0) throw;
      ++sync_failures;
      break;
    }
    ++frames;
    bits.insert(bits.end(), res.payload.bits.begin(), res.payload.bits.end());
    sig_sum += res.metrics.evm_signal_sum;
    err_sum += res.metrics.evm_error_sum;
    if (res.frame_end <= static_cast<size_t>(res.frame_start)) break;
    offset += res.frame_end;
  }
  if (frames == 0)
    throw SyncError(in_path + ": no frames recovered");

  write_bits(bits, out_path);

  Json metrics;
  metrics["frames"] = frames;
  metrics["sync_failures"] = sync_failures;
  metrics["payload_bits"] = bits.size();
  if (sig_sum > 0.0)
    metrics["snr_db"] =
        err_sum > 0.0 ? std::min(10.0 * std::log10(sig_sum / err_sum), phy::kSnrCapDb)
                      : phy::kSnrCapDb;
  else
    metrics["snr_db"] = nullptr;
  if (!metrics_path.empty()) {
    std::ofstream mf(metrics_path, std::ios::binary);
    if (!mf) throw IoError(metrics_path + ": cannot open for writing");
    mf << metrics.dump(2) << "\n";
    if (!mf) throw IoError(metrics_path + ": write failed");
  }

  std::cout << "frames: " << frames << "\n";
  std::cout << "payload bits: " << bits.size() << "\n";
  std::cout << "metrics: " << metrics.dump() << "\n";
  return 0;
}

int run_ber_sweep(const std::string& sweep_path, const std::string& out_path,
                  const std::string& json_path, uint64_t seed) {
  const harness::SweepDocument doc = harness::load_sweep_document_file(sweep_path);
  const std::vector<harness::BerResult> results = harness::run_sweep(doc, seed);
  harness::write_results(results, out_path, harness::ResultFormat::Csv);
  if (!json_path.empty())
    harness::write_results(results, json_path, harness::ResultFormat::Json);
  for (const harness::BerResult& r : results)
    std::cout << r.axis << "=" << format_number(r.value) << " ber=" << Json(r.ber).dump()
              << " bits=" << r.bits_sent << " errors=" << r.bit_errors
              << " sync_failures=" << r.sync_failures << "\n";
  return 0;
}

int run_garage_sim(const std::string& layout_path, const std::string& scenario_path,
                   uint64_t ticks, const std::string& out_path, uint64_t seed) {
  const proto::GarageLayout layout = proto::load_garage_layout_file(layout_path);
  const proto::SimConfig cfg = proto::load_sim_config_file(scenario_path);
  proto::GarageSim sim(layout, cfg, seed);
  sim.run(ticks);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError(out_path + ": cannot open for writing");
  for (const std::string& line : sim.event_log()) out << line << "\n";
  if (!out) throw IoError(out_path + ": write failed");

  const proto::GarageSim::Summary s = sim.summary();
  const double ratio =
      s.reports_sent ? static_cast<double>(s.reports_delivered) / s.reports_sent : 0.0;
  std::cout << "ticks: " << ticks << " time_ms: " << sim.time_ms() << "\n";
  std::cout << "reports: sent=" << s.reports_sent << " delivered=" << s.reports_delivered
            << " ratio=" << Json(ratio).dump() << "\n";
  if (s.tiles_completed.empty()) {
    std::cout << "tiles: none\n";
  } else {
    for (const auto& [vid, count] : s.tiles_completed) {
      const auto d = s.distinct_tiles.find(vid);
      std::cout << "vehicle " << vid << ": tiles_completed=" << count
                << " distinct=" << (d == s.distinct_tiles.end() ? 0 : d->second) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VLC link and garage V2I simulator"};
  app.require_subcommand(1);
  app.fallthrough();
  uint64_t seed = 1;
  app.add_option("--seed", seed, "master random seed")->capture_default_str();

  std::string rate_config;
  CLI::App* rate = app.add_subcommand("rate", "print the modem data rate");
  rate->add_option("--config", rate_config, "modem config JSON");

  std::string mod_in, mod_config, mod_out;
  CLI::App* modulate = app.add_subcommand("modulate", "bits file to waveform file");
  modulate->add_option("--in", mod_in, "input bits file")->required();
  modulate->add_option("--config", mod_config, "modem config JSON");
  modulate->add_option("--out", mod_out, "output .vlcw waveform")->required();

  std::string dem_in, dem_config, dem_out, dem_metrics;
  CLI::App* demodulate = app.add_subcommand("demodulate", "waveform file to bits file");
  demodulate->add_option("--in", dem_in, "input .vlcw waveform")->required();
  demodulate->add_option("--config", dem_config, "modem config JSON");
  demodulate->add_option("--out", dem_out, "output bits file")->required();
  demodulate->add_option("--metrics", dem_metrics, "metrics JSON output");

  std::string sweep_path, sweep_out, sweep_json;
  CLI::App* ber_sweep = app.add_subcommand("ber-sweep", "Monte Carlo BER sweep");
  ber_sweep->add_option("--sweep", sweep_path, "sweep document JSON")->required();
  ber_sweep->add_option("--out", sweep_out, "results CSV path")->required();
  ber_sweep->add_option("--json", sweep_json, "results JSON path");

  std::string sim_layout, sim_scenario, sim_out;
  uint64_t sim_ticks = 0;
  CLI::App* garage_sim = app.add_subcommand("garage-sim", "closed-loop garage simulation");
  garage_sim->add_option("--layout", sim_layout, "garage layout JSON")->required();
  garage_sim->add_option("--scenario", sim_scenario, "scenario JSON")->required();
  garage_sim->add_option("--ticks", sim_ticks, "tick count")->required();
  garage_sim->add_option("--out", sim_out, "event log NDJSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (rate->parsed()) return run_rate(rate_config);
    if (modulate->parsed()) return run_modulate(mod_in, mod_config, mod_out);
    if (demodulate->parsed()) return run_demodulate(dem_in, dem_config, dem_out, dem_metrics);
    if (ber_sweep->parsed()) return run_ber_sweep(sweep_path, sweep_out, sweep_json, seed);
    if (garage_sim->parsed())
      return run_garage_sim(sim_layout, sim_scenario, sim_ticks, sim_out, seed);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SyncError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const FramingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ProtocolError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const DegenerateChannelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
