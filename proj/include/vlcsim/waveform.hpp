#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace vlcsim {

// Real-valued optical-intensity sample sequence. For full-band I/Q (complex
// baseband) frames the samples are interleaved I,Q pairs and sample_rate_hz
// is the IQ-pair rate.
struct Waveform {
  std::vector<double> samples;
  double sample_rate_hz = 0.0;
};

// On-disk layout, all little-endian: magic "VLCW", version u16, sample rate
// f64, sample count u64, then samples as f32.
inline constexpr uint16_t kWaveformFileVersion = 1;
void write_waveform(const Waveform& w, const std::string& path);
Waveform read_waveform(const std::string& path);

// Bit payloads on disk are raw bytes, most-significant bit first.
void write_bits(const std::vector<uint8_t>& bits, const std::string& path);
std::vector<uint8_t> read_bits(const std::string& path);

std::vector<uint8_t> bytes_to_bits(const std::vector<uint8_t>& bytes);
// Pads the final byte with zero bits when the count is not a multiple of 8.
std::vector<uint8_t> bits_to_bytes(const std::vector<uint8_t>& bits);

}  // namespace vlcsim
