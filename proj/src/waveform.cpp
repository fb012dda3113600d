#include "vlcsim/waveform.hpp"

#include <cstring>
#include <fstream>

#include "vlcsim/errors.hpp"

namespace vlcsim {
namespace {

void put_u16(std::string& out, uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u64(std::string& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(out, bits);
}

void put_f32(std::string& out, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, 4);
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

// Reader over a byte buffer that reports the offset of any truncation.
struct Cursor {
  const std::string& buf;
  const std::string& path;
  size_t pos = 0;

  void need(size_t n) {
    if (pos + n > buf.size())
      throw IoError(path + ": truncated at byte " + std::to_string(buf.size()) +
                    " (needed " + std::to_string(pos + n) + ")");
  }
  uint64_t u(size_t n) {
    need(n);
    uint64_t v = 0;
    for (size_t i = 0; i < n; ++i)
      v |= static_cast<uint64_t>(static_cast<uint8_t>(buf[pos + i])) << (8 * i);
    pos += n;
    return v;
  }
  double f64() {
    uint64_t bits = u(8);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  float f32() {
    uint32_t bits = static_cast<uint32_t>(u(4));
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open for reading");
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(path + ": read failed");
  return data;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path + ": cannot open for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace

void write_waveform(const Waveform& w, const std::string& path) {
  std::string out;
  out.reserve(22 + 4 * w.samples.size());
  out += "VLCW";
  put_u16(out, kWaveformFileVersion);
  put_f64(out, w.sample_rate_hz);
  put_u64(out, static_cast<uint64_t>(w.samples.size()));
  for (double s : w.samples) put_f32(out, static_cast<float>(s));
  write_file(path, out);
}

Waveform read_waveform(const std::string& path) {
  const std::string data = read_file(path);
  Cursor c{data, path};
  c.need(4);
  if (data.compare(0, 4, "VLCW") != 0) throw IoError(path + ": bad magic, not a waveform file");
  c.pos = 4;
  uint16_t version = static_cast<uint16_t>(c.u(2));
  if (version != kWaveformFileVersion)
    throw IoError(path + ": unsupported waveform file version " + std::to_string(version));
  Waveform w;
  w.sample_rate_hz = c.f64();
  uint64_t count = c.u(8);
  c.need(count * 4);
  w.samples.reserve(count);
  for (uint64_t i = 0; i < count; ++i) w.samples.push_back(c.f32());
  return w;
}

void write_bits(const std::vector<uint8_t>& bits, const std::string& path) {
  const std::vector<uint8_t> bytes = bits_to_bytes(bits);
  std::string out(bytes.begin(), bytes.end());
  write_file(path, out);
}

std::vector<uint8_t> read_bits(const std::string& path) {
  const std::string data = read_file(path);
  return bytes_to_bits(std::vector<uint8_t>(data.begin(), data.end()));
}

std::vector<uint8_t> bytes_to_bits(const std::vector<uint8_t>& bytes) {
  std::vector<uint8_t> bits;
  bits.reserve(bytes.size() * 8);
  for (uint8_t b : bytes)
    for (int i = 7; i >= 0; --i) bits.push_back((b >> i) & 1);
  return bits;
}

std::vector<uint8_t> bits_to_bytes(const std::vector<uint8_t>& bits) {
  std::vector<uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) bytes[i / 8] |= static_cast<uint8_t>(1u << (7 - i % 8));
  return bytes;
}

}  // namespace vlcsim
