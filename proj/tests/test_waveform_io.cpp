#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "vlcsim/errors.hpp"
#include "vlcsim/rng.hpp"
#include "vlcsim/waveform.hpp"

using namespace vlcsim;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("vlcsim_test_" + name)).string();
}

struct FileGuard {
  std::string path;
  explicit FileGuard(std::string p) : path(std::move(p)) {}
  ~FileGuard() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("waveform round-trips through disk") {
  Waveform w;
  w.sample_rate_hz = 200000.0;
  GaussianSampler rng(5);
  for (int i = 0; i < 1000; ++i) w.samples.push_back(rng.next());
  FileGuard f(temp_path("wave.vlcw"));
  write_waveform(w, f.path);
  const Waveform r = read_waveform(f.path);
  CHECK(r.sample_rate_hz == 200000.0);
  REQUIRE(r.samples.size() == w.samples.size());
  // Samples are stored as 32-bit floats.
  for (size_t i = 0; i < w.samples.size(); ++i)
    CHECK(r.samples[i] == static_cast<double>(static_cast<float>(w.samples[i])));
}

TEST_CASE("float-representable samples survive exactly") {
  Waveform w;
  w.sample_rate_hz = 48000.0;
  for (int i = -8; i <= 8; ++i) w.samples.push_back(i / 4.0);
  FileGuard f(temp_path("wave_exact.vlcw"));
  write_waveform(w, f.path);
  CHECK(read_waveform(f.path).samples == w.samples);
}

TEST_CASE("empty waveform round-trips") {
  Waveform w;
  w.sample_rate_hz = 1000.0;
  FileGuard f(temp_path("wave_empty.vlcw"));
  write_waveform(w, f.path);
  const Waveform r = read_waveform(f.path);
  CHECK(r.samples.empty());
  CHECK(r.sample_rate_hz == 1000.0);
}

TEST_CASE("missing file raises an io error") {
  CHECK_THROWS_AS(read_waveform(temp_path("does_not_exist.vlcw")), IoError);
}

TEST_CASE("truncated waveform names the shortfall") {
  Waveform w;
  w.sample_rate_hz = 200000.0;
  w.samples.assign(100, 0.5);
  FileGuard f(temp_path("wave_trunc.vlcw"));
  write_waveform(w, f.path);
  std::filesystem::resize_file(f.path, std::filesystem::file_size(f.path) - 37);
  CHECK_THROWS_WITH_AS(read_waveform(f.path), doctest::Contains("byte"), IoError);
}

TEST_CASE("wrong magic is rejected") {
  FileGuard f(temp_path("wave_magic.vlcw"));
  std::ofstream out(f.path, std::ios::binary);
  out << "NOPE" << std::string(60, '\0');
  out.close();
  CHECK_THROWS_AS(read_waveform(f.path), IoError);
}

TEST_CASE("bit files store whole bytes most-significant bit first") {
  const std::vector<uint8_t> bits = {1, 0, 1, 0, 0, 1, 0, 1,   // 0xA5
                                     1, 1, 1, 1, 0, 0, 0, 0};  // 0xF0
  FileGuard f(temp_path("bits.bin"));
  write_bits(bits, f.path);
  std::ifstream in(f.path, std::ios::binary);
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  REQUIRE(raw.size() == 2);
  CHECK(static_cast<uint8_t>(raw[0]) == 0xA5);
  CHECK(static_cast<uint8_t>(raw[1]) == 0xF0);
  CHECK(read_bits(f.path) == bits);
}

TEST_CASE("partial final bytes are zero padded") {
  const std::vector<uint8_t> bits = {1, 1, 0, 1, 0};
  FileGuard f(temp_path("bits_pad.bin"));
  write_bits(bits, f.path);
  const std::vector<uint8_t> back = read_bits(f.path);
  REQUIRE(back.size() == 8);
  for (size_t i = 0; i < bits.size(); ++i) CHECK(back[i] == bits[i]);
  for (size_t i = bits.size(); i < 8; ++i) CHECK(back[i] == 0);
}

TEST_CASE("bit and byte conversions are inverse up to padding") {
  const std::vector<uint8_t> bytes = {0x00, 0xFF, 0x3C, 0x81};
  const std::vector<uint8_t> bits = bytes_to_bits(bytes);
  REQUIRE(bits.size() == 32);
  CHECK(bits_to_bytes(bits) == bytes);
  CHECK(bits_to_bytes({1})[0] == 0x80);
  CHECK(bits_to_bytes({0, 0, 0, 0, 0, 0, 0, 1})[0] == 0x01);
}
