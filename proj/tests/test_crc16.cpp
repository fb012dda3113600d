#include <doctest.h>

#include <cstring>
#include <vector>

#include "vlcsim/crc16.hpp"
#include "vlcsim/rng.hpp"

using namespace vlcsim;

TEST_CASE("check value for the standard test string") {
  const char* s = "123456789";
  CHECK(crc16_ccitt_false(reinterpret_cast<const uint8_t*>(s), 9) == 0x29B1);
}

TEST_CASE("empty input returns the initial register") {
  CHECK(crc16_ccitt_false(nullptr, 0) == 0xFFFF);
}

TEST_CASE("single byte values") {
  const uint8_t zero = 0x00;
  const uint8_t ff = 0xFF;
  CHECK(crc16_ccitt_false(&zero, 1) != crc16_ccitt_false(&ff, 1));
  CHECK(crc16_ccitt_false(&zero, 1) != 0xFFFF);
}

TEST_CASE("appending the big-endian crc yields a zero residue") {
  GaussianSampler rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<uint8_t> msg(1 + rng.uniform_below(64));
    for (auto& b : msg) b = static_cast<uint8_t>(rng.next_u64());
    const uint16_t c = crc16_ccitt_false(msg.data(), msg.size());
    msg.push_back(static_cast<uint8_t>(c >> 8));
    msg.push_back(static_cast<uint8_t>(c & 0xFF));
    CHECK(crc16_ccitt_false(msg.data(), msg.size()) == 0);
  }
}

TEST_CASE("every single-bit flip changes the crc") {
  std::vector<uint8_t> msg(25);
  GaussianSampler rng(32);
  for (auto& b : msg) b = static_cast<uint8_t>(rng.next_u64());
  const uint16_t ref = crc16_ccitt_false(msg.data(), msg.size());
  for (size_t byte = 0; byte < msg.size(); ++byte) {
    for (int bit = 0; bit < 8; ++bit) {
      msg[byte] ^= static_cast<uint8_t>(1u << bit);
      CHECK(crc16_ccitt_false(msg.data(), msg.size()) != ref);
      msg[byte] ^= static_cast<uint8_t>(1u << bit);
    }
  }
}
