#include <doctest.h>

#include <bit>
#include <cmath>
#include <map>
#include <vector>

#include "vlcsim/errors.hpp"
#include "vlcsim/qam.hpp"
#include "vlcsim/rng.hpp"

using namespace vlcsim;
using namespace vlcsim::phy;

namespace {

std::vector<uint8_t> bits_of(unsigned value, unsigned width) {
  std::vector<uint8_t> b(width);
  for (unsigned i = 0; i < width; ++i) b[i] = (value >> (width - 1 - i)) & 1u;
  return b;
}

unsigned int_of(const std::vector<uint8_t>& bits) {
  unsigned v = 0;
  for (uint8_t b : bits) v = (v << 1) | b;
  return v;
}

}  // namespace

TEST_CASE("supported orders are the powers of four") {
  CHECK(is_supported_qam_order(4));
  CHECK(is_supported_qam_order(16));
  CHECK(is_supported_qam_order(64));
  CHECK(is_supported_qam_order(256));
  CHECK_FALSE(is_supported_qam_order(2));
  CHECK_FALSE(is_supported_qam_order(8));
  CHECK_FALSE(is_supported_qam_order(32));
  CHECK_FALSE(is_supported_qam_order(0));
  CHECK(bits_per_qam_symbol(4) == 2);
  CHECK(bits_per_qam_symbol(16) == 4);
  CHECK(bits_per_qam_symbol(64) == 6);
}

TEST_CASE("order-4 constellation points") {
  const double a = 1.0 / std::sqrt(2.0);
  const uint8_t b00[] = {0, 0}, b01[] = {0, 1}, b10[] = {1, 0}, b11[] = {1, 1};
  CHECK(std::abs(qam_map_symbol(b00, 4) - cplx(a, a)) < 1e-15);
  CHECK(std::abs(qam_map_symbol(b01, 4) - cplx(a, -a)) < 1e-15);
  CHECK(std::abs(qam_map_symbol(b10, 4) - cplx(-a, a)) < 1e-15);
  CHECK(std::abs(qam_map_symbol(b11, 4) - cplx(-a, -a)) < 1e-15);
}

TEST_CASE("order-16 axis levels follow the Gray ranking") {
  // First two bits select I, last two select Q; per axis the Gray code of
  // the level rank runs 00,01,11,10 from +3 down to -3 in units of
  // sqrt(3/30).
  const double s = std::sqrt(0.1);
  const std::map<unsigned, double> axis = {
      {0b00, 3.0 * s}, {0b01, 1.0 * s}, {0b11, -1.0 * s}, {0b10, -3.0 * s}};
  for (const auto& [ib, iv] : axis) {
    for (const auto& [qb, qv] : axis) {
      const std::vector<uint8_t> bits = bits_of((ib << 2) | qb, 4);
      const cplx y = qam_map_symbol(bits.data(), 16);
      CHECK(y.real() == doctest::Approx(iv).epsilon(1e-12));
      CHECK(y.imag() == doctest::Approx(qv).epsilon(1e-12));
    }
  }
}

TEST_CASE("constellations have unit mean energy") {
  for (unsigned order : {4u, 16u, 64u}) {
    const unsigned nb = bits_per_qam_symbol(order);
    double e = 0.0;
    for (unsigned v = 0; v < order; ++v) {
      const std::vector<uint8_t> bits = bits_of(v, nb);
      e += std::norm(qam_map_symbol(bits.data(), order));
    }
    CHECK(e / order == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("nearest neighbours differ in exactly one bit") {
  for (unsigned order : {4u, 16u, 64u}) {
    const unsigned nb = bits_per_qam_symbol(order);
    const double step = 2.0 * qam_scale(order);
    std::vector<cplx> pts(order);
    for (unsigned v = 0; v < order; ++v) pts[v] = qam_map_symbol(bits_of(v, nb).data(), order);
    for (unsigned a = 0; a < order; ++a) {
      for (unsigned b = a + 1; b < order; ++b) {
        if (std::abs(pts[a] - pts[b]) < step * 1.0001) {
          CHECK(std::popcount(a ^ b) == 1);
        }
      }
    }
  }
}

TEST_CASE("demap inverts map for every symbol") {
  for (unsigned order : {4u, 16u, 64u, 256u}) {
    const unsigned nb = bits_per_qam_symbol(order);
    for (unsigned v = 0; v < order; ++v) {
      const std::vector<uint8_t> bits = bits_of(v, nb);
      std::vector<uint8_t> out(nb);
      qam_demap_symbol(qam_map_symbol(bits.data(), order), order, out.data());
      CHECK(int_of(out) == v);
    }
  }
}

TEST_CASE("demap tolerates noise below half the minimum distance") {
  GaussianSampler rng(8);
  for (unsigned order : {4u, 16u, 64u}) {
    const unsigned nb = bits_per_qam_symbol(order);
    const double margin = 0.49 * 2.0 * qam_scale(order);
    for (int trial = 0; trial < 200; ++trial) {
      const unsigned v = static_cast<unsigned>(rng.uniform_below(order));
      const std::vector<uint8_t> bits = bits_of(v, nb);
      const double ang = 2.0 * 3.14159265358979 * rng.uniform01();
      const cplx y = qam_map_symbol(bits.data(), order) +
                     margin * cplx(std::cos(ang), std::sin(ang)) * rng.uniform01();
      std::vector<uint8_t> out(nb);
      qam_demap_symbol(y, order, out.data());
      CHECK(int_of(out) == v);
    }
  }
}

TEST_CASE("map_bits and demap_symbols round-trip bit streams") {
  GaussianSampler rng(9);
  for (unsigned order : {4u, 16u, 64u}) {
    const unsigned nb = bits_per_qam_symbol(order);
    std::vector<uint8_t> bits(nb * 100);
    for (auto& b : bits) b = static_cast<uint8_t>(rng.uniform_below(2));
    const std::vector<cplx> syms = map_bits(bits, order);
    CHECK(syms.size() == 100);
    CHECK(demap_symbols(syms, order) == bits);
  }
}

TEST_CASE("map_bits validates its inputs") {
  CHECK_THROWS_AS(map_bits({0, 1, 0}, 4), FramingError);
  CHECK_THROWS_AS(map_bits({0, 1, 0, 1, 1}, 16), FramingError);
  CHECK_THROWS_AS(map_bits({0, 1}, 8), ConfigError);
  CHECK_THROWS_AS(map_bits({0, 1}, 0), ConfigError);
}
