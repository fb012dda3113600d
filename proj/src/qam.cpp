#include "vlcsim/qam.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "vlcsim/errors.hpp"

namespace vlcsim::phy {
namespace {

unsigned gray_encode(unsigned v) { return v ^ (v >> 1); }

unsigned gray_decode(unsigned g) {
  unsigned v = g;
  for (unsigned shift = 1; shift < 16; shift <<= 1) v ^= v >> shift;
  return v;
}

unsigned axis_levels(unsigned order) {
  return static_cast<unsigned>(std::lround(std::sqrt(static_cast<double>(order))));
}

// Bits (MSB first) -> level rank 0..L-1, rank 0 = most positive amplitude.
unsigned bits_to_rank(const uint8_t* bits, unsigned n_bits) {
  unsigned g = 0;
  for (unsigned i = 0; i < n_bits; ++i) g = (g << 1) | (bits[i] & 1);
  return gray_decode(g);
}

void rank_to_bits(unsigned rank, unsigned n_bits, uint8_t* bits_out) {
  unsigned g = gray_encode(rank);
  for (unsigned i = 0; i < n_bits; ++i) bits_out[i] = (g >> (n_bits - 1 - i)) & 1;
}

double rank_to_amp(unsigned rank, unsigned levels, double scale) {
  return (static_cast<double>(levels - 1) - 2.0 * static_cast<double>(rank)) * scale;
}

unsigned amp_to_rank(double amp, unsigned levels, double scale) {
  double r = (static_cast<double>(levels - 1) - amp / scale) / 2.0;
  long n = std::lround(r);
  if (n < 0) n = 0;
  if (n >= static_cast<long>(levels)) n = static_cast<long>(levels) - 1;
  return static_cast<unsigned>(n);
}

}  // namespace

bool is_supported_qam_order(unsigned order) {
  if (order < 4 || !std::has_single_bit(order)) return false;
  unsigned bits = static_cast<unsigned>(std::countr_zero(order));
  return bits % 2 == 0;  // power of 4: even number of bits per symbol
}

unsigned bits_per_qam_symbol(unsigned order) {
  return static_cast<unsigned>(std::countr_zero(order));
}

double qam_scale(unsigned order) {
  return std::sqrt(3.0 / (2.0 * (static_cast<double>(order) - 1.0)));
}

cplx qam_map_symbol(const uint8_t* bits, unsigned order) {
  const unsigned half = bits_per_qam_symbol(order) / 2;
  const unsigned levels = axis_levels(order);
  const double scale = qam_scale(order);
  const unsigned ri = bits_to_rank(bits, half);
  const unsigned rq = bits_to_rank(bits + half, half);
  return {rank_to_amp(ri, levels, scale), rank_to_amp(rq, levels, scale)};
}

void qam_demap_symbol(cplx y, unsigned order, uint8_t* bits_out) {
  const unsigned half = bits_per_qam_symbol(order) / 2;
  const unsigned levels = axis_levels(order);
  const double scale = qam_scale(order);
  rank_to_bits(amp_to_rank(y.real(), levels, scale), half, bits_out);
  rank_to_bits(amp_to_rank(y.imag(), levels, scale), half, bits_out + half);
}

std::vector<cplx> map_bits(const std::vector<uint8_t>& bits, unsigned order) {
  if (!is_supported_qam_order(order))
    throw ConfigError("modulation_order must be a power of 4 and at least 4, got " +
                      std::to_string(order));
  const unsigned bps = bits_per_qam_symbol(order);
  if (bits.size() % bps != 0)
    throw FramingError("bit count " + std::to_string(bits.size()) +
                       " is not a multiple of " + std::to_string(bps) + " bits per symbol");
  std::vector<cplx> out(bits.size() / bps);
  for (size_t i = 0; i < out.size(); ++i) out[i] = qam_map_symbol(bits.data() + i * bps, order);
  return out;
}

std::vector<uint8_t> demap_symbols(const std::vector<cplx>& symbols, unsigned order) {
  const unsigned bps = bits_per_qam_symbol(order);
  std::vector<uint8_t> bits(symbols.size() * bps);
  for (size_t i = 0; i < symbols.size(); ++i)
    qam_demap_symbol(symbols[i], order, bits.data() + i * bps);
  return bits;
}

}  // namespace vlcsim::phy
