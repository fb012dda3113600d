#pragma once
#include <cstdint>
#include <vector>

#include "vlcsim/fft.hpp"

namespace vlcsim::phy {

// Gray-coded square QAM with unit average symbol energy. A symbol's bits
// split evenly: first half selects the I level, second half the Q level,
// most-significant bit first. Per axis, Gray code j^(j>>1) of the level rank
// j maps rank 0 to the most positive amplitude, so bits 00 -> (+1/sqrt2,
// +1/sqrt2) at order 4. Axis amplitudes are (L-1-2j)*sqrt(3/(2(M-1))),
// L = sqrt(M).
bool is_supported_qam_order(unsigned order);  // powers of 4, >= 4
unsigned bits_per_qam_symbol(unsigned order);
double qam_scale(unsigned order);  // sqrt(3/(2(M-1)))

cplx qam_map_symbol(const uint8_t* bits, unsigned order);
void qam_demap_symbol(cplx y, unsigned order, uint8_t* bits_out);

// Throws FramingError when the bit count is not a multiple of bits/symbol.
std::vector<cplx> map_bits(const std::vector<uint8_t>& bits, unsigned order);
std::vector<uint8_t> demap_symbols(const std::vector<cplx>& symbols, unsigned order);

}  // namespace vlcsim::phy
