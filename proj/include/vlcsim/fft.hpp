#pragma once
#include <complex>
#include <vector>

namespace vlcsim {

using cplx = std::complex<double>;

// In-place radix-2 transform; size must be a power of two. The inverse
// transform scales by 1/N.
void fft(std::vector<cplx>& x, bool inverse);
std::vector<cplx> fft_copy(std::vector<cplx> x, bool inverse);

}  // namespace vlcsim
