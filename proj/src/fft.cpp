#include "vlcsim/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <utility>

#include "vlcsim/errors.hpp"

namespace vlcsim {

void fft(std::vector<cplx>& x, bool inverse) {
  const size_t n = x.size();
  if (n == 0 || !std::has_single_bit(n))
    throw DomainError("fft: size must be a power of two, got " + std::to_string(n));
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    const cplx wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        cplx u = x[i + k];
        cplx v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& v : x) v *= inv_n;
  }
}

std::vector<cplx> fft_copy(std::vector<cplx> x, bool inverse) {
  fft(x, inverse);
  return x;
}

}  // namespace vlcsim
