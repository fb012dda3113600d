#include "vlcsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace vlcsim {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

uint64_t derive_seed(uint64_t master, std::string_view domain, uint64_t index) {
  uint64_t s = master;
  uint64_t h = splitmix64(s);
  for (unsigned char c : domain) {
    s = h ^ c;
    h = splitmix64(s);
  }
  s = h ^ index;
  return splitmix64(s);
}

double GaussianSampler::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = uniform01();
  } while (u1 <= 0.0);
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

}  // namespace vlcsim
