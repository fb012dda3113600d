#pragma once
#include <cstdint>
#include <random>
#include <string_view>

namespace vlcsim {

// splitmix64 step; used to whiten seed material.
uint64_t splitmix64(uint64_t& state);

// Deterministic sub-seed from (master seed, domain label, index). Every
// consumer of randomness gets its own derived stream so adding one never
// perturbs another.
uint64_t derive_seed(uint64_t master, std::string_view domain, uint64_t index = 0);

// Uniform/Gaussian sampler over mt19937_64 with explicit Box-Muller and
// explicit 53-bit uniforms, so streams are identical across standard
// libraries.
class GaussianSampler {
 public:
  explicit GaussianSampler(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }
  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  // Uniform integer in [0, n).
  uint64_t uniform_below(uint64_t n) { return n ? eng_() % n : 0; }
  // Standard normal.
  double next();

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace vlcsim
