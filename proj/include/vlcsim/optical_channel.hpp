#pragma once
#include <cstdint>

#include "vlcsim/waveform.hpp"

namespace vlcsim::optics {

struct LedSpec {
  double half_power_semi_angle_deg = 60.0;
  double optical_power_w = 1.0;
};

struct DetectorSpec {
  double active_area_m2 = 1e-4;
  double fov_semi_angle_deg = 60.0;
  double responsivity_a_per_w = 0.64;
  double optical_filter_gain = 1.0;
  double concentrator_gain = 1.0;
};

struct LinkGeometry {
  double distance_m = 1.0;
  double emit_angle_deg = 0.0;       // from the emitter normal, [0, 90)
  double incidence_angle_deg = 0.0;  // at the receiving surface, [0, 180)
};

enum class NoiseMode { FixedElectricalSnrDb, NoisePowerW };

struct NoiseSpec {
  NoiseMode mode = NoiseMode::FixedElectricalSnrDb;
  double value = 20.0;
};

// m = -ln2 / ln(cos half_angle); 60 degrees -> exactly 1.
double lambertian_order(double half_power_semi_angle_deg);

// H = (m+1) A / (2 pi d^2) cos^m(phi) T g cos(psi) for psi < FoV, else 0.
double los_gain(const LedSpec& led, const DetectorSpec& det, const LinkGeometry& geo);

// Single wall bounce: emitter -> patch gathering gain, times reflectance,
// times the patch re-emitting as an ideal diffuse (order 1) source toward
// the detector. The detector FoV applies to leg2's incidence angle.
double dlos_gain(const LedSpec& led, const DetectorSpec& det, double wall_reflectance,
                 const LinkGeometry& leg1, const LinkGeometry& leg2,
                 double wall_patch_area_m2);

// rx[i] = gain * responsivity * tx[i] + white Gaussian noise. In fixed-SNR
// mode the variance is set so the post-detection AC electrical SNR equals
// the spec; when gain*responsivity is zero the variance is referenced to
// unit gain instead (the received waveform is pure noise).
Waveform apply_channel(const Waveform& tx, double gain, double responsivity,
                       const NoiseSpec& noise, uint64_t seed);

}  // namespace vlcsim::optics
