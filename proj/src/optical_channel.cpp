#include "vlcsim/optical_channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vlcsim/errors.hpp"
#include "vlcsim/mathutil.hpp"
#include "vlcsim/rng.hpp"

namespace vlcsim::optics {
namespace {

void check_geometry(const LinkGeometry& geo) {
  if (!(geo.distance_m > 0.0))
    throw DomainError("distance_m must be positive, got " + std::to_string(geo.distance_m));
  if (geo.emit_angle_deg < 0.0 || geo.emit_angle_deg >= 90.0)
    throw DomainError("emit_angle_deg must lie in [0, 90), got " +
                      std::to_string(geo.emit_angle_deg));
  if (geo.incidence_angle_deg < 0.0 || geo.incidence_angle_deg >= 180.0)
    throw DomainError("incidence_angle_deg must lie in [0, 180), got " +
                      std::to_string(geo.incidence_angle_deg));
}

// Gain gathered by a receiving surface of the given area, emitter of order m.
double lambert_leg(double m, double area_m2, const LinkGeometry& geo, double fov_deg) {
  check_geometry(geo);
  if (geo.incidence_angle_deg >= fov_deg) return 0.0;
  const double cos_psi = cos_deg(geo.incidence_angle_deg);
  if (cos_psi <= 0.0) return 0.0;
  return (m + 1.0) * area_m2 / (2.0 * std::numbers::pi * geo.distance_m * geo.distance_m) *
         std::pow(cos_deg(geo.emit_angle_deg), m) * cos_psi;
}

}  // namespace

double lambertian_order(double half_power_semi_angle_deg) {
  if (!(half_power_semi_angle_deg > 0.0) || !(half_power_semi_angle_deg < 90.0))
    throw DomainError("half_power_semi_angle_deg must lie in (0, 90), got " +
                      std::to_string(half_power_semi_angle_deg));
  // -ln2/ln(cos x) written via log2 so the 60-degree identity is exact.
  return -1.0 / std::log2(cos_deg(half_power_semi_angle_deg));
}

double los_gain(const LedSpec& led, const DetectorSpec& det, const LinkGeometry& geo) {
  const double m = lambertian_order(led.half_power_semi_angle_deg);
  return lambert_leg(m, det.active_area_m2, geo, det.fov_semi_angle_deg) *
         det.optical_filter_gain * det.concentrator_gain;
}

double dlos_gain(const LedSpec& led, const DetectorSpec& det, double wall_reflectance,
                 const LinkGeometry& leg1, const LinkGeometry& leg2,
                 double wall_patch_area_m2) {
  if (wall_reflectance < 0.0 || wall_reflectance > 1.0)
    throw DomainError("wall_reflectance must lie in [0, 1], got " +
                      std::to_string(wall_reflectance));
  if (!(wall_patch_area_m2 > 0.0))
    throw DomainError("wall_patch_area_m2 must be positive");
  const double m = lambertian_order(led.half_power_semi_angle_deg);
  // The wall patch gathers with no FoV restriction; the detector leg applies
  // its own FoV and optics, with the patch re-emitting at order 1.
  const double g1 = lambert_leg(m, wall_patch_area_m2, leg1, 180.0);
  const double g2 = lambert_leg(1.0, det.active_area_m2, leg2, det.fov_semi_angle_deg) *
                    det.optical_filter_gain * det.concentrator_gain;
  return g1 * wall_reflectance * g2;
}

Waveform apply_channel(const Waveform& tx, double gain, double responsivity,
                       const NoiseSpec& noise, uint64_t seed) {
  if (gain < 0.0) throw DomainError("channel gain must be non-negative");
  if (noise.mode == NoiseMode::NoisePowerW && noise.value < 0.0)
    throw DomainError("noise power must be non-negative, got " + std::to_string(noise.value));

  const double g = gain * responsivity;
  double sigma2 = 0.0;
  if (noise.mode == NoiseMode::NoisePowerW) {
    sigma2 = noise.value;
  } else {
    double mu = 0.0;
    for (double s : tx.samples) mu += s;
    mu /= tx.samples.empty() ? 1.0 : static_cast<double>(tx.samples.size());
    double p_ac = 0.0;
    for (double s : tx.samples) p_ac += (s - mu) * (s - mu);
    p_ac /= tx.samples.empty() ? 1.0 : static_cast<double>(tx.samples.size());
    const double snr_lin = std::pow(10.0, noise.value / 10.0);
    // Reference the noise floor to unit gain when the link is fully blocked.
    sigma2 = (g > 0.0 ? g * g : 1.0) * p_ac / snr_lin;
  }

  Waveform rx;
  rx.sample_rate_hz = tx.sample_rate_hz;
  rx.samples.reserve(tx.samples.size());
  if (sigma2 == 0.0) {
    for (double s : tx.samples) rx.samples.push_back(g * s);
  } else {
    GaussianSampler rng(seed);
    const double sigma = std::sqrt(sigma2);
    for (double s : tx.samples) rx.samples.push_back(g * s + sigma * rng.next());
  }
  return rx;
}

}  // namespace vlcsim::optics
