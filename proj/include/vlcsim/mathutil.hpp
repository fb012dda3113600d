#pragma once
#include <cmath>
#include <numbers>

namespace vlcsim {

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Cosine of an angle in degrees, exact at the common special angles so
// identities like lambertian_order(60) == 1.0 hold bitwise.
double cos_deg(double deg);

// Upper tail of the standard normal distribution.
double q_function(double x);

}  // namespace vlcsim
