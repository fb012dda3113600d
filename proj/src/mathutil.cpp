#include "vlcsim/mathutil.hpp"

namespace vlcsim {

double cos_deg(double deg) {
  double a = std::fabs(deg);
  if (a == 0.0) return 1.0;
  if (a == 30.0) return std::sqrt(3.0) / 2.0;
  if (a == 45.0) return std::sqrt(0.5);
  if (a == 60.0) return 0.5;
  if (a == 90.0) return 0.0;
  return std::cos(deg_to_rad(deg));
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace vlcsim
