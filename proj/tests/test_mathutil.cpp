#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <numbers>

#include "vlcsim/mathutil.hpp"

using namespace vlcsim;

TEST_CASE("cos_deg is exact at the special angles") {
  CHECK(cos_deg(0.0) == 1.0);
  CHECK(cos_deg(60.0) == 0.5);
  CHECK(cos_deg(90.0) == 0.0);
  CHECK(cos_deg(180.0) == -1.0);
  CHECK(cos_deg(45.0) * cos_deg(45.0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("cos_deg matches std::cos away from special angles") {
  for (double d : {7.3, 23.0, 51.5, 88.9, 119.0}) {
    CHECK(cos_deg(d) == doctest::Approx(std::cos(d * std::numbers::pi / 180.0)).epsilon(1e-14));
  }
}

TEST_CASE("deg_to_rad") {
  CHECK(deg_to_rad(180.0) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(deg_to_rad(0.0) == 0.0);
  CHECK(deg_to_rad(90.0) == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-15));
}

TEST_CASE("q_function reference values") {
  // Frozen from the erfc identity Q(x) = erfc(x/sqrt(2))/2.
  CHECK(q_function(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(q_function(0.5) == doctest::Approx(0.3085375387259869).epsilon(1e-13));
  CHECK(q_function(1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-13));
  CHECK(q_function(2.0) == doctest::Approx(0.02275013194817922).epsilon(1e-13));
}

TEST_CASE("q_function tail behaviour") {
  CHECK(q_function(-1.0) == doctest::Approx(1.0 - 0.15865525393145707).epsilon(1e-13));
  double prev = 1.0;
  for (double x = -3.0; x <= 6.0; x += 0.25) {
    const double q = q_function(x);
    CHECK(q < prev);
    CHECK(q >= 0.0);
    CHECK(q <= 1.0);
    prev = q;
  }
  CHECK(q_function(8.0) > 0.0);
  CHECK(q_function(8.0) < 1e-14);
}
