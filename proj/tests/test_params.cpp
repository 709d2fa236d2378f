#include "ipaal/params.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace ipaal;

TEST_CASE("tau_theta matches the published values") {
  CHECK(tau_theta(1.0) == 0.5);
  CHECK(std::abs(tau_theta(0.5) - 0.0667) < 5e-4);  // printed as 0.067
  CHECK(std::abs(tau_theta(0.1) - 0.0070) < 5e-5);  // printed as 0.0070
  // the two branch formulas coincide at the breakpoint
  CHECK(tau_theta(16.0 / 19.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("tau_theta domain errors") {
  CHECK_THROWS_AS(tau_theta(0.0), std::domain_error);
  CHECK_THROWS_AS(tau_theta(-0.5), std::domain_error);
  CHECK_THROWS_AS(tau_theta(1.0 + 1e-12), std::domain_error);
}

TEST_CASE("tau_theta is continuous and nondecreasing") {
  double prev = 0.0;
  for (int i = 1; i <= 2000; ++i) {
    const double theta = i / 2000.0;
    const double tau = tau_theta(theta);
    CHECK(tau > 0.0);
    CHECK(tau <= 0.5);
    CHECK(tau >= prev - 1e-12);
    prev = tau;
  }
}

TEST_CASE("sigma_theta matches the published squared values") {
  const double s1 = sigma_theta(1.0);
  CHECK(std::abs(s1 * s1 - 3.75e-2) < 1e-4);
  const double s05 = sigma_theta(0.5);
  CHECK(std::abs(s05 * s05 - 5.44e-4) < 1e-6);
  const double s01 = sigma_theta(0.1);
  CHECK(std::abs(s01 * s01 - 8.08e-6) < 1e-8);
}

TEST_CASE("sigma_theta solves its quadratic to 1e-12") {
  for (int i = 1; i <= 1000; ++i) {
    const double theta = i / 1000.0;
    const double s = sigma_theta(theta);
    CHECK(s > 0.0);
    CHECK(s <= 0.5);
    CHECK(std::abs(sigma_theta_residual(theta, s)) <= 1e-12);
  }
}

TEST_CASE("inner_sigma branch selection") {
  // theta = 1, lambda = 0.5, L_c = 1: the theta cap wins
  ThetaParams p = ThetaParams::make(1.0, 1.0, Variant::Theoretical);
  CHECK(p.lambda == doctest::Approx(0.5));
  CHECK(std::abs(inner_sigma(p, 1.0) - 0.1937) < 1e-3);
  CHECK(inner_sigma(p, 1.0) == p.sigma_theta);  // min picked the cap

  // constant variant ignores L_c entirely
  ThetaParams c = ThetaParams::make(0.3, 2.0, Variant::Constant);
  CHECK(std::abs(inner_sigma(c, 1.0) - 0.70711) < 1e-5);
  CHECK(std::abs(inner_sigma(c, 1e12) - 0.70711) < 1e-5);

  // huge L_c: the curvature branch wins
  ThetaParams q = ThetaParams::make(0.5, 1.0, Variant::Theoretical);
  const double s = inner_sigma(q, 1e12);
  CHECK(std::abs(s - 1.0 / std::sqrt(q.lambda * 1e12 + 1.0)) < 1e-18);
  CHECK(std::abs(s - 3.87e-6) < 1e-8);
}

TEST_CASE("ThetaParams variant rules") {
  CHECK_THROWS_AS(ThetaParams::make(0.0, 1.0, Variant::Theoretical), std::domain_error);
  const ThetaParams c0 = ThetaParams::make(0.0, 4.0, Variant::Constant);
  CHECK(c0.lambda == doctest::Approx(0.125));
  CHECK(c0.tau == doctest::Approx(0.5));
  CHECK(c0.sigma_theta * c0.sigma_theta == doctest::Approx(0.5));
  CHECK_THROWS_AS(ThetaParams::make(0.5, 0.0, Variant::Constant), std::domain_error);

  for (double theta : {0.05, 0.2, 0.6, 0.9, 1.0}) {
    const ThetaParams t = ThetaParams::make(theta, 3.0, Variant::Theoretical);
    CHECK(t.tau > 0.0);
    CHECK(t.tau <= 0.5);
    CHECK(t.sigma_theta > 0.0);
    CHECK(t.sigma_theta <= 0.5);
    CHECK(t.lambda == doctest::Approx(t.tau / 3.0));
  }
}

TEST_CASE("variant and mode strings round-trip") {
  CHECK(variant_from_string(to_string(Variant::Theoretical)) == Variant::Theoretical);
  CHECK(variant_from_string(to_string(Variant::Constant)) == Variant::Constant);
  CHECK_THROWS_AS(variant_from_string("fancy"), std::invalid_argument);
}
