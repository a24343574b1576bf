#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "coinbet/numerics.hpp"
#include "coinbet/priors.hpp"
#include "oracles.hpp"

using namespace coinbet;

namespace {

double simpson_conj_normalizer(double z) {
  // b = sin(theta): (1 - b^2)^z db = cos^{2z+1}(theta) dtheta.
  const long double half_pi = std::numbers::pi_v<long double> / 2;
  return oracle::log_simpson(
      [&](long double t) {
        const long double c = std::cos(t);
        return c <= 0 ? -INFINITY : (2.0L * z + 1.0L) * std::log(c);
      },
      -half_pi, half_pi, 200000);
}

}  // namespace

TEST_CASE("log_density examples") {
  CHECK(log_density(PriorSpec::conjugate_power(0.0), 0.3) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(log_density(PriorSpec::conjugate_power(1.0), 0.0) ==
        doctest::Approx(std::log(0.75)).epsilon(1e-15));
  const double gauss = -std::log(std::sqrt(std::numbers::pi) * oracle::erf_taylor(0.5));
  CHECK(log_density(PriorSpec::truncated_gaussian(0.5), 0.0) == doctest::Approx(gauss).epsilon(1e-14));
  CHECK(gauss == doctest::Approx(0.0806006827516310736).epsilon(1e-15));
}

TEST_CASE("log_density rejects points outside the support") {
  CHECK_THROWS_AS(log_density(PriorSpec::conjugate_power(1.0), 1.5), std::domain_error);
  CHECK_THROWS_AS(log_density(PriorSpec::truncated_gaussian(0.1), 0.6), std::domain_error);
  CHECK_THROWS_AS(log_density(PriorSpec::truncated_gaussian(0.1), -0.5000001), std::domain_error);
  CHECK_NOTHROW(log_density(PriorSpec::truncated_gaussian(0.1), -0.5));
  CHECK(log_density(PriorSpec::conjugate_power(2.0), 1.0) == -INFINITY);
}

TEST_CASE("invalid prior parameters are rejected") {
  CHECK_THROWS_AS(PriorSpec::conjugate_power(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(PriorSpec::conjugate_power(NAN), std::invalid_argument);
  CHECK_THROWS_AS(PriorSpec::truncated_gaussian(0.0), std::invalid_argument);
  CHECK_THROWS_AS(PriorSpec::truncated_gaussian(-1.0), std::invalid_argument);
}

TEST_CASE("supports") {
  CHECK(PriorSpec::conjugate_power(3.0).support().lo == -1.0);
  CHECK(PriorSpec::conjugate_power(3.0).support().hi == 1.0);
  CHECK(PriorSpec::truncated_gaussian(0.2).support().lo == -0.5);
  CHECK(PriorSpec::truncated_gaussian(0.2).support().hi == 0.5);
}

TEST_CASE("conj_power_log_normalizer examples") {
  CHECK(conj_power_log_normalizer(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(conj_power_log_normalizer(1.0) == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-15));
  CHECK(std::abs(conj_power_log_normalizer(9.5) / simpson_conj_normalizer(9.5) - 1.0) <= 1e-10);
  CHECK(conj_power_log_normalizer(9.5) == doctest::Approx(-0.591422410747051575).epsilon(1e-13));
}

TEST_CASE("closed-form normalizer matches Simpson for z up to 500") {
  for (double z : {0.0, 0.5, 1.0, 5.0, 50.0, 500.0}) {
    INFO("z=" << z);
    const double closed = conj_power_log_normalizer(z);
    const double simpson = simpson_conj_normalizer(z);
    CHECK(std::abs(closed - simpson) <= 1e-10 * std::max(1.0, std::abs(simpson)));
  }
  for (double s2 : {0.5, 0.05, 0.0005}) {
    const double simpson = oracle::log_simpson(
        [&](long double b) { return -b * b / (2.0L * s2); }, -0.5L, 0.5L, 200000);
    CHECK(std::abs(trunc_gauss_log_normalizer(s2) - simpson) <= 1e-10 * std::max(1.0, std::abs(simpson)));
  }
}

TEST_CASE("densities are normalized and even") {
  std::vector<PriorSpec> priors;
  for (double z : {0.0, 0.5, 1.0, 5.0, 50.0, 500.0}) priors.push_back(PriorSpec::conjugate_power(z));
  for (double s2 : {0.5, 0.05, 0.0005}) priors.push_back(PriorSpec::truncated_gaussian(s2));
  for (const PriorSpec& prior : priors) {
    INFO(prior.describe());
    const Interval s = prior.support();
    const double total =
        numerics::integrate_log([&](double b) { return log_density(prior, b); }, s.lo, s.hi).log_value;
    CHECK(std::abs(std::expm1(total)) <= 1e-9);
    for (double b = 0.0; b < s.hi; b += s.hi / 37.0) {
      CHECK(log_density(prior, b) == log_density(prior, -b));
    }
  }
}

TEST_CASE("conjugate-power prior dominates its Gaussian approximation on [-1/2, 1/2]") {
  for (double z : {0.5, 1.0, 5.0, 50.0}) {
    for (int i = 0; i <= 10000; ++i) {
      const double b = -0.5 + i / 10000.0;
      const double lhs = z * std::log1p(b) + z * std::log1p(-b);
      REQUIRE(lhs >= -2.0 * z * b * b);
    }
  }
}
