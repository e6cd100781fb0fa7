#include <doctest.h>

#include <cmath>

#include "nsl/errors.hpp"
#include "nsl/hardness.hpp"
#include "nsl/special_functions.hpp"

using namespace nsl;

TEST_SUITE("hardness") {
  TEST_CASE("alpha2") {
    const ConstantResult r = alpha2();
    CHECK(r.value == doctest::Approx(0.87856720578).epsilon(1e-10));
    CHECK(std::fabs(r.value - 0.8785672057848516) < 1e-13);
    CHECK(r.argmin == doctest::Approx(-0.6891577).epsilon(1e-6));
    CHECK_FALSE(r.attained_at_endpoint);
    CHECK(alpha2_objective(0.0) == doctest::Approx(1.0));
  }

  TEST_CASE("alpha3 is attained at rho = -1/2") {
    const ConstantResult r = alpha3();
    CHECK(std::fabs(r.value - 0.83600811464) < 1e-9);
    CHECK(r.argmin == -0.5);
    CHECK(r.attained_at_endpoint);
    const double endpoint =
        1.5 * (1 - 3 * (1.0 / 9 + (std::pow(std::acos(0.5), 2) - std::pow(std::acos(-0.25), 2)) / (4 * kPi * kPi))) / 1.5;
    CHECK(r.value == doctest::Approx(endpoint).epsilon(1e-14));
    CHECK(std::isfinite(three_cut_objective(kRhoOneProxy)));
  }

  TEST_CASE("beta3 on [-1/43, 0]") {
    const ConstantResult r = beta3();
    CHECK(r.conditional);
    CHECK(r.monotone);
    CHECK(r.attained_at_endpoint);
    CHECK(r.argmin == doctest::Approx(-1.0 / 43));
    // Sector closed form at rho = -1/43 (mpmath: 0.989436265286...).
    CHECK(r.value == doctest::Approx(0.98943626528637896).epsilon(1e-13));
    CHECK(three_cut_objective(0.0) > r.value);
    // The value 0.98937199597 is the objective at rho = -0.0234, not at -1/43.
    const double rho = three_cut_objective_inverse(0.98937199597, -0.03, -0.02);
    CHECK(rho == doctest::Approx(-0.0234).epsilon(1e-7));
  }

  TEST_CASE("orderings between the constants") {
    const double a2 = alpha2().value, a3 = alpha3().value, b3 = beta3().value;
    CHECK(a3 <= b3);
    CHECK(b3 <= 1.0);
    CHECK(a3 <= a2);
  }

  TEST_CASE("limit stabilities") {
    CHECK(majority_limit(0.0) == doctest::Approx(0.0));
    CHECK(majority_limit(0.5) == doctest::Approx(1.0 / 3));
    CHECK(majority_limit(-0.5) == doctest::Approx(-1.0 / 3));
    CHECK(plurality_limit(0.0) == doctest::Approx(1.0 / 3));
    CHECK(plurality_limit(1 - 1e-9) == doctest::Approx(0.99997864718378933152).epsilon(1e-9));
    CHECK_THROWS_AS(majority_limit(1.0), DomainError);
    CHECK_THROWS_AS(plurality_limit(-0.5), DomainError);
  }
}
