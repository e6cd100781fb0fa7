#include <doctest.h>

#include <cmath>

#include "nsl/errors.hpp"
#include "nsl/special_functions.hpp"

using namespace nsl;

// Reference values: mpmath at 40 digits.
TEST_SUITE("special_functions") {
  TEST_CASE("modified Bessel I against high-precision values") {
    struct Row {
      double v, x, value, scaled;
    };
    const Row rows[] = {
        {0, 0.5, 1.0634833707413235193, 0.64503527044915006811},
        {1, 2.0, 1.5906368546373290634, 0.21526928924893765916},
        {2.5, 10.0, 2028.5127573919356691, 0.092094336707898353207},
        {10, 1e-3, 2.6911445166297473192e-40, 2.6884547172369639092e-40},
        {0, 50.0, 2.9325537838493363267e+20, 0.05656162664745419253},
        {30, 40.0, 272695412506.56895746, 1.1585067161207774272e-6},
    };
    for (const auto& r : rows) {
      CAPTURE(r.v);
      CAPTURE(r.x);
      CHECK(bessel_i(r.v, r.x) == doctest::Approx(r.value).epsilon(1e-12));
      CHECK(bessel_i(r.v, r.x, true) == doctest::Approx(r.scaled).epsilon(1e-12));
    }
    CHECK(bessel_i(0, 0.0) == 1.0);
    CHECK(bessel_i(3, 0.0) == 0.0);
  }

  TEST_CASE("Bessel ratio continued fraction") {
    CHECK(bessel_ratio(0, 1e-3) == doctest::Approx(0.00049999993750001042707).epsilon(1e-13));
    CHECK(bessel_ratio(0, 1.0) == doctest::Approx(0.44638996589653450705).epsilon(1e-13));
    CHECK(bessel_ratio(1, 5.0) == doctest::Approx(0.71934058136431292685).epsilon(1e-13));
    CHECK(bessel_ratio(5, 100.0) == doctest::Approx(0.94624926801575801563).epsilon(1e-13));
    CHECK(bessel_ratio(0.5, 3.0) == doctest::Approx(0.67163648998035583776).epsilon(1e-13));
    CHECK(bessel_ratio(2, 0.0) == 0.0);
    for (double x : {1e-6, 0.1, 10.0, 1e4}) {
      const double r = bessel_ratio(0, x);
      CHECK(r >= 0.0);
      CHECK(r < 1.0);
    }
  }

  TEST_CASE("ratio brackets contain the ratio") {
    for (double v : {0.0, 0.5, 3.0, 20.0}) {
      for (double x : {1e-3, 0.7, 9.0, 300.0}) {
        const double r = bessel_ratio(v, x);
        for (const RatioBounds& b : {ratio_bounds_integer_shift(v, x), ratio_bounds_half_shift(v, x), ratio_bounds_wide_shift(v, x)}) {
          CHECK(b.lower <= r * (1 + 1e-13));
          CHECK(r <= b.upper * (1 + 1e-13));
        }
      }
    }
  }

  TEST_CASE("Gaussian helpers") {
    CHECK(erfcx(-2.0) == doctest::Approx(108.94090438997797241).epsilon(1e-13));
    CHECK(erfcx(0.0) == 1.0);
    CHECK(erfcx(1.0) == doctest::Approx(0.42758357615580700441).epsilon(1e-13));
    CHECK(erfcx(10.0) == doctest::Approx(0.056140992743822585858).epsilon(1e-13));
    CHECK(erfcx(30.0) == doctest::Approx(0.018795888861416751497).epsilon(1e-13));
    CHECK(gaussian_tail(-1.0) == doctest::Approx(0.84134474606854294859).epsilon(1e-14));
    CHECK(gaussian_tail(0.0) == 0.5);
    CHECK(gaussian_tail(2.0) == doctest::Approx(0.0227501319481792072).epsilon(1e-13));
    CHECK(gaussian_tail(8.0) == doctest::Approx(6.2209605742717841235e-16).epsilon(1e-12));
    CHECK(gaussian_tail(-INFINITY) == 1.0);
    CHECK(gaussian_tail(INFINITY) == 0.0);
    CHECK(gaussian_density(0.0) == doctest::Approx(1.0 / std::sqrt(2 * kPi)));
  }

  TEST_CASE("normalized Hermite polynomials") {
    CHECK(hermite(0, 1.7) == 1.0);
    CHECK(hermite(1, 1.7) == doctest::Approx(1.7));
    CHECK(hermite(3, 0.7) == doctest::Approx(-0.29283333333333332201).epsilon(1e-13));
    CHECK(hermite(6, -1.3) == doctest::Approx(0.031993484722222222682).epsilon(1e-12));
    CHECK(hermite(10, 2.0) == doctest::Approx(-0.000722277336860670194).epsilon(1e-11));
    CHECK_THROWS_AS(hermite(kHermiteMaxDegree + 1, 0.0), Error);
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(bessel_i(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_i(0.0, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_i(0.0, NAN), DomainError);
    CHECK_THROWS_AS(bessel_ratio(0.0, -2.0), DomainError);
  }
}
