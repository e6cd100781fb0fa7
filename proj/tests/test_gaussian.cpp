#include <doctest.h>

#include <cmath>

#include "nsl/errors.hpp"
#include "nsl/gaussian.hpp"
#include "nsl/profile_io.hpp"
#include "random_profiles.hpp"

using namespace nsl;

TEST_SUITE("gaussian") {
  TEST_CASE("sector stability closed form") {
    CHECK(cone_partition_stability(0.0).value == 1.0 / 3.0);
    // 1 - S(1 - eps) ~ 0.675 sqrt(eps), so the value at 1 - 1e-9 is still 2.1e-5 below one (mpmath).
    CHECK(cone_partition_stability(1.0 - 1e-9).value == doctest::Approx(0.99997864718378933152).epsilon(1e-9));
    CHECK(cone_partition_stability(1.0 - 1e-15).value == doctest::Approx(1.0).epsilon(1e-6));
    // mpmath
    CHECK(cone_partition_stability(-0.5).value == doctest::Approx(0.16399188535738111711).epsilon(1e-14));
    CHECK(cone_partition_stability(0.1).value == doctest::Approx(0.36976046334153782918).epsilon(1e-14));
    CHECK(cone_partition_stability(-1.0 / 43).value == doctest::Approx(0.32503572600619100582).epsilon(1e-14));
    CHECK_THROWS_AS(cone_partition_stability(1.5), DomainError);
  }

  TEST_CASE("Mehler kernel and its Hermite expansion") {
    const PlanePoint x{0.4, -1.1}, y{1.2, 0.3};
    for (double rho : {-0.3, 0.1, 0.3}) {
      CHECK(mehler_hermite_expansion(rho, x, y, 20) == doctest::Approx(mehler_kernel(rho, x, y)).epsilon(1e-8));
    }
    CHECK(mehler_kernel(0.0, x, y) == doctest::Approx(gamma2(x) * gamma2(y)));
  }

  TEST_CASE("OU smoothing: quadrature routes agree") {
    const double rho = 0.4;
    auto g = [](double t) { return std::exp(-t); };
    const PlaneFunction f = [&](const PlanePoint& p) { return g(p.norm()); };
    const PlanePoint x{1.5, 0.0};
    const double radial = ou_apply_radial(rho, g, 1.5);
    OuOptions adaptive;
    adaptive.method = OuMethod::adaptive;
    CHECK(ou_apply(rho, f, x, adaptive) == doctest::Approx(radial).epsilon(1e-8));
    // T_rho of a linear function is rho times it.
    const PlaneFunction lin = [](const PlanePoint& p) { return p.x; };
    CHECK(ou_apply(rho, lin, x) == doctest::Approx(rho * 1.5).epsilon(1e-12));
  }

  TEST_CASE("profile stability of the sectors reproduces the closed form") {
    const RadialPartitionProfile sectors = RadialPartitionProfile::sectors();
    for (double rho : {-0.4, -0.1, 0.02, 0.1, 0.3, 0.6}) {
      const StabilityValue v = profile_stability(rho, sectors);
      CAPTURE(rho);
      CHECK(std::fabs(v.value - cone_partition_stability(rho).value) <= v.uncertainty);
      CHECK(v.uncertainty < 1e-6);
    }
  }

  TEST_CASE("antipodal pairing equals negative correlation") {
    const RadialPartitionProfile p = testing::random_profile(11, false, 0.8);
    const double rho = 0.05;
    const BilinearStability b = bilinear_profile_stability(rho, p, p.antipodal());
    const StabilityValue direct = profile_stability(-rho, p);
    CHECK(b.total.value == doctest::Approx(direct.value).epsilon(1e-12));
  }

  TEST_CASE("Monte Carlo agreement for the sectors") {
    const PlaneLabel label = profile_label(RadialPartitionProfile::sectors());
    const McEstimate e = partition_agreement_mc(0.3, label, label, 200000, 5);
    CHECK(std::fabs(e.estimate - cone_partition_stability(0.3).value) < 4 * e.standard_error);
    const McEstimate again = partition_agreement_mc(0.3, label, label, 200000, 5);
    CHECK(again.estimate == e.estimate);
  }

  TEST_CASE("radial stability inequality on random balanced profiles") {
    const double rho = 0.05;
    for (std::uint64_t seed = 100; seed < 104; ++seed) {
      const RadialPartitionProfile p = testing::random_profile(seed, true, 0.8);
      const auto m = p.gaussian_measures();
      CHECK(m[0] == doctest::Approx(m[1]).epsilon(1e-12));
      const StabilityValue s = profile_stability(rho, p);
      const double margin = testing::two10_bound(rho, p) - (s.value - cone_partition_stability(rho).value);
      CHECK(margin > s.uncertainty);
    }
  }

  TEST_CASE("profile validation") {
    CHECK_THROWS_AS(RadialPartitionProfile({1.0, 2.0}, {1.0}, {ArcSection{}, ArcSection{}}), GridError);
    const RadialPartitionProfile small({1.0, 2.0}, {1.0, 1.0}, {ArcSection{}, ArcSection{}});
    CHECK_THROWS_AS(profile_stability(0.1, small), ResolutionError);
    const RadialPartitionProfile a = RadialPartitionProfile::sectors(32);
    const RadialPartitionProfile b = RadialPartitionProfile::sectors(40);
    CHECK_THROWS_AS(bilinear_profile_stability(0.1, a, b), GridError);
  }

  TEST_CASE("tphi lower bound is below the smoothed function") {
    for (double rho : {0.01, 0.05}) {
      for (double r : {0.5, 3.0, 10.0}) {
        const double u = rho * r / (1 - rho * rho);
        const double exact = ou_apply_radial(rho, [u](double t) { return 1.0 - std::exp(-u * t); }, r);
        CHECK(tphi_lower_bound(rho, r) <= exact + 1e-12);
      }
    }
  }
}
