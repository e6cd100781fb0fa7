#include <doctest.h>

#include <cmath>

#include "nsl/errors.hpp"
#include "nsl/hardness.hpp"
#include "nsl/social_choice.hpp"

using namespace nsl;

// Exact fractions below come from a brute-force double sum over (omega, sigma)
// in rational arithmetic.
TEST_SUITE("social_choice") {
  TEST_CASE("noise kernel") {
    const NoiseKernel k(3, 0.1);
    CHECK(k.stay() + 2 * k.move() == doctest::Approx(1.0));
    CHECK_THROWS_AS(NoiseKernel(3, -0.5), DomainError);
    CHECK_THROWS_AS(NoiseKernel(3, 1.0), DomainError);
    CHECK_NOTHROW(NoiseKernel(3, -0.49));
  }

  TEST_CASE("dictator and constant rules") {
    for (int i = 0; i < 20; ++i) {
      const double rho = -0.45 + i * 0.07;
      CHECK(noise_stability_exact(VotingRule::dictator(3, 4, 2), NoiseKernel(3, rho)) ==
            doctest::Approx((1 + 2 * rho) / 3).epsilon(1e-14));
    }
    CHECK(noise_stability_exact(VotingRule::constant(3, 4), NoiseKernel(3, 0.3)) == doctest::Approx(1.0));
    const McEstimate mc = noise_stability_mc(VotingRule::constant(3, 4), NoiseKernel(3, 0.3), 5000, 1);
    CHECK(mc.estimate == 1.0);
    CHECK(mc.standard_error == 0.0);
  }

  TEST_CASE("plurality exact values") {
    const NoiseKernel k(3, 0.1);
    CHECK(noise_stability_exact(VotingRule::plurality(3, 1), k) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(noise_stability_exact(VotingRule::plurality(3, 2), k) == doctest::Approx(157.0 / 450).epsilon(1e-14));
    CHECK(noise_stability_exact(VotingRule::plurality(3, 3), k) == doctest::Approx(2519.0 / 6750).epsilon(1e-14));
    CHECK(noise_stability_exact(VotingRule::plurality(3, 4), k) == doctest::Approx(0.363562962962963).epsilon(1e-13));
    CHECK(noise_stability_exact(VotingRule::plurality(3, 5), k) == doctest::Approx(0.3629930864197531).epsilon(1e-13));
    CHECK(noise_stability_exact(VotingRule::plurality(3, 4), NoiseKernel(3, -0.2)) ==
          doctest::Approx(0.2753777777777778).epsilon(1e-13));
    CHECK(noise_stability_exact(VotingRule::majority(3), NoiseKernel(2, 0.5)) == doctest::Approx(0.703125).epsilon(1e-14));
    CHECK(noise_stability_exact(VotingRule::majority(4), NoiseKernel(2, 0.3)) == doctest::Approx(0.58521875).epsilon(1e-14));
  }

  TEST_CASE("independence: S_0 f = sum_j (E f_j)^2") {
    CHECK(noise_stability_exact(VotingRule::plurality(3, 5), NoiseKernel(3, 0.0)) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(noise_stability_exact(VotingRule::dictator(3, 2), NoiseKernel(3, 0.0)) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  }

  TEST_CASE("enumeration cap") {
    CHECK_NOTHROW(noise_stability_exact(VotingRule::plurality(3, 8), NoiseKernel(3, 0.1)));
    CHECK_THROWS_AS(noise_stability_exact(VotingRule::plurality(3, 9), NoiseKernel(3, 0.1)), EnumerationError);
  }

  TEST_CASE("Monte Carlo agrees with enumeration") {
    const NoiseKernel k(3, 0.1);
    const VotingRule rule = VotingRule::plurality(3, 4);
    const double exact = noise_stability_exact(rule, k);
    const McEstimate e = noise_stability_mc(rule, k, 1000000, 42);
    CHECK(std::fabs(e.estimate - exact) < 4 * e.standard_error);
    const McEstimate again = noise_stability_mc(rule, k, 1000000, 42);
    CHECK(again.estimate == e.estimate);
    CHECK_THROWS_AS(noise_stability_mc(rule, k, 999, 1), DomainError);
  }

  TEST_CASE("table rules: sampled coordinates agree with enumeration") {
    // Plurality tabulated, so the generic (non-count) sampler is exercised.
    const VotingRule table = rule_from_json(rule_to_json(VotingRule::plurality(3, 4)));
    CHECK(table.kind() == RuleKind::table);
    const NoiseKernel k(3, 0.25);
    const double exact = noise_stability_exact(table, k);
    CHECK(exact == doctest::Approx(noise_stability_exact(VotingRule::plurality(3, 4), k)).epsilon(1e-14));
    const McEstimate e = noise_stability_mc(table, k, 200000, 3);
    CHECK(std::fabs(e.estimate - exact) < 4 * e.standard_error);
  }

  TEST_CASE("influences") {
    CHECK(influence(VotingRule::constant(3, 3), 1) == 0.0);
    CHECK(influence(VotingRule::dictator(3, 3, 0), 0) == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(influence(VotingRule::dictator(3, 3, 0), 1) == 0.0);
    const VotingRule p = VotingRule::plurality(3, 3);
    CHECK(influence(p, 0) == doctest::Approx(0.24691358024691354).epsilon(1e-13));
    for (int i = 1; i < 3; ++i) CHECK(std::fabs(influence(p, i) - influence(p, 0)) < 1e-12);
    CHECK(influence(VotingRule::plurality(3, 5), 2) == doctest::Approx(0.1481481481481481).epsilon(1e-13));
    const McEstimate mc = influence_mc(p, 1, 100000, 9);
    CHECK(std::fabs(mc.estimate - influence(p, 1)) < 4 * mc.standard_error);
  }

  TEST_CASE("boolean majority") {
    CHECK(boolean_noise_stability({BooleanKind::dictator, 1}, 0.37, StabilityMode::exact).estimate == 0.37);
    CHECK(boolean_noise_stability({BooleanKind::majority, 1}, 0.37, StabilityMode::exact).estimate ==
          doctest::Approx(0.37).epsilon(1e-14));
    CHECK(std::fabs(boolean_noise_stability({BooleanKind::majority, 3}, 0.0, StabilityMode::exact).estimate) < 1e-15);
    // Fourier expansion: (3/4) rho + (1/4) rho^3.
    CHECK(boolean_noise_stability({BooleanKind::majority, 3}, 0.5, StabilityMode::exact).estimate ==
          doctest::Approx(0.40625).epsilon(1e-14));
    CHECK(boolean_noise_stability({BooleanKind::parity, 5}, 0.6, StabilityMode::exact).estimate ==
          doctest::Approx(std::pow(0.6, 5)).epsilon(1e-13));
    for (int n : {5, 11, 31}) {
      const double maj = boolean_noise_stability({BooleanKind::majority, n}, 0.3, StabilityMode::exact).estimate;
      const double anti = boolean_noise_stability({BooleanKind::anti_majority, n}, 0.3, StabilityMode::exact).estimate;
      CHECK(maj == doctest::Approx(anti).epsilon(1e-14));
    }
    const McEstimate mc = boolean_noise_stability({BooleanKind::majority, 7}, 0.5, StabilityMode::mc, 200000, 4);
    const double exact = boolean_noise_stability({BooleanKind::majority, 7}, 0.5, StabilityMode::exact).estimate;
    CHECK(std::fabs(mc.estimate - exact) < 4 * mc.standard_error);
    CHECK_THROWS_AS(boolean_noise_stability({BooleanKind::majority, 4}, 0.5, StabilityMode::exact), DomainError);
  }

  TEST_CASE("monotone in rho on [0, 1)") {
    for (const VotingRule& rule : {VotingRule::plurality(3, 5), VotingRule::majority(5)}) {
      double prev = -1.0;
      for (int i = 0; i < 20; ++i) {
        const double v = noise_stability_exact(rule, NoiseKernel(rule.k(), i * 0.05));
        CHECK(v >= prev - 1e-15);
        prev = v;
      }
    }
  }

  TEST_CASE("plurality convergence toward the Gaussian limit") {
    const auto rows = plurality_convergence_report(0.1, {1, 3, 5}, 0, 0);
    CHECK(rows[0].value == doctest::Approx(0.4));
    CHECK(rows[0].exact);
    // n = 3 sits above the limit, n = 5 below it, and |gap| grows from 3 to 5.
    CHECK(rows[1].gap > 0.0);
    CHECK(rows[2].gap < 0.0);
    CHECK(std::fabs(rows[2].gap) > std::fabs(rows[1].gap));
    const auto big = plurality_convergence_report(0.1, {1001}, 1000000, 17);
    CHECK_FALSE(big[0].exact);
    CHECK(std::fabs(big[0].gap) < 0.02);
    CHECK_THROWS_AS(plurality_convergence_report(0.1, {4}, 1000, 1), DomainError);
  }

  TEST_CASE("rule JSON") {
    CHECK_THROWS_AS(rule_from_json(nlohmann::json::parse(R"({"k": 3, "n": 1, "table": [[1,0,0],[0,1,0]]})")), ParseError);
    CHECK_THROWS_AS(rule_from_json(nlohmann::json::parse(R"({"k": 2, "n": 1, "table": [[0.5,0.6],[0,1]]})")), ParseError);
    CHECK_THROWS_AS(rule_from_json(nlohmann::json::parse(R"({"k": 2, "table": []})")), ParseError);
    const VotingRule r = rule_from_json(nlohmann::json::parse(R"({"k": 2, "n": 1, "table": [[0.25,0.75],[1,0]]})"));
    double out[2];
    const int omega[1] = {0};
    r.evaluate(omega, out);
    CHECK(out[1] == 0.75);
  }
}
