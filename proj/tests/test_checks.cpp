#include <doctest.h>

#include <cmath>

#include "nsl/check_registry.hpp"
#include "nsl/checks.hpp"
#include "nsl/errors.hpp"
#include "nsl/rng.hpp"
#include "nsl/special_functions.hpp"

using namespace nsl;

TEST_SUITE("checks") {
  TEST_CASE("linspace keeps both endpoints exact") {
    const auto v = matlab_linspace(0.0, 2 * kPi, 100);
    CHECK(v.size() == 100);
    CHECK(v.front() == 0.0);
    CHECK(v.back() == 2 * kPi);
    CHECK_THROWS_AS(matlab_linspace(0, 1, 1), GridError);
  }

  TEST_CASE("grid axis parsing") {
    const GridAxis a = GridAxis::parse("rho:0.01:0.09:9");
    CHECK(a.name == "rho");
    CHECK(a.count == 9);
    CHECK(a.points()[8] == 0.09);
    CHECK_THROWS_AS(GridAxis::parse("rho:0.01:0.09"), ParseError);
    CHECK_THROWS_AS(GridAxis::parse("rho:0.1:0.09:9"), ParseError);
    CHECK_THROWS_AS(GridAxis::parse("rho:0.01:0.09:1"), ParseError);
    CHECK_THROWS_AS(GridAxis::parse("rho:a:0.09:3"), ParseError);
  }

  TEST_CASE("Matlab replicas pass at the published parameters") {
    const CheckReport two8 = check_two8();
    CHECK(two8.passed);
    CHECK(two8.excluded == 1);  // r = 0
    CHECK(two8.min_margin == doctest::Approx(5.3479e-6).epsilon(1e-3));
    Two8Options variant;
    variant.rho = 0.04;
    variant.constant = 0.3;
    CHECK(check_two8(variant).passed);

    Rk1compOptions rk;
    rk.a = {0.01, 0.1};
    const CheckReport r = check_rk1comp(rk);
    CHECK(r.passed);
    CHECK(r.excluded == 2);  // the equal-angle node, once per a

    const CheckReport last = check_lastlem();
    CHECK(last.passed);
    CHECK(last.detail("outer_margin") == doctest::Approx(0.9555 - 2 * 4.715 / (kPi * kPi)));
    CHECK(last.detail("half_circle_ratio") == doctest::Approx(4.71539).epsilon(1e-5));
    CHECK(last.warnings.size() == 1);

    NegLinearOptions neg;
    neg.a = {10.0};
    CHECK(check_neg_linear(neg).passed);
  }

  TEST_CASE("neg_linear separates truncation artifacts from the guard") {
    NegLinearOptions neg;
    neg.a = {50.0};
    const CheckReport r = check_neg_linear(neg);
    CHECK(r.passed);
    CHECK(r.detail("guard_skipped[a=50]") == 1194);
    CHECK(r.detail("deep_series_guard_skipped[a=50]") == 0);
    CHECK(r.detail("deep_series_min_margin[a=50]") >= 0.0);
  }

  TEST_CASE("lastlem fails on grids that include the half-circle corner") {
    LastlemOptions o;
    o.numpts = 201;
    CHECK_FALSE(check_lastlem(o).passed);
  }

  TEST_CASE("convbd2 box integral against Monte Carlo at r = 1") {
    // T_rho f(r, 0) = E f(rho r e_1 + sqrt(1 - rho^2) Y) for f(z) = u|z| e^{-u|z|}.
    const double rho = 0.05, r = 1.0, k = 1 - rho * rho, u = rho * r / k;
    double sum = 0.0, sumsq = 0.0;
    const int n = 10000000;
    for (int i = 0; i < n; ++i) {
      SampleStream s(2024, i);
      const double z1 = rho * r + std::sqrt(k) * s.normal();
      const double z2 = std::sqrt(k) * s.normal();
      const double nz = std::hypot(z1, z2);
      const double v = u * nz * std::exp(-u * nz);
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sumsq / n - mean * mean) / n);
    Convbd2Options o;
    o.count = 11;
    o.r_max = 10.0;  // nodes 0, 1, 2, ...
    const CheckReport rep = check_convbd2(o);
    CHECK(rep.passed);
    Convbd2Options radial = o;
    radial.method = Convbd2Method::radial;
    const CheckReport rad = check_convbd2(radial);
    CHECK(rep.detail("cross_method_max_abs_diff") < 1e-9);
    CHECK(rad.detail("cross_method_max_abs_diff") < 1e-9);
    // Margin at r = 1 = value - lower bound; recover the value via the lower bound.
    const double lower = 1.2 * u * std::exp(-(1.1 * rho * r) * (1.1 * rho * r) / k - 1.1 * u);
    // Direct comparison through the radial single integral used by the check.
    Convbd2Options single = o;
    single.count = 2;
    single.r_max = 1.0;
    const CheckReport one = check_convbd2(single);
    const double value_at_1 = one.min_margin + lower;
    CHECK(std::fabs(value_at_1 - mean) < 4 * se);
  }

  TEST_CASE("full convbd2 grid passes with the reported headroom") {
    const CheckReport r = check_convbd2();
    CHECK(r.passed);
    CHECK(r.min_margin == doctest::Approx(2.5794e-5).epsilon(1e-3));
    CHECK(r.detail("min_relative_margin") == doctest::Approx(0.0046).epsilon(0.05));
    CHECK(r.uncertainty < r.min_margin);
  }

  TEST_CASE("first scalar chain: closed form matches its integral but exceeds 2.5(rho + rho^2)") {
    // scipy quadrature of the defining integral
    CHECK(lemma28_closed_form(0.01) == doctest::Approx(0.031528759795747284).epsilon(1e-10));
    CHECK(lemma28_closed_form(0.05) == doctest::Approx(0.16205133517759618).epsilon(1e-10));
    CHECK(lemma28_closed_form(0.1) == doctest::Approx(0.33749985451160797).epsilon(1e-10));
    CHECK(lemma28_closed_form(0.14) == doctest::Approx(0.49049037247981886).epsilon(1e-10));
    CHECK(lemma28_integral(0.05) == doctest::Approx(0.16205133517759512).epsilon(1e-9));
    const CheckReport r = check_lemma28_constant();
    CHECK_FALSE(r.passed);
    CHECK(r.detail("smallest_valid_constant") == doctest::Approx(3.1273).epsilon(1e-4));
    CHECK(r.detail("monotone_increasing") == 1.0);
    CHECK(std::isfinite(r.detail("value_over_rho_at_1e-4")));
  }

  TEST_CASE("second scalar chain passes for both exponent signs") {
    CHECK(lemma29_gaussian_tail_form(0.01) == doctest::Approx(0.018649696403945197).epsilon(1e-10));
    CHECK(lemma29_gaussian_tail_form(0.05) == doctest::Approx(0.08949725679188031).epsilon(1e-10));
    CHECK(lemma29_integral(0.09, -1) == doctest::Approx(0.1524961453034447).epsilon(1e-9));
    CHECK(lemma29_integral(0.09, +1) == doctest::Approx(0.2286426465330346).epsilon(1e-9));
    CHECK(lemma29_printed_form(0.01) > 5 * 0.01 + 8e-4);  // the printed form does not match the integral
    const CheckReport r = check_lemma29_constant();
    CHECK(r.passed);
    CHECK(r.detail("ratio_at_rho_1e-4") < 1.0);
    Lemma29Options fine;
    fine.rho.count = 4 * (fine.rho.count - 1) + 1;
    CHECK(std::fabs(check_lemma29_constant(fine).min_margin - r.min_margin) < 1e-6);
  }

  TEST_CASE("odd-mode chain: main term passes, alpha lower bound fails") {
    CHECK(lemma29z_main(1e-4) == doctest::Approx(std::sqrt(kPi / 2)).epsilon(1e-4));
    CHECK(lemma29z_main(0.015) == doctest::Approx(1.2880500447923104).epsilon(1e-11));
    CHECK(lemma29z_alpha(0.005, true) == doctest::Approx(0.6290820817082775).epsilon(1e-10));
    CHECK(lemma29z_alpha(0.01, true) > 0.0);
    const CheckReport r = check_lemma29z_constant();
    CHECK_FALSE(r.passed);
    CHECK(r.detail("main_min_margin") > 0.0);
    CHECK(r.detail("alpha_min_margin") < 0.0);
    CHECK(r.detail("net_min_margin_phi_prefactor") > 0.0);
  }

  TEST_CASE("remaining scalar inequalities") {
    const CheckReport cor1 = check_cor1_scalar();
    CHECK(cor1.passed);
    CHECK(cor1.detail("margin_over_x_near_0") > 1e-3);
    CHECK(check_lemma10_conclusion().passed);
    CHECK(check_lemma7().passed);
    CHECK(check_three1().passed);
    CHECK(check_lemma6().passed);
    CHECK(check_ratio_bounds().passed);
  }

  TEST_CASE("arc derivative lemma: strict part holds, exponential refinement does not") {
    const CheckReport r = check_lemma5();
    CHECK_FALSE(r.passed);
    CHECK(r.detail("strict_part_min_margin") > 0.0);
    CHECK(r.detail("exponential_part_violations") > 0);
    // scipy quadrature at the worst grid point
    CHECK(r.min_margin == doctest::Approx(-0.002564040190423951).epsilon(1e-8));
  }

  TEST_CASE("reports are deterministic") {
    const CheckReport a = check_lastlem(), b = check_lastlem();
    CHECK(a.min_margin == b.min_margin);
    CHECK(a.argmin[0].value == b.argmin[0].value);
  }

  TEST_CASE("registry") {
    CHECK(is_registered_check("two8_variant"));
    CHECK_FALSE(is_registered_check("nosuch"));
    CHECK(suite_members("matlab").size() == 6);
    CHECK(suite_members("nosuch").empty());
    CHECK_THROWS_AS(run_check("nosuch"), DomainError);
    CheckOverrides bad;
    bad.grid.push_back(GridAxis::parse("rho:0.01:0.02:3"));
    CHECK_THROWS_AS(run_check("lastlem", bad), GridError);
    CheckOverrides refine;
    refine.refine = true;
    const CheckReport r = run_check("lastlem", refine);
    CHECK(r.detail("refined_passed") == 0.0);  // 399 nodes land near the corner
    CHECK_FALSE(r.warnings.empty());
    CheckOverrides rho;
    rho.rho = 0.05;
    CHECK(run_check("rk1comp", rho).passed);
  }
}
