#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "quadlaw/quadrature.hpp"

using namespace quadlaw;

TEST_CASE("gl16 integrates polynomials up to degree 31 exactly") {
  // int_0^1 x^k = 1/(k+1)
  for (int k = 0; k <= 31; ++k) {
    const double got = gl16_panel([k](double x) { return std::pow(x, k); }, 0.0, 1.0);
    CHECK(got == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
  }
}

TEST_CASE("gl16 weights sum to interval length") {
  const auto& r = gl16();
  double s = 0.0;
  for (double w : r.weights) s += w;
  CHECK(s == doctest::Approx(2.0).epsilon(1e-15));
  // Nodes are symmetric and inside (-1, 1).
  for (int i = 0; i < 16; ++i) {
    CHECK(r.nodes[i] == doctest::Approx(-r.nodes[15 - i]).epsilon(1e-15));
    CHECK(std::abs(r.nodes[i]) < 1.0);
  }
}

TEST_CASE("adaptive integrator hits known values") {
  // erf-based oracle: int_{-6}^{6} e^{-x^2} dx = sqrt(pi) erf(6)
  const double got =
      adaptive_integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0,
                         1e-13, 1 << 12);
  CHECK(got == doctest::Approx(std::sqrt(M_PI) * std::erf(6.0)).epsilon(1e-13));

  const double logint =
      adaptive_integrate([](double x) { return std::log(x); }, 1.0, 4.0, 1e-12,
                         1 << 12);
  CHECK(logint == doctest::Approx(4.0 * std::log(4.0) - 3.0).epsilon(1e-12));
}

TEST_CASE("adaptive integrator honors seed splits across kinks") {
  auto f = [](double x) { return std::abs(x); };
  const double splits[] = {0.0};
  const double got = adaptive_integrate(f, -1.0, 2.0, 1e-13, 1 << 12, 0.0,
                                        std::span<const double>(splits, 1));
  CHECK(got == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("adaptive integrator reports budget exhaustion") {
  QuadratureSpec tiny;
  // A hard integrand with a tiny budget must fail loudly.
  auto f = [](double x) { return std::sin(200.0 * x) / (1e-4 + x * x); };
  CHECK_THROWS_AS(adaptive_integrate(f, -3.0, 3.0, 1e-14, 6), AccuracyError);
  (void)tiny;
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec ok;
  CHECK_NOTHROW(ok.validate());
  QuadratureSpec bad = ok;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  bad = ok;
  bad.max_panels = 3;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  bad = ok;
  bad.window_safety = 0.5;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
}

TEST_CASE("line fit recovers exact lines and reports residuals") {
  const double xs[] = {1.0, 2.0, 3.0, 4.0};
  const double ys[] = {3.0, 5.0, 7.0, 9.0};  // 1 + 2x
  const LineFit f = fit_line(xs, ys);
  CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.residual == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("richardson extrapolation removes a first-order error exactly") {
  // f(h) = 7 + 3 h
  auto fh = [](double h) { return 7.0 + 3.0 * h; };
  CHECK(richardson2(fh(0.2), fh(0.1), 0.2, 0.1, 1.0) ==
        doctest::Approx(7.0).epsilon(1e-13));
  // f(h) = 7 + 3 sqrt(h), order 1/2
  auto fs = [](double h) { return 7.0 + 3.0 * std::sqrt(h); };
  CHECK(richardson2(fs(0.04), fs(0.01), 0.04, 0.01, 0.5) ==
        doctest::Approx(7.0).epsilon(1e-13));
}
