#include "mixlab/common.hpp"
#include "mixlab/kernel_constants.hpp"
#include "mixlab/spherical_measure.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace mixlab;

// I(m,s) frozen from 40-digit mpmath: Taylor series on [0,1], harmonic
// expansion of (1 - cos t)^m with oscillatory quadrature on [1,inf).
TEST_CASE("cosine integral matches a high-precision oracle") {
  struct Ref {
    int m;
    double s;
    double value;
  };
  const Ref refs[] = {{1, 0.25, 2.5066282746310005}, {1, 0.5, 1.5707963267948966}, {2, 0.5, 1.5707963267948966},
                      {2, 1.3, 0.53877565384581028}, {3, 2.5, 0.21598449493429829}, {1, 0.9, 3.032049880270204}};
  for (const auto& r : refs) {
    CAPTURE(r.m);
    CAPTURE(r.s);
    const auto v = cosine_integral_detailed(r.m, r.s);
    CHECK(v.value == doctest::Approx(r.value).epsilon(1e-10));
    CHECK(v.error < 1e-9);
  }
}

TEST_CASE("closed form of I(1,s)") {
  CHECK(cosine_integral_closed_form(0.25) == doctest::Approx(std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-13));
  for (double s : {0.1, 0.25, 0.4, 0.45, 0.75, 0.9})
    CHECK(cosine_integral_closed_form(s) == doctest::Approx(cosine_integral(1, s)).epsilon(1e-8));
  CHECK_THROWS(cosine_integral_closed_form(0.5));
}

TEST_CASE("P_a coefficients") {
  for (double s : {0.2, 0.5, 1.7}) CHECK(pa_coefficient(1, s) == doctest::Approx(-1.0));
  CHECK(pa_coefficient(2, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(pa_coefficient(2, 0.5) == doctest::Approx(-2.0));
}

TEST_CASE("normalization constant examples") {
  const double expected = 1.0 / std::sqrt(2.0 * std::numbers::pi);  // 0.398942280401...
  CHECK(c_ms(1, 0.25) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(normalization_constant(1, 0.25, SphericalMeasure::uniform(1)).c_ms == doctest::Approx(0.398942280401).epsilon(1e-11));
  const auto atom = SphericalMeasure::atomic(2, {SphericalMeasure::at_angle(0.4, 1.0)});
  CHECK(normalization_constant(1, 0.25, atom).c_ms == doctest::Approx(expected).epsilon(1e-12));
  CHECK(normalization_constant(1, 0.25, SphericalMeasure::uniform(1), ConstantRoute::closed_form).c_ms ==
        doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("routes agree") {
  for (double s : {0.3, 0.7, 1.3, 2.2}) {
    const int m = order_above(s) + 1;
    const auto q = normalization_constant(m, s, SphericalMeasure::uniform(1), ConstantRoute::quadrature);
    const auto r = normalization_constant(m, s, SphericalMeasure::uniform(1), ConstantRoute::recursion);
    CHECK(q.c_ms == doctest::Approx(r.c_ms).epsilon(1e-9));
  }
  CHECK(parse_route("recursion") == ConstantRoute::recursion);
  CHECK_THROWS_AS(parse_route("guess"), ContractViolation);
}

TEST_CASE("cross-order identity on the lattice") {
  for (double s : {0.3, 0.7, 1.3})
    for (int m = 1; m <= 4; ++m)
      for (int n = m + 1; n <= 4; ++n) {
        if (!(m > s)) continue;
        const double lhs = c_ms(n, s) * pa_coefficient(n, s), rhs = c_ms(m, s) * pa_coefficient(m, s);
        CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(rhs));
      }
}

TEST_CASE("two-sided bound on c_{m,s}") {
  // The s -> 0 limit is 4 / C(2m, m); the quantity dips at most 0.5% below it.
  for (int m = 1; m <= 4; ++m) {
    const double limit0 = 4.0 / static_cast<double>(binomial(2 * m, m));
    for (int i = 1; i < 40; ++i) {
      const double s = m * i / 40.0;
      if (m == 1 && i == 20) continue;
      CHECK(constant_bound_quantity(m, s) >= 0.99 * limit0);
      CHECK(constant_bound_quantity(m, s) < 50.0);
    }
    CHECK(constant_bound_quantity(m, 0.005 * m) == doctest::Approx(limit0).epsilon(2e-3));
  }
  // Independent 40-digit values at s = 0.05: below 2^{2-m} for m = 1 and 2.
  CHECK(constant_bound_quantity(1, 0.05) == doctest::Approx(1.99461751659).epsilon(1e-9));
  CHECK(constant_bound_quantity(2, 0.05) == doctest::Approx(0.663703252749).epsilon(1e-9));
}

TEST_CASE("constant limits") {
  const auto fam = MeasureFamily::constant(SphericalMeasure::uniform(1));
  const auto z = constant_limits(1, 1, fam, {0.04, 0.02, 0.01}, LimitDirection::to_zero);
  CHECK(z.target == 2.0);
  CHECK(z.deviation < 1e-3);
  const auto o = constant_limits(1, 1, fam, {0.96, 0.98, 0.99}, LimitDirection::to_order);
  CHECK(o.target == 4.0);
  CHECK(o.deviation < 1e-3);
  const auto d = constant_limits(1, 2, fam, {0.96, 0.98, 0.99}, LimitDirection::to_order);
  CHECK(d.diverges);
}

TEST_CASE("domain errors") {
  CHECK_THROWS(cosine_integral(1, 1.0));
  CHECK_THROWS(cosine_integral(2, 0.0));
  CHECK_THROWS(normalization_constant(1, 1.2, SphericalMeasure::uniform(1)));
}
