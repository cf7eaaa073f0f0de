#include "mixlab/pointwise_operator.hpp"

#include <doctest.h>

#include <cmath>

using namespace mixlab;

namespace {
const auto U1 = SphericalMeasure::uniform(1);
const auto U2 = SphericalMeasure::uniform(2);
MeasureFamily uniform_family(int N) { return MeasureFamily::constant(SphericalMeasure::uniform(N)); }
}  // namespace

// (-Delta)^s exp(-|x|^2/2) = 2^s Gamma(s + N/2)/Gamma(N/2) 1F1(s + N/2; N/2; -|x|^2/2),
// values frozen from 30-digit mpmath evaluation.
TEST_CASE("1D Gaussian against the hypergeometric closed form") {
  const auto g = fields::gaussian(1);
  struct Ref {
    double s, x, value;
  };
  const Ref refs[] = {{0.3, 0.0, 0.80867262477428816},
                      {0.3, 0.7, 0.53427889695711326},
                      {0.75, 0.7, 0.42050648938573475},
                      {1.5, 0.4, 1.1242804423153932}};
  for (const auto& r : refs) {
    CAPTURE(r.s);
    CAPTURE(r.x);
    const auto e = apply_Lms(g, order_above(r.s), r.s, U1, {r.x, 0.0});
    CHECK(e.value == doctest::Approx(r.value).epsilon(1e-8));
    CHECK(std::abs(e.value - r.value) <= e.error + 1e-12);
  }
}

TEST_CASE("2D Gaussian against the closed form, uniform and atomic sigma") {
  const auto g = fields::gaussian(2);
  CHECK(apply_Lms(g, 1, 0.5, U2, {0.0, 0.0}).value == doctest::Approx(1.2533141373155003).epsilon(1e-7));
  CHECK(apply_Lms(g, 1, 0.5, U2, {0.8, 0.0}).value == doctest::Approx(0.75832650107239317).epsilon(1e-7));
  CHECK(apply_Lms(g, 1, 0.25, U2, {0.0, 1.2}).value == doctest::Approx(0.41544808714821809).epsilon(1e-7));
  // sigma = delta_{e1}: the 1D operator along x.
  const auto atom = SphericalMeasure::atomic(2, {{{1.0, 0.0}, 1.0}});
  const double y = 0.5;
  CHECK(apply_Lms(g, 1, 0.3, atom, {0.7, y}).value ==
        doctest::Approx(0.53427889695711326 * std::exp(-y * y / 2)).epsilon(1e-8));
}

TEST_CASE("identity atom and superposition") {
  const auto u = fields::bump(1);
  for (double x : {-0.5, 0.0, 0.3}) {
    const auto e = apply_superposition(u, OrderMeasure::delta(0.0), uniform_family(1), {x, 0.0});
    CHECK(e.value == u({x, 0.0}));
    CHECK(e.error == 0.0);
  }
  const auto g = fields::gaussian(1);
  OrderMeasure mu = OrderMeasure::delta(0.3);
  mu.add_plus(0.75, 2.0);
  mu.add_minus(0.0, 0.5);
  const auto e = apply_superposition(g, mu, uniform_family(1), {0.7, 0.0});
  CHECK(e.value == doctest::Approx(0.53427889695711326 + 2 * 0.42050648938573475 - 0.5 * std::exp(-0.245)).epsilon(1e-8));
}

TEST_CASE("density part integrates the order") {
  // mu = density 1 on [0.2, 0.4]: the value at x is the average over s times 0.2.
  const auto g = fields::gaussian(1);
  OrderMeasure mu;
  mu.plus.density.push_back({0.2, 0.4, 1.0});
  const double v = apply_superposition(g, mu, uniform_family(1), {0.0, 0.0}).value;
  const double lo = apply_Lms(g, 1, 0.2, U1, {0.0, 0.0}).value, hi = apply_Lms(g, 1, 0.4, U1, {0.0, 0.0}).value;
  CHECK(v > 0.2 * std::min(lo, hi));
  CHECK(v < 0.2 * std::max(lo, hi));
}

TEST_CASE("constants are annihilated and the tail mass is exact") {
  const auto one = fields::constant(1, 1.0);
  CHECK(std::abs(apply_Lms(one, 1, 0.4, U1, {0.2, 0.0}).value) < 1e-12);
  CHECK(tail_mass(0.5, 2.0) == doctest::Approx(0.5));
  CHECK(tail_mass(0.25, 16.0) == doctest::Approx(0.5));
}

TEST_CASE("pure frequency is an eigenfunction") {
  const auto c = fields::cosine(1, {1.0, 0.0});
  const auto e = apply_Lms(c, 1, 0.5, U1, {0.4, 0.0});
  CHECK(std::abs(e.value - std::cos(0.4)) <= std::max(e.error, 1e-6));
}

TEST_CASE("linearity, translation and scaling") {
  const auto u = fields::bump(1), v = fields::gaussian(1, 0.3);
  const Point x{0.2, 0.0};
  const double s = 0.6;
  const auto eu = apply_Lms(u, 1, s, U1, x), ev = apply_Lms(v, 1, s, U1, x);
  const auto ec = apply_Lms(fields::combine(2.0, u, -3.0, v), 1, s, U1, x);
  CHECK(std::abs(ec.value - (2 * eu.value - 3 * ev.value)) <= ec.error + 2 * eu.error + 3 * ev.error + 1e-12);

  const auto et = apply_Lms(fields::shifted(u, x), 1, s, U1, {0.0, 0.0});
  CHECK(std::abs(et.value - eu.value) <= et.error + eu.error + 1e-12);

  const double rho = 2.0;
  const auto ed = apply_Lms(fields::dilated(u, rho), 1, s, U1, scale(rho, x));
  CHECK(ed.value == doctest::Approx(std::pow(rho, -2 * s) * eu.value).epsilon(1e-8));
}

TEST_CASE("m independence") {
  const auto g = fields::gaussian(1);
  const auto r = m_independence_check(g, 0.5, U1, {0.3, 0.0}, {1, 2, 3});
  CHECK(r.max_deviation < 1e-6);
  CHECK(r.within_budget);
  const auto one = fields::constant(1, 1.0);
  for (int m : {1, 2}) CHECK(std::abs(apply_Lms(one, m, 0.5, U1, {0.0, 0.0}).value) < 1e-12);
}

TEST_CASE("limits in s") {
  const auto u = fields::bump(1);
  const auto z = limit_checks(u, uniform_family(1), {0.0, 0.0}, OrderLimit::to_zero, {0.2, 0.1, 0.05});
  CHECK(z.monotone);
  const auto o = limit_checks(u, uniform_family(1), {0.0, 0.0}, OrderLimit::to_order, {0.999});
  CHECK(o.rows[0].error <= 0.01 * std::abs(o.rows[0].target));
}

TEST_CASE("pointwise bound") {
  for (double s : {0.2, 0.5, 0.8}) {
    const auto u = fields::bump(1);
    const Point x{0.3, 0.0};
    const double v = apply_Lms(u, 1, s, U1, x).value;
    const double d1 = std::abs(u.taylor(x, {1.0, 0.0}, 1)[1]);
    CHECK(std::abs(v) <= evaluation_bound(1, s, U1, d1));
  }
  CHECK(bounds_constant(2) >= 1.0);
}

TEST_CASE("invalid orders") {
  const auto u = fields::bump(1);
  CHECK_THROWS(apply_Lms(u, 1, 1.0, U1, {0.0, 0.0}));
  CHECK_THROWS(apply_Lms(u, 1, 0.0, U1, {0.0, 0.0}));
  QuadratureSpec bad;
  bad.tolerance = 0.0;
  CHECK_THROWS(bad.check());
}
