#include "mixlab/common.hpp"
#include "mixlab/order_measure.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace mixlab;

TEST_CASE("validate examples") {
  OrderMeasure a = OrderMeasure::delta(2.0);
  a.add_plus(1.0, 1.0);
  const auto ra = validate(a, 1.0, 1, 6.0);
  CHECK(ra.gamma == 0.0);
  CHECK(ra.s_sharp == 2.0);
  CHECK(ra.two_star == 6.0);
  CHECK(ra.critical_from_fallback);
  CHECK(ra.valid());

  const auto rb = validate(OrderMeasure::delta(0.25), 0.25, 1, 6.0);
  CHECK(rb.two_star == doctest::Approx(4.0));
  CHECK_FALSE(rb.critical_from_fallback);

  OrderMeasure c = OrderMeasure::delta(1.0);
  c.add_minus(0.5, 0.3);
  const auto rc = validate(c, 0.8, 1, 4.0);
  CHECK(rc.gamma == doctest::Approx(0.3));
  CHECK(rc.valid());
}

TEST_CASE("validate flags broken assumptions") {
  OrderMeasure heavy = OrderMeasure::delta(1.0);
  heavy.add_minus(0.5, 1.2);
  CHECK_FALSE(validate(heavy, 0.8, 1, 4.0).gamma_small);
  OrderMeasure above = OrderMeasure::delta(1.0);
  above.add_minus(1.5, 0.1);
  CHECK_FALSE(validate(above, 0.8, 1, 4.0).negative_below);
  const auto none = validate(OrderMeasure::delta(0.3), 0.5, 1, 4.0);
  CHECK_FALSE(none.positive_mass_above);
  CHECK_FALSE(none.valid());
}

TEST_CASE("validate is pure") {
  OrderMeasure mu = OrderMeasure::delta(0.75);
  mu.add_minus(0.2, 0.1);
  const auto r1 = validate(mu, 0.5, 1, 4.0), r2 = validate(mu, 0.5, 1, 4.0);
  CHECK(r1.gamma == r2.gamma);
  CHECK(r1.two_star == r2.two_star);
  CHECK(r1.s_sharp == r2.s_sharp);
}

TEST_CASE("s_sharp override") {
  OrderMeasure mu = OrderMeasure::delta(0.25);
  mu.add_plus(0.75, 1.0);
  CHECK(validate(mu, 0.25, 1, 4.0).s_sharp == 0.75);
  CHECK(validate(mu, 0.25, 1, 4.0, 0.25).two_star == doctest::Approx(4.0));
}

TEST_CASE("mass examples") {
  OrderPart p;
  p.atoms = {{1.0, 1.0}, {2.0, 1.0}};
  CHECK(mass(p, 1.0, 2.0) == 1.0);
  CHECK(mass(p, 1.0, 2.0, true) == 2.0);
  OrderPart d;
  d.density.push_back({0.0, 3.0, 1.0});
  CHECK(mass(d, 1.0, 2.0) == doctest::Approx(1.0));
  CHECK(mass(OrderPart{}, 0.0, std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("masses add to total variation") {
  OrderMeasure mu = OrderMeasure::delta(0.4, 0.7);
  mu.add_plus(1.3, 0.2);
  mu.add_minus(0.1, 0.05);
  mu.plus.density.push_back({0.5, 0.9, 2.0});
  mu.minus.density.push_back({0.0, 0.2, 0.3});
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(std::abs(mass(mu.plus, 0.0, inf) + mass(mu.minus, 0.0, inf) - mu.total_variation()) < 1e-12);
}

TEST_CASE("invalid order measures are rejected") {
  OrderMeasure neg;
  neg.plus.atoms.push_back({-0.1, 1.0});
  CHECK_THROWS_AS(check_order_measure(neg), ContractViolation);
  OrderMeasure zero;
  zero.plus.atoms.push_back({0.5, 0.0});
  CHECK_THROWS_AS(check_order_measure(zero), ContractViolation);
  OrderMeasure rev;
  rev.plus.density.push_back({1.0, 0.5, 1.0});
  CHECK_THROWS_AS(check_order_measure(rev), ContractViolation);
}

TEST_CASE("bump derivative norms match an independent high-precision oracle") {
  // ||D^k phi||_{L^2} for phi = exp(1 - 1/(1 - 4x^2)), frozen from 30-digit quadrature.
  const double ref[] = {0.70120639362199432, 2.4602689972026778, 25.306918050092914, 870.24618550465139};
  const auto c = derivative_norms(BumpProfile{}, 3);
  REQUIRE(c.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(c[k] == doctest::Approx(ref[k]).epsilon(1e-10));
  const auto sp = spectral_derivative_norms(BumpProfile{}, 3, 1 << 14);
  for (int k = 0; k < 4; ++k) CHECK(sp[k] == doctest::Approx(ref[k]).epsilon(1e-8));
}

TEST_CASE("pathological partial sums") {
  const auto phi = pathological_partial_sums(PathologicalKind::special_phi, 3);
  CHECK(phi.back().sum == doctest::Approx(1.0 + 0.25 + 1.0 / 9.0).epsilon(1e-10));
  const auto psi = pathological_partial_sums(PathologicalKind::special_psi, 3);
  // sum_{k<=3} 2^{k-1/2} / k^2
  CHECK(psi.back().sum == doctest::Approx(std::sqrt(2.0) * (1.0 + 2.0 / 4.0 + 4.0 / 9.0)).epsilon(1e-10));
  const auto phi40 = pathological_partial_sums(PathologicalKind::special_phi, 40);
  CHECK(phi40.back().sum <= std::numbers::pi * std::numbers::pi / 6.0 + 1e-9);
  CHECK_THROWS_AS(pathological_partial_sums(PathologicalKind::strano, 41), NumericalFailure);
  CHECK(to_string(parse_pathological_kind("strano")) == "strano");
  CHECK_THROWS_AS(parse_pathological_kind("bogus"), ContractViolation);
}
