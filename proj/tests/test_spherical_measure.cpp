#include "mixlab/spherical_measure.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace mixlab;

namespace {
const Point e1{1.0, 0.0}, e2{0.0, 1.0};
SphericalMeasure atom(const Point& d) { return SphericalMeasure::atomic(2, {{d, 1.0}}); }
SphericalMeasure two_axes() { return SphericalMeasure::atomic(2, {{e1, 0.5}, {e2, 0.5}}); }
}  // namespace

TEST_CASE("angular moment examples") {
  CHECK(angular_moment(atom(e1), e1, 1.0) == doctest::Approx(1.0));
  CHECK(angular_moment(atom(e1), e2, 2.0) == doctest::Approx(0.0));
  CHECK(angular_moment(SphericalMeasure::uniform(2), {0.6, 0.8}, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(angular_moment(SphericalMeasure::uniform(1), e1, 0.7) == doctest::Approx(1.0));
}

TEST_CASE("uniform moment is rotation invariant and in [0,1]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi), al(0.0, 3.0);
  const auto U = SphericalMeasure::uniform(2);
  for (double alpha : {0.3, 1.0, 1.7}) {
    const double ref = angular_moment(U, e1, alpha);
    for (int i = 0; i < 32; ++i) {
      const double a = ang(rng);
      CHECK(std::abs(angular_moment(U, {std::cos(a), std::sin(a)}, alpha) - ref) < 1e-10);
    }
  }
  const auto sigma = SphericalMeasure::atomic(2, {SphericalMeasure::at_angle(0.3, 0.2), SphericalMeasure::at_angle(2.0, 0.8)});
  for (int i = 0; i < 50; ++i) {
    const double a = ang(rng), alpha = al(rng);
    const double v = angular_moment(sigma, {std::cos(a), std::sin(a)}, alpha);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-15);
  }
}

TEST_CASE("moment is nonincreasing in alpha") {
  const auto sigma = SphericalMeasure::mixture({{0.5, SphericalMeasure::uniform(2)}, {0.5, atom({0.8, 0.6})}});
  double prev = 2.0;
  for (double alpha = 0.0; alpha <= 4.0; alpha += 0.25) {
    const double v = angular_moment(sigma, {0.28, 0.96}, alpha);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("maximizing direction examples") {
  const auto mx = maximizing_direction(atom({0.6, 0.8}), 0.7);
  CHECK(std::abs(std::abs(mx.e[0] * 0.6 + mx.e[1] * 0.8) - 1.0) < 1e-10);
  CHECK(mx.value == doctest::Approx(1.0));
  CHECK(maximizing_direction(SphericalMeasure::uniform(1), 0.3).value == doctest::Approx(1.0));
  const auto half = maximizing_direction(two_axes(), 0.5);
  CHECK(half.value == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
  CHECK(std::abs(std::abs(half.e[0]) - std::sqrt(0.5)) < 1e-6);
  CHECK(std::abs(std::abs(half.e[1]) - std::sqrt(0.5)) < 1e-6);
}

TEST_CASE("maximizer dominates random directions") {
  const auto sigma = SphericalMeasure::atomic(
      2, {SphericalMeasure::at_angle(0.1, 0.3), SphericalMeasure::at_angle(1.3, 0.5), SphericalMeasure::at_angle(2.6, 0.2)});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  for (double s : {0.25, 0.5, 1.5}) {
    const auto mx = maximizing_direction(sigma, s);
    CHECK(mx.value > 0.0);
    for (int i = 0; i < 1000; ++i) {
      const double a = ang(rng);
      CHECK(angular_moment(sigma, {std::cos(a), std::sin(a)}, 2.0 * s) <= mx.value + 1e-12);
    }
  }
}

TEST_CASE("invalid measures are rejected") {
  CHECK_THROWS_AS(SphericalMeasure::atomic(2, {{e1, 0.5}}), ContractViolation);
  CHECK_THROWS_AS(SphericalMeasure::atomic(2, {{{2.0, 0.0}, 1.0}}), ContractViolation);
  CHECK_THROWS_AS(SphericalMeasure::atomic(2, {{e1, -0.5}, {e2, 1.5}}), ContractViolation);
  CHECK_THROWS_AS(SphericalMeasure::uniform(3), ContractViolation);
}

TEST_CASE("ellipticity report examples") {
  const std::vector<double> grid{0.5, 1.0, 1.5};
  OrderPart plus;
  plus.atoms.push_back({1.0, 1.0});
  const auto r1 = ellipticity_report(MeasureFamily::constant(SphericalMeasure::uniform(1)), grid, 0.5, 1.5, plus);
  CHECK(r1.lambda == doctest::Approx(1.0));
  CHECK(r1.lambda0 == doctest::Approx(1.0));
  const auto r2 = ellipticity_report(MeasureFamily::constant(atom(e1)), grid, 0.5, 1.5, plus);
  CHECK(r2.lambda == doctest::Approx(1.0));
  CHECK(r2.lambda0 == doctest::Approx(0.0));
  const auto r3 = ellipticity_report(MeasureFamily::constant(SphericalMeasure::uniform(2)), {1.0}, 0.5, 1.5, plus);
  CHECK(r3.lambda == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("integrated measure examples") {
  OrderPart single;
  single.atoms.push_back({1.0, 2.0});
  const auto fam = MeasureFamily({0.0, 1.5}, {atom(e1)}, atom(e2));
  const auto m1 = integrated_measure(fam, single, 0.5, 2.0);
  CHECK(angular_moment(m1, e1, 2.0) == doctest::Approx(1.0));
  CHECK(angular_moment(m1, e2, 2.0) == doctest::Approx(0.0));

  OrderPart pair;
  pair.atoms = {{1.0, 1.0}, {1.7, 1.0}};
  const auto m2 = integrated_measure(fam, pair, 0.5, 2.0);
  CHECK(angular_moment(m2, e1, 2.0) == doctest::Approx(0.5));
  CHECK(angular_moment(m2, e2, 2.0) == doctest::Approx(0.5));

  OrderPart dens;
  dens.density.push_back({1.0, 2.0, 1.0});
  const auto fam2 = MeasureFamily({1.0, 1.5}, {atom(e1)}, SphericalMeasure::uniform(2));
  const auto m3 = integrated_measure(fam2, dens, 1.0, 2.0);
  CHECK(angular_moment(m3, e1, 2.0) == doctest::Approx(0.5 * 1.0 + 0.5 * 0.5).epsilon(1e-12));
  CHECK(angular_moment(m3, e2, 2.0) == doctest::Approx(0.5 * 0.5).epsilon(1e-12));
}

TEST_CASE("measure family lookup") {
  const auto fam = MeasureFamily({0.5, 1.0}, {atom(e1)}, atom(e2));
  CHECK(angular_moment(fam.at(0.7), e1, 2.0) == doctest::Approx(1.0));
  CHECK(angular_moment(fam.at(1.2), e2, 2.0) == doctest::Approx(1.0));
  CHECK(fam.at(0.0).is_uniform());
}
