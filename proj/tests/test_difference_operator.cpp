#include "mixlab/difference_operator.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mixlab;

TEST_CASE("stencil shape") {
  const auto& s1 = stencil(1);
  CHECK(s1.central() == 2);
  CHECK(s1.weight.front() == -1);
  CHECK(s1.weight.back() == -1);
  const auto& s3 = stencil(3);
  CHECK(s3.central() == 20);
  std::int64_t sum = 0;
  for (auto w : s3.weight) sum += w;
  CHECK(sum == 0);
  CHECK_THROWS_AS(stencil(0), ContractViolation);
}

TEST_CASE("delta_1 expansion and constants") {
  auto u = [](const Point& p) { return std::sin(p[0]) + p[1] * p[1]; };
  const Point x{0.3, -0.2}, y{0.7, 0.4};
  const double expect = 2 * u(x) - u(add(x, y)) - u(add(x, scale(-1.0, y)));
  CHECK(delta_m(u, x, y, 1) == doctest::Approx(expect).epsilon(1e-14));
  auto one = [](const Point&) { return 1.0; };
  for (int m = 1; m <= 6; ++m) CHECK(delta_m(one, x, y, m) == 0.0);
}

TEST_CASE("delta_m annihilates low-degree polynomials and is even in y") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  for (int m = 1; m <= 5; ++m)
    for (int j = 0; j < 2 * m + 1; ++j)
      for (int trial = 0; trial < 5; ++trial) {
        const double x = U(rng), y = U(rng);
        auto mono = [j](double t) { return std::pow(t, j); };
        const double v = delta_m_1d(mono, x, y, m);
        const double scale_ref = std::pow(std::abs(x) + 2 * m * std::abs(y) + 1.0, j);
        if (j < 2 * m) CHECK(std::abs(v) <= 1e-9 * scale_ref);
        CHECK(std::abs(v - delta_m_1d(mono, x, -y, m)) <= 1e-12 * scale_ref);
      }
}

TEST_CASE("stencil moments") {
  for (int m = 1; m <= 6; ++m) {
    for (int p = 0; p < 2 * m; ++p) CHECK(stencil_moment(m, p) == 0.0);
    CHECK(stencil_moment(m, 2 * m + 1) == 0.0);
    CHECK(std::abs(stencil_moment(m, 2 * m)) > 0.0);
  }
}

TEST_CASE("exponential identity and Chu-Vandermonde") {
  std::vector<double> t;
  for (int i = 0; i < 100; ++i) t.push_back(-6.0 + 12.0 * i / 99.0);
  for (int m = 1; m <= 5; ++m) CHECK(exponential_identity_deviation(m, t) < 1e-12);
  for (int m = 1; m <= 8; ++m) CHECK(chu_vandermonde_check(m));
  CHECK_THROWS(chu_vandermonde_check(9));
}
