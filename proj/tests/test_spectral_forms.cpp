#include "mixlab/spectral_forms.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace mixlab;

namespace {
MeasureFamily uniform_family(int N) { return MeasureFamily::constant(SphericalMeasure::uniform(N)); }
const GridSpec G1{1, 4096, 32.0};
}  // namespace

TEST_CASE("multiplier examples") {
  const auto e1 = SphericalMeasure::atomic(2, {{{1.0, 0.0}, 1.0}});
  CHECK(multiplier(e1, 0.7, {0.5, 2.0}) == doctest::Approx(std::pow(0.5, 1.4)).epsilon(1e-14));
  CHECK(multiplier(SphericalMeasure::uniform(2), 0.3, {0.6, 0.8}) == doctest::Approx(1.0).epsilon(1e-12));
  const auto two = SphericalMeasure::atomic(2, {{{1.0, 0.0}, 0.5}, {{0.0, 1.0}, 0.5}});
  CHECK(multiplier(two, 0.5, {1.0, 0.0}) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("multiplier homogeneity") {
  const auto sigma = SphericalMeasure::atomic(2, {SphericalMeasure::at_angle(0.3, 0.4), SphericalMeasure::at_angle(1.9, 0.6)});
  const Point xi{0.7, -1.1};
  for (double s : {0.25, 0.8, 1.6})
    for (double t : {0.5, 3.0}) {
      const double a = multiplier(sigma, s, scale(t, xi)), b = std::pow(t, 2 * s) * multiplier(sigma, s, xi);
      CHECK(a == doctest::Approx(b).epsilon(1e-13));
    }
}

TEST_CASE("superposition multiplier examples") {
  OrderMeasure two = OrderMeasure::delta(0.3);
  two.add_plus(0.8, 1.0);
  CHECK(superposition_multiplier(two, uniform_family(1), {1.0, 0.0}) == doctest::Approx(2.0));
  CHECK(superposition_multiplier(OrderMeasure::delta(0.0), uniform_family(1), {5.0, 0.0}) == 1.0);
  for (double gamma : {0.1, 0.5, 0.9}) {
    OrderMeasure mu = OrderMeasure::delta(1.0);
    mu.add_minus(0.5, gamma);
    CHECK(superposition_multiplier(mu, uniform_family(1), {2.0, 0.0}) == doctest::Approx(4.0 - 2.0 * gamma));
  }
  // Density 1 on [0,1] at |xi| = e: int_0^1 e^{2s} ds = (e^2 - 1)/2.
  OrderMeasure dens;
  dens.plus.density.push_back({0.0, 1.0, 1.0});
  const double E = std::exp(1.0);
  CHECK(superposition_multiplier(dens, uniform_family(1), {E, 0.0}) == doctest::Approx((E * E - 1) / 2).epsilon(1e-12));
}

TEST_CASE("apply_spectral on identity and harmonics") {
  const GridSpec g{1, 256, 2 * std::numbers::pi};
  const auto u = GridFunction::sample(g, [](const Point& p) { return std::cos(3 * p[0]) + 0.5 * std::sin(7 * p[0]); });
  double imag = 1.0;
  const auto same = apply_spectral(build_multiplier(g, OrderMeasure::delta(0.0), uniform_family(1)), u, &imag);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(same.samples[i] == doctest::Approx(u.samples[i]).epsilon(1e-12));
  CHECK(imag < 1e-12);
  const auto h = GridFunction::sample(g, [](const Point& p) { return std::cos(3 * p[0]); });
  const auto Lh = apply_spectral(build_fractional_laplacian(g, 0.4), h, &imag);
  for (std::size_t i = 0; i < g.size(); i += 17) CHECK(std::abs(Lh.samples[i] - std::pow(3.0, 0.8) * h.samples[i]) < 1e-12);
  CHECK(imag < 1e-12);
}

TEST_CASE("Parseval and energy basics") {
  const auto u = GridFunction::sample(G1, fields::bump(1).value);
  CHECK(l2_norm_squared_spectral(u) == doctest::Approx(u.dot_l2(u)).epsilon(1e-12));
  const auto mult = build_fractional_laplacian(G1, 0.6);
  CHECK(energy(u, u, mult) > 0.0);
  const GridSpec g{1, 128, 2 * std::numbers::pi};
  const auto a = GridFunction::sample(g, [](const Point& p) { return std::cos(2 * p[0]); });
  const auto b = GridFunction::sample(g, [](const Point& p) { return std::cos(5 * p[0]); });
  CHECK(std::abs(energy(a, b, build_fractional_laplacian(g, 0.5))) < 1e-12);
  // E(cos 2x, cos 2x) = 2^{2s} ||cos 2x||^2 = 2^{2s} pi.
  CHECK(energy(a, a, build_fractional_laplacian(g, 0.5)) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("energy of a Gaussian against the closed form") {
  // int |xi|^{2s} |F exp(-x^2/2)|^2 dxi / (2 pi) = Gamma(s + 1/2). The frequency
  // sum misses the kink of |xi|^{2s} at 0 with error ~ (2 pi / L)^{1+2s}.
  for (double s : {0.25, 0.5, 1.5}) {
    CAPTURE(s);
    double err[2];
    for (int i = 0; i < 2; ++i) {
      const GridSpec g{1, 8192 << (2 * i), 256.0 * (1 << (2 * i))};
      const auto u = GridFunction::sample(g, fields::gaussian(1).value);
      err[i] = std::abs(energy(u, u, build_fractional_laplacian(g, s)) - std::tgamma(s + 0.5));
    }
    CHECK(err[1] < 1e-3);
    if (err[0] > 1e-12) CHECK(err[0] / err[1] == doctest::Approx(std::pow(4.0, 1 + 2 * s)).epsilon(0.1));
  }
}

TEST_CASE("brute-force energy oracle") {
  const GridSpec g{1, 2048, 64.0};
  const auto u = fields::bump(1);
  const auto ug = GridFunction::sample(g, u.value);
  CHECK(energy_bruteforce_1d(fields::bump(1, 1.0, {0.0, 0.0}, 0.0), g, 1, 0.4) == 0.0);
  const double bf = energy_bruteforce_1d(u, g, 1, 0.4), sp = energy(ug, ug, build_fractional_laplacian(g, 0.4));
  CHECK(bf == doctest::Approx(sp).epsilon(1e-3));
}

TEST_CASE("scaling of the energy") {
  const GridSpec g{1, 8192, 256.0};
  for (double s : {0.25, 0.75}) {
    const auto mult = build_fractional_laplacian(g, s);
    const auto u = GridFunction::sample(g, fields::bump(1).value);
    const auto ur = GridFunction::sample(g, fields::dilated(fields::bump(1), 2.0).value);
    CHECK(energy(u, u, mult) / energy(ur, ur, mult) == doctest::Approx(std::pow(2.0, 2 * s - 1)).epsilon(1e-3));
  }
}

TEST_CASE("x norm of a single atom") {
  const auto u = GridFunction::sample(G1, fields::bump(1).value);
  const auto xn = x_norm(u, OrderMeasure::delta(0.5), uniform_family(1));
  const double E = energy(u, u, build_fractional_laplacian(G1, 0.5));
  CHECK(xn.norm * xn.norm == doctest::Approx(u.dot_l2(u) + E).epsilon(1e-12));
  CHECK(xn.E_minus == 0.0);
  const auto z = x_norm(GridFunction(G1), OrderMeasure::delta(0.5), uniform_family(1));
  CHECK(z.norm == 0.0);
}

TEST_CASE("comparison suite") {
  const auto u = GridFunction::sample(G1, fields::bump(1).value);
  ComparisonParams p;
  const auto r = comparison_suite(u, p);
  CHECK(r.a_holds);
  CHECK(r.b_holds);
  CHECK(r.b_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.c_holds);
  double prev = -1.0;
  for (const auto& [gamma, ratio] : r.gamma_ratio) {
    CHECK(ratio >= prev);
    prev = ratio;
  }
  const GridSpec g2{2, 128, 16.0};
  const auto v = GridFunction::sample(g2, fields::bump(2).value);
  ComparisonParams q;
  q.family = MeasureFamily::constant(SphericalMeasure::atomic(2, {{{1.0, 0.0}, 1.0}}));
  const auto r2 = comparison_suite(v, q);
  CHECK(r2.lambda0 < 1e-12);
  CHECK_FALSE(r2.b_applicable);
}

TEST_CASE("support must sit away from the box boundary") {
  const GridSpec g{1, 256, 3.0};
  CHECK_THROWS_AS(check_interior_support(GridFunction::sample(g, fields::bump(1).value)), ContractViolation);
}
