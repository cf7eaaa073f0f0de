#include "mixlab/dirichlet_variational.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace mixlab;

namespace {
MeasureFamily uniform_family(int N) { return MeasureFamily::constant(SphericalMeasure::uniform(N)); }

MultiplierGrid single(const DomainMask& mask, double s) {
  return build_multiplier(mask.grid, OrderMeasure::delta(s), uniform_family(mask.grid.N));
}

GridFunction random_field(const DomainMask& mask, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Eigen::VectorXd v(static_cast<Eigen::Index>(mask.unknowns()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = nd(rng);
  return mask.extend(v);
}
}  // namespace

TEST_CASE("mask geometry") {
  const auto m = interval_mask(0.0, 1.0, 1024);
  CHECK(m.grid.L == 4.0);
  CHECK(m.diameter == 1.0);
  CHECK(m.volume == 1.0);
  for (auto i : m.nodes) {
    CHECK(m.grid.coord(i)[0] > 0.0);
    CHECK(m.grid.coord(i)[0] < 1.0);
  }
  CHECK(parse_omega("0,1", 1024).unknowns() == m.unknowns());
  CHECK(parse_omega("box:0,1,0,1", 64).diameter == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(parse_omega("disk:1", 64), ContractViolation);
  CHECK_THROWS_AS(interval_mask(1.0, 0.0, 64), ContractViolation);
}

TEST_CASE("form zero, symmetry and positivity") {
  const auto mask = interval_mask(-1.0, 1.0, 512);
  const auto mult = single(mask, 0.5);
  const auto z = form_apply(mult, mask, GridFunction(mask.grid));
  for (double v : z.samples) CHECK(v == 0.0);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto u = random_field(mask, rng), v = random_field(mask, rng);
    const double a = form_apply(mult, mask, u).dot_l2(v), b = u.dot_l2(form_apply(mult, mask, v));
    CHECK(std::abs(a - b) <= 1e-12 * std::max(std::abs(a), 1.0));
    CHECK(form_apply(mult, mask, u).dot_l2(u) >= 0.0);
  }
}

TEST_CASE("whole-box mask on a pure harmonic scales by the multiplier") {
  const GridSpec g{1, 64, 2 * std::numbers::pi};
  const auto mult = build_fractional_laplacian(g, 0.3);
  const auto u = GridFunction::sample(g, [](const Point& p) { return std::sin(4 * p[0]); });
  const auto Lu = apply_spectral(mult, u);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(Lu.samples[i] - std::pow(4.0, 0.6) * u.samples[i]) < 1e-12);
}

TEST_CASE("dense form agrees with the matrix-free form") {
  const auto mask = interval_mask(0.0, 1.0, 256);
  const auto mult = single(mask, 0.75);
  const Eigen::MatrixXd A = dense_form(mult, mask);
  std::mt19937_64 rng(9);
  const auto u = random_field(mask, rng);
  const Eigen::VectorXd Au = A * mask.restrict(u);
  const Eigen::VectorXd ref = mask.restrict(form_apply(mult, mask, u));
  CHECK((Au - ref).norm() <= 1e-10 * ref.norm());
}

TEST_CASE("classical Laplacian eigenvalue and eigen solver agreement") {
  const auto mask = interval_mask(0.0, 1.0, 1024);
  const auto sp = eigenpairs(single(mask, 1.0), mask, 2);
  CHECK(sp.eigenvalues[0] == doctest::Approx(std::numbers::pi * std::numbers::pi).epsilon(0.02));
  CHECK(sp.eigenvalues[1] > sp.eigenvalues[0]);
  const auto mult = single(mask, 0.5);
  const auto s4 = eigenpairs(mult, mask, 4);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_form(mult, mask));
  for (int i = 0; i < 4; ++i) {
    CHECK(s4.eigenvalues[i] == doctest::Approx(es.eigenvalues()[i]).epsilon(1e-8));
    CHECK(s4.residuals[i] < 1e-7);
  }
  CHECK(s4.eigenvalues[0] == doctest::Approx(2.2622204).epsilon(1e-6));
}

TEST_CASE("eigenvalues decrease under domain inclusion") {
  const auto big = interval_mask(-1.0, 1.0, 1024);
  GridSpec g = big.grid;
  const auto mult = single(big, 0.5);
  double prev = 0.0;
  for (double h : {1.0, 0.75, 0.5}) {
    DomainMask m = big;
    m.nodes.clear();
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.coord(i)[0];
      m.inside[i] = (x > -h && x < h) ? 1 : 0;
      if (m.inside[i]) m.nodes.push_back(i);
    }
    m.diameter = 2 * h;
    m.volume = 2 * h;
    const double l1 = eigenpairs(mult, m, 1).eigenvalues[0];
    CHECK(l1 >= prev);
    prev = l1;
  }
}

TEST_CASE("Poincare constants") {
  CHECK(poincare_constant(0.5, 1.0) == doctest::Approx(8.0));
  for (double s : {0.25, 0.5, 0.75, 1.5}) {
    const auto mask = interval_mask(0.0, 1.0, 1024);
    CHECK(eigenpairs(single(mask, s), mask, 1).eigenvalues[0] >= 1.0 / poincare_constant(s, 1.0));
  }
  CHECK(generalized_poincare_constant(1.0, 1.0) == doctest::Approx(1.0 / (2 * std::numbers::pi * 3.0)));
}

TEST_CASE("linear solve") {
  const auto mask = interval_mask(0.0, 1.0, 1024);
  const auto mult = single(mask, 0.5);
  const auto z = linear_solve(mult, mask, GridFunction(mask.grid));
  CHECK(z.solution.norm_l2() == 0.0);
  const auto sp = eigenpairs(mult, mask, 1);
  GridFunction f = sp.eigenvectors[0];
  for (double& v : f.samples) v *= sp.eigenvalues[0];
  const auto r = linear_solve(mult, mask, f);
  GridFunction d = r.solution;
  for (std::size_t i = 0; i < d.samples.size(); ++i) d.samples[i] -= sp.eigenvectors[0].samples[i];
  CHECK(d.norm_l2() < 1e-6);
  std::mt19937_64 rng(1);
  const auto g = random_field(mask, rng);
  const auto rg = linear_solve(mult, mask, g);
  CHECK(rg.solution.dot_l2(g) == doctest::Approx(energy(rg.solution, rg.solution, mult)).epsilon(1e-8));
}

TEST_CASE("mountain pass") {
  VariationalProblem P;
  P.mu = OrderMeasure::delta(0.5);
  P.mask = interval_mask(-1.0, 1.0, 1024);
  const auto r = solve_mountain_pass(P, 4.0);
  CHECK(r.result.residual < 1e-6);
  CHECK(r.result.energy > 0.0);
  CHECK(r.nehari_defect < 1e-8);
  CHECK(r.certificate.beta > 0.0);
  CHECK(r.certificate.far_value < 0.0);
  CHECK_THROWS_AS(solve_mountain_pass(P, 4.0, {}, GridFunction(P.mask.grid)), ContractViolation);
}

TEST_CASE("jumping functional") {
  VariationalProblem P;
  P.mu = OrderMeasure::delta(0.25);
  P.mask = interval_mask(-1.0, 1.0, 512);
  const auto prep = prepare(P);
  CHECK(prep.report.two_star == doctest::Approx(4.0));
  const auto z = jumping_functional(prep.mult, P.mask, 1.0, 1.5, 4.0, GridFunction(P.mask.grid));
  CHECK(z.value == 0.0);
  CHECK(z.gradient.norm_l2() == 0.0);
  std::mt19937_64 rng(2);
  const auto u = random_field(P.mask, rng);
  CHECK(jumping_functional(prep.mult, P.mask, 1.2, 1.2, 4.0, u).value ==
        doctest::Approx(brezis_nirenberg_functional(prep.mult, P.mask, 1.2, 4.0, u)).epsilon(1e-12));
  const auto sp = eigenpairs(prep.mult, P.mask, 3);
  CHECK_THROWS_AS(jumping_solve(P, sp.eigenvalues[2] + 1.0, sp.eigenvalues[2] + 1.0, 1), ContractViolation);
}

TEST_CASE("refusal on an indefinite form") {
  VariationalProblem P;
  P.mu = OrderMeasure::delta(0.5);
  P.mu.add_minus(0.25, 0.9);
  P.mask = interval_mask(-1.0, 1.0, 1024);
  const auto mult = build_multiplier(P.mask.grid, P.mu, uniform_family(1));
  CHECK(mult.negative);
  CHECK_THROWS_AS(require_positive_form(mult), Refusal);
  CHECK_THROWS_AS(solve_mountain_pass(P, 4.0), Refusal);
  OrderMeasure heavy = OrderMeasure::delta(1.0);
  heavy.add_minus(0.5, 1.5);
  P.mu = heavy;
  CHECK_THROWS_AS(prepare(P), Refusal);
}
