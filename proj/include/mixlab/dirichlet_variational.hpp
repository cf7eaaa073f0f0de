#pragma once

#include "mixlab/grid.hpp"
#include "mixlab/order_measure.hpp"
#include "mixlab/spectral_forms.hpp"
#include "mixlab/spherical_measure.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mixlab {

// Omega on a periodic grid; nodes strictly inside Omega are unknowns, the
// rest of the box is the exterior where u = 0.
struct DomainMask {
  GridSpec grid;
  std::vector<char> inside;
  std::vector<std::size_t> nodes;  // indices with inside = 1, ascending
  double diameter = 0.0;
  double volume = 0.0;  // |Omega|
  Point lo{0.0, 0.0}, hi{0.0, 0.0};  // bounding box of Omega
  std::string description;

  std::size_t unknowns() const { return nodes.size(); }
  Eigen::VectorXd restrict(const GridFunction& u) const;  // contract: u = 0 off Omega
  GridFunction extend(const Eigen::VectorXd& v) const;
};

// Interval (a,b) in a box of length max(4 diam, 4 max|a|, 4 max|b|) with
// `nodes` grid points, so Omega keeps distance L/4 from the boundary.
DomainMask interval_mask(double a, double b, int nodes);
// Rectangle (x0,x1) x (y0,y1), same padding rule.
DomainMask box_mask(double x0, double x1, double y0, double y1, int nodes);
// "interval:a,b", "a,b" or "box:x0,x1,y0,y1".
DomainMask parse_omega(const std::string& spec, int nodes);

// Throws Refusal when the multiplier is negative somewhere on the grid.
void require_positive_form(const MultiplierGrid& mult);

GridFunction form_apply(const MultiplierGrid& mult, const DomainMask& mask, const GridFunction& u);
// Euclidean matrix of the masked form on the unknowns (kernel of the
// multiplier sampled at node differences).
Eigen::MatrixXd dense_form(const MultiplierGrid& mult, const DomainMask& mask);

struct EigenOptions {
  std::uint64_t seed = 42;
  int max_iterations = 5000;
  double relative_residual = 1e-8;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;
  std::vector<double> residuals;  // ||A u - lambda u|| / lambda, ||u|| = 1
  std::vector<GridFunction> eigenvectors;  // L2-normalized
  int iterations = 0;
};

// k smallest eigenpairs by LOBPCG with block size 2k and an FFT preconditioner.
SpectrumResult eigenpairs(const MultiplierGrid& mult, const DomainMask& mask, int k, const EigenOptions& opt = {});

struct SolveResult {
  GridFunction solution;
  double residual = 0.0;  // L2 norm of the equation residual
  double energy = 0.0;    // functional value (quadratic energy for linear solves)
  std::vector<double> trace;  // residual per iteration
  int iterations = 0;
};

SolveResult linear_solve(const MultiplierGrid& mult, const DomainMask& mask, const GridFunction& f,
                         double tol = 1e-10, int max_iterations = 20000);

// Superposition problem on a mask.
struct VariationalProblem {
  OrderMeasure mu;
  MeasureFamily family = MeasureFamily::constant(SphericalMeasure::uniform(1));
  DomainMask mask;
  std::optional<double> s_star;  // default: smallest mu+ order above every mu- order
  double p_fallback = 4.0;       // exponent standing in for 2* when N <= 2 s_sharp
};

struct PreparedProblem {
  MultiplierGrid mult;
  AssumptionReport report;
};

// Validates mu and builds the multiplier; throws Refusal when gamma >= 1
// or the multiplier is negative.
PreparedProblem prepare(const VariationalProblem& problem);
double default_s_star(const OrderMeasure& mu);

struct MountainPassCertificate {
  double rho;    // radius in energy: E(u,u) = rho
  double beta;   // J >= beta on that sphere
  double R_min;  // E(v,v) / ||v||_q^2 at the minimizer
  GridFunction far_point;
  double far_energy;  // E(e,e)
  double far_value;   // J(e)
};

struct MountainPassResult {
  SolveResult result;
  double q;
  double nehari_defect;  // |E(u,u) - ||u||_q^q| / E(u,u)
  MountainPassCertificate certificate;
};

struct MountainPassOptions {
  double tol = 1e-6;
  int max_descent = 20000;
  double descent_switch = 1e-4;  // gradient norm at which Newton takes over
  int max_newton = 50;
};

// f(u) = |u|^{q-2} u. Seed defaults to a positive bump on Omega.
MountainPassResult solve_mountain_pass(const VariationalProblem& problem, double q, const MountainPassOptions& opt = {},
                                       const std::optional<GridFunction>& seed = std::nullopt);

struct JumpingValue {
  double value;
  GridFunction gradient;
};

JumpingValue jumping_functional(const MultiplierGrid& mult, const DomainMask& mask, double a, double b,
                                double two_star, const GridFunction& u);
// Brezis-Nirenberg form 1/2 E(u,u) - lambda/2 ||u||^2 - 1/p ||u||_p^p.
double brezis_nirenberg_functional(const MultiplierGrid& mult, const DomainMask& mask, double lambda, double p,
                                   const GridFunction& u);

struct JumpingReport {
  std::vector<double> spectrum;  // lambda_1..lambda_{l+1}
  double two_star;
  double level;       // E(u) at the candidate
  double level_bound; // c_*
  bool level_ok;
  int seed_index;     // which seed converged
  std::vector<std::string> attempts;
};

struct JumpingResult {
  SolveResult result;
  JumpingReport report;
};

JumpingResult jumping_solve(const VariationalProblem& problem, double a, double b, int l, double tol = 1e-8);

// Poincare constant 2^{4 s1 + 1} C(2 s1, s1)^{-2} diam^{2s}, s1 = floor(s) + 1.
double poincare_constant(double s, double diameter);
// C_t = min{1, diam^{-2t}} / (2 pi (t1 + 1)).
double generalized_poincare_constant(double t, double diameter);

}  // namespace mixlab
