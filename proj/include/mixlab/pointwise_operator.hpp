#pragma once

#include "mixlab/fields.hpp"
#include "mixlab/order_measure.hpp"
#include "mixlab/spherical_measure.hpp"

#include <vector>

namespace mixlab {

struct QuadratureSpec {
  double near_split = 0.5;     // eta: Taylor/graded region is (0, eta]
  double far_cutoff = 0.0;     // R; 0 picks 2(|x - c| + rho_0 + 1) for compact fields
  double max_far_cutoff = 2000.0;  // cap on R for fields without compact support
  int cells_per_octave = 1;    // radial grading in the graded region
  int gl_nodes = 32;           // Gauss-Legendre nodes per cell
  int angular_nodes = 64;      // trapezoid nodes on [0, pi) for the uniform N = 2 measure
  int taylor_terms = 12;       // even Taylor orders kept beyond 2m in the innermost region
  double tolerance = 1e-10;    // target absolute error per radial integral

  void check() const;
};

struct Evaluation {
  double value;
  double error;
};

// L_{m,s}u(x) = (c_{m,s}/2) int delta_m u(x,y) nu_s(dy).
Evaluation apply_Lms(const SmoothField& u, int m, double s, const SphericalMeasure& sigma, const Point& x,
                     const QuadratureSpec& spec = {});

// Superposition over mu with L_{s_1, s} for each order; s = 0 is the identity.
Evaluation apply_superposition(const SmoothField& u, const OrderMeasure& mu, const MeasureFamily& family,
                               const Point& x, const QuadratureSpec& spec = {});

// Mass of nu_s outside the ball of radius R.
double tail_mass(double s, double R);

struct IndependenceReport {
  std::vector<int> m;
  std::vector<Evaluation> values;
  double max_deviation;
  double error_budget;  // largest pairwise sum of error estimates
  bool within_budget;
};

IndependenceReport m_independence_check(const SmoothField& u, double s, const SphericalMeasure& sigma,
                                        const Point& x, const std::vector<int>& m_list,
                                        const QuadratureSpec& spec = {});

struct LimitCheckRow {
  double s;
  double value;
  double target;
  double error;  // |value - target|
};

struct LimitCheckTable {
  std::vector<LimitCheckRow> rows;
  bool monotone;  // errors nonincreasing along the sequence
};

// direction to_zero: target u(x), m = order_above(s). to_order: target
// (-Delta)^m u(x) by a tenth-order central difference (1D) or the 2D
// five-point Laplacian iterated with Richardson extrapolation.
enum class OrderLimit { to_zero, to_order };
LimitCheckTable limit_checks(const SmoothField& u, const MeasureFamily& family, const Point& x,
                             OrderLimit direction, const std::vector<double>& s_sequence, int m = 1,
                             const QuadratureSpec& spec = {});

// Right-hand side of the pointwise bound
// C_m 4^{m-1} |S^{N-1}| max{1, ||D^m u(x)||} / M_{s,sigma}(e_s).
double evaluation_bound(int m, double s, const SphericalMeasure& sigma, double dm_norm);

// sup over a fine s grid of c_{m,s} (1/s + 1/(m-s)) M(e_s).
double bounds_constant(int m);

}  // namespace mixlab
