#pragma once

#include "mixlab/fields.hpp"
#include "mixlab/grid.hpp"
#include "mixlab/order_measure.hpp"
#include "mixlab/spherical_measure.hpp"

#include <vector>

namespace mixlab {

// M_{s,sigma}(xi/|xi|) |xi|^{2s} / M_{s,sigma}(e_s); 1 for s = 0.
double multiplier(const SphericalMeasure& sigma, double s, const Point& xi);

// One order s with its angular measure and M(e_s), reused across frequencies.
struct SymbolTerm {
  double coef;  // signed weight
  double s;
  SphericalMeasure sigma;
  double M_at_es;
};

// The superposition symbol as a finite sum: atoms exactly, densities by
// 32-node Gauss-Legendre per piece (pieces split at family breakpoints).
std::vector<SymbolTerm> superposition_terms(const OrderMeasure& mu, const MeasureFamily& family);
double evaluate_symbol(const std::vector<SymbolTerm>& terms, const Point& xi);

double superposition_multiplier(const OrderMeasure& mu, const MeasureFamily& family, const Point& xi);

struct MultiplierGrid {
  GridSpec grid;
  std::vector<double> values;  // DFT index order
  double min_value = 0.0;
  double min_frequency = 0.0;  // |xi| where min_value is attained
  bool negative = false;       // some value below -1e-14 max|m|
};

MultiplierGrid build_multiplier(const GridSpec& g, const SphericalMeasure& sigma, double s);
MultiplierGrid build_multiplier(const GridSpec& g, const OrderMeasure& mu, const MeasureFamily& family);
// Pure |xi|^{2s}.
MultiplierGrid build_fractional_laplacian(const GridSpec& g, double s);

// Inverse transform of m(xi) u_hat(xi). imag_ratio, if given, receives
// max|Im| / max|Re| of the complex result.
GridFunction apply_spectral(const MultiplierGrid& mult, const GridFunction& u, double* imag_ratio = nullptr);

// Unitary-normalized Plancherel sum: dx^N / n^N sum m |U|^2 style pairing.
double energy(const GridFunction& u, const GridFunction& v, const MultiplierGrid& mult);

// ||u||^2 through the transform (Parseval check).
double l2_norm_squared_spectral(const GridFunction& u);

struct BruteForceSpec {
  int gl_nodes = 32;
  int cells_per_octave = 2;
  int octaves = 24;  // graded y-mesh below the support diameter
};

// 1D, uniform two-point sigma: (c_{2m,s}/2) int sum_x (delta_m u(x,y))^2 dx
// nu_s(dy) with x on the grid lattice (extended past the box as the
// stencil demands) and y on a graded mesh with an exact tail.
double energy_bruteforce_1d(const SmoothField& u, const GridSpec& g, int m, double s,
                            const BruteForceSpec& spec = {});

struct XNorm {
  double norm;
  double E_plus;
  double E_minus;
  std::vector<std::pair<int, double>> blocks;  // k -> E_plus mass of orders in [k-1, k)
};

XNorm x_norm(const GridFunction& u, const OrderMeasure& mu, const MeasureFamily& family);

struct ComparisonParams {
  MeasureFamily family = MeasureFamily::constant(SphericalMeasure::uniform(1));
  double s = 0.5;
  double t = 0.25;  // t <= s
  std::vector<double> gammas{0.0, 0.1, 0.2, 0.4};
};

struct ComparisonReport {
  double E_n_s;        // E_{2n,s}(u,u)
  double E_s_pure;     // |xi|^{2s} energy
  double M_es;
  double lambda0;
  bool a_holds;
  bool b_applicable;   // lambda0 > 0
  bool b_holds;
  double b_ratio;      // E_s_pure / E_n_s
  double E_t;
  double Lambda;
  double lambda;
  double c_rhs;
  bool c_holds;
  std::vector<std::pair<double, double>> gamma_ratio;  // (gamma, E-/E+) for mu = delta_s - gamma delta_t
};

ComparisonReport comparison_suite(const GridFunction& u, const ComparisonParams& p);

// Support of u must sit at distance >= L/4 from the box boundary.
void check_interior_support(const GridFunction& u, double tol = 0.0);

}  // namespace mixlab
