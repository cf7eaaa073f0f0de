#pragma once

#include "mixlab/spherical_measure.hpp"

#include <string>
#include <vector>

namespace mixlab {

// P_a(s) = sum_{k=1}^a (-1)^k C(2a, a-k) k^{2s}.
double pa_coefficient(int a, double s);

struct IntegralValue {
  double value;
  double error;
};

// I(m,s) = int_0^inf (1 - cos t)^m t^{-1-2s} dt for 0 < s < m. Throws
// NumericalFailure if the estimated absolute error exceeds tol.
IntegralValue cosine_integral_detailed(int m, double s, double tol = 1e-12);
inline double cosine_integral(int m, double s, double tol = 1e-12) {
  return cosine_integral_detailed(m, s, tol).value;
}

// Closed form of I(1,s); s = 1/2 is a removable point and is rejected.
double cosine_integral_closed_form(double s);

enum class ConstantRoute { closed_form, recursion, quadrature };
std::string to_string(ConstantRoute r);
ConstantRoute parse_route(const std::string& name);

struct ConstantBundle {
  int m;
  double s;
  double M_at_es;
  double cosine_integral;  // I(m,s) implied by the route
  double c_ms;
  ConstantRoute route;
};

// c_{m,s} = 2^{1-m} / (M_{s,sigma}(e_s) I(m,s)).
ConstantBundle normalization_constant(int m, double s, const SphericalMeasure& sigma,
                                      ConstantRoute route = ConstantRoute::quadrature);

// Convenience: c_{m,s} through quadrature with the given maximal moment.
double c_ms(int m, double s, double M_at_es = 1.0);

// c_{m,s} (1/s + 1/(m-s)) M(e_s); bounded below by 2^{2-m}.
double constant_bound_quantity(int m, double s);

enum class LimitDirection { to_zero, to_order };

struct LimitRow {
  double s;
  double value;  // c_{m,s} M / s (to_zero) or c_{n,s} M / (m - s) (to_order)
};

struct LimitTable {
  int m;
  int n;
  LimitDirection direction;
  std::vector<LimitRow> rows;
  double target;        // +inf when the limit diverges
  double extrapolated;  // linear Richardson from the last two rows
  double deviation;     // |extrapolated - target|
  bool diverges;
};

LimitTable constant_limits(int m, int n, const MeasureFamily& family, const std::vector<double>& s_sequence,
                           LimitDirection direction);

}  // namespace mixlab
