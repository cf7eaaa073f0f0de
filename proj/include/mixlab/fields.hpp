#pragma once

#include "mixlab/common.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mixlab {

// Smooth scalar field on R^N with enough metadata to certify quadrature of
// its differences.
struct SmoothField {
  int dimension = 1;
  std::string name;
  std::function<double(const Point&)> value;
  // Taylor coefficients a_0..a_order of t -> u(x + t d), d a unit vector.
  // May be empty; the operator then falls back to derivative_bound.
  std::function<std::vector<double>(const Point& x, const Point& d, int order)> taylor;
  // Radius of a ball around x on which the Taylor series of u converges.
  std::function<double(const Point& x)> analytic_radius;
  // Bound on sup |D^k u| near any point, used when taylor is empty.
  std::function<double(int k)> derivative_bound;
  Point center{0.0, 0.0};
  double support_radius = 0.0;  // 0: unbounded; else supp u in closed B(center, radius)
  double sup_bound = 1.0;       // |u| <= sup_bound
  // When set, u(x) tends to this value as |x| -> inf and |u - limit| <= far_deviation.
  std::optional<double> limit_at_infinity;
  double far_deviation = 0.0;

  // Bound on |u - limit| (limit 0 when unknown) used for the far region.
  double far_bound() const { return limit_at_infinity ? far_deviation : sup_bound; }

  double operator()(const Point& x) const { return value(x); }
  bool compact() const { return support_radius > 0.0; }
};

namespace fields {

// A exp(1 - 1/(1 - |x-c|^2/rho^2)) on B(c, rho).
SmoothField bump(int N, double rho = 1.0, Point c = {0.0, 0.0}, double amplitude = 1.0);

// exp(-|x-c|^2 / (2 w^2)); treated as supported on B(c, 9 w) where it is below 1e-17.
SmoothField gaussian(int N, double w = 1.0, Point c = {0.0, 0.0});

// cos(xi.x + phase).
SmoothField cosine(int N, Point xi, double phase = 0.0);

SmoothField constant(int N, double c);

// alpha u + beta v.
SmoothField combine(double alpha, const SmoothField& u, double beta, const SmoothField& v);

// x -> u(x + a).
SmoothField shifted(const SmoothField& u, const Point& a);

// x -> u(x / rho).
SmoothField dilated(const SmoothField& u, double rho);

// builtin:bump, builtin:bump:rho, builtin:gaussian:w, builtin:cos:k, builtin:const:c
SmoothField parse_builtin(const std::string& spec, int N);

}  // namespace fields
}  // namespace mixlab
