#pragma once

#include <vector>

namespace mixlab {

// Gauss-Legendre rule on [-1,1]; full node list, ascending.
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

// Supported n: 8, 16, 20, 24, 32, 48, 64. Rules are built once.
const Rule& gauss_legendre(int n);

template <class F>
double integrate_gl(F&& f, double a, double b, int n = 20) {
  const Rule& r = gauss_legendre(n);
  const double h = 0.5 * (b - a), c = 0.5 * (b + a);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(c + h * r.x[i]);
  return h * acc;
}

}  // namespace mixlab
