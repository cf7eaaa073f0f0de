#pragma once

#include "mixlab/common.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace mixlab {

// Offsets k in [-m, m] with weights (-1)^k C(2m, m-k).
struct DifferenceStencil {
  int m;
  std::vector<int> offset;
  std::vector<std::int64_t> weight;

  // k = 0 entry.
  std::int64_t central() const { return weight[m]; }
};

// Cached per m; m in [1, 16].
const DifferenceStencil& stencil(int m);

template <class F>
auto delta_m(F&& u, const Point& x, const Point& y, int m) -> decltype(u(x)) {
  const DifferenceStencil& st = stencil(m);
  decltype(u(x)) acc{};
  for (int i = 0; i <= 2 * m; ++i) acc += static_cast<double>(st.weight[i]) * u(axpy(x, st.offset[i], y));
  return acc;
}

// Scalar version for functions of one real variable.
template <class F>
auto delta_m_1d(F&& u, double x, double y, int m) -> decltype(u(x)) {
  const DifferenceStencil& st = stencil(m);
  decltype(u(x)) acc{};
  for (int i = 0; i <= 2 * m; ++i) acc += static_cast<double>(st.weight[i]) * u(x + st.offset[i] * y);
  return acc;
}

// sum_j w_j k_j^p for the stencil of order m: zero for odd p and for p < 2m.
double stencil_moment(int m, int p);

// Exact check of sum_{k,h} C(2m,m-k) C(2m,m-k+h) = sum_h C(4m,2m-h), m <= 8.
bool chu_vandermonde_check(int m);

// Largest |delta_m e^{i.}(0,t) - 2^m (1 - cos t)^m| over a t grid.
double exponential_identity_deviation(int m, const std::vector<double>& t_grid);

}  // namespace mixlab
