#include "mixlab/difference_operator.hpp"

#include <array>
#include <cmath>
#include <mutex>

namespace mixlab {

const DifferenceStencil& stencil(int m) {
  constexpr int kMax = 16;
  if (m < 1 || m > kMax) throw ContractViolation("stencil order must lie in [1, 16]");
  static std::array<DifferenceStencil, kMax + 1> table;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int q = 1; q <= kMax; ++q) {
      DifferenceStencil st{q, {}, {}};
      for (int k = -q; k <= q; ++k) {
        st.offset.push_back(k);
        const auto c = static_cast<std::int64_t>(binomial(2 * q, q - k));
        st.weight.push_back((k % 2) ? -c : c);
      }
      table[q] = st;
    }
  });
  return table[m];
}

double stencil_moment(int m, int p) {
  const DifferenceStencil& st = stencil(m);
  long double acc = 0.0L;
  for (int i = 0; i <= 2 * m; ++i) acc += st.weight[i] * std::pow(static_cast<long double>(st.offset[i]), p);
  return static_cast<double>(acc);
}

bool chu_vandermonde_check(int m) {
  if (m < 1 || m > 8) throw ContractViolation("Chu-Vandermonde check supports 1 <= m <= 8");
  // 128-bit sums; the identity also holds for each shift h separately.
  unsigned __int128 lhs = 0, rhs = 0;
  bool each = true;
  for (int h = -2 * m; h <= 2 * m; ++h) {
    unsigned __int128 lh = 0;
    for (int k = -m; k <= m; ++k) {
      const int j = m - k + h;
      if (j < 0 || j > 2 * m) continue;
      lh += static_cast<unsigned __int128>(binomial(2 * m, m - k)) * binomial(2 * m, j);
    }
    const unsigned __int128 rh = binomial(4 * m, 2 * m - h);
    each = each && lh == rh;
    lhs += lh;
    rhs += rh;
  }
  return each && lhs == rhs;
}

double exponential_identity_deviation(int m, const std::vector<double>& t_grid) {
  double worst = 0.0;
  for (double t : t_grid) {
    auto f = [](double x) { return std::exp(std::complex<double>(0.0, x)); };
    const std::complex<double> d = delta_m_1d(f, 0.0, t, m);
    const double expect = std::ldexp(std::pow(1.0 - std::cos(t), m), m);
    worst = std::max(worst, std::abs(d - expect));
  }
  return worst;
}

}  // namespace mixlab
