#include "mixlab/common.hpp"
#include "mixlab/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <map>
#include <mutex>

namespace mixlab {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  // Multiplicative formula; each partial product is itself a binomial so the
  // division is exact.
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > UINT64_MAX) throw std::overflow_error("binomial overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

template <int N>
Rule make_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  Rule r;
  // Boost stores the nonnegative half; mirror it.
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0.0) continue;
    r.x.push_back(-a[i]);
    r.w.push_back(w[i]);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    r.x.push_back(a[i]);
    r.w.push_back(w[i]);
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Rule r;
  switch (n) {
    case 8: r = make_rule<8>(); break;
    case 16: r = make_rule<16>(); break;
    case 20: r = make_rule<20>(); break;
    case 24: r = make_rule<24>(); break;
    case 32: r = make_rule<32>(); break;
    case 48: r = make_rule<48>(); break;
    case 64: r = make_rule<64>(); break;
    default: throw ContractViolation("unsupported Gauss-Legendre order " + std::to_string(n));
  }
  return cache.emplace(n, std::move(r)).first->second;
}

}  // namespace mixlab
