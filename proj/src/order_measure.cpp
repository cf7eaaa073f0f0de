#include "mixlab/order_measure.hpp"

#include "mixlab/common.hpp"
#include "mixlab/jets.hpp"
#include "mixlab/quadrature.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

namespace mixlab {

double OrderPart::total() const {
  double t = 0.0;
  for (const auto& a : atoms) t += a.weight;
  for (const auto& d : density) t += d.value * (d.b - d.a);
  return t;
}

double OrderPart::support_sup() const {
  double s = 0.0;
  for (const auto& a : atoms) s = std::max(s, a.s);
  for (const auto& d : density)
    if (d.value > 0) s = std::max(s, d.b);
  return s;
}

OrderMeasure OrderMeasure::delta(double s, double w) {
  OrderMeasure mu;
  mu.plus.atoms.push_back({s, w});
  return mu;
}

OrderMeasure& OrderMeasure::add_plus(double s, double w) {
  plus.atoms.push_back({s, w});
  return *this;
}

OrderMeasure& OrderMeasure::add_minus(double s, double w) {
  minus.atoms.push_back({s, w});
  return *this;
}

namespace {

void check_part(const OrderPart& p, const char* name) {
  for (const auto& a : p.atoms) {
    if (!std::isfinite(a.s) || a.s < 0.0) throw ContractViolation(std::string(name) + ": atom order must be >= 0");
    if (!std::isfinite(a.weight) || !(a.weight > 0.0))
      throw ContractViolation(std::string(name) + ": atom weight must be > 0");
  }
  for (const auto& d : p.density) {
    if (!std::isfinite(d.a) || !std::isfinite(d.b) || d.a < 0.0 || !(d.b > d.a))
      throw ContractViolation(std::string(name) + ": density interval must be a bounded [a,b] with 0 <= a < b");
    if (!std::isfinite(d.value) || d.value < 0.0)
      throw ContractViolation(std::string(name) + ": density value must be >= 0");
  }
}

}  // namespace

void check_order_measure(const OrderMeasure& mu) {
  check_part(mu.plus, "mu+");
  check_part(mu.minus, "mu-");
}

double mass(const OrderPart& part, double a, double b, bool close_right) {
  double m = 0.0;
  for (const auto& at : part.atoms)
    if (at.s >= a && (at.s < b || (close_right && at.s == b))) m += at.weight;
  for (const auto& d : part.density) {
    const double lo = std::max(a, d.a), hi = std::min(b, d.b);
    if (hi > lo) m += d.value * (hi - lo);
  }
  return m;
}

AssumptionReport validate(const OrderMeasure& mu, double s_star, int N, double p_fallback,
                          std::optional<double> s_sharp_override) {
  check_order_measure(mu);
  if (!(s_star > 0.0)) throw ContractViolation("s* must be positive");
  if (N != 1 && N != 2) throw ContractViolation("dimension must be 1 or 2");
  if (!(p_fallback > 2.0)) throw ContractViolation("fallback exponent must exceed 2");
  const double inf = std::numeric_limits<double>::infinity();

  AssumptionReport rep;
  rep.s_star = s_star;
  const double up = mass(mu.plus, s_star, inf);
  rep.positive_mass_above = up > 0.0;
  if (!rep.positive_mass_above) rep.warnings.push_back("mu+ carries no mass on [s*, inf)");
  const double neg_above = mass(mu.minus, s_star, inf);
  rep.negative_below = neg_above == 0.0;
  if (!rep.negative_below) rep.warnings.push_back("mu- charges orders >= s*");
  const double down = mass(mu.minus, 0.0, s_star);
  rep.gamma = up > 0.0 ? down / up : (down > 0.0 ? inf : 0.0);
  rep.gamma_small = rep.gamma < 1.0;
  if (!rep.gamma_small) rep.warnings.push_back("gamma >= 1: negative part too heavy, solvers will refuse");

  if (s_sharp_override) {
    const double ss = *s_sharp_override;
    if (ss < s_star || !(mass(mu.plus, ss, inf) > 0.0))
      throw ContractViolation("s# override must be >= s* with mu+([s#, inf)) > 0");
    rep.s_sharp = ss;
  } else {
    rep.s_sharp = std::max(s_star, mu.plus.support_sup());
  }
  if (N > 2.0 * rep.s_sharp) {
    rep.two_star = 2.0 * N / (N - 2.0 * rep.s_sharp);
  } else {
    rep.two_star = p_fallback;
    rep.critical_from_fallback = true;
  }
  return rep;
}

PathologicalKind parse_pathological_kind(const std::string& name) {
  if (name == "strano") return PathologicalKind::strano;
  if (name == "special_phi") return PathologicalKind::special_phi;
  if (name == "special_psi") return PathologicalKind::special_psi;
  throw ContractViolation("unknown pathological kind '" + name + "' (strano, special_phi, special_psi)");
}

std::string to_string(PathologicalKind kind) {
  switch (kind) {
    case PathologicalKind::strano: return "strano";
    case PathologicalKind::special_phi: return "special_phi";
    case PathologicalKind::special_psi: return "special_psi";
  }
  return "?";
}

namespace {

constexpr int kMaxK = 40;

// Squared norms int (D^k phi)^2, k = 0..K. The integrand is even, so we
// integrate over [0,h) in the distance d = h - x to the support edge on a
// geometric mesh with `per_octave` cells per halving; derivatives of high
// order concentrate at d ~ h/k.
std::vector<long double> squared_norms(double half_width, int K, int per_octave) {
  using T = long double;
  const Rule& rule = gauss_legendre(32);
  const T h = half_width;
  const T ratio = std::pow(2.0L, -1.0L / per_octave);
  std::vector<T> acc(K + 1, 0.0L), fact(K + 1, 1.0L);
  for (int k = 1; k <= K; ++k) fact[k] = fact[k - 1] * k;

  T hi = h;
  for (int cell = 0; cell < 200 * per_octave; ++cell) {
    const T lo = hi * ratio;
    const T c = 0.5L * (hi + lo), w = 0.5L * (hi - lo);
    std::vector<T> part(K + 1, 0.0L);
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const T d = c + w * rule.x[i];
      const auto e = jet::bump<T>(h - d, h, K);
      for (int k = 0; k <= K; ++k) {
        const T dk = fact[k] * e[k];
        part[k] += rule.w[i] * dk * dk;
      }
    }
    bool negligible = cell > 4 * per_octave;
    for (int k = 0; k <= K; ++k) {
      acc[k] += w * part[k];
      if (w * part[k] > 1e-40L * acc[k]) negligible = false;
    }
    if (negligible) break;
    hi = lo;
  }
  for (auto& a : acc) a *= 2.0L;
  return acc;
}

}  // namespace

std::vector<double> derivative_norms(const BumpProfile& phi, int K) {
  if (K < 0) throw ContractViolation("derivative order must be >= 0");
  if (K > kMaxK)
    throw NumericalFailure("derivative norm untrusted: orders above " + std::to_string(kMaxK) +
                           " are outside the certified range");
  const auto coarse = squared_norms(phi.half_width, K, 16);
  const auto fine = squared_norms(phi.half_width, K, 32);
  std::vector<double> out(K + 1);
  for (int k = 0; k <= K; ++k) {
    const long double a = std::sqrt(coarse[k]), b = std::sqrt(fine[k]);
    const long double rel = std::abs(a - b) / b;
    if (rel > 1e-6L) {
      std::ostringstream os;
      os << "derivative norm untrusted: ||D^" << k << " phi|| moves by " << static_cast<double>(rel)
         << " under mesh refinement (bound 1e-6)";
      throw NumericalFailure(os.str());
    }
    out[k] = static_cast<double>(b);
  }
  return out;
}

std::vector<PartialSum> pathological_partial_sums(PathologicalKind kind, int K, const BumpProfile& phi) {
  if (K < 1) throw ContractViolation("K must be >= 1");
  const auto c = derivative_norms(phi, K);
  std::vector<double> num = c;
  if (kind == PathologicalKind::special_psi) num = derivative_norms(BumpProfile{0.5 * phi.half_width}, K);
  std::vector<PartialSum> out;
  double sum = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double k2 = static_cast<double>(k) * k;
    double term = 0.0;
    switch (kind) {
      case PathologicalKind::strano: term = c[k] * c[k] / k2; break;
      case PathologicalKind::special_phi:
      case PathologicalKind::special_psi: term = num[k] / (c[k] * k2); break;
    }
    sum += term;
    out.push_back({k, term, sum});
  }
  return out;
}

std::vector<double> spectral_derivative_norms(const BumpProfile& phi, int K, int nodes) {
  const double h = phi.half_width, L = 4.0 * h, dx = L / nodes;
  std::vector<std::complex<double>> u(nodes), uh(nodes), w(nodes);
  for (int j = 0; j < nodes; ++j) {
    const double x = -2.0 * h + j * dx, q = x / h;
    u[j] = std::abs(q) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - q * q)) : 0.0;
  }
  auto* in = reinterpret_cast<fftw_complex*>(u.data());
  auto* hat = reinterpret_cast<fftw_complex*>(uh.data());
  auto* out = reinterpret_cast<fftw_complex*>(w.data());
  fftw_plan fwd = fftw_plan_dft_1d(nodes, in, hat, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);
  std::vector<std::complex<double>> work(nodes);
  auto* wk = reinterpret_cast<fftw_complex*>(work.data());
  fftw_plan bwd = fftw_plan_dft_1d(nodes, wk, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  std::vector<double> norms(K + 1);
  for (int k = 0; k <= K; ++k) {
    for (int j = 0; j < nodes; ++j) {
      const int f = j <= nodes / 2 ? j : j - nodes;
      // Drop the Nyquist mode for odd derivatives to keep the result real.
      const double xi = (j == nodes / 2 && k % 2 == 1) ? 0.0 : 2.0 * std::numbers::pi * f / L;
      work[j] = uh[j] * std::pow(std::complex<double>(0.0, xi), k);
    }
    fftw_execute(bwd);
    double acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
      const double v = w[j].real() / nodes;
      acc += v * v;
    }
    norms[k] = std::sqrt(acc * dx);
  }
  fftw_destroy_plan(bwd);
  return norms;
}

}  // namespace mixlab
