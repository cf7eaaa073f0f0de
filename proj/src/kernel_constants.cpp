#include "mixlab/kernel_constants.hpp"

#include "mixlab/quadrature.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

namespace mixlab {

double pa_coefficient(int a, double s) {
  if (a < 1) throw ContractViolation("P_a needs a >= 1");
  double acc = 0.0;
  for (int k = 1; k <= a; ++k) {
    const double sign = (k % 2) ? -1.0 : 1.0;
    acc += sign * static_cast<double>(binomial(2 * a, a - k)) * std::exp(2.0 * s * std::log(static_cast<double>(k)));
  }
  return acc;
}

namespace {

constexpr double kInner = 1.0 / 64.0;  // series region (0, kInner]
constexpr double kCutoff = 64.0 * std::numbers::pi;

// Coefficients b_j with (1 - cos t)^m = sum_j b_j t^{2m+2j}.
std::vector<long double> power_series(int m, int terms) {
  std::vector<long double> u(terms), r(terms, 0.0L);
  long double f = 2.0L;  // (2n+2)!
  for (int n = 0; n < terms; ++n) {
    u[n] = ((n % 2) ? -1.0L : 1.0L) / f;
    f *= (2.0L * n + 3.0L) * (2.0L * n + 4.0L);
  }
  r[0] = 1.0L;
  for (int p = 0; p < m; ++p) {
    std::vector<long double> next(terms, 0.0L);
    for (int i = 0; i < terms; ++i)
      for (int j = 0; i + j < terms; ++j) next[i + j] += r[i] * u[j];
    r = next;
  }
  return r;
}

template <class F>
IntegralValue gl_pair(F&& f, double a, double b) {
  const double hi = integrate_gl(f, a, b, 32);
  const double lo = integrate_gl(f, a, b, 24);
  return {hi, std::abs(hi - lo)};
}

}  // namespace

IntegralValue cosine_integral_detailed(int m, double s, double tol) {
  if (m < 1) throw ContractViolation("cosine integral needs m >= 1");
  if (!(s > 0.0 && s < m)) {
    std::ostringstream os;
    os << "cosine integral diverges for s = " << s << " outside (0, " << m << ")";
    throw DomainError(os.str());
  }
  const double beta = 1.0 + 2.0 * s;
  auto integrand = [&](double t) { return std::pow(1.0 - std::cos(t), m) * std::pow(t, -beta); };
  // 1 - cos t loses digits for small t; use the half-angle form there.
  auto integrand_small = [&](double t) {
    const double h = std::sin(0.5 * t);
    return std::pow(2.0 * h * h, m) * std::pow(t, -beta);
  };

  double value = 0.0, err = 0.0;

  // (0, kInner]: termwise integration of the power series.
  {
    const auto b = power_series(m, 12);
    long double acc = 0.0L, last = 0.0L;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const long double p = 2.0L * m + 2.0L * j - 2.0L * s;
      last = b[j] * std::pow(static_cast<long double>(kInner), p) / p;
      acc += last;
    }
    value += static_cast<double>(acc);
    err += std::abs(static_cast<double>(last)) + std::abs(static_cast<double>(acc)) * 1e-17;
  }
  // [kInner, 1]: dyadic cells.
  for (double hi = 1.0; hi > kInner * 1.5; hi *= 0.5) {
    const auto r = gl_pair(integrand_small, 0.5 * hi, hi);
    value += r.value;
    err += r.error;
  }
  // [1, kCutoff]: quarter-period cells.
  {
    const int cells = 256;
    const double h = (kCutoff - 1.0) / cells;
    for (int i = 0; i < cells; ++i) {
      const auto r = gl_pair(integrand, 1.0 + i * h, 1.0 + (i + 1) * h);
      value += r.value;
      err += r.error;
    }
  }
  // (kCutoff, inf): (1 - cos t)^m = A_0 + sum_k A_k cos(k t), then the
  // asymptotic series of int_X^inf e^{ikt} t^{-beta} dt.
  {
    const double X = kCutoff;
    value += std::ldexp(static_cast<double>(binomial(2 * m, m)), -m) * std::pow(X, -2.0 * s) / (2.0 * s);
    for (int k = 1; k <= m; ++k) {
      const double A = std::ldexp(static_cast<double>(binomial(2 * m, m - k)), 1 - m) * ((k % 2) ? -1.0 : 1.0);
      const std::complex<double> ik(0.0, k);
      std::complex<double> term = -std::exp(ik * X) * std::pow(X, -beta) / ik, acc = 0.0;
      double prev = INFINITY, tail = 0.0;
      for (int n = 0; n < 60; ++n) {
        const double mag = std::abs(term);
        if (mag > prev) break;  // asymptotic series started to diverge
        acc += term;
        tail = mag;
        prev = mag;
        if (mag < 1e-20 * std::abs(acc)) break;
        term *= (beta + n) / (ik * X);
      }
      value += A * acc.real();
      err += std::abs(A) * tail;
    }
  }
  err += 1e-15 * std::abs(value);
  if (err > tol) {
    std::ostringstream os;
    os << "cosine integral I(" << m << "," << s << ") error estimate " << err << " exceeds tolerance " << tol;
    throw NumericalFailure(os.str());
  }
  return {value, err};
}

double cosine_integral_closed_form(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("closed form of I(1,s) needs 0 < s < 1");
  if (std::abs(s - 0.5) < 1e-6) throw DomainError("closed form of I(1,s) has a removable point at s = 1/2");
  return std::cos(std::numbers::pi * s) * std::tgamma(2.0 - 2.0 * s) / (2.0 * s * (1.0 - 2.0 * s));
}

std::string to_string(ConstantRoute r) {
  switch (r) {
    case ConstantRoute::closed_form: return "closed_form";
    case ConstantRoute::recursion: return "recursion";
    case ConstantRoute::quadrature: return "quadrature";
  }
  return "?";
}

ConstantRoute parse_route(const std::string& name) {
  if (name == "closed_form") return ConstantRoute::closed_form;
  if (name == "recursion") return ConstantRoute::recursion;
  if (name == "quadrature") return ConstantRoute::quadrature;
  throw ContractViolation("unknown route '" + name + "' (closed_form, recursion, quadrature)");
}

namespace {

double base_integral(int m, double s) {
  if (m == 1 && std::abs(s - 0.5) >= 1e-6) return cosine_integral_closed_form(s);
  return cosine_integral(m, s);
}

}  // namespace

ConstantBundle normalization_constant(int m, double s, const SphericalMeasure& sigma, ConstantRoute route) {
  if (m < 1) throw ContractViolation("order m must be >= 1");
  if (!(s > 0.0 && s < m)) throw DomainError("normalization constant needs 0 < s < m");
  const double M = maximizing_direction(sigma, s).value;
  const double scale = std::ldexp(1.0, 1 - m);
  double c = 0.0;
  switch (route) {
    case ConstantRoute::closed_form:
      if (m != 1) throw DomainError("closed form is only available for m = 1");
      c = scale / (M * cosine_integral_closed_form(s));
      break;
    case ConstantRoute::quadrature: c = scale / (M * cosine_integral(m, s)); break;
    case ConstantRoute::recursion: {
      const int m0 = order_above(s);
      const double c0 = std::ldexp(1.0, 1 - m0) / (M * base_integral(m0, s));
      if (m0 == m) {
        c = c0;
        break;
      }
      const double pm = pa_coefficient(m, s);
      if (std::abs(pm) < 1e-12 * static_cast<double>(binomial(2 * m, m)))
        throw DomainError("recursion degenerate, use quadrature: P_m(s) vanishes");
      c = c0 * pa_coefficient(m0, s) / pm;
      break;
    }
  }
  return {m, s, M, scale / (M * c), c, route};
}

double c_ms(int m, double s, double M_at_es) {
  if (!(s > 0.0 && s < m)) throw DomainError("normalization constant needs 0 < s < m");
  return std::ldexp(1.0, 1 - m) / (M_at_es * cosine_integral(m, s));
}

double constant_bound_quantity(int m, double s) { return c_ms(m, s) * (1.0 / s + 1.0 / (m - s)); }

LimitTable constant_limits(int m, int n, const MeasureFamily& family, const std::vector<double>& s_sequence,
                           LimitDirection direction) {
  if (n < m) throw ContractViolation("constant limits need n >= m");
  if (s_sequence.size() < 2) throw ContractViolation("constant limits need at least two orders");
  LimitTable t{m, n, direction, {}, 0.0, 0.0, 0.0, false};
  std::vector<double> h;
  for (double s : s_sequence) {
    if (!(s > 0.0 && s < m)) throw DomainError("limit sequence must lie in (0, m)");
    const SphericalMeasure sig = family.at(s);
    const double M = maximizing_direction(sig, s).value;
    if (direction == LimitDirection::to_zero) {
      t.rows.push_back({s, normalization_constant(m, s, sig).c_ms * M / s});
      h.push_back(s);
    } else {
      t.rows.push_back({s, normalization_constant(n, s, sig).c_ms * M / (m - s)});
      h.push_back(m - s);
    }
  }
  if (direction == LimitDirection::to_zero) {
    t.target = 2.0 / (-pa_coefficient(m, 0.0));
  } else {
    const double pn = pa_coefficient(n, m);
    t.diverges = std::abs(pn) < 1e-12 * static_cast<double>(binomial(2 * n, n));
    t.target = t.diverges ? std::numeric_limits<double>::infinity() : 4.0 * pa_coefficient(m, m) / pn;
  }
  const std::size_t k = t.rows.size();
  const double f1 = t.rows[k - 2].value, f2 = t.rows[k - 1].value, h1 = h[k - 2], h2 = h[k - 1];
  t.extrapolated = f2 + (f2 - f1) * h2 / (h1 - h2);
  t.deviation = t.diverges ? std::numeric_limits<double>::infinity() : std::abs(t.extrapolated - t.target);
  return t;
}

}  // namespace mixlab
