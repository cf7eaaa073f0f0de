#include "mixlab/fields.hpp"

#include "mixlab/jets.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mixlab::fields {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> to_double(const std::vector<long double>& a) { return {a.begin(), a.end()}; }

}  // namespace

SmoothField bump(int N, double rho, Point c, double amplitude) {
  if (!(rho > 0.0)) throw ContractViolation("bump radius must be positive");
  SmoothField f;
  f.dimension = N;
  f.name = "bump";
  f.center = c;
  f.support_radius = rho;
  f.sup_bound = std::abs(amplitude);
  f.value = [=](const Point& x) {
    const Point z{x[0] - c[0], x[1] - c[1]};
    const double q = dot(z, z) / (rho * rho);
    return q < 1.0 ? amplitude * std::exp(1.0 - 1.0 / (1.0 - q)) : 0.0;
  };
  f.taylor = [=](const Point& x, const Point& d, int order) {
    using T = long double;
    const Point z{x[0] - c[0], x[1] - c[1]};
    const T r2 = dot(z, z);
    if (r2 >= T(rho) * rho) return std::vector<double>(order + 1, 0.0);
    // |z + t d|^2 = r2 + 2 t z.d + t^2, so 1 - |.|^2/rho^2 is quadratic in t.
    jet::Series<T> g(order + 1, T(0));
    const T rr = T(rho) * rho;
    const T rlen = std::sqrt(r2);
    g[0] = (T(1) - rlen / rho) * (T(1) + rlen / rho);
    if (order >= 1) g[1] = T(-2) * T(dot(z, d)) / rr;
    if (order >= 2) g[2] = T(-1) / rr;
    auto r = jet::reciprocal(g);
    for (auto& v : r) v = -v;
    r[0] += T(1);
    auto e = jet::exp(r);
    for (auto& v : e) v *= amplitude;
    return to_double(e);
  };
  f.analytic_radius = [=](const Point& x) {
    const double r = norm({x[0] - c[0], x[1] - c[1]});
    return std::abs(rho - r);
  };
  return f;
}

SmoothField gaussian(int N, double w, Point c) {
  if (!(w > 0.0)) throw ContractViolation("gaussian width must be positive");
  SmoothField f;
  f.dimension = N;
  f.name = "gaussian";
  f.center = c;
  f.support_radius = 9.0 * w;
  f.value = [=](const Point& x) {
    const Point z{x[0] - c[0], x[1] - c[1]};
    return std::exp(-dot(z, z) / (2.0 * w * w));
  };
  f.taylor = [=](const Point& x, const Point& d, int order) {
    using T = long double;
    const Point z{x[0] - c[0], x[1] - c[1]};
    jet::Series<T> a(order + 1, T(0));
    const T s = T(-1) / (T(2) * w * w);
    a[0] = s * T(dot(z, z));
    if (order >= 1) a[1] = s * T(2) * T(dot(z, d));
    if (order >= 2) a[2] = s;
    return to_double(jet::exp(a));
  };
  f.analytic_radius = [](const Point&) { return kInf; };
  return f;
}

SmoothField cosine(int N, Point xi, double phase) {
  SmoothField f;
  f.dimension = N;
  f.name = "cos";
  f.value = [=](const Point& x) { return std::cos(dot(xi, x) + phase); };
  f.taylor = [=](const Point& x, const Point& d, int order) {
    using T = long double;
    jet::Series<T> a(order + 1, T(0)), cs, sn;
    a[0] = T(dot(xi, x)) + phase;
    if (order >= 1) a[1] = T(dot(xi, d));
    jet::cos_sin(a, cs, sn);
    return to_double(cs);
  };
  f.analytic_radius = [](const Point&) { return kInf; };
  return f;
}

SmoothField constant(int N, double c) {
  SmoothField f;
  f.dimension = N;
  f.name = "const";
  f.sup_bound = std::abs(c);
  f.limit_at_infinity = c;
  f.far_deviation = 0.0;
  f.value = [=](const Point&) { return c; };
  f.taylor = [=](const Point&, const Point&, int order) {
    std::vector<double> a(order + 1, 0.0);
    a[0] = c;
    return a;
  };
  f.analytic_radius = [](const Point&) { return kInf; };
  return f;
}

SmoothField combine(double alpha, const SmoothField& u, double beta, const SmoothField& v) {
  if (u.dimension != v.dimension) throw ContractViolation("combined fields differ in dimension");
  SmoothField f;
  f.dimension = u.dimension;
  f.name = "combination";
  f.sup_bound = std::abs(alpha) * u.sup_bound + std::abs(beta) * v.sup_bound;
  const bool lu = u.limit_at_infinity || u.compact(), lv = v.limit_at_infinity || v.compact();
  if ((u.limit_at_infinity || v.limit_at_infinity) && lu && lv) {
    f.limit_at_infinity = alpha * u.limit_at_infinity.value_or(0.0) + beta * v.limit_at_infinity.value_or(0.0);
    f.far_deviation = std::abs(alpha) * (u.compact() ? u.sup_bound : u.far_deviation) +
                      std::abs(beta) * (v.compact() ? v.sup_bound : v.far_deviation);
  }
  f.value = [=](const Point& x) { return alpha * u.value(x) + beta * v.value(x); };
  if (u.taylor && v.taylor) {
    f.taylor = [=](const Point& x, const Point& d, int order) {
      auto a = u.taylor(x, d, order);
      const auto b = v.taylor(x, d, order);
      for (int i = 0; i <= order; ++i) a[i] = alpha * a[i] + beta * b[i];
      return a;
    };
    f.analytic_radius = [=](const Point& x) { return std::min(u.analytic_radius(x), v.analytic_radius(x)); };
  }
  if (u.derivative_bound && v.derivative_bound)
    f.derivative_bound = [=](int k) {
      return std::abs(alpha) * u.derivative_bound(k) + std::abs(beta) * v.derivative_bound(k);
    };
  if (u.compact() && v.compact()) {
    f.center = u.center;
    const double dcv = norm({v.center[0] - u.center[0], v.center[1] - u.center[1]});
    f.support_radius = std::max(u.support_radius, dcv + v.support_radius);
  }
  return f;
}

SmoothField shifted(const SmoothField& u, const Point& a) {
  SmoothField f = u;
  f.name = u.name + "(shifted)";
  f.value = [=](const Point& x) { return u.value(add(x, a)); };
  if (u.taylor) {
    f.taylor = [=](const Point& x, const Point& d, int order) { return u.taylor(add(x, a), d, order); };
    f.analytic_radius = [=](const Point& x) { return u.analytic_radius(add(x, a)); };
  }
  f.center = {u.center[0] - a[0], u.center[1] - a[1]};
  return f;
}

SmoothField dilated(const SmoothField& u, double rho) {
  if (!(rho > 0.0)) throw ContractViolation("dilation factor must be positive");
  SmoothField f = u;
  f.name = u.name + "(dilated)";
  f.value = [=](const Point& x) { return u.value(scale(1.0 / rho, x)); };
  if (u.taylor) {
    f.taylor = [=](const Point& x, const Point& d, int order) {
      auto a = u.taylor(scale(1.0 / rho, x), d, order);
      double p = 1.0;
      for (auto& v : a) {
        v *= p;
        p /= rho;
      }
      return a;
    };
    f.analytic_radius = [=](const Point& x) { return rho * u.analytic_radius(scale(1.0 / rho, x)); };
  }
  if (u.derivative_bound) f.derivative_bound = [=](int k) { return u.derivative_bound(k) * std::pow(rho, -k); };
  f.center = scale(rho, u.center);
  f.support_radius = rho * u.support_radius;
  return f;
}

SmoothField parse_builtin(const std::string& spec, int N) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 2 || parts[0] != "builtin")
    throw ContractViolation("field spec must look like builtin:<name>[:param]");
  const std::string& name = parts[1];
  const double p = parts.size() > 2 ? std::stod(parts[2]) : 1.0;
  if (name == "bump") return bump(N, p);
  if (name == "gaussian") return gaussian(N, p);
  if (name == "cos") return cosine(N, {p, 0.0});
  if (name == "const") return constant(N, p);
  throw ContractViolation("unknown builtin field '" + name + "' (bump, gaussian, cos, const)");
}

}  // namespace mixlab::fields
