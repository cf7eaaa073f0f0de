#include "mixlab/pointwise_operator.hpp"

#include "mixlab/difference_operator.hpp"
#include "mixlab/kernel_constants.hpp"
#include "mixlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace mixlab {

void QuadratureSpec::check() const {
  if (!(near_split > 0.0 && near_split <= 1.0)) throw ContractViolation("near split must lie in (0, 1]");
  if (far_cutoff != 0.0 && !(far_cutoff > near_split)) throw ContractViolation("far cutoff must exceed near split");
  if (!(tolerance > 0.0)) throw ContractViolation("quadrature tolerance must be positive");
  if (cells_per_octave < 1 || angular_nodes < 2 || taylor_terms < 1)
    throw ContractViolation("quadrature node counts must be positive");
}

double tail_mass(double s, double R) {
  if (!(s > 0.0) || !(R > 0.0)) throw DomainError("tail mass needs s > 0 and R > 0");
  return 1.0 / (2.0 * s * std::pow(R, 2.0 * s));
}

namespace {

constexpr double kEps = 2.2e-16;

struct Direction {
  Point theta;
  double weight;       // weight in the full rule
  double half_weight;  // weight in the rule with every other uniform node
};

void flatten(const SphericalMeasure& sigma, double coef, int n_theta, std::vector<Direction>& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, UniformSurface>) {
          if (v.dimension == 1) {
            // Both points give the same radial integral since delta_m is even in y.
            out.push_back({{1.0, 0.0}, coef, coef});
          } else {
            for (int j = 0; j < n_theta; ++j) {
              const double phi = std::numbers::pi * j / n_theta;
              out.push_back({{std::cos(phi), std::sin(phi)}, coef / n_theta, (j % 2) ? 0.0 : 2.0 * coef / n_theta});
            }
          }
        } else if constexpr (std::is_same_v<T, AtomicMeasure>) {
          for (const auto& a : v.atoms) out.push_back({a.direction, coef * a.weight, coef * a.weight});
        } else {
          for (const auto& p : v.parts) flatten(p.measure, coef * p.coefficient, n_theta, out);
        }
      },
      sigma.value());
}

struct Radial {
  double value = 0.0;
  double error = 0.0;
};

// Positive r at which x + k r theta crosses the sphere |z - c| = rho.
void support_crossings(const SmoothField& u, const Point& x, const Point& theta, int m, std::vector<double>& out) {
  const Point z{x[0] - u.center[0], x[1] - u.center[1]};
  const double zt = dot(z, theta), zz = dot(z, z), rr = u.support_radius * u.support_radius;
  for (int k = 1; k <= m; ++k) {
    for (int sg : {-1, 1}) {
      const double kk = sg * k;
      // kk^2 r^2 + 2 kk r (z.theta) + |z|^2 - rho^2 = 0
      const double a = kk * kk, b = 2.0 * kk * zt, c = zz - rr;
      const double disc = b * b - 4.0 * a * c;
      if (disc < 0.0) continue;
      const double sq = std::sqrt(disc);
      for (double r : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)})
        if (r > 0.0) out.push_back(r);
    }
  }
}

Radial radial_integral(const SmoothField& u, int m, double s, const Point& x, const Point& theta,
                       double far_R, const QuadratureSpec& spec) {
  const DifferenceStencil& st = stencil(m);
  const double two_s = 2.0 * s, eps_ord = 2.0 * m - two_s;
  const double absw = std::ldexp(1.0, 2 * m);  // sum of |weights|
  const int n_lo = spec.gl_nodes == 24 ? 16 : 24;
  auto delta = [&](double r) {
    double acc = 0.0;
    for (int i = 0; i <= 2 * m; ++i) acc += static_cast<double>(st.weight[i]) * u.value(axpy(x, st.offset[i] * r, theta));
    return acc;
  };
  auto integrand = [&](double r) { return delta(r) * std::pow(r, -1.0 - two_s); };
  auto kernel_mass = [&](double a, double b) { return (std::pow(a, -two_s) - std::pow(b, -two_s)) / two_s; };
  Radial out;
  auto cell = [&](double a, double b) {
    const double hi = integrate_gl(integrand, a, b, spec.gl_nodes);
    const double lo = integrate_gl(integrand, a, b, n_lo);
    out.value += hi;
    out.error += std::abs(hi - lo) + kEps * absw * u.sup_bound * kernel_mass(a, b);
  };

  // Innermost region (0, rho_n].
  const double eta = spec.near_split;
  double rho_n = eta;
  const double radius = u.analytic_radius ? u.analytic_radius(x) : 0.0;
  if (u.taylor && radius > 0.0) {
    rho_n = std::min(eta, radius / (4.0 * m));
    const int K = 2 * m + 2 * spec.taylor_terms;
    const auto a = u.taylor(x, theta, K);
    double last = 0.0, acc = 0.0;
    for (int j = 2 * m; j <= K; j += 2) {
      const double p = j - two_s;
      last = a[j] * stencil_moment(m, j) * std::pow(rho_n, p) / p;
      acc += last;
    }
    out.value += acc;
    out.error += 2.0 * std::abs(last) + 1e-15 * std::abs(acc);
  } else {
    if (!u.derivative_bound)
      throw ContractViolation("field '" + u.name + "' provides neither Taylor data nor a derivative bound");
    // |delta_m u| <= C r^{2m}; grade until the discarded piece is below tol/3.
    double C = 0.0;
    for (int i = 0; i <= 2 * m; ++i) C += std::abs(static_cast<double>(st.weight[i])) * std::pow(std::abs(st.offset[i]), 2 * m);
    C *= u.derivative_bound(2 * m) / std::tgamma(2.0 * m + 1.0);
    const double target = spec.tolerance / 3.0;
    const double need = std::log2(C * std::pow(eta, eps_ord) / (eps_ord * target)) / eps_ord;
    const int J = std::clamp(static_cast<int>(std::ceil(need)), 0, 200);
    rho_n = eta * std::ldexp(1.0, -J);
    out.error += C * std::pow(rho_n, eps_ord) / eps_ord;
  }

  // Graded region [rho_n, eta].
  for (double lo = rho_n; lo < eta * (1.0 - 1e-15);) {
    const double hi = std::min(eta, lo * std::pow(2.0, 1.0 / spec.cells_per_octave));
    cell(lo, hi);
    lo = hi;
  }

  // Middle region (eta, R], cut where stencil points cross the support
  // boundary and graded toward those cuts.
  std::vector<double> cuts{eta, far_R};
  double hmax = 0.5;
  if (u.compact()) {
    std::vector<double> cr;
    support_crossings(u, x, theta, m, cr);
    for (double r : cr)
      if (r > eta && r < far_R) cuts.push_back(r);
    hmax = std::min(hmax, u.support_radius / (4.0 * m));
  }
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) continue;
    const int n = std::max(1, static_cast<int>(std::ceil((b - a) / hmax)));
    const double h = (b - a) / n;
    for (int j = 0; j < n; ++j) {
      const double ca = a + j * h, cb = a + (j + 1) * h;
      // Geometric refinement toward both ends of a segment that touches a cut.
      const bool left = (j == 0 && i > 0), right = (j == n - 1 && i + 2 < cuts.size());
      if (!left && !right) {
        cell(ca, cb);
        continue;
      }
      std::vector<double> pts{ca, cb};
      const double len = cb - ca;
      for (int g = 1; g <= 8; ++g) {
        if (left) pts.push_back(ca + len * std::ldexp(1.0, -g));
        if (right) pts.push_back(cb - len * std::ldexp(1.0, -g));
      }
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      for (std::size_t q = 0; q + 1 < pts.size(); ++q) cell(pts[q], pts[q + 1]);
    }
  }

  // Far region (R, inf): the k = 0 term integrates exactly.
  // A known limit at infinity turns the k != 0 terms into -central * limit.
  const double lim = u.compact() ? 0.0 : u.limit_at_infinity.value_or(0.0);
  out.value += static_cast<double>(st.central()) * (u.value(x) - lim) * kernel_mass(far_R, INFINITY);
  const Point z{x[0] - u.center[0], x[1] - u.center[1]};
  const bool exact = u.compact() && far_R >= norm(z) + u.support_radius;
  if (!exact) out.error += (absw - static_cast<double>(st.central())) * u.far_bound() * kernel_mass(far_R, INFINITY);
  return out;
}

double auto_far_cutoff(const SmoothField& u, int m, double s, const Point& x, const QuadratureSpec& spec) {
  if (spec.far_cutoff > 0.0) return spec.far_cutoff;
  if (u.compact()) return 2.0 * (norm({x[0] - u.center[0], x[1] - u.center[1]}) + u.support_radius + 1.0);
  const double weight = std::ldexp(1.0, 2 * m) - static_cast<double>(binomial(2 * m, m));
  const double R = std::pow(weight * u.far_bound() / (s * spec.tolerance), 1.0 / (2.0 * s));
  return std::clamp(R, 4.0, spec.max_far_cutoff);
}

}  // namespace

Evaluation apply_Lms(const SmoothField& u, int m, double s, const SphericalMeasure& sigma, const Point& x,
                     const QuadratureSpec& spec) {
  spec.check();
  if (m < 1) throw ContractViolation("operator order m must be >= 1");
  if (!(s > 0.0 && s < m)) {
    std::ostringstream os;
    os << "L_{m,s} needs 0 < s < m, got m = " << m << ", s = " << s;
    throw DomainError(os.str());
  }
  if (sigma.dimension() != u.dimension) throw ContractViolation("field and spherical measure differ in dimension");
  const double c = normalization_constant(m, s, sigma).c_ms;
  std::vector<Direction> dirs;
  flatten(sigma, 1.0, spec.angular_nodes, dirs);
  const double R = auto_far_cutoff(u, m, s, x, spec);
  double full = 0.0, half = 0.0, err = 0.0;
  for (const auto& d : dirs) {
    const Radial r = radial_integral(u, m, s, x, d.theta, R, spec);
    full += d.weight * r.value;
    half += d.half_weight * r.value;
    err += d.weight * r.error;
  }
  const double value = 0.5 * c * full;
  const double error = 0.5 * c * (err + std::abs(full - half)) + 1e-14 * std::abs(value);
  return {value, error};
}

Evaluation apply_superposition(const SmoothField& u, const OrderMeasure& mu, const MeasureFamily& family,
                               const Point& x, const QuadratureSpec& spec) {
  check_order_measure(mu);
  for (const OrderPart* p : {&mu.plus, &mu.minus})
    if (p->support_sup() >= 16.0) {
      std::ostringstream os;
      os << "superposition not certified at x = (" << x[0] << ", " << x[1]
         << "): orders reach " << p->support_sup() << ", beyond the stencil range";
      throw DomainError(os.str());
    }
  Evaluation total{0.0, 0.0};
  auto one = [&](double s) -> Evaluation {
    if (s == 0.0) return {u.value(x), 0.0};
    return apply_Lms(u, order_above(s), s, family.at(s), x, spec);
  };
  auto accumulate = [&](const OrderPart& part, double sign) {
    for (const auto& a : part.atoms) {
      const Evaluation e = one(a.s);
      total.value += sign * a.weight * e.value;
      total.error += a.weight * e.error;
    }
    for (const auto& d : part.density) {
      std::vector<double> cuts{d.a};
      for (double b : family.breaks_between(d.a, d.b)) cuts.push_back(b);
      for (double k = std::floor(d.a) + 1.0; k < d.b; k += 1.0) cuts.push_back(k);
      cuts.push_back(d.b);
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      const Rule& rule = gauss_legendre(32);
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double h = 0.5 * (cuts[i + 1] - cuts[i]), c = 0.5 * (cuts[i + 1] + cuts[i]);
        for (std::size_t q = 0; q < rule.x.size(); ++q) {
          const Evaluation e = one(c + h * rule.x[q]);
          total.value += sign * d.value * h * rule.w[q] * e.value;
          total.error += d.value * h * rule.w[q] * e.error;
        }
      }
    }
  };
  accumulate(mu.plus, 1.0);
  accumulate(mu.minus, -1.0);
  return total;
}

IndependenceReport m_independence_check(const SmoothField& u, double s, const SphericalMeasure& sigma,
                                        const Point& x, const std::vector<int>& m_list,
                                        const QuadratureSpec& spec) {
  IndependenceReport rep{m_list, {}, 0.0, 0.0, true};
  for (int m : m_list) {
    if (!(m > s)) throw ContractViolation("every m must exceed s");
    rep.values.push_back(apply_Lms(u, m, s, sigma, x, spec));
  }
  for (std::size_t i = 0; i < rep.values.size(); ++i)
    for (std::size_t j = i + 1; j < rep.values.size(); ++j) {
      const double dev = std::abs(rep.values[i].value - rep.values[j].value);
      const double budget = rep.values[i].error + rep.values[j].error;
      rep.max_deviation = std::max(rep.max_deviation, dev);
      rep.error_budget = std::max(rep.error_budget, budget);
      if (dev > budget) rep.within_budget = false;
    }
  return rep;
}

namespace {

// (-Delta)^m u(x) along the axes by delta_m / h^{2m}, Richardson in h^2.
double polyharmonic_fd(const SmoothField& u, const Point& x, int m) {
  auto estimate = [&](double h) {
    double acc = 0.0;
    for (int axis = 0; axis < u.dimension; ++axis) {
      Point e{0.0, 0.0};
      e[axis] = 1.0;
      acc += delta_m([&](const Point& p) { return u.value(p); }, x, scale(h, e), m) / std::pow(h, 2 * m);
    }
    return acc;
  };
  if (u.dimension == 2 && m != 1) throw ContractViolation("2D finite-difference oracle supports m = 1 only");
  const int levels = 4;
  double h0 = 0.2 * std::max(1.0, u.compact() ? u.support_radius : 1.0) / m;
  std::vector<std::vector<double>> T(levels);
  for (int i = 0; i < levels; ++i) {
    T[i].push_back(estimate(h0 * std::ldexp(1.0, -i)));
    for (int j = 1; j <= i; ++j) {
      const double f = std::ldexp(1.0, 2 * j);
      T[i].push_back((f * T[i][j - 1] - T[i - 1][j - 1]) / (f - 1.0));
    }
  }
  return T[levels - 1][levels - 1];
}

}  // namespace

LimitCheckTable limit_checks(const SmoothField& u, const MeasureFamily& family, const Point& x,
                             OrderLimit direction, const std::vector<double>& s_sequence, int m,
                             const QuadratureSpec& spec) {
  LimitCheckTable t{{}, true};
  double target = 0.0;
  if (direction == OrderLimit::to_zero) {
    if (!u.compact()) throw ContractViolation("the s -> 0 limit needs a compactly supported field");
    target = u.value(x);
  } else {
    target = polyharmonic_fd(u, x, m);
  }
  for (double s : s_sequence) {
    const SphericalMeasure sig = family.at(s);
    if (direction == OrderLimit::to_order && !sig.is_uniform())
      throw ContractViolation("the s -> m limit check expects the uniform spherical measure");
    const int mm = direction == OrderLimit::to_zero ? order_above(s) : m;
    const Evaluation e = apply_Lms(u, mm, s, sig, x, spec);
    const double err = std::abs(e.value - target);
    if (!t.rows.empty() && err > t.rows.back().error) t.monotone = false;
    t.rows.push_back({s, e.value, target, err});
  }
  return t;
}

double bounds_constant(int m) {
  static std::mutex mu;
  static std::map<int, double> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  double best = 0.0;
  const int n = 200;
  for (int i = 1; i < n; ++i) {
    const double s = m * static_cast<double>(i) / n;
    if (m == 1 && std::abs(s - 0.5) < 1e-9) continue;
    best = std::max(best, constant_bound_quantity(m, s));
  }
  // The quantity tends to finite limits at both ends; include them.
  best = std::max(best, 2.0 / (-pa_coefficient(m, 0.0)));
  best = std::max(best, 4.0);
  cache[m] = best;
  return best;
}

double evaluation_bound(int m, double s, const SphericalMeasure& sigma, double dm_norm) {
  const double sphere = sigma.dimension() == 1 ? 2.0 : 2.0 * std::numbers::pi;
  const double M = maximizing_direction(sigma, s).value;
  return bounds_constant(m) * std::ldexp(1.0, 2 * (m - 1)) * sphere * std::max(1.0, dm_norm) / M;
}

}  // namespace mixlab
