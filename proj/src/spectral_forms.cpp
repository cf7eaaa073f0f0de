#include "mixlab/spectral_forms.hpp"

#include "mixlab/difference_operator.hpp"
#include "mixlab/kernel_constants.hpp"
#include "mixlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace mixlab {

namespace {

// Directional factor M(xi/|xi|)/M(e_s); 1 whenever sigma is rotation invariant
// (every N = 1 measure is, since |e.theta| = 1 on the two-point sphere).
bool isotropic(const SphericalMeasure& sigma) { return sigma.dimension() == 1 || sigma.is_uniform(); }

double term_value(const SymbolTerm& t, const Point& xi) {
  if (t.s == 0.0) return 1.0;
  const double r = norm(xi);
  if (r == 0.0) return 0.0;
  const double radial = std::pow(r, 2.0 * t.s);
  if (isotropic(t.sigma)) return radial;
  const Point e = scale(1.0 / r, xi);
  return angular_moment(t.sigma, e, 2.0 * t.s) * radial / t.M_at_es;
}

SymbolTerm make_term(double coef, double s, const MeasureFamily& family) {
  SphericalMeasure sigma = family.at(s);
  const double M = s == 0.0 ? 1.0 : maximizing_direction(sigma, s).value;
  if (!(M > 0.0)) throw DomainError("angular moment vanishes at the maximizer");
  return {coef, s, std::move(sigma), M};
}

void append_part(std::vector<SymbolTerm>& out, const OrderPart& part, double sign, const MeasureFamily& family) {
  for (const auto& a : part.atoms) out.push_back(make_term(sign * a.weight, a.s, family));
  const Rule& rule = gauss_legendre(32);
  for (const auto& d : part.density) {
    std::vector<double> cuts{d.a};
    for (double b : family.breaks_between(d.a, d.b)) cuts.push_back(b);
    cuts.push_back(d.b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double h = 0.5 * (cuts[i + 1] - cuts[i]), c = 0.5 * (cuts[i + 1] + cuts[i]);
      for (std::size_t q = 0; q < rule.x.size(); ++q)
        out.push_back(make_term(sign * d.value * h * rule.w[q], c + h * rule.x[q], family));
    }
  }
}

MultiplierGrid fill(const GridSpec& g, const std::function<double(const Point&)>& m) {
  g.check();
  MultiplierGrid out{g, std::vector<double>(g.size()), 0.0, 0.0, false};
  double min_v = std::numeric_limits<double>::infinity(), max_abs = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point xi = g.frequency(i);
    const double v = m(xi);
    if (!std::isfinite(v)) throw NumericalFailure("multiplier not finite");
    out.values[i] = v;
    max_abs = std::max(max_abs, std::abs(v));
    if (v < min_v) {
      min_v = v;
      out.min_frequency = norm(xi);
    }
  }
  out.min_value = min_v;
  out.negative = min_v < -1e-14 * max_abs;
  return out;
}

std::vector<std::complex<double>> transform(const GridFunction& u) {
  std::vector<std::complex<double>> U(u.samples.begin(), u.samples.end());
  dft(u.grid, U, false);
  return U;
}

// dx^N / n^N: Plancherel weight for unnormalized transforms.
double plancherel_weight(const GridSpec& g) { return g.cell_volume() / static_cast<double>(g.size()); }

double spectral_pairing(const std::vector<std::complex<double>>& U, const std::vector<std::complex<double>>& V,
                        const std::vector<double>& m, const GridSpec& g) {
  double acc = 0.0;
  for (std::size_t i = 0; i < U.size(); ++i) acc += m[i] * (U[i] * std::conj(V[i])).real();
  return acc * plancherel_weight(g);
}

std::vector<double> power(const std::vector<std::complex<double>>& U) {
  std::vector<double> p(U.size());
  for (std::size_t i = 0; i < U.size(); ++i) p[i] = std::norm(U[i]);
  return p;
}

}  // namespace

double multiplier(const SphericalMeasure& sigma, double s, const Point& xi) {
  if (!(s >= 0.0)) throw ContractViolation("order must be nonnegative");
  if (s == 0.0) return 1.0;
  const double M = isotropic(sigma) ? 1.0 : maximizing_direction(sigma, s).value;
  return term_value({1.0, s, sigma, M}, xi);
}

std::vector<SymbolTerm> superposition_terms(const OrderMeasure& mu, const MeasureFamily& family) {
  check_order_measure(mu);
  std::vector<SymbolTerm> out;
  append_part(out, mu.plus, 1.0, family);
  append_part(out, mu.minus, -1.0, family);
  return out;
}

double evaluate_symbol(const std::vector<SymbolTerm>& terms, const Point& xi) {
  double acc = 0.0;
  for (const auto& t : terms) acc += t.coef * term_value(t, xi);
  return acc;
}

double superposition_multiplier(const OrderMeasure& mu, const MeasureFamily& family, const Point& xi) {
  return evaluate_symbol(superposition_terms(mu, family), xi);
}

MultiplierGrid build_multiplier(const GridSpec& g, const SphericalMeasure& sigma, double s) {
  if (sigma.dimension() != g.N) throw ContractViolation("measure and grid dimensions differ");
  const double M = s == 0.0 || isotropic(sigma) ? 1.0 : maximizing_direction(sigma, s).value;
  const SymbolTerm t{1.0, s, sigma, M};
  return fill(g, [&](const Point& xi) { return term_value(t, xi); });
}

MultiplierGrid build_multiplier(const GridSpec& g, const OrderMeasure& mu, const MeasureFamily& family) {
  if (family.dimension() != g.N) throw ContractViolation("family and grid dimensions differ");
  const auto terms = superposition_terms(mu, family);
  return fill(g, [&](const Point& xi) { return evaluate_symbol(terms, xi); });
}

MultiplierGrid build_fractional_laplacian(const GridSpec& g, double s) {
  return build_multiplier(g, SphericalMeasure::uniform(g.N), s);
}

GridFunction apply_spectral(const MultiplierGrid& mult, const GridFunction& u, double* imag_ratio) {
  if (!(mult.grid == u.grid)) throw ContractViolation("grid mismatch between multiplier and field");
  auto U = transform(u);
  for (std::size_t i = 0; i < U.size(); ++i) U[i] *= mult.values[i];
  dft(u.grid, U, true);
  GridFunction out(u.grid);
  const double inv = 1.0 / static_cast<double>(u.grid.size());
  double max_re = 0.0, max_im = 0.0;
  for (std::size_t i = 0; i < U.size(); ++i) {
    out.samples[i] = U[i].real() * inv;
    max_re = std::max(max_re, std::abs(U[i].real()));
    max_im = std::max(max_im, std::abs(U[i].imag()));
  }
  if (imag_ratio) *imag_ratio = max_re > 0.0 ? max_im / max_re : 0.0;
  return out;
}

double energy(const GridFunction& u, const GridFunction& v, const MultiplierGrid& mult) {
  if (!(u.grid == v.grid) || !(mult.grid == u.grid)) throw ContractViolation("grid mismatch in energy");
  return spectral_pairing(transform(u), transform(v), mult.values, u.grid);
}

double l2_norm_squared_spectral(const GridFunction& u) {
  const auto p = power(transform(u));
  double acc = 0.0;
  for (double v : p) acc += v;
  return acc * plancherel_weight(u.grid);
}

void check_interior_support(const GridFunction& u, double tol) {
  const double quarter = 0.25 * u.grid.L;
  double peak = 0.0;
  for (double v : u.samples) peak = std::max(peak, std::abs(v));
  const double thresh = std::max(tol, 1e-14 * peak);
  for (std::size_t i = 0; i < u.samples.size(); ++i) {
    if (std::abs(u.samples[i]) <= thresh) continue;
    const Point p = u.grid.coord(i);
    if (std::abs(p[0]) > quarter || (u.grid.N == 2 && std::abs(p[1]) > quarter)) {
      std::ostringstream os;
      os << "field support reaches (" << p[0] << ", " << p[1] << "), closer than L/4 to the periodic boundary";
      throw ContractViolation(os.str());
    }
  }
}

double energy_bruteforce_1d(const SmoothField& u, const GridSpec& g, int m, double s, const BruteForceSpec& spec) {
  g.check();
  if (g.N != 1 || u.dimension != 1) throw ContractViolation("brute-force energy is one-dimensional");
  if (!u.compact()) throw ContractViolation("brute-force energy needs a compactly supported field");
  if (m < 1 || !(s > 0.0 && s < 2.0 * m)) throw DomainError("brute-force energy needs 0 < s < 2m");
  const double rho = u.support_radius, c0 = u.center[0];
  if (std::abs(c0) + rho > 0.25 * g.L)
    throw ContractViolation("field support closer than L/4 to the periodic boundary");

  const double dx = g.dx();
  const auto& st = stencil(m);
  auto lattice = [&](double x) { return std::llround((x + 0.5 * g.L) / dx); };
  auto node = [&](long long j) { return -0.5 * g.L + dx * static_cast<double>(j); };

  // F(y) = sum_x dx (delta_m u(x,y))^2 over every lattice x the stencil reaches.
  auto F = [&](double y) {
    const long long j0 = lattice(c0 - rho - m * y) - 1, j1 = lattice(c0 + rho + m * y) + 1;
    double acc = 0.0;
    for (long long j = j0; j <= j1; ++j) {
      const double x = node(j);
      double d = 0.0;
      for (std::size_t k = 0; k < st.offset.size(); ++k)
        d += static_cast<double>(st.weight[k]) * u.value({x + st.offset[k] * y, 0.0});
      acc += d * d;
    }
    return acc * dx;
  };

  const double Y0 = 2.0 * rho;  // past the diameter the shifted copies are disjoint
  const Rule& rule = gauss_legendre(spec.gl_nodes);
  const int cells = spec.octaves * spec.cells_per_octave;
  double inner = 0.0, y_first = 0.0, F_first = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double b = Y0 * std::exp2(-static_cast<double>(i) / spec.cells_per_octave);
    const double a = Y0 * std::exp2(-static_cast<double>(i + 1) / spec.cells_per_octave);
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      const double y = c + h * rule.x[q];
      const double f = F(y);
      inner += h * rule.w[q] * f * std::pow(y, -1.0 - 2.0 * s);
      if (i == cells - 1 && (y_first == 0.0 || y < y_first)) {
        y_first = y;
        F_first = f;
      }
    }
  }
  // Below the mesh F(y) ~ C y^{4m}.
  const double y_min = Y0 * std::exp2(-static_cast<double>(spec.octaves));
  const double coef = F_first / std::pow(y_first, 4.0 * m);
  inner += coef * std::pow(y_min, 4.0 * m - 2.0 * s) / (4.0 * m - 2.0 * s);

  double norm2 = 0.0;
  for (long long j = lattice(c0 - rho) - 1; j <= lattice(c0 + rho) + 1; ++j) {
    const double v = u.value({node(j), 0.0});
    norm2 += v * v;
  }
  norm2 *= dx;
  const double tail = static_cast<double>(binomial(4 * m, 2 * m)) * norm2 / (2.0 * s * std::pow(Y0, 2.0 * s));
  return 0.5 * c_ms(2 * m, s, 1.0) * (inner + tail);
}

XNorm x_norm(const GridFunction& u, const OrderMeasure& mu, const MeasureFamily& family) {
  if (family.dimension() != u.grid.N) throw ContractViolation("family and grid dimensions differ");
  check_order_measure(mu);
  const auto P = power(transform(u));
  const double w = plancherel_weight(u.grid);
  std::vector<Point> xi(u.grid.size());
  for (std::size_t i = 0; i < xi.size(); ++i) xi[i] = u.grid.frequency(i);
  auto term_energy = [&](const SymbolTerm& t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) acc += term_value(t, xi[i]) * P[i];
    return acc * w;
  };
  XNorm out{0.0, 0.0, 0.0, {}};
  std::vector<SymbolTerm> plus, minus;
  append_part(plus, mu.plus, 1.0, family);
  append_part(minus, mu.minus, 1.0, family);
  std::map<int, double> blocks;
  for (const auto& t : plus) {
    const double e = t.coef * term_energy(t);
    out.E_plus += e;
    blocks[order_above(t.s)] += e;
  }
  for (const auto& t : minus) out.E_minus += t.coef * term_energy(t);
  out.blocks.assign(blocks.begin(), blocks.end());
  double l2 = 0.0;
  for (double v : u.samples) l2 += v * v;
  l2 *= u.grid.cell_volume();
  out.norm = std::sqrt(std::max(0.0, l2 + out.E_plus));
  return out;
}

ComparisonReport comparison_suite(const GridFunction& u, const ComparisonParams& p) {
  const GridSpec& g = u.grid;
  if (p.family.dimension() != g.N) throw ContractViolation("family and grid dimensions differ");
  if (!(p.s > 0.0) || !(p.t > 0.0 && p.t <= p.s)) throw ContractViolation("comparison needs 0 < t <= s");
  check_interior_support(u);
  ComparisonReport r{};
  const SphericalMeasure sig_s = p.family.at(p.s), sig_t = p.family.at(p.t);
  const auto U = transform(u);
  auto E = [&](const MultiplierGrid& m) { return spectral_pairing(U, U, m.values, g); };

  r.E_n_s = E(build_multiplier(g, sig_s, p.s));
  r.E_s_pure = E(build_fractional_laplacian(g, p.s));
  r.M_es = maximizing_direction(sig_s, p.s).value;
  r.lambda0 = minimal_moment(sig_s, 2.0 * p.s);
  const double slack = 1e-12 * std::max(r.E_s_pure, 1e-300);
  r.a_holds = r.E_n_s <= r.E_s_pure / r.M_es + slack;
  // Moments below 1e-12 come from directions orthogonal to every atom.
  r.b_applicable = r.lambda0 > 1e-12;
  r.b_ratio = r.E_n_s > 0.0 ? r.E_s_pure / r.E_n_s : std::numeric_limits<double>::infinity();
  r.b_holds = r.b_applicable && r.E_s_pure <= r.M_es / r.lambda0 * r.E_n_s + slack;

  r.E_t = E(build_multiplier(g, sig_t, p.t));
  const double M_et = maximizing_direction(sig_t, p.t).value;
  r.lambda = std::min(r.M_es, M_et);
  // sup_e M_t(e)/M_s(e) on a fine circle; directions where both vanish are skipped.
  double ratio = 1.0;
  if (!isotropic(sig_s) || !isotropic(sig_t)) {
    ratio = 0.0;
    constexpr int kDirs = 4096;
    for (int i = 0; i < kDirs; ++i) {
      const double phi = std::numbers::pi * i / kDirs;
      const Point e{std::cos(phi), std::sin(phi)};
      const double mt = angular_moment(sig_t, e, 2.0 * p.t), ms = angular_moment(sig_s, e, 2.0 * p.s);
      if (mt <= 1e-15 && ms <= 1e-15) continue;
      ratio = ms > 0.0 ? std::max(ratio, mt / ms) : std::numeric_limits<double>::infinity();
    }
  }
  r.Lambda = std::max(r.lambda, ratio);
  double l2 = 0.0;
  for (double v : u.samples) l2 += v * v;
  l2 *= g.cell_volume();
  r.c_rhs = r.Lambda / r.lambda * (l2 + r.E_n_s);
  r.c_holds = r.E_t <= r.c_rhs * (1.0 + 1e-12);
  for (double gamma : p.gammas)
    r.gamma_ratio.emplace_back(gamma, r.E_n_s > 0.0 ? gamma * r.E_t / r.E_n_s : 0.0);
  return r;
}

}  // namespace mixlab
