#include "mixlab/verification.hpp"

#include "mixlab/difference_operator.hpp"
#include "mixlab/dirichlet_variational.hpp"
#include "mixlab/kernel_constants.hpp"
#include "mixlab/pointwise_operator.hpp"
#include "mixlab/spectral_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace mixlab {

bool VerifyReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void VerifyReport::check(std::string name, double value, double threshold, bool ok, std::string detail) {
  checks.push_back({std::move(name), value, threshold, ok, std::move(detail)});
}

Json VerifyReport::to_json() const {
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json j{{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    cs.push_back(j);
  }
  return {{"id", id}, {"pass", pass()}, {"parameters", parameters}, {"checks", cs}};
}

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string str(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

MeasureFamily uniform_family(int N = 1) { return MeasureFamily::constant(SphericalMeasure::uniform(N)); }

// 1 <= m <= 5 or the requested m.
std::vector<int> m_range(const VerifyOptions& o, int hi) {
  if (o.m) return {*o.m};
  std::vector<int> v;
  for (int m = 1; m <= hi; ++m) v.push_back(m);
  return v;
}

VerifyReport constant_estimate(const VerifyOptions& o) {
  VerifyReport r{"lem:constant-estimate"};
  const std::vector<double> ss = o.s ? std::vector<double>{*o.s} : std::vector<double>{0.1, 0.25, 0.4, 0.75, 0.9};
  const double tol = o.tol.value_or(1e-8);
  for (double s : ss) {
    const double q = cosine_integral(1, s), c = cosine_integral_closed_form(s);
    const double d = rel(q, c);
    r.check("I(1," + str(s) + ") quadrature vs closed form", d, tol, d <= tol,
            "quadrature " + str(q) + ", closed form " + str(c));
  }
  r.parameters = {{"s", ss}};
  return r;
}

VerifyReport constant_identity(const VerifyOptions& o) {
  VerifyReport r{"lem:constant"};
  const std::vector<double> ss = o.s ? std::vector<double>{*o.s} : std::vector<double>{0.3, 0.7, 1.3};
  const double tol = o.tol.value_or(1e-8);
  for (double s : ss)
    for (int m = 1; m <= 4; ++m)
      for (int n = m + 1; n <= 4; ++n) {
        if (!(m > s)) continue;
        const double lhs = c_ms(n, s) * pa_coefficient(n, s), rhs = c_ms(m, s) * pa_coefficient(m, s);
        const double d = rel(lhs, rhs);
        r.check("c_{" + std::to_string(n) + ",s} P_n = c_{" + std::to_string(m) + ",s} P_m at s=" + str(s), d, tol,
                d <= tol);
      }
  r.parameters = {{"s", ss}, {"m_max", 4}};
  return r;
}

VerifyReport agaapa0(const VerifyOptions& o) {
  VerifyReport r{"agaapa0"};
  std::vector<double> t;
  for (int i = 0; i <= 2000; ++i) t.push_back(-2.0 * std::numbers::pi + 4.0 * std::numbers::pi * i / 2000.0);
  const double tol = o.tol.value_or(1e-12);
  for (int m : m_range(o, 5)) {
    const double d = exponential_identity_deviation(m, t);
    r.check("delta_m e^{i.}(0,t) = 2^m (1 - cos t)^m, m=" + std::to_string(m), d, tol, d <= tol);
  }
  r.parameters = {{"t_points", t.size()}, {"t_range", {t.front(), t.back()}}};
  return r;
}

VerifyReport chu_vandermonde(const VerifyOptions& o) {
  VerifyReport r{"chu-vandermonde"};
  for (int m : m_range(o, 8)) {
    const bool ok = chu_vandermonde_check(m);
    r.check("binomial convolution identity, m=" + std::to_string(m), ok ? 0.0 : 1.0, 0.0, ok, "exact integer arithmetic");
  }
  return r;
}

VerifyReport independence(const VerifyOptions& o) {
  VerifyReport r{"lem:independence"};
  const SmoothField u = fields::bump(1, 1.0);
  const std::vector<double> ss = o.s ? std::vector<double>{*o.s} : std::vector<double>{0.3, 0.6};
  const std::vector<double> xs{0.0, 0.3, 0.7, 1.2, -0.5};
  const auto sigma = SphericalMeasure::uniform(1);
  for (double s : ss)
    for (double x : xs) {
      const auto rep = m_independence_check(u, s, sigma, {x, 0.0}, {1, 2});
      r.check("|L_{2,s}u - L_{1,s}u| within error budget, s=" + str(s) + " x=" + str(x), rep.max_deviation,
              rep.error_budget, rep.within_budget,
              "L1 " + str(rep.values[0].value) + ", L2 " + str(rep.values[1].value));
    }
  r.parameters = {{"field", u.name}, {"s", ss}, {"x", xs}};
  return r;
}

VerifyReport limits(const VerifyOptions&) {
  VerifyReport r{"limits"};
  const SmoothField u = fields::bump(1, 1.0);
  const auto fam = uniform_family();
  const std::vector<double> s0{0.2, 0.1, 0.05, 0.02, 0.01};
  const auto t0 = limit_checks(u, fam, {0.0, 0.0}, OrderLimit::to_zero, s0);
  for (const auto& row : t0.rows) r.table.push_back({0.0, row.s, row.value, row.target, row.error});
  r.check("s -> 0 errors decrease monotonically", t0.monotone ? 0.0 : 1.0, 0.0, t0.monotone);
  const double e001 = t0.rows.back().error;
  r.check("s -> 0 error at s = 0.01", e001, 5e-3, e001 < 5e-3);
  const auto t1 = limit_checks(u, fam, {0.0, 0.0}, OrderLimit::to_order, {0.999}, 1);
  const auto& row = t1.rows.back();
  r.table.push_back({1.0, row.s, row.value, row.target, row.error});
  const double d = row.error / std::abs(row.target);
  r.check("s = 0.999 value vs -u''", d, 1e-2, d <= 1e-2, "value " + str(row.value) + ", target " + str(row.target));
  r.table_header = {"direction", "s", "value", "target", "error"};
  r.parameters = {{"field", u.name}, {"x", 0.0}};
  return r;
}

VerifyReport fourier_rep(const VerifyOptions& o) {
  VerifyReport r{"fourier-rep"};
  const SmoothField u = fields::bump(1, 1.0);
  const auto sigma = SphericalMeasure::uniform(1);
  const double L = 1024.0;
  const int nodes = 131072;
  const double tol = o.tol.value_or(1e-4);
  const std::vector<double> ss = o.s ? std::vector<double>{*o.s} : std::vector<double>{0.5, 0.75};
  for (double s : ss) {
    const GridSpec g{1, nodes, L}, g2{1, 2 * nodes, L};
    double imag = 0.0;
    const auto a = apply_spectral(build_multiplier(g, sigma, s), GridFunction::sample(g, u.value), &imag);
    const auto a2 = apply_spectral(build_multiplier(g2, sigma, s), GridFunction::sample(g2, u.value));
    double worst = 0.0, drift = 0.0;
    for (int i = 0; i < 10; ++i) {
      const std::size_t j = static_cast<std::size_t>(std::llround((-0.9 + 0.2 * i + 0.5 * L) / g.dx()));
      const double x = g.coord(j)[0];
      const Evaluation e = apply_Lms(u, order_above(s), s, sigma, {x, 0.0});
      worst = std::max(worst, rel(a.samples[j], e.value));
      drift = std::max(drift, rel(a2.samples[2 * j], a.samples[j]));
      r.table.push_back({s, x, a.samples[j], a2.samples[2 * j], e.value, e.error});
    }
    r.check("spectral vs pointwise, 10 points, s=" + str(s), worst, tol, worst < tol);
    r.check("grid doubling drift, s=" + str(s), drift, tol, drift < tol);
    r.check("imaginary part of spectral output, s=" + str(s), imag, 1e-12, imag < 1e-12);
  }
  r.table_header = {"s", "x", "spectral", "spectral_doubled", "pointwise", "pointwise_error"};
  r.parameters = {{"L", L}, {"nodes", nodes}, {"field", u.name}, {"s", ss}};
  return r;
}

VerifyReport energy_oracle(const VerifyOptions& o) {
  VerifyReport r{"energy-oracle"};
  const SmoothField u = fields::bump(1, 1.0);
  const GridSpec g{1, 32768, 1024.0};
  const double s = o.s.value_or(0.4), tol = o.tol.value_or(1e-3);
  const int m = o.m.value_or(1);
  const double bf = energy_bruteforce_1d(u, g, m, s);
  const auto ug = GridFunction::sample(g, u.value);
  const double sp = energy(ug, ug, build_fractional_laplacian(g, s));
  const double d = rel(bf, sp);
  r.check("brute-force vs Plancherel energy", d, tol, d <= tol, "brute force " + str(bf) + ", spectral " + str(sp));
  const double parseval = rel(l2_norm_squared_spectral(ug), ug.dot_l2(ug));
  r.check("Parseval", parseval, 1e-12, parseval <= 1e-12);
  r.parameters = {{"L", g.L}, {"nodes", g.nodes}, {"m", m}, {"s", s}, {"field", u.name}};
  return r;
}

VerifyReport scaling(const VerifyOptions& o) {
  VerifyReport r{"scaling"};
  const SmoothField u = fields::bump(1, 1.0);
  SmoothField ur = fields::dilated(u, 2.0);
  const GridSpec g{1, 32768, 1024.0};
  const double tol = o.tol.value_or(1e-3);
  const auto ug = GridFunction::sample(g, u.value), urg = GridFunction::sample(g, ur.value);
  const std::vector<double> ss = o.s ? std::vector<double>{*o.s} : std::vector<double>{0.25, 0.75};
  for (double s : ss) {
    const auto mult = build_fractional_laplacian(g, s);
    const double ratio = energy(ug, ug, mult) / energy(urg, urg, mult), target = std::pow(2.0, 2.0 * s - 1.0);
    const double d = rel(ratio, target);
    r.check("E(u)/E(u_2) = 2^{2s-1}, s=" + str(s), d, tol, d <= tol, "ratio " + str(ratio) + ", target " + str(target));
  }
  // The same oracle comparison as energy-oracle, at the default order.
  const double bf = energy_bruteforce_1d(u, g, 1, 0.4);
  const double sp = energy(ug, ug, build_fractional_laplacian(g, 0.4));
  r.check("brute-force vs Plancherel energy, s=0.4", rel(bf, sp), tol, rel(bf, sp) <= tol);
  r.parameters = {{"L", g.L}, {"nodes", g.nodes}, {"rho", 2.0}, {"s", ss}, {"field", u.name}};
  return r;
}

VerifyReport poincare(const VerifyOptions& o) {
  VerifyReport r{"poincare"};
  const std::vector<double> ss = o.s ? std::vector<double>{*o.s} : std::vector<double>{0.25, 0.5, 0.75, 1.5};
  const DomainMask mask = parse_omega(o.omega.value_or("interval:0,1"), 1024);
  for (double s : ss) {
    const auto mult = build_multiplier(mask.grid, OrderMeasure::delta(s), uniform_family(mask.grid.N));
    const auto sp = eigenpairs(mult, mask, 1, EigenOptions{o.seed});
    const double C = poincare_constant(s, mask.diameter), lam = sp.eigenvalues[0];
    r.check("lambda_1 >= 1/C, s=" + str(s), lam, 1.0 / C, lam >= 1.0 / C,
            "residual " + str(sp.residuals[0]) + ", C " + str(C));
    r.table.push_back({s, lam, 1.0 / C, sp.residuals[0]});
  }
  r.table_header = {"s", "lambda_1", "bound", "relative_residual"};
  r.parameters = {{"omega", mask.description}, {"L", mask.grid.L}, {"nodes", mask.grid.nodes}, {"s", ss}};
  return r;
}

VerifyReport poincare_gen(const VerifyOptions& o) {
  VerifyReport r{"poincare-gen"};
  const DomainMask mask = parse_omega(o.omega.value_or("interval:0,1"), 1024);
  OrderMeasure mu = OrderMeasure::delta(1.0);
  mu.add_plus(0.5, 1.0);
  const double s_star = default_s_star(mu), t = 1.0;
  const auto mult = build_multiplier(mask.grid, mu, uniform_family(mask.grid.N));
  const auto sp = eigenpairs(mult, mask, 4, EigenOptions{o.seed});
  const double Ct = generalized_poincare_constant(t, mask.diameter), mass_t = mass(mu.plus, s_star, t, true);
  for (int i = 0; i < 4; ++i) {
    const auto& v = sp.eigenvectors[i];
    const double Eplus = x_norm(v, mu, uniform_family(mask.grid.N)).E_plus, l2 = v.dot_l2(v);
    const double bound = Eplus / (Ct * mass_t);
    r.check("||u||^2 <= E+(u,u) / (C_t mu+([s*,t])), eigenvector " + std::to_string(i + 1), l2, bound, l2 <= bound);
  }
  r.parameters = {{"omega", mask.description}, {"mu", to_json(mu)}, {"s_star", s_star}, {"t", t}, {"C_t", Ct}};
  return r;
}

VerifyReport special_construction(const VerifyOptions& o) {
  VerifyReport r{"special-construction"};
  const int K = o.K.value_or(20);
  const auto phi = pathological_partial_sums(PathologicalKind::special_phi, K);
  const auto psi = pathological_partial_sums(PathologicalKind::special_psi, K);
  const double bound = std::numbers::pi * std::numbers::pi / 6.0 + 1e-9;
  r.check("phi partial sums bounded by pi^2/6", phi.back().sum, bound, phi.back().sum <= bound);
  const double ratio = psi[K - 1].term / psi[K - 2].term;
  const double dev = std::abs(ratio - 2.0);
  r.check("psi increment ratio at k=" + std::to_string(K) + " near 2", dev, 0.05, dev <= 0.05,
          "ratio " + str(ratio));
  for (int k = 0; k < K; ++k) r.table.push_back({static_cast<double>(k + 1), phi[k].sum, psi[k].sum, psi[k].term});
  r.table_header = {"k", "phi_partial_sum", "psi_partial_sum", "psi_term"};
  r.parameters = {{"K", K}, {"half_width", BumpProfile{}.half_width}};
  return r;
}

VerifyReport pathological(const VerifyOptions& o) {
  const PathologicalKind kind = parse_pathological_kind(o.kind.value_or("special_psi"));
  VerifyReport r{"pathological"};
  const int K = o.K.value_or(20);
  const auto rows = pathological_partial_sums(kind, K);
  for (const auto& row : rows) r.table.push_back({static_cast<double>(row.k), row.sum});
  r.table_header = {"k", "partial_sum"};
  const bool positive = std::all_of(rows.begin(), rows.end(), [](const PartialSum& p) { return p.term > 0.0; });
  r.check("terms positive with trusted derivative norms up to K", static_cast<double>(K), 40.0, positive);
  r.parameters = {{"kind", to_string(kind)}, {"K", K}};
  return r;
}

VerifyReport strano(const VerifyOptions& o) {
  VerifyReport r{"strano"};
  const int K = o.K.value_or(20);
  const auto rows = pathological_partial_sums(PathologicalKind::strano, K);
  // Increments c_k^2 / k^2 grow faster than any geometric rate.
  bool growing = true;
  for (int k = 2; k < K; ++k)
    if (!(rows[k].term / rows[k - 1].term > rows[k - 1].term / rows[k - 2].term)) growing = false;
  r.check("increment ratios of sum ||D^k phi||^2/k^2 increase", growing ? 0.0 : 1.0, 0.0, growing);
  for (const auto& row : rows) r.table.push_back({static_cast<double>(row.k), row.sum, row.term});
  r.table_header = {"k", "partial_sum", "term"};
  r.parameters = {{"K", K}};
  return r;
}

Eigen::VectorXd random_smooth(const DomainMask& mask, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  double c[6];
  for (double& v : c) v = nd(rng);
  Eigen::VectorXd f(mask.unknowns());
  for (std::size_t j = 0; j < mask.nodes.size(); ++j) {
    const Point p = mask.grid.coord(mask.nodes[j]);
    const double y = (p[0] - mask.lo[0]) / (mask.hi[0] - mask.lo[0]);
    double v = 0.0;
    for (int k = 0; k < 6; ++k) v += c[k] * std::sin(std::numbers::pi * (k + 1) * y);
    f[j] = v + 0.05 * nd(rng);
  }
  return f;
}

VerifyReport mountain_pass(const VerifyOptions& o) {
  VerifyReport r{"mountain-pass"};
  VariationalProblem P;
  P.mu = OrderMeasure::delta(0.5);
  P.mu.add_minus(0.25, 0.05);
  P.mask = parse_omega(o.omega.value_or("interval:-1,1"), 1024);
  P.family = uniform_family(P.mask.grid.N);
  const double q = 4.0, tol = o.tol.value_or(1e-6);
  const auto res = solve_mountain_pass(P, q, MountainPassOptions{tol});
  r.check("gradient norm", res.result.residual, tol, res.result.residual <= tol);
  r.check("J(u) > 0", res.result.energy, 0.0, res.result.energy > 0.0);
  r.check("Nehari identity", res.nehari_defect, 1e-8, res.nehari_defect <= 1e-8);
  const auto prep = prepare(P);
  const GridFunction Au = form_apply(prep.mult, P.mask, res.result.solution);
  const Eigen::VectorXd u = P.mask.restrict(res.result.solution), A = P.mask.restrict(Au);
  std::mt19937_64 rng(o.seed);
  const double dx = P.mask.grid.cell_volume();
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd phi = random_smooth(P.mask, rng);
    double weak = 0.0;
    for (Eigen::Index k = 0; k < u.size(); ++k) weak += (A[k] - std::pow(std::abs(u[k]), q - 2.0) * u[k]) * phi[k];
    worst = std::max(worst, std::abs(weak * dx) / (std::sqrt(dx) * phi.norm()));
  }
  r.check("weak equation residual over 20 random fields", worst, 1e-5, worst <= 1e-5);
  const auto& c = res.certificate;
  r.check("mountain-pass ring level beta > 0", c.beta, 0.0, c.beta > 0.0, "rho " + str(c.rho));
  r.check("far point below the ring level", c.far_value, c.beta, c.far_value < c.beta && c.far_energy > c.rho);
  r.parameters = {{"mu", to_json(P.mu)}, {"omega", P.mask.description}, {"L", P.mask.grid.L},
                  {"nodes", P.mask.grid.nodes}, {"q", q}, {"iterations", res.result.iterations}};
  return r;
}

VerifyReport jumping(const VerifyOptions& o) {
  VerifyReport r{"jumping"};
  VariationalProblem P;
  P.mu = OrderMeasure::delta(0.25);
  P.mask = parse_omega(o.omega.value_or("interval:-1,1"), 1024);
  P.family = uniform_family(P.mask.grid.N);
  const auto prep = prepare(P);
  const double p = prep.report.two_star;
  const auto sp = eigenpairs(prep.mult, P.mask, 3, EigenOptions{o.seed});
  const double a = sp.eigenvalues[0] + 0.1 * (sp.eigenvalues[1] - sp.eigenvalues[0]);
  const double b = sp.eigenvalues[0] + 0.2 * (sp.eigenvalues[1] - sp.eigenvalues[0]);
  std::mt19937_64 rng(o.seed);
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const GridFunction u = P.mask.extend(random_smooth(P.mask, rng));
    const GridFunction v = P.mask.extend(random_smooth(P.mask, rng));
    const auto jv = jumping_functional(prep.mult, P.mask, a, b, p, u);
    GridFunction up = u, um = u;
    for (std::size_t k = 0; k < u.samples.size(); ++k) {
      up.samples[k] += h * v.samples[k];
      um.samples[k] -= h * v.samples[k];
    }
    const double fd = (jumping_functional(prep.mult, P.mask, a, b, p, up).value -
                       jumping_functional(prep.mult, P.mask, a, b, p, um).value) /
                      (2.0 * h);
    const double an = jv.gradient.dot_l2(v);
    worst = std::max(worst, rel(fd, an));
  }
  r.check("gradient vs central differences, 5 random fields", worst, 1e-6, worst <= 1e-6);
  double bn = 0.0;
  for (int i = 0; i < 3; ++i) {
    const GridFunction u = P.mask.extend(random_smooth(P.mask, rng));
    const double j1 = jumping_functional(prep.mult, P.mask, a, a, p, u).value;
    const double j2 = brezis_nirenberg_functional(prep.mult, P.mask, a, p, u);
    bn = std::max(bn, rel(j1, j2));
  }
  r.check("a = b reduces to the Brezis-Nirenberg functional", bn, 1e-12, bn <= 1e-12);
  const double tol = o.tol.value_or(1e-8);
  try {
    const auto js = jumping_solve(P, a, a, 2, tol);
    r.check("jumping candidate residual", js.result.residual, tol, js.result.residual <= tol,
            "seed " + js.report.attempts.back());
    r.check("level below c_*", js.report.level, js.report.level_bound, js.report.level_ok);
    r.parameters["jumping_level"] = js.report.level;
  } catch (const NumericalFailure& e) {
    r.check("jumping candidate found", 1.0, 0.0, false, e.what());
  }
  r.parameters.update({{"mu", to_json(P.mu)}, {"omega", P.mask.description}, {"two_star", p},
                       {"a", a}, {"b", b}, {"lambda", sp.eigenvalues}});
  return r;
}

VerifyReport refusal(const VerifyOptions& o) {
  VerifyReport r{"refusal"};
  VariationalProblem P;
  P.mu = OrderMeasure::delta(0.5);
  P.mu.add_minus(0.25, 0.9);
  P.mask = parse_omega(o.omega.value_or("interval:-1,1"), 1024);
  P.family = uniform_family(P.mask.grid.N);
  const auto mult = build_multiplier(P.mask.grid, P.mu, P.family);
  r.check("superposition multiplier negative somewhere", mult.min_value, 0.0, mult.negative,
          "at |xi| = " + str(mult.min_frequency));
  auto refused = [&](const std::string& name, const std::function<void()>& f) {
    std::string msg;
    bool ok = false;
    try {
      f();
      msg = "no refusal";
    } catch (const Refusal& e) {
      msg = e.what();
      ok = msg.find("multiplier is negative") != std::string::npos;
    } catch (const std::exception& e) {
      msg = std::string("unexpected error: ") + e.what();
    }
    r.check(name + " refuses", ok ? 0.0 : 1.0, 0.0, ok, msg);
  };
  const GridFunction f = P.mask.extend(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(P.mask.unknowns())));
  refused("linear_solve", [&] { linear_solve(mult, P.mask, f); });
  refused("solve_mountain_pass", [&] { solve_mountain_pass(P, 4.0); });
  refused("jumping_solve", [&] { jumping_solve(P, 1.0, 1.0, 1); });
  r.parameters = {{"mu", to_json(P.mu)}, {"omega", P.mask.description}, {"gamma", 0.9}};
  return r;
}

}  // namespace

const std::vector<VerifySuite>& verify_suites() {
  static const std::vector<VerifySuite> suites{
      {"lem:constant-estimate", "closed form of I(1,s) against quadrature", constant_estimate},
      {"lem:constant", "cross-order identity c_{n,s} P_n = c_{m,s} P_m", constant_identity},
      {"agaapa0", "delta_m of exp(i t) equals 2^m (1 - cos t)^m", agaapa0},
      {"chu-vandermonde", "exact binomial convolution identity", chu_vandermonde},
      {"lem:independence", "L_{m,s} does not depend on m", independence},
      {"limits", "s -> 0 and s -> 1 limits of the pointwise operator", limits},
      {"fourier-rep", "FFT multiplier against certified quadrature", fourier_rep},
      {"energy-oracle", "brute-force double-sum energy against Plancherel", energy_oracle},
      {"scaling", "energy scaling under dilation", scaling},
      {"poincare", "lambda_1 >= 1/C for a single order", poincare},
      {"poincare-gen", "generalized Poincare bound for superpositions", poincare_gen},
      {"special-construction", "bounded and divergent dilated-bump series", special_construction},
      {"strano", "super-geometric growth of sum ||D^k phi||^2/k^2", strano},
      {"pathological", "partial sums for --kind and --K as CSV", pathological},
      {"mountain-pass", "Nehari mountain-pass solve with certificates", mountain_pass},
      {"jumping", "jumping functional gradient and best-effort solve", jumping},
      {"refusal", "solvers refuse an indefinite form", refusal},
  };
  return suites;
}

const VerifySuite& find_suite(const std::string& id) {
  for (const auto& s : verify_suites())
    if (s.id == id) return s;
  std::string ids;
  for (const auto& s : verify_suites()) ids += (ids.empty() ? "" : ", ") + s.id;
  throw ContractViolation("unknown verification id '" + id + "'; available: " + ids);
}

}  // namespace mixlab
