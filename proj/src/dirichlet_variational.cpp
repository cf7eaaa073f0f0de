#include "mixlab/dirichlet_variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace mixlab {

namespace {

int check_mask_nodes(int nodes) {
  if (nodes < 8 || (nodes & (nodes - 1)) != 0) throw ContractViolation("mask grid needs a power-of-two node count >= 8");
  return nodes;
}

double padded_length(std::initializer_list<double> ends, double diam) {
  double L = 4.0 * diam;
  for (double e : ends) L = std::max(L, 4.0 * std::abs(e));
  return L;
}

void finish_mask(DomainMask& m) {
  for (std::size_t i = 0; i < m.inside.size(); ++i)
    if (m.inside[i]) m.nodes.push_back(i);
  if (m.nodes.empty()) throw ContractViolation("Omega contains no grid nodes; refine the grid");
}

// Euclidean operators on the unknowns of a mask.
struct MaskedOperator {
  const MultiplierGrid& mult;
  const DomainMask& mask;
  double tau;  // shift of the preconditioner (m + tau)^{-1}

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const { return filter(v, mult.values, false); }
  Eigen::VectorXd precondition(const Eigen::VectorXd& v) const { return filter(v, mult.values, true); }

  Eigen::VectorXd filter(const Eigen::VectorXd& v, const std::vector<double>& m, bool inverse) const {
    const GridSpec& g = mask.grid;
    std::vector<std::complex<double>> U(g.size(), 0.0);
    for (std::size_t j = 0; j < mask.nodes.size(); ++j) U[mask.nodes[j]] = v[j];
    dft(g, U, false);
    for (std::size_t i = 0; i < U.size(); ++i) U[i] *= inverse ? 1.0 / (m[i] + tau) : m[i];
    dft(g, U, true);
    const double inv = 1.0 / static_cast<double>(g.size());
    Eigen::VectorXd out(mask.nodes.size());
    for (std::size_t j = 0; j < mask.nodes.size(); ++j) out[j] = U[mask.nodes[j]].real() * inv;
    return out;
  }

  Eigen::MatrixXd apply_block(const Eigen::MatrixXd& X) const {
    Eigen::MatrixXd Y(X.rows(), X.cols());
    for (Eigen::Index c = 0; c < X.cols(); ++c) Y.col(c) = apply(X.col(c));
    return Y;
  }
  Eigen::MatrixXd precondition_block(const Eigen::MatrixXd& X) const {
    Eigen::MatrixXd Y(X.rows(), X.cols());
    for (Eigen::Index c = 0; c < X.cols(); ++c) Y.col(c) = precondition(X.col(c));
    return Y;
  }
};

// Sine-product seed, positive on the bounding box of Omega.
Eigen::VectorXd positive_seed(const DomainMask& mask) {
  Eigen::VectorXd v(mask.unknowns());
  for (std::size_t j = 0; j < mask.nodes.size(); ++j) {
    const Point p = mask.grid.coord(mask.nodes[j]);
    double val = 1.0;
    for (int d = 0; d < mask.grid.N; ++d)
      val *= std::sin(std::numbers::pi * (p[d] - mask.lo[d]) / (mask.hi[d] - mask.lo[d]));
    v[j] = std::max(val, 0.0);
  }
  return v;
}

double shift_for(const MaskedOperator& op) {
  const Eigen::VectorXd v = positive_seed(op.mask);
  return std::max(v.dot(op.apply(v)) / v.squaredNorm(), 1e-8);
}

// Orthonormal basis of span(S); nearly dependent directions are dropped.
Eigen::MatrixXd orthonormalize(Eigen::MatrixXd S) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index c = 0; c < S.cols(); ++c) {
      const double n = S.col(c).norm();
      if (n > 0.0) S.col(c) /= n;
    }
    const Eigen::MatrixXd G = S.transpose() * S;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double cut = 1e-10 * ev.maxCoeff();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (ev[i] > cut) keep.push_back(i);
    Eigen::MatrixXd B(S.cols(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
      B.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(keep[i]) / std::sqrt(ev[keep[i]]);
    S = S * B;
  }
  return S;
}

double l2(const DomainMask& mask, const Eigen::VectorXd& v) { return std::sqrt(mask.grid.cell_volume()) * v.norm(); }

double q_integral(const DomainMask& mask, const Eigen::VectorXd& v, double q) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]), q);
  return acc * mask.grid.cell_volume();
}

Eigen::VectorXd power_term(const Eigen::VectorXd& u, double q) {
  Eigen::VectorXd f(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) f[i] = std::pow(std::abs(u[i]), q - 2.0) * u[i];
  return f;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

Eigen::VectorXd DomainMask::restrict(const GridFunction& u) const {
  if (!(u.grid == grid)) throw ContractViolation("field grid does not match the mask grid");
  for (std::size_t i = 0; i < u.samples.size(); ++i)
    if (!inside[i] && u.samples[i] != 0.0) throw ContractViolation("field is nonzero outside Omega");
  Eigen::VectorXd v(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) v[j] = u.samples[nodes[j]];
  return v;
}

GridFunction DomainMask::extend(const Eigen::VectorXd& v) const {
  if (static_cast<std::size_t>(v.size()) != nodes.size()) throw ContractViolation("vector size does not match Omega");
  GridFunction u(grid);
  for (std::size_t j = 0; j < nodes.size(); ++j) u.samples[nodes[j]] = v[j];
  return u;
}

DomainMask interval_mask(double a, double b, int nodes) {
  if (!(a < b)) throw ContractViolation("interval needs a < b");
  DomainMask m;
  m.grid = GridSpec{1, check_mask_nodes(nodes), padded_length({a, b}, b - a)};
  m.inside.assign(m.grid.size(), 0);
  for (std::size_t i = 0; i < m.grid.size(); ++i) {
    const double x = m.grid.coord(i)[0];
    m.inside[i] = x > a && x < b;
  }
  m.diameter = b - a;
  m.volume = b - a;
  m.lo = {a, 0.0};
  m.hi = {b, 0.0};
  m.description = "interval:" + fmt(a) + "," + fmt(b);
  finish_mask(m);
  return m;
}

DomainMask box_mask(double x0, double x1, double y0, double y1, int nodes) {
  if (!(x0 < x1) || !(y0 < y1)) throw ContractViolation("box needs x0 < x1 and y0 < y1");
  DomainMask m;
  const double diam = std::hypot(x1 - x0, y1 - y0);
  m.grid = GridSpec{2, check_mask_nodes(nodes), padded_length({x0, x1, y0, y1}, diam)};
  m.inside.assign(m.grid.size(), 0);
  for (std::size_t i = 0; i < m.grid.size(); ++i) {
    const Point p = m.grid.coord(i);
    m.inside[i] = p[0] > x0 && p[0] < x1 && p[1] > y0 && p[1] < y1;
  }
  m.diameter = diam;
  m.volume = (x1 - x0) * (y1 - y0);
  m.lo = {x0, y0};
  m.hi = {x1, y1};
  m.description = "box:" + fmt(x0) + "," + fmt(x1) + "," + fmt(y0) + "," + fmt(y1);
  finish_mask(m);
  return m;
}

DomainMask parse_omega(const std::string& spec, int nodes) {
  std::string body = spec;
  bool box = false;
  if (body.rfind("interval:", 0) == 0) body = body.substr(9);
  else if (body.rfind("box:", 0) == 0) {
    body = body.substr(4);
    box = true;
  }
  std::vector<double> v;
  std::stringstream ss(body);
  std::string tok;
  try {
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
  } catch (const std::exception&) {
    throw ContractViolation("cannot parse domain '" + spec + "'");
  }
  if (!box && v.size() == 2) return interval_mask(v[0], v[1], nodes);
  if (box && v.size() == 4) return box_mask(v[0], v[1], v[2], v[3], nodes);
  throw ContractViolation("domain '" + spec + "' must be interval:a,b or box:x0,x1,y0,y1");
}

void require_positive_form(const MultiplierGrid& mult) {
  if (!mult.negative) return;
  std::ostringstream os;
  os << "refused: the superposition multiplier is negative (min " << mult.min_value << " at |xi| = "
     << mult.min_frequency
     << "), so the energy form is indefinite; the negative orders carry too much mass (gamma too large)";
  throw Refusal(os.str());
}

GridFunction form_apply(const MultiplierGrid& mult, const DomainMask& mask, const GridFunction& u) {
  if (!(mult.grid == mask.grid)) throw ContractViolation("multiplier grid does not match the mask grid");
  const Eigen::VectorXd v = mask.restrict(u);
  return mask.extend(MaskedOperator{mult, mask, 0.0}.apply(v));
}

Eigen::MatrixXd dense_form(const MultiplierGrid& mult, const DomainMask& mask) {
  const GridSpec& g = mask.grid;
  if (!(mult.grid == g)) throw ContractViolation("multiplier grid does not match the mask grid");
  std::vector<std::complex<double>> K(mult.values.begin(), mult.values.end());
  dft(g, K, true);
  const double inv = 1.0 / static_cast<double>(g.size());
  const std::size_t n = static_cast<std::size_t>(g.nodes);
  auto kernel = [&](std::size_t p, std::size_t q) {
    if (g.N == 1) return K[(p + n - q) % n].real() * inv;
    const std::size_t r = (p / n + n - q / n) % n, c = (p % n + n - q % n) % n;
    return K[r * n + c].real() * inv;
  };
  const Eigen::Index d = static_cast<Eigen::Index>(mask.nodes.size());
  Eigen::MatrixXd A(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) A(i, j) = A(j, i) = kernel(mask.nodes[i], mask.nodes[j]);
  return A;
}

SpectrumResult eigenpairs(const MultiplierGrid& mult, const DomainMask& mask, int k, const EigenOptions& opt) {
  if (!(mult.grid == mask.grid)) throw ContractViolation("multiplier grid does not match the mask grid");
  if (k < 1) throw ContractViolation("need k >= 1 eigenpairs");
  require_positive_form(mult);
  const Eigen::Index n = static_cast<Eigen::Index>(mask.unknowns());
  if (k > n) throw ContractViolation("more eigenpairs requested than unknowns");
  MaskedOperator op{mult, mask, 0.0};
  op.tau = shift_for(op);
  const Eigen::Index b = std::min<Eigen::Index>(2 * k, n);

  SpectrumResult res;
  Eigen::MatrixXd X(n, b), AX;
  Eigen::VectorXd lam;
  std::vector<double> rel(k, std::numeric_limits<double>::infinity());

  auto ritz = [&](const Eigen::MatrixXd& Q, const Eigen::MatrixXd& AQ) {
    Eigen::MatrixXd H = Q.transpose() * AQ;
    H = 0.5 * (H + H.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    const Eigen::MatrixXd C = es.eigenvectors().leftCols(b);
    lam = es.eigenvalues().head(b);
    AX = AQ * C;
    return Eigen::MatrixXd(Q * C);
  };

  if (3 * b >= n) {
    // Small problem: the LOBPCG basis would span everything anyway.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_form(mult, mask));
    X = es.eigenvectors().leftCols(b);
    AX = op.apply_block(X);
    lam = es.eigenvalues().head(b);
  } else {
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> nd;
    for (Eigen::Index c = 0; c < b; ++c)
      for (Eigen::Index r = 0; r < n; ++r) X(r, c) = nd(rng);
    X = orthonormalize(X);
    X = ritz(X, op.apply_block(X));
  }

  Eigen::MatrixXd P;
  for (int it = 0;; ++it) {
    const Eigen::MatrixXd R = AX - X * lam.asDiagonal();
    bool done = true;
    for (int i = 0; i < k; ++i) {
      rel[i] = R.col(i).norm() / std::abs(lam[i]);
      if (!(lam[i] > 0.0) || rel[i] > opt.relative_residual) done = false;
    }
    res.iterations = it;
    if (done) break;
    if (it >= opt.max_iterations) {
      std::ostringstream os;
      os << "eigensolver did not converge in " << opt.max_iterations << " iterations; best relative residuals:";
      for (double r : rel) os << ' ' << r;
      throw NumericalFailure(os.str());
    }
    const Eigen::MatrixXd W = op.precondition_block(R);
    Eigen::MatrixXd S(n, W.cols() + X.cols() + P.cols());
    S << X, W, P;
    const Eigen::MatrixXd Q = orthonormalize(S);
    const Eigen::MatrixXd Xn = ritz(Q, op.apply_block(Q));
    P = Xn - X * (X.transpose() * Xn);
    X = Xn;
  }

  // Report residuals from a fresh application of the operator.
  const double sdx = std::sqrt(mask.grid.cell_volume());
  for (int i = 0; i < k; ++i) {
    const Eigen::VectorXd x = X.col(i).normalized();
    const double l = x.dot(op.apply(x));
    res.eigenvalues.push_back(l);
    res.residuals.push_back((op.apply(x) - l * x).norm() / std::abs(l));
    res.eigenvectors.push_back(mask.extend(x / sdx));
  }
  return res;
}

SolveResult linear_solve(const MultiplierGrid& mult, const DomainMask& mask, const GridFunction& f, double tol,
                         int max_iterations) {
  if (!(mult.grid == mask.grid)) throw ContractViolation("multiplier grid does not match the mask grid");
  require_positive_form(mult);
  MaskedOperator op{mult, mask, 0.0};
  op.tau = shift_for(op);
  // Only the values on Omega enter the right-hand side.
  Eigen::VectorXd rhs(mask.unknowns());
  if (!(f.grid == mask.grid)) throw ContractViolation("right-hand side grid does not match the mask grid");
  for (std::size_t j = 0; j < mask.nodes.size(); ++j) rhs[j] = f.samples[mask.nodes[j]];

  SolveResult out;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(rhs.size());
  const double target = tol * rhs.norm();
  Eigen::VectorXd r = rhs, z = op.precondition(r), p = z;
  double rz = r.dot(z);
  int it = 0;
  while (r.norm() > target) {
    if (it >= max_iterations)
      throw NumericalFailure("conjugate gradients stalled at relative residual " + fmt(r.norm() / rhs.norm()));
    const Eigen::VectorXd Ap = op.apply(p);
    const double pAp = p.dot(Ap);
    if (!(pAp > 0.0)) throw Refusal("refused: the masked form is not positive definite (p.Ap = " + fmt(pAp) + ")");
    const double alpha = rz / pAp;
    x += alpha * p;
    r -= alpha * Ap;
    z = op.precondition(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
    out.trace.push_back(l2(mask, r));
    ++it;
  }
  const Eigen::VectorXd Ax = op.apply(x);
  out.solution = mask.extend(x);
  out.residual = l2(mask, Ax - rhs);
  out.energy = mask.grid.cell_volume() * x.dot(Ax);
  out.iterations = it;
  return out;
}

double default_s_star(const OrderMeasure& mu) {
  check_order_measure(mu);
  const double floor_s = mu.minus.empty() ? 0.0 : mu.minus.support_sup();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : mu.plus.atoms)
    if (a.s > floor_s) best = std::min(best, a.s);
  for (const auto& d : mu.plus.density)
    if (d.b > floor_s) best = std::min(best, std::max(d.a, std::nextafter(floor_s, d.b)));
  if (!std::isfinite(best) || !(best > 0.0))
    throw DomainError("no positive order of mu+ lies above the negative part; supply s* explicitly");
  return best;
}

PreparedProblem prepare(const VariationalProblem& problem) {
  const int N = problem.mask.grid.N;
  if (problem.family.dimension() != N) throw ContractViolation("family and domain dimensions differ");
  const double s_star = problem.s_star ? *problem.s_star : default_s_star(problem.mu);
  PreparedProblem out{MultiplierGrid{}, validate(problem.mu, s_star, N, problem.p_fallback)};
  if (!out.report.positive_mass_above)
    throw DomainError("mu+ carries no mass on [s*, inf); the positive part must charge some order >= s*");
  if (!out.report.gamma_small)
    throw Refusal("refused: gamma = " + fmt(out.report.gamma) +
                  " >= 1, the negative orders outweigh the positive mass above s*; the energy form is not coercive");
  if (!out.report.negative_below) throw Refusal("refused: mu- charges orders at or above s*");
  out.mult = build_multiplier(problem.mask.grid, problem.mu, problem.family);
  require_positive_form(out.mult);
  return out;
}

MountainPassResult solve_mountain_pass(const VariationalProblem& problem, double q, const MountainPassOptions& opt,
                                       const std::optional<GridFunction>& seed) {
  const PreparedProblem prep = prepare(problem);
  const DomainMask& mask = problem.mask;
  if (!(q > 2.0)) throw ContractViolation("power nonlinearity needs q > 2");
  if (!prep.report.critical_from_fallback && !(q < prep.report.two_star))
    throw ContractViolation("q must be below the critical exponent " + fmt(prep.report.two_star));
  MaskedOperator op{prep.mult, mask, 0.0};
  op.tau = shift_for(op);
  const double dx = mask.grid.cell_volume();

  Eigen::VectorXd u = seed ? mask.restrict(*seed) : positive_seed(mask);
  if (u.squaredNorm() == 0.0) throw ContractViolation("seed is zero; the Nehari projection is undefined at 0");

  auto E = [&](const Eigen::VectorXd& v) { return dx * v.dot(op.apply(v)); };
  auto Q = [&](const Eigen::VectorXd& v) { return q_integral(mask, v, q); };
  auto J = [&](const Eigen::VectorXd& v) { return 0.5 * E(v) - Q(v) / q; };
  auto grad = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return op.apply(v) - power_term(v, q); };
  auto project = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    const double e = E(v), qq = Q(v);
    if (!(e > 0.0) || !(qq > 0.0)) throw NumericalFailure("Nehari projection undefined (E = " + fmt(e) + ")");
    return std::pow(e / qq, 1.0 / (q - 2.0)) * v;
  };

  MountainPassResult out;
  out.q = q;
  SolveResult& sr = out.result;
  u = project(u);
  double Ju = J(u), alpha = 1.0;
  Eigen::VectorXd g = grad(u);
  int it = 0;
  for (; it < opt.max_descent; ++it) {
    const double gn = l2(mask, g);
    sr.trace.push_back(gn);
    if (gn <= opt.descent_switch) break;
    const Eigen::VectorXd d = op.precondition(g);
    const double slope = dx * g.dot(d);
    alpha = std::min(1.0, 2.0 * alpha);
    bool accepted = false;
    while (alpha > 1e-14) {
      const Eigen::VectorXd v = u - alpha * d;
      if (E(v) > 0.0) {
        const Eigen::VectorXd un = project(v);
        const double Jn = J(un);
        if (Jn <= Ju - 1e-4 * alpha * slope) {
          u = un;
          Ju = Jn;
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted)
      throw NumericalFailure("mountain-pass descent stagnated at gradient norm " + fmt(gn) + " after " +
                             std::to_string(it) + " steps");
    g = grad(u);
  }
  if (it >= opt.max_descent)
    throw NumericalFailure("mountain-pass descent hit the iteration cap at gradient norm " + fmt(l2(mask, g)));

  // Newton polish on the Euler-Lagrange equation.
  const Eigen::MatrixXd D = dense_form(prep.mult, mask);
  for (int k = 0; k < opt.max_newton; ++k) {
    const double gn = l2(mask, g);
    if (gn <= 1e-3 * opt.tol) break;
    Eigen::MatrixXd Jac = D;
    for (Eigen::Index i = 0; i < u.size(); ++i) Jac(i, i) -= (q - 1.0) * std::pow(std::abs(u[i]), q - 2.0);
    const Eigen::VectorXd step = Jac.fullPivLu().solve(-g);
    double a = 1.0;
    bool improved = false;
    while (a > 1e-6) {
      const Eigen::VectorXd un = u + a * step;
      const Eigen::VectorXd gnew = grad(un);
      if (l2(mask, gnew) < gn) {
        u = un;
        g = gnew;
        improved = true;
        break;
      }
      a *= 0.5;
    }
    sr.trace.push_back(l2(mask, g));
    if (!improved) break;  // at the rounding floor
  }
  sr.residual = l2(mask, g);
  sr.iterations = static_cast<int>(sr.trace.size());
  if (sr.residual > opt.tol)
    throw NumericalFailure("mountain-pass solve ended at gradient norm " + fmt(sr.residual) + " above tolerance " +
                           fmt(opt.tol));
  const double Eu = E(u), Qu = Q(u);
  sr.solution = mask.extend(u);
  sr.energy = 0.5 * Eu - Qu / q;
  if (!(sr.energy > 0.0) || u.norm() == 0.0) throw NumericalFailure("mountain-pass solve returned a trivial point");
  out.nehari_defect = std::abs(Eu - Qu) / Eu;

  MountainPassCertificate& c = out.certificate;
  c.R_min = Eu / std::pow(Qu, 2.0 / q);
  c.rho = 0.25 * Eu;
  c.beta = 0.5 * c.rho - std::pow(c.rho / c.R_min, 0.5 * q) / q;
  const double T = std::max(2.0, std::pow(q, 1.0 / (q - 2.0)));
  const Eigen::VectorXd e = T * u;
  c.far_point = mask.extend(e);
  c.far_energy = E(e);
  c.far_value = J(e);
  return out;
}

JumpingValue jumping_functional(const MultiplierGrid& mult, const DomainMask& mask, double a, double b,
                                double two_star, const GridFunction& u) {
  if (!(a > 0.0 && b > 0.0)) throw ContractViolation("jumping parameters need a, b > 0");
  if (!(two_star > 2.0)) throw ContractViolation("critical exponent must exceed 2");
  const Eigen::VectorXd v = mask.restrict(u);
  MaskedOperator op{mult, mask, 0.0};
  const Eigen::VectorXd Av = op.apply(v);
  const double dx = mask.grid.cell_volume();
  double jump = 0.0, crit = 0.0;
  Eigen::VectorXd g = Av;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double up = std::max(v[i], 0.0), um = std::max(-v[i], 0.0);
    jump += a * um * um + b * up * up;
    crit += std::pow(std::abs(v[i]), two_star);
    g[i] -= b * up - a * um + std::pow(std::abs(v[i]), two_star - 2.0) * v[i];
  }
  const double value = 0.5 * dx * v.dot(Av) - 0.5 * dx * jump - dx * crit / two_star;
  return {value, mask.extend(g)};
}

double brezis_nirenberg_functional(const MultiplierGrid& mult, const DomainMask& mask, double lambda, double p,
                                   const GridFunction& u) {
  const Eigen::VectorXd v = mask.restrict(u);
  const double dx = mask.grid.cell_volume();
  MaskedOperator op{mult, mask, 0.0};
  return 0.5 * dx * v.dot(op.apply(v)) - 0.5 * lambda * dx * v.squaredNorm() - q_integral(mask, v, p) / p;
}

JumpingResult jumping_solve(const VariationalProblem& problem, double a, double b, int l, double tol) {
  const PreparedProblem prep = prepare(problem);
  const DomainMask& mask = problem.mask;
  if (l < 1) throw ContractViolation("window index l must be >= 1");
  if (!(a > 0.0 && b > 0.0)) throw ContractViolation("jumping parameters need a, b > 0");
  const SpectrumResult spec = eigenpairs(prep.mult, mask, l + 1);
  const double lo = l >= 2 ? spec.eigenvalues[l - 2] : 0.0, hi = spec.eigenvalues[l];
  if (!(a > lo && a < hi && b > lo && b < hi))
    throw ContractViolation("(a, b) = (" + fmt(a) + ", " + fmt(b) + ") lies outside the window (" + fmt(lo) + ", " +
                            fmt(hi) + ")^2");
  const double p = prep.report.two_star;
  const double dx = mask.grid.cell_volume();
  MaskedOperator op{prep.mult, mask, 0.0};
  const Eigen::MatrixXd D = dense_form(prep.mult, mask);

  auto grad = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    Eigen::VectorXd g = op.apply(v);
    for (Eigen::Index i = 0; i < v.size(); ++i)
      g[i] -= b * std::max(v[i], 0.0) - a * std::max(-v[i], 0.0) + std::pow(std::abs(v[i]), p - 2.0) * v[i];
    return g;
  };
  auto value = [&](const Eigen::VectorXd& v) {
    double jump = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double up = std::max(v[i], 0.0), um = std::max(-v[i], 0.0);
      jump += a * um * um + b * up * up;
    }
    return 0.5 * dx * v.dot(op.apply(v)) - 0.5 * dx * jump - q_integral(mask, v, p) / p;
  };

  // Seeds from N_{l-1} plus a transverse eigendirection.
  std::vector<Eigen::VectorXd> phi;
  for (const auto& e : spec.eigenvectors) phi.push_back(mask.restrict(e));
  std::vector<std::pair<std::string, Eigen::VectorXd>> seeds;
  const int L = l - 1;  // index of phi_l
  seeds.emplace_back("phi_l", phi[L]);
  if (l >= 2) {
    seeds.emplace_back("phi_{l-1}+phi_l", phi[L - 1] + phi[L]);
    seeds.emplace_back("phi_{l-1}-phi_l", phi[L - 1] - phi[L]);
  }
  seeds.emplace_back("phi_l+phi_{l+1}", phi[L] + phi[L + 1]);
  seeds.emplace_back("phi_{l+1}", phi[L + 1]);
  seeds.emplace_back("-phi_l", -phi[L]);

  JumpingResult out;
  JumpingReport& rep = out.report;
  rep.spectrum = spec.eigenvalues;
  rep.two_star = p;
  rep.seed_index = -1;
  for (std::size_t si = 0; si < seeds.size(); ++si) {
    Eigen::VectorXd u = seeds[si].second;
    double quad = dx * u.dot(op.apply(u));
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      const double up = std::max(u[i], 0.0), um = std::max(-u[i], 0.0);
      quad -= dx * (a * um * um + b * up * up);
    }
    if (!(quad > 0.0)) {
      rep.attempts.push_back(seeds[si].first + ": fiber has no positive maximum");
      continue;
    }
    u *= std::pow(quad / q_integral(mask, u, p), 1.0 / (p - 2.0));
    Eigen::VectorXd g = grad(u);
    std::vector<double> trace{l2(mask, g)};
    for (int k = 0; k < 200 && trace.back() > tol; ++k) {
      Eigen::MatrixXd Jac = D;
      for (Eigen::Index i = 0; i < u.size(); ++i)
        Jac(i, i) -= (u[i] > 0.0 ? b : a) + (p - 1.0) * std::pow(std::abs(u[i]), p - 2.0);
      const Eigen::VectorXd step = Jac.fullPivLu().solve(-g);
      double t = 1.0;
      bool improved = false;
      while (t > 1e-8) {
        const Eigen::VectorXd un = u + t * step;
        const Eigen::VectorXd gn = grad(un);
        if (l2(mask, gn) < (1.0 - 1e-4 * t) * trace.back()) {
          u = un;
          g = gn;
          improved = true;
          break;
        }
        t *= 0.5;
      }
      trace.push_back(l2(mask, g));
      if (!improved) break;
    }
    const double res = trace.back(), nu = l2(mask, u);
    if (res <= tol && nu > 1e-6) {
      out.result.solution = mask.extend(u);
      out.result.residual = res;
      out.result.energy = value(u);
      out.result.trace = trace;
      out.result.iterations = static_cast<int>(trace.size()) - 1;
      rep.seed_index = static_cast<int>(si);
      rep.attempts.push_back(seeds[si].first + ": converged, residual " + fmt(res));
      break;
    }
    rep.attempts.push_back(seeds[si].first + ": stopped at residual " + fmt(res) + ", norm " + fmt(nu));
  }
  if (rep.seed_index < 0) {
    std::ostringstream os;
    os << "jumping solve found no critical point; attempts:";
    for (const auto& s : rep.attempts) os << " [" << s << "]";
    throw NumericalFailure(os.str());
  }
  rep.level = out.result.energy;
  const double gap = spec.eigenvalues[l - 1] - std::min(a, b);
  rep.level_bound = gap > 0.0 ? (0.5 - 1.0 / p) * mask.volume * std::pow(gap, p / (p - 2.0))
                              : std::numeric_limits<double>::quiet_NaN();
  rep.level_ok = gap > 0.0 && rep.level < rep.level_bound;
  return out;
}

double poincare_constant(double s, double diameter) {
  if (!(s > 0.0) || !(diameter > 0.0)) throw ContractViolation("Poincare constant needs s > 0 and a positive diameter");
  const int s1 = order_above(s);
  const double binom = static_cast<double>(binomial(2 * s1, s1));
  return std::exp2(4.0 * s1 + 1.0) / (binom * binom) * std::pow(diameter, 2.0 * s);
}

double generalized_poincare_constant(double t, double diameter) {
  if (!(t >= 0.0) || !(diameter > 0.0)) throw ContractViolation("constant needs t >= 0 and a positive diameter");
  return std::min(1.0, std::pow(diameter, -2.0 * t)) / (2.0 * std::numbers::pi * (order_above(t) + 1.0));
}

}  // namespace mixlab
