#include "mixlab/spherical_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mixlab {

namespace {

constexpr double kMassTol = 1e-12;
constexpr int kAngleGrid = 720;
constexpr int kGoldenIters = 40;

void check_dimension(int N) {
  if (N != 1 && N != 2) throw ContractViolation("sphere dimension must be N = 1 or 2");
}

void check_unit(const Point& e, int N) {
  if (N == 1 && e[1] != 0.0) throw ContractViolation("N = 1 direction must be (+-1, 0)");
  if (std::abs(norm(e) - 1.0) > 1e-12) throw ContractViolation("direction is not a unit vector");
}

// Mean of |cos|^alpha over the circle.
double uniform_circle_moment(double alpha) {
  return std::exp(std::lgamma(0.5 * (alpha + 1.0)) - std::lgamma(0.5 * alpha + 1.0)) /
         std::sqrt(std::numbers::pi);
}

Point direction(double phi) { return {std::cos(phi), std::sin(phi)}; }

// Golden-section search for a maximum of f on [a,b].
template <class F>
double golden_max(F&& f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < kGoldenIters; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

double wrap_pi(double phi) {
  phi = std::fmod(phi, std::numbers::pi);
  if (phi < 0) phi += std::numbers::pi;
  if (phi >= std::numbers::pi) phi = 0.0;
  return phi;
}

// Atom directions as angles in [0, pi); used as extra maximizer candidates.
void collect_atom_angles(const SphericalMeasure& sigma, std::vector<double>& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          for (const auto& a : v.atoms) out.push_back(wrap_pi(std::atan2(a.direction[1], a.direction[0])));
        } else if constexpr (std::is_same_v<T, MixtureMeasure>) {
          for (const auto& p : v.parts) collect_atom_angles(p.measure, out);
        }
      },
      sigma.value());
}

// Extremum of phi -> g(phi) over [0, pi), g pi-periodic. sign = +1 maximizes,
// -1 minimizes. Returns (angle, value); ties go to the smallest angle.
template <class G>
std::pair<double, double> circle_extremum(G&& g, double sign, const std::vector<double>& extra) {
  const double pi = std::numbers::pi, h = pi / kAngleGrid;
  std::vector<double> vals(kAngleGrid);
  double best = -INFINITY;
  for (int i = 0; i < kAngleGrid; ++i) {
    vals[i] = sign * g(i * h);
    best = std::max(best, vals[i]);
  }
  std::vector<double> cand;
  const double slack = 1e-9 * std::max(1.0, std::abs(best));
  for (int i = 0; i < kAngleGrid; ++i) {
    const double left = vals[(i + kAngleGrid - 1) % kAngleGrid];
    const double right = vals[(i + 1) % kAngleGrid];
    if (vals[i] >= left && vals[i] >= right && vals[i] >= best - slack) {
      const double phi = golden_max([&](double p) { return sign * g(p); }, (i - 1) * h, (i + 1) * h);
      cand.push_back(wrap_pi(phi));
      cand.push_back(i * h);
    }
    if (cand.size() > 64) break;
  }
  for (double a : extra) cand.push_back(a);
  double ba = 0.0, bv = -INFINITY;
  for (double a : cand) {
    const double v = sign * g(a);
    const double tie = 1e-13 * std::max(1.0, std::abs(v));
    if (v > bv + tie) {
      ba = a;
      bv = v;
    } else if (std::abs(v - bv) <= tie && a < ba) {
      ba = a;
      bv = std::max(v, bv);
    }
  }
  return {ba, sign * bv};
}

}  // namespace

SphericalMeasure SphericalMeasure::uniform(int N) {
  check_dimension(N);
  return SphericalMeasure(UniformSurface{N});
}

SphereAtom SphericalMeasure::at_angle(double phi, double w) { return {direction(phi), w}; }

SphericalMeasure SphericalMeasure::atomic(int N, std::vector<SphereAtom> atoms) {
  check_dimension(N);
  if (atoms.empty()) throw ContractViolation("atomic measure needs at least one atom");
  double total = 0.0;
  for (const auto& a : atoms) {
    check_unit(a.direction, N);
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) throw ContractViolation("atom weight must be nonnegative");
    total += a.weight;
  }
  if (std::abs(total - 1.0) > kMassTol) throw ContractViolation("spherical measure must have total mass 1");
  return SphericalMeasure(AtomicMeasure{N, std::move(atoms)});
}

SphericalMeasure SphericalMeasure::mixture(std::vector<MixtureComponent> parts) {
  if (parts.empty()) throw ContractViolation("mixture needs at least one component");
  const int N = parts.front().measure.dimension();
  double total = 0.0;
  for (const auto& p : parts) {
    if (p.measure.dimension() != N) throw ContractViolation("mixture components differ in dimension");
    if (!(p.coefficient >= 0.0) || !std::isfinite(p.coefficient))
      throw ContractViolation("mixture coefficient must be nonnegative");
    total += p.coefficient;
  }
  if (std::abs(total - 1.0) > kMassTol) throw ContractViolation("mixture coefficients must sum to 1");
  return SphericalMeasure(MixtureMeasure{N, std::move(parts)});
}

int SphericalMeasure::dimension() const {
  return std::visit([](const auto& v) { return v.dimension; }, v_);
}

double angular_moment(const SphericalMeasure& sigma, const Point& e, double alpha) {
  const int N = sigma.dimension();
  check_unit(e, N);
  if (!(alpha >= 0.0)) throw ContractViolation("moment exponent must be nonnegative");
  double r = std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, UniformSurface>) {
          // Two-point sphere: |e.(+-1)| = 1.
          return N == 1 ? 1.0 : uniform_circle_moment(alpha);
        } else if constexpr (std::is_same_v<T, AtomicMeasure>) {
          double acc = 0.0;
          for (const auto& a : v.atoms) acc += a.weight * std::pow(std::abs(dot(e, a.direction)), alpha);
          return acc;
        } else {
          double acc = 0.0;
          for (const auto& p : v.parts) acc += p.coefficient * angular_moment(p.measure, e, alpha);
          return acc;
        }
      },
      sigma.value());
  return std::clamp(r, 0.0, 1.0);
}

Maximizer maximizing_direction(const SphericalMeasure& sigma, double s) {
  if (!(s >= 0.0)) throw ContractViolation("order must be nonnegative");
  const double alpha = 2.0 * s;
  if (sigma.dimension() == 1 || sigma.is_uniform())
    return {{1.0, 0.0}, 0.0, angular_moment(sigma, {1.0, 0.0}, alpha)};
  std::vector<double> extra;
  collect_atom_angles(sigma, extra);
  auto [phi, val] = circle_extremum([&](double p) { return angular_moment(sigma, direction(p), alpha); },
                                    +1.0, extra);
  return {direction(phi), phi, val};
}

double minimal_moment(const SphericalMeasure& sigma, double alpha) {
  if (sigma.dimension() == 1 || sigma.is_uniform()) return angular_moment(sigma, {1.0, 0.0}, alpha);
  // Minima of sums of |cos(phi - theta)|^alpha sit at the cusps orthogonal
  // to the atoms, so add those as candidates.
  std::vector<double> extra;
  collect_atom_angles(sigma, extra);
  for (double& a : extra) a = wrap_pi(a + 0.5 * std::numbers::pi);
  return circle_extremum([&](double p) { return angular_moment(sigma, direction(p), alpha); }, -1.0, extra)
      .second;
}

MeasureFamily::MeasureFamily(std::vector<double> breakpoints, std::vector<SphericalMeasure> pieces,
                             SphericalMeasure tail)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)), tail_(std::move(tail)) {
  if (!breaks_.empty() && pieces_.size() + 1 != breaks_.size())
    throw ContractViolation("family needs one piece per breakpoint interval");
  if (breaks_.empty() && !pieces_.empty()) throw ContractViolation("family pieces without breakpoints");
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    if (!(breaks_[i] >= 0.0)) throw ContractViolation("family breakpoints must be nonnegative");
    if (i > 0 && !(breaks_[i] > breaks_[i - 1])) throw ContractViolation("family breakpoints must increase");
  }
  for (const auto& p : pieces_)
    if (p.dimension() != tail_.dimension()) throw ContractViolation("family pieces differ in dimension");
}

MeasureFamily MeasureFamily::constant(SphericalMeasure sigma) { return MeasureFamily({}, {}, std::move(sigma)); }

SphericalMeasure MeasureFamily::at(double s) const {
  if (s == 0.0) return SphericalMeasure::uniform(dimension());
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (s >= breaks_[i] && s < breaks_[i + 1]) return pieces_[i];
  return tail_;
}

std::vector<double> MeasureFamily::breaks_between(double a, double b) const {
  std::vector<double> out;
  for (double x : breaks_)
    if (x > a && x < b) out.push_back(x);
  return out;
}

SphericalMeasure integrated_measure(const MeasureFamily& family, const OrderPart& mu_plus, double s_star,
                                    double t) {
  std::vector<MixtureComponent> parts;
  for (const auto& a : mu_plus.atoms)
    if (a.s >= s_star && a.s <= t) parts.push_back({a.weight, family.at(a.s)});
  for (const auto& d : mu_plus.density) {
    const double lo = std::max(d.a, s_star), hi = std::min(d.b, t);
    if (!(hi > lo)) continue;
    std::vector<double> cuts{lo};
    for (double x : family.breaks_between(lo, hi)) cuts.push_back(x);
    cuts.push_back(hi);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      // sigma is constant on [cuts[i], cuts[i+1]) so the piece integrates exactly.
      const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
      parts.push_back({d.value * (cuts[i + 1] - cuts[i]), family.at(mid)});
    }
  }
  double total = 0.0;
  for (const auto& p : parts) total += p.coefficient;
  if (!(total > 0.0)) throw DomainError("integrated measure undefined: mu+ has no mass on [s*, t]");
  for (auto& p : parts) p.coefficient /= total;
  // Absorb rounding so the coefficients sum to 1 to the last bit we can manage.
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) acc += parts[i].coefficient;
  parts.back().coefficient = 1.0 - acc;
  if (parts.size() == 1) return parts.front().measure;
  return SphericalMeasure::mixture(std::move(parts));
}

EllipticityReport ellipticity_report(const MeasureFamily& family, const std::vector<double>& s_grid,
                                     double s_star, double t, const OrderPart& mu_plus) {
  if (s_grid.empty()) throw ContractViolation("ellipticity report needs a nonempty s grid");
  EllipticityReport rep;
  rep.lambda = INFINITY;
  rep.lambda0 = INFINITY;
  for (double s : s_grid) {
    const SphericalMeasure sig = family.at(s);
    const Maximizer mx = maximizing_direction(sig, s);
    rep.maximizers.push_back({s, mx.e, mx.value});
    rep.lambda = std::min(rep.lambda, mx.value);
    rep.lambda0 = std::min(rep.lambda0, minimal_moment(sig, 2.0 * s));
  }
  if (mass(mu_plus, s_star, t, true) <= 0.0)
    throw DomainError("integrated measure undefined: mu+ has no mass on [s*, t]");
  rep.lambda_tilde = minimal_moment(integrated_measure(family, mu_plus, s_star, t), 2.0 * s_star);
  rep.eass = rep.lambda_tilde > 1e-10;
  return rep;
}

}  // namespace mixlab
