#pragma once

#include "mixlab/common.hpp"
#include "mixlab/order_measure.hpp"

#include <variant>
#include <vector>

namespace mixlab {

class SphericalMeasure;

struct UniformSurface {
  int dimension;
};

struct SphereAtom {
  Point direction;
  double weight;
};

struct AtomicMeasure {
  int dimension;
  std::vector<SphereAtom> atoms;
};

struct MixtureComponent;

struct MixtureMeasure {
  int dimension;
  std::vector<MixtureComponent> parts;
};

// Probability measure on S^{N-1}, N in {1,2}. Validated on construction.
class SphericalMeasure {
 public:
  using Variant = std::variant<UniformSurface, AtomicMeasure, MixtureMeasure>;

  static SphericalMeasure uniform(int N);
  static SphericalMeasure atomic(int N, std::vector<SphereAtom> atoms);
  // N = 2 atom at angle phi (radians) with weight w.
  static SphereAtom at_angle(double phi, double w);
  static SphericalMeasure mixture(std::vector<MixtureComponent> parts);

  int dimension() const;
  const Variant& value() const { return v_; }
  bool is_uniform() const { return std::holds_alternative<UniformSurface>(v_); }

 private:
  explicit SphericalMeasure(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

struct MixtureComponent {
  double coefficient;
  SphericalMeasure measure;
};

// int |e.theta|^alpha sigma(dtheta).
double angular_moment(const SphericalMeasure& sigma, const Point& e, double alpha);

struct Maximizer {
  Point e;
  double angle;  // in [0, pi) for N = 2; 0 for N = 1
  double value;
};

// Global maximizer of e -> M_{s,sigma}(e) = angular_moment(sigma, e, 2s).
Maximizer maximizing_direction(const SphericalMeasure& sigma, double s);

// Minimum of e -> angular_moment(sigma, e, alpha) over the sphere.
double minimal_moment(const SphericalMeasure& sigma, double alpha);

// Piecewise-constant s -> sigma_s. Piece i covers [breakpoints[i],
// breakpoints[i+1]); the tail covers every order outside the pieces. s = 0
// always maps to the uniform measure.
class MeasureFamily {
 public:
  MeasureFamily(std::vector<double> breakpoints, std::vector<SphericalMeasure> pieces,
                SphericalMeasure tail);
  static MeasureFamily constant(SphericalMeasure sigma);

  SphericalMeasure at(double s) const;
  int dimension() const { return tail_.dimension(); }
  // Breakpoints strictly inside (a,b), ascending.
  std::vector<double> breaks_between(double a, double b) const;

  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<SphericalMeasure>& pieces() const { return pieces_; }
  const SphericalMeasure& tail() const { return tail_; }

 private:
  std::vector<double> breaks_;
  std::vector<SphericalMeasure> pieces_;
  SphericalMeasure tail_;
};

struct EllipticityReport {
  double lambda = 0;
  double lambda0 = 0;
  double lambda_tilde = 0;
  bool eass = false;
  struct Entry {
    double s;
    Point e;
    double value;
  };
  std::vector<Entry> maximizers;
};

EllipticityReport ellipticity_report(const MeasureFamily& family, const std::vector<double>& s_grid,
                                     double s_star, double t, const OrderPart& mu_plus);

// Average of sigma_s against mu+ restricted to [s_star, t].
SphericalMeasure integrated_measure(const MeasureFamily& family, const OrderPart& mu_plus,
                                    double s_star, double t);

}  // namespace mixlab
