#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mixlab {

struct OrderAtom {
  double s;
  double weight;
};

// Constant density `value` on [a,b].
struct DensityPiece {
  double a;
  double b;
  double value;
};

// One nonnegative part of the signed order measure.
struct OrderPart {
  std::vector<OrderAtom> atoms;
  std::vector<DensityPiece> density;

  bool empty() const { return atoms.empty() && density.empty(); }
  double total() const;
  // Largest order carrying mass; 0 for the empty part.
  double support_sup() const;
};

// mu = mu_plus - mu_minus on [0, inf).
struct OrderMeasure {
  OrderPart plus;
  OrderPart minus;

  double total_variation() const { return plus.total() + minus.total(); }

  static OrderMeasure delta(double s, double w = 1.0);
  OrderMeasure& add_plus(double s, double w);
  OrderMeasure& add_minus(double s, double w);
};

// Throws ContractViolation on negative orders, nonpositive weights, empty or
// reversed density intervals, or non-finite entries.
void check_order_measure(const OrderMeasure& mu);

// Mass of [a,b), or [a,b] with close_right. b may be +inf.
double mass(const OrderPart& part, double a, double b, bool close_right = false);

struct AssumptionReport {
  double s_star = 0;
  double gamma = 0;
  double s_sharp = 0;
  double two_star = 0;
  bool positive_mass_above = false;  // mu+([s*,inf)) > 0
  bool negative_below = false;       // mu-([s*,inf)) = 0
  bool gamma_small = false;          // gamma < 1
  bool critical_from_fallback = false;
  std::vector<std::string> warnings;

  bool valid() const { return positive_mass_above && negative_below && gamma_small; }
};

// Structural checks on mu. s_sharp defaults to the supremum of the mu+
// support; pass s_sharp_override to pick a smaller admissible order.
AssumptionReport validate(const OrderMeasure& mu, double s_star, int N, double p_fallback,
                          std::optional<double> s_sharp_override = std::nullopt);

// ---- divergent series built from a bump and its dilate ----

enum class PathologicalKind { strano, special_phi, special_psi };

PathologicalKind parse_pathological_kind(const std::string& name);
std::string to_string(PathologicalKind kind);

// Reference profile exp(1 - 1/(1 - (x/h)^2)) supported on (-h, h).
struct BumpProfile {
  double half_width = 0.5;
};

// c_k = ||D^k phi||_{L^2}, k = 0..K, via Taylor-mode differentiation in
// extended-precision arithmetic and composite Gauss-Legendre quadrature.
std::vector<double> derivative_norms(const BumpProfile& phi, int K);

struct PartialSum {
  int k;
  double term;
  double sum;
};

// Partial sums for k = 1..K (K <= 40). Throws NumericalFailure ("derivative
// norm untrusted") when ||D^K phi|| moves by more than 1e-6 under quadrature
// refinement.
std::vector<PartialSum> pathological_partial_sums(PathologicalKind kind, int K,
                                                  const BumpProfile& phi = {});

// ||D^k phi|| by FFT differentiation on a periodic grid of `nodes` points over
// [-2h, 2h]. Only trustworthy for small k; used as a cross-check.
std::vector<double> spectral_derivative_norms(const BumpProfile& phi, int K, int nodes);

}  // namespace mixlab
