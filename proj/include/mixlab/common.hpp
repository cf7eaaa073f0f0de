#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixlab {

// Points and displacements in R^N, N <= 2. Unused trailing components stay 0.
using Point = std::array<double, 2>;

inline Point add(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Point scale(double t, const Point& a) { return {t * a[0], t * a[1]}; }
inline Point axpy(const Point& x, double t, const Point& d) {
  return {x[0] + t * d[0], x[1] + t * d[1]};
}
inline double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(const Point& a) { return std::hypot(a[0], a[1]); }

// Caller broke a documented precondition.
struct ContractViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of the quantity.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A numerical procedure could not certify its own output.
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solver declined to run on data violating its positivity assumptions.
struct Refusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact binomial coefficient; throws on 64-bit overflow.
std::uint64_t binomial(int n, int k);

// Smallest integer strictly above s (s_1 in the superposition operator).
inline int order_above(double s) { return static_cast<int>(std::floor(s)) + 1; }

}  // namespace mixlab
