#pragma once

// Truncated Taylor series arithmetic. A jet of order K stores the
// coefficients a_0..a_K of t -> f(x0 + t).

#include <cmath>
#include <vector>

namespace mixlab::jet {

template <class T>
using Series = std::vector<T>;

template <class T>
Series<T> mul(const Series<T>& a, const Series<T>& b) {
  const std::size_t n = a.size();
  Series<T> c(n, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  return c;
}

template <class T>
Series<T> reciprocal(const Series<T>& g) {
  const std::size_t n = g.size();
  Series<T> r(n, T(0));
  r[0] = T(1) / g[0];
  for (std::size_t k = 1; k < n; ++k) {
    T acc(0);
    for (std::size_t j = 1; j <= k; ++j) acc += g[j] * r[k - j];
    r[k] = -acc / g[0];
  }
  return r;
}

// exp of a series: E' = a' E.
template <class T>
Series<T> exp(const Series<T>& a) {
  using std::exp;
  const std::size_t n = a.size();
  Series<T> e(n, T(0));
  e[0] = exp(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    T acc(0);
    for (std::size_t j = 1; j <= k; ++j) acc += T(static_cast<int>(j)) * a[j] * e[k - j];
    e[k] = acc / T(static_cast<int>(k));
  }
  return e;
}

// cos and sin of a series together.
template <class T>
void cos_sin(const Series<T>& a, Series<T>& c, Series<T>& s) {
  using std::cos;
  using std::sin;
  const std::size_t n = a.size();
  c.assign(n, T(0));
  s.assign(n, T(0));
  c[0] = cos(a[0]);
  s[0] = sin(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    T ac(0), as(0);
    for (std::size_t j = 1; j <= k; ++j) {
      const T ja = T(static_cast<int>(j)) * a[j];
      as += ja * c[k - j];
      ac -= ja * s[k - j];
    }
    c[k] = ac / T(static_cast<int>(k));
    s[k] = as / T(static_cast<int>(k));
  }
}

// Jet of the bump exp(1 - 1/(1 - (x/h)^2)) at x0, |x0| < h.
template <class T>
Series<T> bump(T x0, T h, int order) {
  Series<T> g(order + 1, T(0));
  const T q = x0 / h;
  g[0] = (T(1) - q) * (T(1) + q);
  if (order >= 1) g[1] = T(-2) * x0 / (h * h);
  if (order >= 2) g[2] = T(-1) / (h * h);
  Series<T> r = reciprocal(g);
  for (auto& v : r) v = -v;
  r[0] += T(1);
  return exp(r);
}

}  // namespace mixlab::jet
