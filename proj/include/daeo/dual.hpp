/**
 * @file dual.hpp
 * @brief Forward-mode derivative carriers over a generic base scalar.
 *
 * Dual1<S> propagates a value and a gradient, Dual2<S> additionally a
 * symmetric Hessian (packed lower triangle). S is either double or Interval,
 * so the same user function yields real derivatives and derivative
 * enclosures.
 *
 * A carrier with an empty gradient is a constant. Constants never allocate,
 * and mixing a constant with a seeded carrier broadcasts the zero
 * derivatives.
 */
#ifndef DAEO_DUAL_HPP
#define DAEO_DUAL_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "daeo/interval.hpp"

namespace daeo {

namespace detail {
inline std::size_t packed_size(std::size_t n) { return n * (n + 1) / 2; }
inline std::size_t packed_index(std::size_t i, std::size_t j) {
  return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i;
}
} // namespace detail

template <typename S> struct Dual1 {
  S value{};
  std::vector<S> grad;

  Dual1() = default;
  explicit Dual1(S v) : value(std::move(v)) {}
  Dual1(S v, std::vector<S> g) : value(std::move(v)), grad(std::move(g)) {}

  /// Independent variable number @p i out of @p n seeded directions.
  static Dual1 variable(S v, std::size_t n, std::size_t i) {
    Dual1 d(std::move(v));
    d.grad.assign(n, S(0.0));
    d.grad[i] = S(1.0);
    return d;
  }

  bool is_constant() const noexcept { return grad.empty(); }
  S derivative(std::size_t i) const { return grad.empty() ? S(0.0) : grad[i]; }
};

template <typename S> struct Dual2 {
  S value{};
  std::vector<S> grad;
  std::vector<S> hess; // packed lower triangle, empty iff grad is empty

  Dual2() = default;
  explicit Dual2(S v) : value(std::move(v)) {}

  static Dual2 variable(S v, std::size_t n, std::size_t i) {
    Dual2 d(std::move(v));
    d.grad.assign(n, S(0.0));
    d.grad[i] = S(1.0);
    d.hess.assign(detail::packed_size(n), S(0.0));
    return d;
  }

  bool is_constant() const noexcept { return grad.empty(); }
  S derivative(std::size_t i) const { return grad.empty() ? S(0.0) : grad[i]; }
  S second_derivative(std::size_t i, std::size_t j) const {
    return hess.empty() ? S(0.0) : hess[detail::packed_index(i, j)];
  }
};

// ---------------------------------------------------------------------------
// Dual1 arithmetic

template <typename S> Dual1<S> operator-(const Dual1<S> &a) {
  Dual1<S> r(-a.value);
  r.grad.reserve(a.grad.size());
  for (const auto &g : a.grad) {
    r.grad.push_back(-g);
  }
  return r;
}

template <typename S>
Dual1<S> operator+(const Dual1<S> &a, const Dual1<S> &b) {
  if (a.is_constant()) {
    return Dual1<S>(a.value + b.value, b.grad);
  }
  if (b.is_constant()) {
    return Dual1<S>(a.value + b.value, a.grad);
  }
  Dual1<S> r(a.value + b.value);
  r.grad.resize(a.grad.size());
  for (std::size_t i = 0; i < r.grad.size(); ++i) {
    r.grad[i] = a.grad[i] + b.grad[i];
  }
  return r;
}

template <typename S>
Dual1<S> operator-(const Dual1<S> &a, const Dual1<S> &b) {
  return a + (-b);
}

template <typename S>
Dual1<S> operator*(const Dual1<S> &a, const Dual1<S> &b) {
  Dual1<S> r(a.value * b.value);
  if (a.is_constant() && b.is_constant()) {
    return r;
  }
  std::size_t n = a.is_constant() ? b.grad.size() : a.grad.size();
  r.grad.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.is_constant()) {
      r.grad[i] = a.value * b.grad[i];
    } else if (b.is_constant()) {
      r.grad[i] = b.value * a.grad[i];
    } else {
      r.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
    }
  }
  return r;
}

// f(u) given f, f'
template <typename S> Dual1<S> chain(const Dual1<S> &u, S f, const S &df) {
  Dual1<S> r(std::move(f));
  r.grad.reserve(u.grad.size());
  for (const auto &g : u.grad) {
    r.grad.push_back(df * g);
  }
  return r;
}

template <typename S> Dual1<S> reciprocal(const Dual1<S> &u) {
  S inv = S(1.0) / u.value;
  return chain(u, inv, -sqr(inv));
}

template <typename S>
Dual1<S> operator/(const Dual1<S> &a, const Dual1<S> &b) {
  return a * reciprocal(b);
}

template <typename S> Dual1<S> operator+(const Dual1<S> &a, double c) {
  return Dual1<S>(a.value + c, a.grad);
}
template <typename S> Dual1<S> operator+(double c, const Dual1<S> &a) {
  return a + c;
}
template <typename S> Dual1<S> operator-(const Dual1<S> &a, double c) {
  return Dual1<S>(a.value - c, a.grad);
}
template <typename S> Dual1<S> operator-(double c, const Dual1<S> &a) {
  return (-a) + c;
}
template <typename S> Dual1<S> operator*(const Dual1<S> &a, double c) {
  return a * Dual1<S>(S(c));
}
template <typename S> Dual1<S> operator*(double c, const Dual1<S> &a) {
  return a * c;
}
template <typename S> Dual1<S> operator/(const Dual1<S> &a, double c) {
  return a * Dual1<S>(S(1.0) / S(c));
}
template <typename S> Dual1<S> operator/(double c, const Dual1<S> &a) {
  return reciprocal(a) * c;
}

template <typename S> Dual1<S> sqr(const Dual1<S> &u) {
  return chain(u, sqr(u.value), 2.0 * u.value);
}

template <typename S> Dual1<S> pow_int(const Dual1<S> &u, int n) {
  if (n == 0) {
    return Dual1<S>(S(1.0));
  }
  if (n == 1) {
    return u;
  }
  return chain(u, pow_int(u.value, n),
               static_cast<double>(n) * pow_int(u.value, n - 1));
}

template <typename S> Dual1<S> sqrt(const Dual1<S> &u) {
  S f = sqrt(u.value);
  S df = 0.5 / f;
  return chain(u, std::move(f), df);
}

template <typename S> Dual1<S> exp(const Dual1<S> &u) {
  S f = exp(u.value);
  return chain(u, f, f);
}

template <typename S> Dual1<S> log(const Dual1<S> &u) {
  return chain(u, log(u.value), S(1.0) / u.value);
}

template <typename S> Dual1<S> sin(const Dual1<S> &u) {
  return chain(u, sin(u.value), cos(u.value));
}

template <typename S> Dual1<S> cos(const Dual1<S> &u) {
  return chain(u, cos(u.value), -sin(u.value));
}

// ---------------------------------------------------------------------------
// Dual2 arithmetic

template <typename S> Dual2<S> operator-(const Dual2<S> &a) {
  Dual2<S> r(-a.value);
  r.grad.reserve(a.grad.size());
  r.hess.reserve(a.hess.size());
  for (const auto &g : a.grad) {
    r.grad.push_back(-g);
  }
  for (const auto &h : a.hess) {
    r.hess.push_back(-h);
  }
  return r;
}

template <typename S>
Dual2<S> operator+(const Dual2<S> &a, const Dual2<S> &b) {
  if (a.is_constant()) {
    Dual2<S> r = b;
    r.value = a.value + b.value;
    return r;
  }
  if (b.is_constant()) {
    Dual2<S> r = a;
    r.value = a.value + b.value;
    return r;
  }
  Dual2<S> r(a.value + b.value);
  r.grad.resize(a.grad.size());
  r.hess.resize(a.hess.size());
  for (std::size_t i = 0; i < r.grad.size(); ++i) {
    r.grad[i] = a.grad[i] + b.grad[i];
  }
  for (std::size_t k = 0; k < r.hess.size(); ++k) {
    r.hess[k] = a.hess[k] + b.hess[k];
  }
  return r;
}

template <typename S>
Dual2<S> operator-(const Dual2<S> &a, const Dual2<S> &b) {
  return a + (-b);
}

namespace detail {
template <typename S> Dual2<S> scaled(const Dual2<S> &a, const S &c, S value) {
  Dual2<S> r(std::move(value));
  r.grad.reserve(a.grad.size());
  r.hess.reserve(a.hess.size());
  for (const auto &g : a.grad) {
    r.grad.push_back(c * g);
  }
  for (const auto &h : a.hess) {
    r.hess.push_back(c * h);
  }
  return r;
}
} // namespace detail

template <typename S>
Dual2<S> operator*(const Dual2<S> &a, const Dual2<S> &b) {
  if (a.is_constant()) {
    return detail::scaled(b, a.value, a.value * b.value);
  }
  if (b.is_constant()) {
    return detail::scaled(a, b.value, a.value * b.value);
  }
  const std::size_t n = a.grad.size();
  Dual2<S> r(a.value * b.value);
  r.grad.resize(n);
  r.hess.resize(a.hess.size());
  for (std::size_t i = 0; i < n; ++i) {
    r.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
    for (std::size_t j = 0; j <= i; ++j) {
      std::size_t k = detail::packed_index(i, j);
      r.hess[k] = a.value * b.hess[k] + b.value * a.hess[k] +
                  a.grad[i] * b.grad[j] + a.grad[j] * b.grad[i];
    }
  }
  return r;
}

/**
 * @brief f(u) given f(u.value), f'(u.value) and f''(u.value).
 *
 * Hessian: f' * H_u + f'' * g_u g_u^T. Diagonal outer-product terms use sqr
 * so that interval enclosures stay nonnegative there.
 */
template <typename S>
Dual2<S> chain(const Dual2<S> &u, S f, const S &df, const S &d2f) {
  Dual2<S> r(std::move(f));
  if (u.is_constant()) {
    return r;
  }
  const std::size_t n = u.grad.size();
  r.grad.resize(n);
  r.hess.resize(u.hess.size());
  for (std::size_t i = 0; i < n; ++i) {
    r.grad[i] = df * u.grad[i];
    for (std::size_t j = 0; j <= i; ++j) {
      std::size_t k = detail::packed_index(i, j);
      S outer = (i == j) ? sqr(u.grad[i]) : u.grad[i] * u.grad[j];
      r.hess[k] = df * u.hess[k] + d2f * outer;
    }
  }
  return r;
}

template <typename S> Dual2<S> reciprocal(const Dual2<S> &u) {
  S inv = S(1.0) / u.value;
  S inv2 = sqr(inv);
  return chain(u, inv, -inv2, 2.0 * pow_int(inv, 3));
}

template <typename S>
Dual2<S> operator/(const Dual2<S> &a, const Dual2<S> &b) {
  if (b.is_constant()) {
    S inv = S(1.0) / b.value;
    return detail::scaled(a, inv, a.value / b.value);
  }
  return a * reciprocal(b);
}

template <typename S> Dual2<S> operator+(const Dual2<S> &a, double c) {
  Dual2<S> r = a;
  r.value = a.value + c;
  return r;
}
template <typename S> Dual2<S> operator+(double c, const Dual2<S> &a) {
  return a + c;
}
template <typename S> Dual2<S> operator-(const Dual2<S> &a, double c) {
  Dual2<S> r = a;
  r.value = a.value - c;
  return r;
}
template <typename S> Dual2<S> operator-(double c, const Dual2<S> &a) {
  return (-a) + c;
}
template <typename S> Dual2<S> operator*(const Dual2<S> &a, double c) {
  return detail::scaled(a, S(c), a.value * c);
}
template <typename S> Dual2<S> operator*(double c, const Dual2<S> &a) {
  return a * c;
}
template <typename S> Dual2<S> operator/(const Dual2<S> &a, double c) {
  return detail::scaled(a, S(1.0) / S(c), a.value / c);
}
template <typename S> Dual2<S> operator/(double c, const Dual2<S> &a) {
  return reciprocal(a) * c;
}

template <typename S> Dual2<S> sqr(const Dual2<S> &u) {
  return chain(u, sqr(u.value), 2.0 * u.value, S(2.0));
}

template <typename S> Dual2<S> pow_int(const Dual2<S> &u, int n) {
  if (n == 0) {
    return Dual2<S>(S(1.0));
  }
  if (n == 1) {
    return u;
  }
  if (n == 2) {
    return sqr(u);
  }
  const double dn = n;
  return chain(u, pow_int(u.value, n), dn * pow_int(u.value, n - 1),
               (dn * (dn - 1.0)) * pow_int(u.value, n - 2));
}

template <typename S> Dual2<S> sqrt(const Dual2<S> &u) {
  S f = sqrt(u.value);
  S df = 0.5 / f;
  S d2f = -0.25 / (u.value * f);
  return chain(u, std::move(f), df, d2f);
}

template <typename S> Dual2<S> exp(const Dual2<S> &u) {
  S f = exp(u.value);
  return chain(u, f, f, f);
}

template <typename S> Dual2<S> log(const Dual2<S> &u) {
  S df = S(1.0) / u.value;
  return chain(u, log(u.value), df, -sqr(df));
}

template <typename S> Dual2<S> sin(const Dual2<S> &u) {
  S s = sin(u.value);
  return chain(u, s, cos(u.value), -s);
}

template <typename S> Dual2<S> cos(const Dual2<S> &u) {
  S c = cos(u.value);
  return chain(u, c, -sin(u.value), -c);
}

// Value slot of any supported scalar.
inline double value_of(double v) { return v; }
inline const Interval &value_of(const Interval &v) { return v; }
template <typename S> const S &value_of(const Dual1<S> &v) { return v.value; }
template <typename S> const S &value_of(const Dual2<S> &v) { return v.value; }

} // namespace daeo

#endif // DAEO_DUAL_HPP
