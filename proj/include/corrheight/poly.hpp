#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <utility>
#include <vector>

#include "corrheight/errors.hpp"
#include "corrheight/integer.hpp"

namespace corrh::arith {

template <class T>
class DensePoly;

inline bool coeff_is_zero(const Integer& c) { return sgn(c) == 0; }
inline bool coeff_is_zero(const Rational& c) { return sgn(c) == 0; }
template <class T>
bool coeff_is_zero(const DensePoly<T>& c) { return c.is_zero(); }

/// Dense univariate polynomial, constant term first. The coefficient vector never
/// carries trailing zeros, so degree() is exact and the zero polynomial has degree -1.
template <class T>
class DensePoly {
 public:
  using coeff_type = T;

  DensePoly() = default;
  DensePoly(std::initializer_list<T> c) : c_(c) { trim(); }
  explicit DensePoly(std::vector<T> c) : c_(std::move(c)) { trim(); }

  static DensePoly constant(const T& v) { return DensePoly(std::vector<T>{v}); }
  static DensePoly monomial(const T& v, std::size_t k) {
    std::vector<T> c(k + 1);
    c[k] = v;
    return DensePoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T{}; }
  const T& operator[](std::size_t i) const { return c_[i]; }
  const T& lead() const { return c_.back(); }

  void set_coeff(std::size_t i, T v) {
    if (i >= c_.size()) {
      if (coeff_is_zero(v)) return;
      c_.resize(i + 1);
    }
    c_[i] = std::move(v);
    trim();
  }

  DensePoly& operator+=(const DensePoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  DensePoly& operator-=(const DensePoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  DensePoly operator-() const {
    DensePoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend DensePoly operator+(DensePoly a, const DensePoly& b) { return a += b; }
  friend DensePoly operator-(DensePoly a, const DensePoly& b) { return a -= b; }
  friend DensePoly operator*(const DensePoly& a, const DensePoly& b) { return multiply(a, b); }
  DensePoly& operator*=(const DensePoly& o) { return *this = multiply(*this, o); }
  friend bool operator==(const DensePoly& a, const DensePoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const DensePoly& a, const DensePoly& b) { return !(a == b); }

  DensePoly scaled(const T& s) const {
    if (coeff_is_zero(s)) return {};
    DensePoly r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
  }
  /// Multiply by x^k.
  DensePoly shifted(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<T> c(k);
    c.insert(c.end(), c_.begin(), c_.end());
    return DensePoly(std::move(c));
  }

  /// Horner evaluation in any ring U that accepts T.
  template <class U>
  U eval(const U& x) const {
    U acc{};
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc *= x;
      acc += U(c_[i]);
    }
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

using IntPoly = DensePoly<Integer>;
using UniPoly = DensePoly<Rational>;
/// Polynomial in x whose coefficients are integer polynomials in a second variable.
using ZYPoly = DensePoly<IntPoly>;

/// Kronecker-substitution product for integer polynomials (declared here, defined in upoly.cpp).
IntPoly multiply_int(const IntPoly& a, const IntPoly& b);
/// Exact quotient through Kronecker images, for large operands.
IntPoly exact_div_int(const IntPoly& a, const IntPoly& b);

template <class T>
DensePoly<T> multiply(const DensePoly<T>& a, const DensePoly<T>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if constexpr (std::is_same_v<T, Integer>) {
    return multiply_int(a, b);
  } else {
    std::vector<T> c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (coeff_is_zero(a[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return DensePoly<T>(std::move(c));
  }
}

inline Integer exact_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Exact quotient a / b over an integral domain; b must divide a.
template <class T>
DensePoly<T> exact_div(const DensePoly<T>& a, const DensePoly<T>& b) {
  if (b.is_zero()) throw ValidationError("division by the zero polynomial");
  if (a.is_zero()) return {};
  if (b.degree() == 0) {
    std::vector<T> q(a.coeffs().begin(), a.coeffs().end());
    for (auto& v : q) v = exact_div(v, b[0]);
    return DensePoly<T>(std::move(q));
  }
  if (a.degree() < b.degree()) throw ValidationError("inexact polynomial division");
  if constexpr (std::is_same_v<T, Integer>) {
    if (b.size() >= 24 && a.size() >= 48) return exact_div_int(a, b);
  }
  std::vector<T> r(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  std::vector<T> q(a.degree() - db + 1);
  for (int k = a.degree() - db; k >= 0; --k) {
    T t = exact_div(r[k + db], b.lead());
    if (!coeff_is_zero(t)) {
      for (int j = 0; j <= db; ++j) r[k + j] -= t * b[j];
    }
    q[k] = std::move(t);
  }
  for (int j = 0; j < db; ++j)
    if (!coeff_is_zero(r[j])) throw ValidationError("inexact polynomial division");
  return DensePoly<T>(std::move(q));
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
template <class T>
DensePoly<T> pseudo_remainder(const DensePoly<T>& a, const DensePoly<T>& b) {
  if (b.is_zero()) throw ValidationError("pseudo-remainder by zero");
  if (a.degree() < b.degree()) return a;
  const int db = b.degree();
  const int da = a.degree();
  const T& lb = b.lead();
  if (db == 0) {
    // lc(b)^(da+1) * a mod (constant) = 0
    return {};
  }
  // Horner form: T holds lb^e * (top part of a) mod b, so each new coefficient of a costs
  // O(deg b) ring operations instead of O(deg a).
  std::vector<T> t(a.coeffs().begin() + (da - db + 1), a.coeffs().end());
  T lbpow = lb;  // lb^(e+1)
  for (int k = da - db; k >= 0; --k) {
    // x * T has degree db; cancel its top coefficient against b
    T top = t[db - 1];
    for (int j = db - 1; j > 0; --j) {
      T v = lb * t[j - 1];
      if (!coeff_is_zero(top)) v -= top * b[j];
      t[j] = std::move(v);
    }
    T v0 = coeff_is_zero(top) ? T{} : T(-(top * b[0]));
    if (!coeff_is_zero(a[k])) v0 += lbpow * a[k];
    t[0] = std::move(v0);
    if (k > 0) lbpow *= lb;
  }
  return DensePoly<T>(std::move(t));
}

template <class T>
DensePoly<T> derivative(const DensePoly<T>& p) {
  if (p.degree() <= 0) return {};
  std::vector<T> c(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) {
    c[i - 1] = p[i];
    c[i - 1] *= static_cast<long>(i);
  }
  return DensePoly<T>(std::move(c));
}

}  // namespace corrh::arith
