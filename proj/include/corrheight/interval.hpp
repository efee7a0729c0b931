#pragma once

#include <mpfr.h>

#include <string>

#include "corrheight/errors.hpp"
#include "corrheight/integer.hpp"

namespace corrh::arith {

/// Working precision (bits) for newly created values on this thread.
long working_precision();
void set_working_precision(long bits);

class PrecisionGuard {
 public:
  explicit PrecisionGuard(long bits) : saved_(working_precision()) { set_working_precision(bits); }
  ~PrecisionGuard() { set_working_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  long saved_;
};

/// Owning MPFR float. Results of arithmetic use the working precision and the given rounding.
class BigFloat {
 public:
  BigFloat();
  BigFloat(long v);  // NOLINT: small integer literals
  BigFloat(int v) : BigFloat(static_cast<long>(v)) {}  // NOLINT
  explicit BigFloat(double v);
  explicit BigFloat(const Integer& z, mpfr_rnd_t rnd = MPFR_RNDN);
  explicit BigFloat(const Rational& q, mpfr_rnd_t rnd = MPFR_RNDN);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  static BigFloat infinity(int sign);
  /// 2^e
  static BigFloat pow2(long e);

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// base-2 exponent e with 2^(e-1) <= |v| < 2^e; very negative for zero.
  long exponent() const;
  /// Exact dyadic value as a rational (finite values only).
  Rational to_rational() const;
  std::string to_string(int digits = 0) const;

  friend BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r);
  friend BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r);
  friend BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r);
  friend BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r);

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return add(a, b, MPFR_RNDN); }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return sub(a, b, MPFR_RNDN); }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return mul(a, b, MPFR_RNDN); }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return div(a, b, MPFR_RNDN); }
  BigFloat operator-() const;

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return b <= a; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  mpfr_t v_;
};

BigFloat abs(const BigFloat& a);
BigFloat sqrt(const BigFloat& a, mpfr_rnd_t r = MPFR_RNDN);
BigFloat log(const BigFloat& a, mpfr_rnd_t r = MPFR_RNDN);
BigFloat min(const BigFloat& a, const BigFloat& b);
BigFloat max(const BigFloat& a, const BigFloat& b);

/// Closed real interval with outward-rounded arithmetic.
class Interval {
 public:
  Interval() : lo_(0L), hi_(0L) {}
  Interval(long v) : lo_(v), hi_(v) {}  // NOLINT
  Interval(int v) : Interval(static_cast<long>(v)) {}  // NOLINT
  explicit Interval(const BigFloat& v) : lo_(v), hi_(v) {}
  Interval(BigFloat lo, BigFloat hi);
  explicit Interval(const Integer& z);
  explicit Interval(const Rational& q);
  static Interval entire();
  /// mid +- rad
  static Interval around(const BigFloat& mid, const BigFloat& rad);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  BigFloat mid() const;
  /// Upper bound on the half-width.
  BigFloat rad() const;
  BigFloat width() const;
  /// Upper bound on max |x|.
  BigFloat mag() const;
  /// Lower bound on min |x|.
  BigFloat mig() const;
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool contains(const BigFloat& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool interior_contains(const Interval& o) const { return lo_ < o.lo_ && o.hi_ < hi_; }
  bool overlaps(const Interval& o) const { return !(hi_ < o.lo_ || o.hi_ < lo_); }
  bool positive() const { return lo_.sign() > 0; }
  bool negative() const { return hi_.sign() < 0; }
  bool is_finite() const { return lo_.is_finite() && hi_.is_finite(); }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  Interval& operator/=(const Interval& o) { return *this = *this / o; }

  std::string to_string() const;

 private:
  BigFloat lo_, hi_;
};

Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval log(const Interval& a);  // a > 0
/// log max(1, x) for x >= 0 (lower end clamps at 0).
Interval log_plus(const Interval& a);
Interval exp(const Interval& a);
Interval hull(const Interval& a, const Interval& b);
Interval intersect(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);
Interval abs(const Interval& a);
Interval pow(const Interval& a, unsigned e);
Interval interval_log2();

/// Rectangular complex interval.
class CInterval {
 public:
  CInterval() = default;
  CInterval(long v) : re_(v), im_(0L) {}  // NOLINT
  CInterval(int v) : CInterval(static_cast<long>(v)) {}  // NOLINT
  CInterval(Interval re, Interval im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit CInterval(const Integer& z) : re_(z), im_(0L) {}
  explicit CInterval(const Rational& q) : re_(q), im_(0L) {}
  CInterval(const BigFloat& re, const BigFloat& im) : re_(re), im_(im) {}

  const Interval& re() const { return re_; }
  const Interval& im() const { return im_; }
  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
  bool contains(const CInterval& o) const { return re_.contains(o.re_) && im_.contains(o.im_); }
  bool interior_contains(const CInterval& o) const {
    return re_.interior_contains(o.re_) && im_.interior_contains(o.im_);
  }
  bool overlaps(const CInterval& o) const { return re_.overlaps(o.re_) && im_.overlaps(o.im_); }
  /// Upper bound on |z| over the box.
  BigFloat mag() const;
  /// Lower bound on |z| over the box.
  BigFloat mig() const;
  /// Squared modulus as an interval.
  Interval norm2() const;
  Interval abs() const;
  BigFloat width() const;  // max of the side widths
  CInterval mid() const;
  CInterval conj() const { return CInterval(re_, -im_); }

  friend CInterval operator+(const CInterval& a, const CInterval& b) {
    return CInterval(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend CInterval operator-(const CInterval& a, const CInterval& b) {
    return CInterval(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend CInterval operator*(const CInterval& a, const CInterval& b);
  friend CInterval operator/(const CInterval& a, const CInterval& b);
  CInterval operator-() const { return CInterval(-re_, -im_); }
  CInterval& operator+=(const CInterval& o) { return *this = *this + o; }
  CInterval& operator-=(const CInterval& o) { return *this = *this - o; }
  CInterval& operator*=(const CInterval& o) { return *this = *this * o; }

  std::string to_string() const;

 private:
  Interval re_, im_;
};

CInterval hull(const CInterval& a, const CInterval& b);
CInterval intersect(const CInterval& a, const CInterval& b);

/// Nearest-rounded complex point, used by approximate iterations.
struct CFloat {
  BigFloat re, im;
  CFloat() : re(0L), im(0L) {}
  CFloat(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  friend CFloat operator+(const CFloat& a, const CFloat& b) { return {a.re + b.re, a.im + b.im}; }
  friend CFloat operator-(const CFloat& a, const CFloat& b) { return {a.re - b.re, a.im - b.im}; }
  friend CFloat operator*(const CFloat& a, const CFloat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CFloat operator/(const CFloat& a, const CFloat& b);
  BigFloat abs() const;
};

}  // namespace corrh::arith
