#include "corrheight/interval.hpp"

#include <cstdlib>
#include <utility>

namespace corrh::arith {

namespace {

thread_local long g_precision = 128;

mpfr_prec_t wp() { return static_cast<mpfr_prec_t>(g_precision); }

std::string mpfr_text(mpfr_srcptr v, int digits, mpfr_rnd_t r) {
  char* buf = nullptr;
  if (digits > 0)
    mpfr_asprintf(&buf, "%.*R*e", digits, r, v);
  else
    mpfr_asprintf(&buf, "%R*e", r, v);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

}  // namespace

long working_precision() { return g_precision; }
void set_working_precision(long bits) { g_precision = bits < 16 ? 16 : bits; }

BigFloat::BigFloat() {
  mpfr_init2(v_, wp());
  mpfr_set_zero(v_, 1);
}
BigFloat::BigFloat(long v) {
  mpfr_init2(v_, wp());
  mpfr_set_si(v_, v, MPFR_RNDN);
}
BigFloat::BigFloat(double v) {
  mpfr_init2(v_, wp());
  mpfr_set_d(v_, v, MPFR_RNDN);
}
BigFloat::BigFloat(const Integer& z, mpfr_rnd_t rnd) {
  mpfr_init2(v_, wp());
  mpfr_set_z(v_, z.get_mpz_t(), rnd);
}
BigFloat::BigFloat(const Rational& q, mpfr_rnd_t rnd) {
  mpfr_init2(v_, wp());
  mpfr_set_q(v_, q.get_mpq_t(), rnd);
}
BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}
BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}
BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::infinity(int sign) {
  BigFloat r;
  mpfr_set_inf(r.v_, sign);
  return r;
}

BigFloat BigFloat::pow2(long e) {
  BigFloat r;
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

long BigFloat::exponent() const {
  if (mpfr_zero_p(v_)) return -(1L << 40);
  if (!mpfr_number_p(v_)) return 1L << 40;
  return static_cast<long>(mpfr_get_exp(v_));
}

Rational BigFloat::to_rational() const {
  if (!mpfr_number_p(v_)) throw PrecisionExhausted("non-finite value has no rational form");
  Integer m;
  const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  Rational q(m);
  if (e >= 0)
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return q;
}

std::string BigFloat::to_string(int digits) const { return mpfr_text(v_, digits, MPFR_RNDN); }

BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r) {
  BigFloat out;
  mpfr_add(out.v_, a.v_, b.v_, r);
  return out;
}
BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r) {
  BigFloat out;
  mpfr_sub(out.v_, a.v_, b.v_, r);
  return out;
}
BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r) {
  BigFloat out;
  mpfr_mul(out.v_, a.v_, b.v_, r);
  return out;
}
BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t r) {
  BigFloat out;
  mpfr_div(out.v_, a.v_, b.v_, r);
  return out;
}
BigFloat BigFloat::operator-() const {
  BigFloat out(*this);
  mpfr_neg(out.v_, out.v_, MPFR_RNDN);
  return out;
}

BigFloat abs(const BigFloat& a) {
  BigFloat out(a);
  mpfr_abs(out.get(), out.get(), MPFR_RNDN);
  return out;
}
BigFloat sqrt(const BigFloat& a, mpfr_rnd_t r) {
  BigFloat out;
  mpfr_sqrt(out.get(), a.get(), r);
  return out;
}
BigFloat log(const BigFloat& a, mpfr_rnd_t r) {
  BigFloat out;
  mpfr_log(out.get(), a.get(), r);
  return out;
}
BigFloat min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }
BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

// ---- Interval

Interval::Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (mpfr_nan_p(lo_.get()) || mpfr_nan_p(hi_.get())) *this = entire();
}
Interval::Interval(const Integer& z) : lo_(z, MPFR_RNDD), hi_(z, MPFR_RNDU) {}
Interval::Interval(const Rational& q) : lo_(q, MPFR_RNDD), hi_(q, MPFR_RNDU) {}

Interval Interval::entire() { return Interval(BigFloat::infinity(-1), BigFloat::infinity(1)); }

Interval Interval::around(const BigFloat& mid, const BigFloat& rad) {
  BigFloat r = abs(rad);
  return Interval(sub(mid, r, MPFR_RNDD), add(mid, r, MPFR_RNDU));
}

BigFloat Interval::mid() const {
  BigFloat s = add(lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(s.get(), s.get(), 1, MPFR_RNDN);
  return s;
}
BigFloat Interval::rad() const {
  BigFloat m = mid();
  return max(sub(hi_, m, MPFR_RNDU), sub(m, lo_, MPFR_RNDU));
}
BigFloat Interval::width() const { return sub(hi_, lo_, MPFR_RNDU); }
BigFloat Interval::mag() const { return max(abs(lo_), abs(hi_)); }
BigFloat Interval::mig() const {
  if (contains_zero()) return BigFloat(0L);
  return min(abs(lo_), abs(hi_));
}

Interval operator+(const Interval& a, const Interval& b) {
  return Interval(add(a.lo_, b.lo_, MPFR_RNDD), add(a.hi_, b.hi_, MPFR_RNDU));
}
Interval operator-(const Interval& a, const Interval& b) {
  return Interval(sub(a.lo_, b.hi_, MPFR_RNDD), sub(a.hi_, b.lo_, MPFR_RNDU));
}
Interval Interval::operator-() const { return Interval(-hi_, -lo_); }

Interval operator*(const Interval& a, const Interval& b) {
  const BigFloat* xs[2] = {&a.lo_, &a.hi_};
  const BigFloat* ys[2] = {&b.lo_, &b.hi_};
  BigFloat lo = BigFloat::infinity(1), hi = BigFloat::infinity(-1);
  for (auto* x : xs)
    for (auto* y : ys) {
      // 0 * inf counts as 0 for enclosure purposes
      if (x->is_zero() || y->is_zero()) {
        lo = min(lo, BigFloat(0L));
        hi = max(hi, BigFloat(0L));
        continue;
      }
      lo = min(lo, mul(*x, *y, MPFR_RNDD));
      hi = max(hi, mul(*x, *y, MPFR_RNDU));
    }
  return Interval(std::move(lo), std::move(hi));
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) return Interval::entire();
  Interval inv(div(BigFloat(1L), b.hi_, MPFR_RNDD), div(BigFloat(1L), b.lo_, MPFR_RNDU));
  return a * inv;
}

std::string Interval::to_string() const {
  return "[" + mpfr_text(lo_.get(), 20, MPFR_RNDD) + ", " + mpfr_text(hi_.get(), 20, MPFR_RNDU) + "]";
}

Interval sqr(const Interval& a) {
  BigFloat m = a.mig(), M = a.mag();
  return Interval(mul(m, m, MPFR_RNDD), mul(M, M, MPFR_RNDU));
}

Interval sqrt(const Interval& a) {
  BigFloat lo = a.lo().sign() > 0 ? sqrt(a.lo(), MPFR_RNDD) : BigFloat(0L);
  if (a.hi().sign() < 0) throw PrecisionExhausted("square root of a negative interval");
  return Interval(lo, sqrt(a.hi(), MPFR_RNDU));
}

Interval log(const Interval& a) {
  BigFloat lo = a.lo().sign() > 0 ? log(a.lo(), MPFR_RNDD) : BigFloat::infinity(-1);
  if (a.hi().sign() <= 0) throw PrecisionExhausted("logarithm of a non-positive interval");
  return Interval(lo, log(a.hi(), MPFR_RNDU));
}

Interval log_plus(const Interval& a) {
  const BigFloat one(1L);
  BigFloat lo = a.lo() > one ? log(a.lo(), MPFR_RNDD) : BigFloat(0L);
  BigFloat hi = a.hi() > one ? log(a.hi(), MPFR_RNDU) : BigFloat(0L);
  return Interval(lo, hi);
}

Interval exp(const Interval& a) {
  BigFloat lo, hi;
  mpfr_exp(lo.get(), a.lo().get(), MPFR_RNDD);
  mpfr_exp(hi.get(), a.hi().get(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval hull(const Interval& a, const Interval& b) { return Interval(min(a.lo(), b.lo()), max(a.hi(), b.hi())); }
Interval intersect(const Interval& a, const Interval& b) {
  BigFloat lo = max(a.lo(), b.lo()), hi = min(a.hi(), b.hi());
  if (hi < lo) throw PrecisionExhausted("empty interval intersection");
  return Interval(lo, hi);
}
Interval max(const Interval& a, const Interval& b) { return Interval(max(a.lo(), b.lo()), max(a.hi(), b.hi())); }
Interval min(const Interval& a, const Interval& b) { return Interval(min(a.lo(), b.lo()), min(a.hi(), b.hi())); }
Interval abs(const Interval& a) { return Interval(a.mig(), a.mag()); }

Interval pow(const Interval& a, unsigned e) {
  Interval r(1L), b = a;
  bool first = true;
  while (e) {
    if (e & 1) {
      r = first ? b : r * b;
      first = false;
    }
    e >>= 1;
    if (e) b = sqr(b);
  }
  return r;
}

Interval interval_log2() {
  BigFloat lo, hi;
  mpfr_const_log2(lo.get(), MPFR_RNDD);
  mpfr_const_log2(hi.get(), MPFR_RNDU);
  return Interval(lo, hi);
}

// ---- CInterval

BigFloat CInterval::mag() const {
  BigFloat a = re_.mag(), b = im_.mag();
  return sqrt(add(mul(a, a, MPFR_RNDU), mul(b, b, MPFR_RNDU), MPFR_RNDU), MPFR_RNDU);
}
BigFloat CInterval::mig() const {
  BigFloat a = re_.mig(), b = im_.mig();
  return sqrt(add(mul(a, a, MPFR_RNDD), mul(b, b, MPFR_RNDD), MPFR_RNDD), MPFR_RNDD);
}
Interval CInterval::norm2() const { return sqr(re_) + sqr(im_); }
Interval CInterval::abs() const { return sqrt(norm2()); }
BigFloat CInterval::width() const { return max(re_.width(), im_.width()); }
CInterval CInterval::mid() const { return CInterval(re_.mid(), im_.mid()); }

CInterval operator*(const CInterval& a, const CInterval& b) {
  return CInterval(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

CInterval operator/(const CInterval& a, const CInterval& b) {
  Interval n = b.norm2();
  if (n.contains_zero()) return CInterval(Interval::entire(), Interval::entire());
  CInterval num = a * b.conj();
  return CInterval(num.re_ / n, num.im_ / n);
}

std::string CInterval::to_string() const { return re_.to_string() + " + i*" + im_.to_string(); }

CInterval hull(const CInterval& a, const CInterval& b) {
  return CInterval(hull(a.re(), b.re()), hull(a.im(), b.im()));
}
CInterval intersect(const CInterval& a, const CInterval& b) {
  return CInterval(intersect(a.re(), b.re()), intersect(a.im(), b.im()));
}

CFloat operator/(const CFloat& a, const CFloat& b) {
  BigFloat d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

BigFloat CFloat::abs() const {
  BigFloat out;
  mpfr_hypot(out.get(), re.get(), im.get(), MPFR_RNDN);
  return out;
}

}  // namespace corrh::arith
