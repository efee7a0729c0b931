#include "corrheight/algebraic.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "corrheight/factor.hpp"
#include "corrheight/parse.hpp"

namespace corrh {

using namespace arith;

namespace {

double log2_abs(const Integer& z) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

ComplexBox rational_box(const Rational& r) {
  ComplexBox b;
  b.re = Interval(r);
  b.im = Interval(0L);
  b.real = true;
  b.precision = working_precision();
  return b;
}

std::shared_ptr<const ConjugateSet> isolate_conjugates(const IntPoly& f) {
  auto set = std::make_shared<ConjugateSet>();
  for (auto& [b, m] : isolate_roots(to_uni(f), working_precision())) set->boxes.push_back(b);
  if (static_cast<int>(set->boxes.size()) != f.degree())
    throw ValidationError("minimal polynomial is not squarefree");
  return set;
}

// Which box of `set` holds the root isolated by `old`.
std::optional<std::size_t> locate(const ConjugateSet& set, const ComplexBox& old) {
  std::vector<std::size_t> hit, inside;
  for (std::size_t i = 0; i < set.boxes.size(); ++i) {
    if (!set.boxes[i].box().overlaps(old.box())) continue;
    hit.push_back(i);
    if (old.box().contains(set.boxes[i].box())) inside.push_back(i);
  }
  if (hit.size() == 1) return hit[0];
  if (inside.size() == 1) return inside[0];
  return std::nullopt;
}

std::string short_decimal(const BigFloat& v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v.to_double());
  return buf;
}

std::string approx_text(const ComplexBox& b) {
  std::string s = short_decimal(b.re.mid());
  if (b.real) return s;
  BigFloat im = b.im.mid();
  return s + (im.sign() < 0 ? "-" : "+") + short_decimal(abs(im)) + "i";
}

}  // namespace

AlgebraicNumber::AlgebraicNumber(IntPoly minpoly, ComplexBox box) : minpoly_(primitive_part(minpoly)), box_(std::move(box)) {
  if (minpoly_.degree() < 1) throw ValidationError("minimal polynomial must have positive degree");
}

AlgebraicNumber::AlgebraicNumber(IntPoly minpoly, std::shared_ptr<const ConjugateSet> conj, std::size_t index)
    : minpoly_(primitive_part(minpoly)), box_(conj->boxes.at(index)), conj_(std::move(conj)), index_(index) {}

AlgebraicNumber AlgebraicNumber::from_rational(const Rational& r) {
  IntPoly m{Integer(-r.get_num()), Integer(r.get_den())};
  auto set = std::make_shared<ConjugateSet>();
  set->boxes.push_back(rational_box(r));
  return AlgebraicNumber(std::move(m), std::move(set), 0);
}

std::vector<AlgebraicNumber> AlgebraicNumber::roots_of(const UniPoly& p) {
  if (p.is_zero()) throw ValidationError("the zero polynomial has no isolated roots");
  std::vector<AlgebraicNumber> out;
  for (auto& [f, e] : factor_over_rationals(p)) {
    IntPoly m = primitive_integer(f);
    if (m.degree() == 1) {
      out.push_back(from_rational(Rational(-m[0], m[1])));
      continue;
    }
    auto set = isolate_conjugates(m);
    for (std::size_t i = 0; i < set->boxes.size(); ++i) out.emplace_back(m, set, i);
  }
  return out;
}

Rational AlgebraicNumber::rational_value() const {
  if (!is_rational()) throw ValidationError("not a rational number");
  Rational r(-minpoly_[0], minpoly_[1]);
  r.canonicalize();
  return r;
}

std::shared_ptr<const ConjugateSet> AlgebraicNumber::conjugates() const {
  if (is_rational()) {
    if (!conj_) {
      auto set = std::make_shared<ConjugateSet>();
      set->boxes.push_back(rational_box(rational_value()));
      conj_ = set;
      index_ = 0;
    }
    return conj_;
  }
  if (conj_ && conj_->boxes[index_].precision >= working_precision()) return conj_;
  ComplexBox anchor = conj_ ? conj_->boxes[index_] : box_;
  for (long prec = working_precision();; prec *= 2) {
    if (prec > kMaxIsolationPrecision) throw PrecisionExhausted("cannot match the root to its conjugates");
    PrecisionGuard g(prec);
    auto set = isolate_conjugates(minpoly_);
    if (auto i = locate(*set, anchor)) {
      conj_ = set;
      index_ = *i;
      return conj_;
    }
    anchor = refine_box(to_uni(minpoly_), anchor, BigFloat::pow2(static_cast<long>(log2_root_separation(minpoly_)) - 2));
  }
}

std::vector<ComplexBox> AlgebraicNumber::conjugate_boxes() const { return conjugates()->boxes; }

std::size_t AlgebraicNumber::conjugate_index() const {
  conjugates();
  return index_;
}

AlgebraicNumber AlgebraicNumber::refined(const BigFloat& w) const {
  if (box_.width() <= w) return *this;
  if (is_rational()) {
    PrecisionGuard g(std::max<long>(working_precision(), 64 - w.exponent()));
    return from_rational(rational_value());
  }
  return AlgebraicNumber(minpoly_, refine_box(to_uni(minpoly_), box_, w));
}

HeightEstimate AlgebraicNumber::height() const {
  if (is_rational()) {
    // log max(|p|, q)
    Integer p = abs(minpoly_[0]), q = abs(minpoly_[1]);
    return {log(Interval(p > q ? p : q)), true};
  }
  Interval sum = log(Interval(minpoly_.lead()));
  for (const auto& b : conjugate_boxes()) sum += log_plus(b.box().abs());
  return {sum / Interval(static_cast<long>(degree())), true};
}

std::string AlgebraicNumber::to_string() const {
  if (is_rational()) return arith::to_string(rational_value());
  return "root(" + arith::to_string(minpoly_) + ", " + approx_text(box_) + ")";
}

double log2_root_separation(const IntPoly& f) {
  // Mahler: sep > sqrt(3) d^(-(d+2)/2) M(f)^(1-d), with M(f) <= ||f||_2.
  const double d = f.degree();
  if (d < 2) return 0;
  double m = -1e300;
  for (const auto& c : f.coeffs())
    if (sgn(c) != 0) m = std::max(m, log2_abs(c));
  const double norm2 = m + 0.5 * std::log2(static_cast<double>(f.size()));
  return 0.5 * std::log2(3.0) - (d + 2) / 2 * std::log2(d) - (d - 1) * norm2 - 1;
}

bool equals(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.minpoly() != b.minpoly()) return false;
  if (a.is_rational()) return true;
  if (a.conjugates() == b.conjugates()) return a.conjugate_index() == b.conjugate_index();
  if (!a.box().box().overlaps(b.box().box())) return false;
  // Boxes narrower than a third of the separation bound overlap only for the same root.
  const long target = static_cast<long>(std::floor(log2_root_separation(a.minpoly()))) - 2;
  PrecisionGuard g(std::max<long>(working_precision(), 32 - target));
  AlgebraicNumber ra = a.refined(BigFloat::pow2(target));
  AlgebraicNumber rb = b.refined(BigFloat::pow2(target));
  return ra.box().box().overlaps(rb.box().box());
}

HeightEstimate ProjPoint::height() const {
  if (is_infinity()) return {Interval(0L), true};
  return v_->height();
}

std::string ProjPoint::to_string() const { return is_infinity() ? "inf" : v_->to_string(); }

bool equals(const ProjPoint& a, const ProjPoint& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
  return equals(a.finite(), b.finite());
}

ProjPoint parse_point(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  if (s == "inf" || s == "infinity" || s == "oo") return ProjPoint::infinity();
  if (s.substr(0, 5) != "root(") return ProjPoint::rational(parse_rational(s));
  const std::size_t offset = static_cast<std::size_t>(s.data() - text.data());
  if (s.back() != ')') throw ParseError("expected ')'", offset + s.size());
  const std::size_t comma = s.rfind(',');
  if (comma == std::string_view::npos || comma < 5) throw ParseError("expected root(<poly>, <approx>)", offset + 5);
  std::string_view poly_text = s.substr(5, comma - 5);
  std::string approx(trim(s.substr(comma + 1, s.size() - comma - 2)));

  UniPoly p;
  try {
    p = to_unipoly(parse_polynomial(poly_text), 0);
  } catch (const ParseError& e) {
    throw ParseError("bad polynomial in root(...)", offset + 5 + e.position());
  }
  if (p.degree() < 1) throw ValidationError("root(...) needs a polynomial of positive degree");

  // approximation: a, a+bi, a-bi, bi
  double re = 0, im = 0;
  {
    const char* c = approx.c_str();
    char* end = nullptr;
    double first = std::strtod(c, &end);
    if (end == c) throw ParseError("bad approximation", offset + comma + 1);
    if (*end == 'i') {
      im = first;
      ++end;
    } else {
      re = first;
      if (*end == '+' || *end == '-') {
        const char* c2 = end;
        im = std::strtod(c2, &end);
        if (end == c2 || *end != 'i') throw ParseError("bad imaginary part", offset + comma + 1);
        ++end;
      }
    }
    if (*end != '\0') throw ParseError("trailing text in approximation", offset + comma + 1);
  }

  auto roots = AlgebraicNumber::roots_of(p);
  std::size_t best = 0;
  double best_d = 1e300;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double dr = roots[i].box().re.mid().to_double() - re;
    const double di = roots[i].box().im.mid().to_double() - im;
    const double d = std::hypot(dr, di);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return roots[best];
}

}  // namespace corrh
