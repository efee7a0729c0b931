#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corrheight/roots.hpp"

namespace corrh {

using arith::BigFloat;
using arith::ComplexBox;
using arith::Integer;
using arith::Interval;
using arith::IntPoly;
using arith::Rational;
using arith::UniPoly;

/// Enclosure of a real quantity. When `certified` is false the interval is a heuristic
/// error bar, not a proof.
struct HeightEstimate {
  Interval value;
  bool certified = true;

  BigFloat mid() const { return value.mid(); }
  BigFloat radius() const { return value.rad(); }
};

/// All roots of one irreducible polynomial as disjoint certified boxes, sorted by real then
/// imaginary part. Shared between the conjugates that were produced together.
struct ConjugateSet {
  std::vector<ComplexBox> boxes;
};

class AlgebraicNumber {
 public:
  /// `minpoly` must be irreducible over Q; `box` must isolate one of its roots.
  AlgebraicNumber(IntPoly minpoly, ComplexBox box);
  /// Root `index` of a precomputed conjugate set.
  AlgebraicNumber(IntPoly minpoly, std::shared_ptr<const ConjugateSet> conj, std::size_t index);

  static AlgebraicNumber from_rational(const Rational& r);
  /// Every root of p (nonzero), one entry per distinct root.
  static std::vector<AlgebraicNumber> roots_of(const UniPoly& p);

  const IntPoly& minpoly() const { return minpoly_; }
  int degree() const { return minpoly_.degree(); }
  const ComplexBox& box() const { return box_; }
  bool is_rational() const { return degree() == 1; }
  Rational rational_value() const;  // degree 1 only
  bool is_real() const { return box_.real; }

  /// Boxes for all conjugates, conjugate pairs mirrored, at least the working precision.
  std::vector<ComplexBox> conjugate_boxes() const;
  /// Position of this root inside conjugate_boxes().
  std::size_t conjugate_index() const;
  std::shared_ptr<const ConjugateSet> conjugates() const;

  /// Same root with a box of width <= w.
  AlgebraicNumber refined(const BigFloat& w) const;
  HeightEstimate height() const;
  std::string to_string() const;

 private:
  IntPoly minpoly_;
  ComplexBox box_;
  mutable std::shared_ptr<const ConjugateSet> conj_;
  mutable std::size_t index_ = 0;
};

bool equals(const AlgebraicNumber& a, const AlgebraicNumber& b);

/// Lower bound on log2 of the minimal distance between distinct roots of f.
double log2_root_separation(const IntPoly& f);

class ProjPoint {
 public:
  ProjPoint(AlgebraicNumber a) : v_(std::move(a)) {}  // NOLINT
  static ProjPoint infinity() { return ProjPoint(); }
  static ProjPoint rational(const Rational& r) { return AlgebraicNumber::from_rational(r); }

  bool is_infinity() const { return !v_.has_value(); }
  const AlgebraicNumber& finite() const { return *v_; }

  HeightEstimate height() const;
  std::string to_string() const;

 private:
  ProjPoint() = default;
  std::optional<AlgebraicNumber> v_;
};

bool equals(const ProjPoint& a, const ProjPoint& b);

/// Accepts `inf`, a rational such as `-7/2`, or `root(<poly in x>, <approx>)` where the
/// approximation may be `a` or `a+bi`.
ProjPoint parse_point(std::string_view text);

}  // namespace corrh
