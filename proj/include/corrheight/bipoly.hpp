#pragma once

#include <string>
#include <vector>

#include "corrheight/upoly.hpp"

namespace corrh::arith {

/// Bivariate polynomial over Q, stored densely as rows c[i][j] = coefficient of x^i y^j.
class BiPoly {
 public:
  BiPoly() = default;
  /// rows indexed by x-power, columns by y-power; trailing zero rows/columns are trimmed.
  explicit BiPoly(std::vector<std::vector<Rational>> rows);

  int deg_x() const { return static_cast<int>(c_.size()) - 1; }
  int deg_y() const { return dy_; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int i, int j) const;
  const std::vector<std::vector<Rational>>& rows() const { return c_; }

  /// Coefficient of x^i as a polynomial in y.
  UniPoly coeff_in_x(int i) const;
  /// Coefficient of y^j as a polynomial in x.
  UniPoly coeff_in_y(int j) const;
  UniPoly eval_x(const Rational& x) const;  // polynomial in y
  UniPoly eval_y(const Rational& y) const;  // polynomial in x
  /// Exchange the roles of x and y.
  BiPoly swapped() const;

  /// Denominator-cleared primitive form as a polynomial in x over Z[y].
  ZYPoly to_zy() const;
  /// Same, but the result is a polynomial in y over Z[x].
  ZYPoly to_zx() const { return swapped().to_zy(); }

  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.c_ == b.c_; }
  friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);

  std::string to_string() const;

 private:
  void normalize();
  std::vector<std::vector<Rational>> c_;
  int dy_ = -1;
};

/// Res_x(p(x), F(x, y)) as a polynomial in y, computed from the Sylvester convention
/// Res(A, B) = lc(A)^deg B * prod B(root of A), with deg_x F the formal x-degree.
/// Raises DegenerateElimination when the resultant vanishes identically.
UniPoly resultant_in_x(const UniPoly& p, const BiPoly& F);
/// Integer version on primitive data: p in Z[x], F in Z[y][x].
IntPoly resultant_in_x(const IntPoly& p, const ZYPoly& F);

/// Subresultant resultant over an integral domain with exact division.
template <class T>
T subresultant(DensePoly<T> A, DensePoly<T> B);

}  // namespace corrh::arith
