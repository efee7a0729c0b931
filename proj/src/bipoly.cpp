#include "corrheight/bipoly.hpp"

#include <algorithm>

namespace corrh::arith {

namespace {

template <class T>
T one();
template <>
Integer one<Integer>() { return Integer(1); }
template <>
IntPoly one<IntPoly>() { return IntPoly{Integer(1)}; }

template <class T>
T power(T base, unsigned e) {
  T r = one<T>();
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

}  // namespace

BiPoly::BiPoly(std::vector<std::vector<Rational>> rows) : c_(std::move(rows)) { normalize(); }

void BiPoly::normalize() {
  dy_ = -1;
  for (auto& row : c_) {
    while (!row.empty() && sgn(row.back()) == 0) row.pop_back();
    dy_ = std::max(dy_, static_cast<int>(row.size()) - 1);
  }
  while (!c_.empty() && c_.back().empty()) c_.pop_back();
}

Rational BiPoly::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i > deg_x()) return 0;
  const auto& row = c_[i];
  return j < static_cast<int>(row.size()) ? row[j] : Rational(0);
}

UniPoly BiPoly::coeff_in_x(int i) const {
  if (i < 0 || i > deg_x()) return {};
  return UniPoly(c_[i]);
}

UniPoly BiPoly::coeff_in_y(int j) const {
  std::vector<Rational> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = coeff(static_cast<int>(i), j);
  return UniPoly(std::move(out));
}

UniPoly BiPoly::eval_x(const Rational& x) const {
  std::vector<Rational> out(std::max(dy_ + 1, 0));
  Rational pw = 1;
  for (const auto& row : c_) {
    for (std::size_t j = 0; j < row.size(); ++j) out[j] += row[j] * pw;
    pw *= x;
  }
  return UniPoly(std::move(out));
}

UniPoly BiPoly::eval_y(const Rational& y) const {
  std::vector<Rational> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = UniPoly(c_[i]).eval(y);
  return UniPoly(std::move(out));
}

BiPoly BiPoly::swapped() const {
  std::vector<std::vector<Rational>> rows(std::max(dy_ + 1, 0), std::vector<Rational>(c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < c_[i].size(); ++j) rows[j][i] = c_[i][j];
  return BiPoly(std::move(rows));
}

ZYPoly BiPoly::to_zy() const {
  Integer den = 1;
  for (const auto& row : c_)
    for (const auto& v : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  Integer g = 0;
  std::vector<std::vector<Integer>> z(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    z[i].resize(c_[i].size());
    for (std::size_t j = 0; j < c_[i].size(); ++j) {
      z[i][j] = c_[i][j].get_num() * (den / c_[i][j].get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i][j].get_mpz_t());
    }
  }
  std::vector<IntPoly> rows(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (auto& v : z[i]) v /= g;
    rows[i] = IntPoly(std::move(z[i]));
  }
  return ZYPoly(std::move(rows));
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  auto rows = a.c_;
  if (b.c_.size() > rows.size()) rows.resize(b.c_.size());
  for (std::size_t i = 0; i < b.c_.size(); ++i) {
    if (b.c_[i].size() > rows[i].size()) rows[i].resize(b.c_[i].size());
    for (std::size_t j = 0; j < b.c_[i].size(); ++j) rows[i][j] += b.c_[i][j];
  }
  return BiPoly(std::move(rows));
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
  auto rows = b.c_;
  for (auto& row : rows)
    for (auto& v : row) v = -v;
  return a + BiPoly(std::move(rows));
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<std::vector<Rational>> rows(a.c_.size() + b.c_.size() - 1,
                                          std::vector<Rational>(a.dy_ + b.dy_ + 1));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < a.c_[i].size(); ++j) {
      if (sgn(a.c_[i][j]) == 0) continue;
      for (std::size_t k = 0; k < b.c_.size(); ++k)
        for (std::size_t l = 0; l < b.c_[k].size(); ++l) rows[i + k][j + l] += a.c_[i][j] * b.c_[k][l];
    }
  return BiPoly(std::move(rows));
}

std::string BiPoly::to_string() const {
  if (is_zero()) return "0";
  // descending total degree, then descending y-power
  struct Term {
    int i, j;
    Rational c;
  };
  std::vector<Term> terms;
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < c_[i].size(); ++j)
      if (sgn(c_[i][j]) != 0) terms.push_back({static_cast<int>(i), static_cast<int>(j), c_[i][j]});
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.i + a.j != b.i + b.j) return a.i + a.j > b.i + b.j;
    return a.j > b.j;
  });
  std::string out;
  for (const auto& t : terms) {
    const bool neg = sgn(t.c) < 0;
    Rational a = neg ? Rational(-t.c) : t.c;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string mono;
    if (t.j > 0) mono += t.j > 1 ? "y^" + std::to_string(t.j) : "y";
    if (t.i > 0) {
      if (!mono.empty()) mono += "*";
      mono += t.i > 1 ? "x^" + std::to_string(t.i) : "x";
    }
    if (mono.empty())
      out += arith::to_string(a);
    else if (a == 1)
      out += mono;
    else
      out += arith::to_string(a) + "*" + mono;
  }
  return out;
}

template <class T>
T subresultant(DensePoly<T> A, DensePoly<T> B) {
  if (A.is_zero() || B.is_zero()) return T{};
  int s = 1;
  if (A.degree() < B.degree()) {
    std::swap(A, B);
    if ((A.degree() & 1) && (B.degree() & 1)) s = -1;
  }
  if (B.degree() == 0) {
    T r = power(B.lead(), static_cast<unsigned>(A.degree()));
    return s < 0 ? T(-r) : r;
  }
  T g = one<T>(), h = one<T>();
  for (;;) {
    const int delta = A.degree() - B.degree();
    if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
    DensePoly<T> R = pseudo_remainder(A, B);
    if (R.is_zero()) return T{};
    A = std::move(B);
    T div = g * power(h, static_cast<unsigned>(delta));
    B = exact_div(R, DensePoly<T>::constant(div));
    g = A.lead();
    if (delta > 0) h = exact_div(power(g, static_cast<unsigned>(delta)), power(h, static_cast<unsigned>(delta - 1)));
    if (B.degree() == 0) {
      const unsigned da = static_cast<unsigned>(A.degree());
      T r = exact_div(power(B.lead(), da), power(h, da - 1));
      return s < 0 ? T(-r) : r;
    }
  }
}

template Integer subresultant<Integer>(DensePoly<Integer>, DensePoly<Integer>);
template IntPoly subresultant<IntPoly>(DensePoly<IntPoly>, DensePoly<IntPoly>);

IntPoly resultant_in_x(const IntPoly& p, const ZYPoly& F) {
  if (p.is_zero()) throw ValidationError("resultant with the zero polynomial");
  if (F.degree() <= 0) {
    if (F.is_zero()) throw DegenerateElimination("resultant vanishes identically");
    // Res(p, c) = c^deg p
    return power(F.lead(), static_cast<unsigned>(p.degree()));
  }
  std::vector<IntPoly> lifted(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) lifted[i] = IntPoly{p[i]};
  IntPoly r = subresultant(ZYPoly(std::move(lifted)), F);
  if (r.is_zero()) throw DegenerateElimination("resultant vanishes identically: shared vertical component");
  return r;
}

UniPoly resultant_in_x(const UniPoly& p, const BiPoly& F) {
  if (p.is_zero()) throw ValidationError("resultant with the zero polynomial");
  if (F.is_zero()) throw DegenerateElimination("resultant with the zero polynomial");
  auto [cp, P] = split_content(p);
  // F = cF * Fz with Fz the primitive integer form
  ZYPoly Fz = F.to_zy();
  Rational cF = F.coeff(F.deg_x(), F.rows().back().size() - 1) /
                Rational(Fz.lead().lead());
  IntPoly r = resultant_in_x(P, Fz);
  Rational scale = 1;
  for (int i = 0; i < F.deg_x(); ++i) scale *= cp;
  for (int i = 0; i < p.degree(); ++i) scale *= cF;
  return to_uni(r).scaled(scale);
}

}  // namespace corrh::arith
