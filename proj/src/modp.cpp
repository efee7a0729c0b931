#include "corrheight/modp.hpp"

#include <algorithm>

namespace corrh::arith::modp {

namespace {

std::uint64_t splitmix(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Poly x_poly() { return Poly{0, 1}; }

}  // namespace

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t Field::inv(std::uint64_t a) const {
  if (a % p == 0) throw ValidationError("inverse of zero mod p");
  return pow(a, p - 2);
}

std::uint64_t Field::from(const Integer& z) const {
  Integer r = z % static_cast<unsigned long>(p);
  if (sgn(r) < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly reduce(const IntPoly& f, std::uint64_t p) {
  Field F{p};
  Poly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = F.from(f[i]);
  trim(r);
  return r;
}

IntPoly lift_symmetric(const Poly& a, std::uint64_t p) {
  std::vector<Integer> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > p / 2)
      c[i] = -Integer(static_cast<unsigned long>(p - a[i]));
    else
      c[i] = Integer(static_cast<unsigned long>(a[i]));
  }
  return IntPoly(std::move(c));
}

Poly add(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  trim(r);
  return r;
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  // accumulate unreduced products; each is < 2^62 so reduce every step
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % F.p;
  }
  trim(r);
  return r;
}

Poly scale(const Field& F, const Poly& a, std::uint64_t s) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b) {
  if (b.empty()) throw ValidationError("division by zero polynomial mod p");
  if (a.size() < b.size()) return {Poly{}, a};
  Poly r = a;
  const std::size_t db = b.size() - 1;
  const std::uint64_t li = F.inv(b.back());
  Poly q(a.size() - db, 0);
  for (std::size_t k = a.size() - db; k-- > 0;) {
    std::uint64_t t = F.mul(r[k + db], li);
    q[k] = t;
    if (!t) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] = F.sub(r[k + j], F.mul(t, b[j]));
  }
  r.resize(db);
  trim(r);
  trim(q);
  return {q, r};
}

Poly rem(const Field& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

Poly monic(const Field& F, const Poly& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

Poly gcd(const Field& F, Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

Poly derivative(const Field& F, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
  trim(r);
  return r;
}

std::uint64_t eval(const Field& F, const Poly& a, std::uint64_t x) {
  std::uint64_t acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

Poly powmod(const Field& F, const Poly& base, const Integer& e, const Poly& m) {
  Poly result{1};
  result = rem(F, result, m);
  Poly b = rem(F, base, m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(F, mul(F, result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(F, mul(F, result, b), m);
  }
  return result;
}

bool is_squarefree(const Field& F, const Poly& a) {
  if (degree(a) <= 0) return true;
  Poly d = derivative(F, a);
  if (d.empty()) return false;
  return degree(gcd(F, a, d)) == 0;
}

std::vector<std::pair<Poly, int>> distinct_degree(const Field& F, const Poly& f0) {
  std::vector<std::pair<Poly, int>> out;
  Poly f = monic(F, f0);
  Poly h = x_poly();
  const Integer p(static_cast<unsigned long>(F.p));
  for (int d = 1; 2 * d <= degree(f); ++d) {
    h = powmod(F, h, p, f);
    Poly g = gcd(F, f, sub(F, h, x_poly()));
    if (degree(g) > 0) {
      out.emplace_back(g, d);
      f = divmod(F, f, g).first;
      h = rem(F, h, f);
    }
  }
  if (degree(f) > 0) out.emplace_back(f, degree(f));
  return out;
}

std::vector<Poly> equal_degree(const Field& F, const Poly& f, int d, std::uint64_t seed) {
  const int n = degree(f);
  if (n <= d) return {monic(F, f)};
  if (F.p == 2) throw ValidationError("equal-degree splitting needs an odd prime");
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), F.p, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uint64_t s = seed;
  for (;;) {
    Poly a(n);
    for (int i = 0; i < n; ++i) a[i] = splitmix(s) % F.p;
    trim(a);
    if (degree(a) <= 0) continue;
    Poly g = gcd(F, a, f);
    if (degree(g) <= 0 || degree(g) == n) {
      Poly b = powmod(F, a, e, f);
      b = sub(F, b, Poly{1});
      g = gcd(F, b, f);
    }
    if (degree(g) > 0 && degree(g) < n) {
      auto left = equal_degree(F, g, d, splitmix(s));
      auto right = equal_degree(F, divmod(F, f, g).first, d, splitmix(s));
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

std::vector<Poly> factor_squarefree(const Field& F, const Poly& f, std::uint64_t seed) {
  std::vector<Poly> out;
  for (auto& [g, d] : distinct_degree(F, f)) {
    auto parts = equal_degree(F, g, d, seed + static_cast<std::uint64_t>(d));
    out.insert(out.end(), parts.begin(), parts.end());
  }
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return out;
}

std::vector<int> factor_degrees(const Field& F, const Poly& f) {
  std::vector<int> out;
  for (auto& [g, d] : distinct_degree(F, f))
    for (int k = 0; k < degree(g) / d; ++k) out.push_back(d);
  return out;
}

bool is_irreducible(const Field& F, const Poly& f) {
  if (degree(f) <= 0) return false;
  if (degree(f) == 1) return true;
  if (!is_squarefree(F, f)) return false;
  auto dd = distinct_degree(F, f);
  return dd.size() == 1 && dd[0].second == degree(f);
}

std::vector<std::uint64_t> roots(const Field& F, const Poly& f0, std::uint64_t seed) {
  Poly f = monic(F, f0);
  if (degree(f) <= 0) return {};
  std::vector<std::uint64_t> out;
  if (F.p == 2) {
    for (std::uint64_t v = 0; v < 2; ++v)
      if (eval(F, f, v) == 0) out.push_back(v);
    return out;
  }
  const Integer p(static_cast<unsigned long>(F.p));
  Poly xp = powmod(F, x_poly(), p, f);
  Poly g = gcd(F, f, sub(F, xp, x_poly()));
  if (degree(g) <= 0) return {};
  for (auto& lin : equal_degree(F, g, 1, seed)) out.push_back(F.sub(0, lin[0]));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace corrh::arith::modp
