#include "corrheight/upoly.hpp"

#include <cstring>

#include "corrheight/modp.hpp"

namespace corrh::arith {

namespace {

constexpr std::size_t kKroneckerCutoff = 24;

std::size_t max_bits(const IntPoly& f) {
  std::size_t b = 0;
  for (const auto& c : f.coeffs()) b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
  return b;
}

// f(2^(64*slot)) with signed coefficients.
Integer pack(const IntPoly& f, std::size_t slot) {
  const std::size_t n = f.size();
  std::vector<mp_limb_t> pos(n * slot, 0), neg(n * slot, 0);
  bool any_neg = false;
  for (std::size_t i = 0; i < n; ++i) {
    const mpz_srcptr z = f[i].get_mpz_t();
    const std::size_t used = mpz_size(z);
    if (used == 0) continue;
    auto& dst = mpz_sgn(z) > 0 ? pos : neg;
    if (mpz_sgn(z) < 0) any_neg = true;
    std::memcpy(&dst[i * slot], mpz_limbs_read(z), used * sizeof(mp_limb_t));
  }
  Integer P, N;
  mpz_import(P.get_mpz_t(), pos.size(), -1, sizeof(mp_limb_t), 0, 0, pos.data());
  if (any_neg) {
    mpz_import(N.get_mpz_t(), neg.size(), -1, sizeof(mp_limb_t), 0, 0, neg.data());
    P -= N;
  }
  return P;
}

IntPoly unpack(Integer v, std::size_t slot, std::size_t count) {
  const bool negate = sgn(v) < 0;
  if (negate) v = -v;
  std::vector<mp_limb_t> limbs(mpz_size(v.get_mpz_t()) + slot * (count + 1), 0);
  std::size_t written = 0;
  mpz_export(limbs.data(), &written, -1, sizeof(mp_limb_t), 0, 0, v.get_mpz_t());
  Integer base;
  mpz_setbit(base.get_mpz_t(), 64 * slot);
  Integer half;
  mpz_setbit(half.get_mpz_t(), 64 * slot - 1);
  std::vector<Integer> c(count);
  int carry = 0;
  for (std::size_t i = 0; i < count; ++i) {
    Integer d;
    mpz_import(d.get_mpz_t(), slot, -1, sizeof(mp_limb_t), 0, 0, &limbs[i * slot]);
    d += carry;
    if (d >= half) {
      d -= base;
      carry = 1;
    } else {
      carry = 0;
    }
    c[i] = negate ? Integer(-d) : d;
  }
  return IntPoly(std::move(c));
}

IntPoly school(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return IntPoly(std::move(c));
}

// Next prime below p not dividing avoid.
std::uint64_t previous_prime_below(std::uint64_t p, const Integer& avoid) {
  for (;;) {
    Integer np(static_cast<unsigned long>(p - 1));
    while (!is_probable_prime(np)) --np;
    p = np.get_ui();
    if (!mpz_divisible_ui_p(avoid.get_mpz_t(), p)) return p;
  }
}

std::string coeff_text(const Integer& c) { return c.get_str(); }
std::string coeff_text(const Rational& c) { return to_string(c); }

template <class T>
std::string format(const DensePoly<T>& f, char var) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int i = f.degree(); i >= 0; --i) {
    const T& c = f[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    const bool neg = sgn(c) < 0;
    T a = c;
    if (neg) a = -a;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    const bool unit = (a == 1);
    if (i == 0 || !unit) out += coeff_text(a);
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace

IntPoly multiply_int(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (std::min(a.size(), b.size()) < kKroneckerCutoff) return school(a, b);
  const std::size_t n = std::min(a.size(), b.size());
  const std::size_t bits = max_bits(a) + max_bits(b) + mpz_sizeinbase(Integer(n).get_mpz_t(), 2) + 2;
  const std::size_t slot = (bits + 63) / 64;
  Integer P = pack(a, slot) * pack(b, slot);
  return unpack(std::move(P), slot, a.size() + b.size() - 1);
}

IntPoly exact_div_int(const IntPoly& a, const IntPoly& b) {
  // Divide the Kronecker images; the quotient's coefficients are not known in advance, so
  // guess a slot, check by multiplying back, and widen on failure.
  std::size_t bits = max_bits(a) + 64;
  const std::size_t cap = max_bits(a) + a.size() + 128;  // Mignotte-type ceiling
  for (;;) {
    const std::size_t slot = (bits + 63) / 64;
    Integer A = pack(a, slot), B = pack(b, slot);
    if (mpz_divisible_p(A.get_mpz_t(), B.get_mpz_t())) {
      Integer Q;
      mpz_divexact(Q.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
      IntPoly q = unpack(std::move(Q), slot, a.size() - b.size() + 1);
      if (multiply_int(q, b) == a) return q;
    }
    if (bits >= cap) throw ValidationError("inexact polynomial division");
    bits = std::min(cap, 2 * bits);
  }
}

Integer content(const IntPoly& f) {
  Integer g = 0;
  for (const auto& c : f.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& f) {
  if (f.is_zero()) return f;
  Integer g = content(f);
  if (sgn(f.lead()) < 0) g = -g;
  if (g == 1) return f;
  return exact_div(f, IntPoly::constant(g));
}

std::pair<Rational, IntPoly> split_content(const UniPoly& p) {
  if (p.is_zero()) return {Rational(0), IntPoly{}};
  Integer den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> z(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) z[i] = p[i].get_num() * (den / p[i].get_den());
  IntPoly f(std::move(z));
  Integer g = content(f);
  if (sgn(f.lead()) < 0) g = -g;
  IntPoly prim = exact_div(f, IntPoly::constant(g));
  Rational scale(g, den);
  scale.canonicalize();
  return {scale, prim};
}

IntPoly primitive_integer(const UniPoly& p) { return split_content(p).second; }

UniPoly to_uni(const IntPoly& f) {
  std::vector<Rational> c(f.coeffs().begin(), f.coeffs().end());
  return UniPoly(std::move(c));
}

UniPoly monic(const UniPoly& p) {
  if (p.is_zero()) return p;
  Rational inv = 1 / p.lead();
  return p.scaled(inv);
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw ValidationError("division by the zero polynomial");
  if (a.degree() < b.degree()) return {UniPoly{}, a};
  std::vector<Rational> r(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  std::vector<Rational> q(a.degree() - db + 1);
  for (int k = a.degree() - db; k >= 0; --k) {
    Rational t = r[k + db] / b.lead();
    if (sgn(t) != 0)
      for (int j = 0; j <= db; ++j) r[k + j] -= t * b[j];
    q[k] = t;
  }
  r.resize(db);
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

std::optional<IntPoly> try_exact_div(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return IntPoly{};
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<Integer> r(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  std::vector<Integer> q(a.degree() - db + 1);
  for (int k = a.degree() - db; k >= 0; --k) {
    if (!mpz_divisible_p(r[k + db].get_mpz_t(), b.lead().get_mpz_t())) return std::nullopt;
    Integer t = exact_div(r[k + db], b.lead());
    if (sgn(t) != 0)
      for (int j = 0; j <= db; ++j) mpz_submul(r[k + j].get_mpz_t(), t.get_mpz_t(), b[j].get_mpz_t());
    q[k] = std::move(t);
  }
  for (int j = 0; j < db; ++j)
    if (sgn(r[j]) != 0) return std::nullopt;
  return IntPoly(std::move(q));
}

IntPoly gcd_int(const IntPoly& a0, const IntPoly& b0) {
  if (a0.is_zero()) return primitive_part(b0);
  if (b0.is_zero()) return primitive_part(a0);
  // the content of the gcd is dropped; the result is primitive
  IntPoly a = primitive_part(a0), b = primitive_part(b0);
  if (a.degree() == 0 || b.degree() == 0) return IntPoly{1};
  if (a.degree() < b.degree()) std::swap(a, b);
  if (try_exact_div(a, b)) return b;

  Integer lg;
  mpz_gcd(lg.get_mpz_t(), a.lead().get_mpz_t(), b.lead().get_mpz_t());

  int best = b.degree() + 1;
  std::vector<Integer> acc;
  Integer modulus = 1;
  IntPoly previous;
  std::uint64_t p = (1ULL << 31) - 1;
  for (int round = 0; round < 100000; ++round) {
    p = previous_prime_below(p, lg);
    modp::Field F{p};
    modp::Poly am = modp::reduce(a, p), bm = modp::reduce(b, p);
    modp::Poly g = modp::gcd(F, am, bm);
    const int d = modp::degree(g);
    if (d == 0) return IntPoly{1};
    if (d > best) continue;
    g = modp::scale(F, g, F.from(lg));
    if (d < best) {
      best = d;
      acc.assign(d + 1, Integer(0));
      for (int i = 0; i <= d; ++i) acc[i] = Integer(static_cast<unsigned long>(g[i]));
      modulus = Integer(static_cast<unsigned long>(p));
      previous = IntPoly{};
      continue;
    }
    // CRT step
    const std::uint64_t minv = F.inv(F.from(modulus));
    for (int i = 0; i <= d; ++i) {
      const std::uint64_t old = F.from(acc[i]);
      const std::uint64_t t = F.mul(F.sub(g[i], old), minv);
      acc[i] += modulus * static_cast<unsigned long>(t);
    }
    modulus *= static_cast<unsigned long>(p);
    std::vector<Integer> sym(acc);
    Integer half = modulus / 2;
    for (auto& c : sym)
      if (c > half) c -= modulus;
    IntPoly h(std::move(sym));
    if (h == previous) {
      IntPoly cand = primitive_part(h);
      if (try_exact_div(a, cand) && try_exact_div(b, cand)) return cand;
    }
    previous = std::move(h);
  }
  throw BudgetExceeded("modular gcd did not converge");
}

UniPoly poly_gcd(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() && q.is_zero()) return {};
  if (p.is_zero()) return monic(q);
  if (q.is_zero()) return monic(p);
  return monic(to_uni(gcd_int(primitive_integer(p), primitive_integer(q))));
}

std::vector<std::pair<IntPoly, unsigned>> squarefree_decomposition(const IntPoly& f0) {
  std::vector<std::pair<IntPoly, unsigned>> out;
  if (f0.degree() <= 0) return out;
  IntPoly f = primitive_part(f0);
  IntPoly df = derivative(f);
  IntPoly a = gcd_int(f, df);
  IntPoly b = exact_div(f, a);
  IntPoly c = exact_div(df, a);
  IntPoly d = c - derivative(b);
  unsigned i = 1;
  while (b.degree() > 0) {
    a = gcd_int(b, d);
    if (a.degree() > 0) out.emplace_back(primitive_part(a), i);
    b = exact_div(b, a);
    c = exact_div(d, a);
    d = c - derivative(b);
    ++i;
  }
  return out;
}

IntPoly squarefree_part_int(const IntPoly& f0) {
  IntPoly f = primitive_part(f0);
  if (f.degree() <= 0) return IntPoly{1};
  // cheap exit: squarefree modulo some prime implies squarefree
  for (std::uint64_t p : {2147483629ULL, 2147483587ULL}) {
    if (mpz_divisible_ui_p(f.lead().get_mpz_t(), p)) continue;
    if (modp::is_squarefree(modp::Field{p}, modp::reduce(f, p))) return f;
  }
  return exact_div(f, gcd_int(f, derivative(f)));
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.is_zero()) throw ValidationError("squarefree part of the zero polynomial");
  return monic(to_uni(squarefree_part_int(primitive_integer(p))));
}

IntPoly taylor_shift(const IntPoly& f, const Integer& c) {
  std::vector<Integer> a(f.coeffs().begin(), f.coeffs().end());
  const std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) mpz_addmul(a[j - 1].get_mpz_t(), a[j].get_mpz_t(), c.get_mpz_t());
  return IntPoly(std::move(a));
}

std::string to_string(const IntPoly& f, char var) { return format(f, var); }
std::string to_string(const UniPoly& f, char var) { return format(f, var); }

}  // namespace corrh::arith
