#include "corrheight/factor.hpp"

#include <algorithm>
#include <numeric>

#include "corrheight/modp.hpp"

namespace corrh::arith {

namespace {

using modp::Field;

Integer mod_nonneg(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

IntPoly reduce_mod(const IntPoly& a, const Integer& m) {
  std::vector<Integer> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod_nonneg(a[i], m);
  return IntPoly(std::move(c));
}

IntPoly symmetric(const IntPoly& a, const Integer& m) {
  const Integer half = m / 2;
  std::vector<Integer> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    c[i] = mod_nonneg(a[i], m);
    if (c[i] > half) c[i] -= m;
  }
  return IntPoly(std::move(c));
}

IntPoly mul_mod(const IntPoly& a, const IntPoly& b, const Integer& m) { return reduce_mod(a * b, m); }

// Division by a monic polynomial modulo m.
std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& a, const IntPoly& h, const Integer& m) {
  if (a.degree() < h.degree()) return {IntPoly{}, reduce_mod(a, m)};
  std::vector<Integer> r(a.coeffs().begin(), a.coeffs().end());
  const int dh = h.degree();
  std::vector<Integer> q(a.degree() - dh + 1);
  for (int k = a.degree() - dh; k >= 0; --k) {
    Integer t = mod_nonneg(r[k + dh], m);
    if (sgn(t) != 0)
      for (int j = 0; j <= dh; ++j) mpz_submul(r[k + j].get_mpz_t(), t.get_mpz_t(), h[j].get_mpz_t());
    q[k] = t;
  }
  r.resize(dh);
  return {IntPoly(std::move(q)), reduce_mod(IntPoly(std::move(r)), m)};
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
    throw ValidationError("leading coefficient not invertible in Hensel lifting");
  return r;
}

// s*g + t*h = 1 mod p.
std::pair<modp::Poly, modp::Poly> ext_gcd(const Field& F, const modp::Poly& g, const modp::Poly& h) {
  modp::Poly r0 = g, r1 = h, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = modp::divmod(F, r0, r1);
    modp::Poly s2 = modp::sub(F, s0, modp::mul(F, q, s1));
    modp::Poly t2 = modp::sub(F, t0, modp::mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (modp::degree(r0) != 0) throw ValidationError("Hensel factors not coprime");
  const std::uint64_t inv = F.inv(r0[0]);
  return {modp::scale(F, s0, inv), modp::scale(F, t0, inv)};
}

IntPoly to_int(const modp::Poly& a) {
  std::vector<Integer> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = Integer(static_cast<unsigned long>(a[i]));
  return IntPoly(std::move(c));
}

// Factor tree lifting. f = lc * prod(factors) mod p with monic factors; returns monic lifts mod p^(2^steps).
std::vector<IntPoly> lift(const IntPoly& f, const std::vector<modp::Poly>& factors, std::uint64_t p, int steps) {
  Integer M(static_cast<unsigned long>(p));
  for (int i = 0; i < steps; ++i) M *= M;
  if (factors.size() == 1) {
    const Integer li = inverse_mod(mod_nonneg(f.lead(), M), M);
    return {reduce_mod(f.scaled(li), M)};
  }
  const Field F{p};
  const std::size_t half = factors.size() / 2;
  std::vector<modp::Poly> left(factors.begin(), factors.begin() + half);
  std::vector<modp::Poly> right(factors.begin() + half, factors.end());
  modp::Poly gl{F.from(f.lead())}, hr{1};
  for (auto& u : left) gl = modp::mul(F, gl, u);
  for (auto& u : right) hr = modp::mul(F, hr, u);
  auto [s0, t0] = ext_gcd(F, gl, hr);
  IntPoly g = to_int(gl), h = to_int(hr), s = to_int(s0), t = to_int(t0);
  Integer m(static_cast<unsigned long>(p));
  for (int i = 0; i < steps; ++i) {
    const Integer m2 = m * m;
    IntPoly e = reduce_mod(f - g * h, m2);
    auto [q, r] = divmod_monic(mul_mod(s, e, m2), h, m2);
    IntPoly g2 = reduce_mod(g + t * e + q * g, m2);
    IntPoly h2 = reduce_mod(h + r, m2);
    IntPoly b = reduce_mod(s * g2 + t * h2 - IntPoly{1}, m2);
    auto [c, d] = divmod_monic(mul_mod(s, b, m2), h2, m2);
    s = reduce_mod(s - d, m2);
    t = reduce_mod(t - t * b - c * g2, m2);
    g = std::move(g2);
    h = std::move(h2);
    m = m2;
  }
  auto lo = lift(g, left, p, steps);
  auto hi = lift(h, right, p, steps);
  lo.insert(lo.end(), hi.begin(), hi.end());
  return lo;
}

// All subset sums of the factor degrees.
std::vector<bool> degree_sums(const std::vector<int>& degs, int n) {
  std::vector<bool> ok(n + 1, false);
  ok[0] = true;
  for (int d : degs)
    for (int s = n; s >= d; --s)
      if (ok[s - d]) ok[s] = true;
  return ok;
}

Integer isqrt_ceil(const Integer& a) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  if (r * r < a) ++r;
  return r;
}

struct PrimeChoice {
  std::uint64_t p = 0;
  std::vector<modp::Poly> factors;
  std::vector<bool> sums;
  bool irreducible = false;
};

PrimeChoice choose_prime(const IntPoly& f, int wanted) {
  const int n = f.degree();
  PrimeChoice best;
  std::vector<bool> allowed(n + 1, true);
  int found = 0;
  Integer cand(2);
  for (int attempts = 0; found < wanted && attempts < 400; ++attempts) {
    mpz_nextprime(cand.get_mpz_t(), cand.get_mpz_t());
    const std::uint64_t p = cand.get_ui();
    if (mpz_divisible_ui_p(f.lead().get_mpz_t(), p)) continue;
    const Field F{p};
    modp::Poly fm = modp::monic(F, modp::reduce(f, p));
    if (!modp::is_squarefree(F, fm)) continue;
    ++found;
    auto degs = modp::factor_degrees(F, fm);
    auto sums = degree_sums(degs, n);
    int interior = 0;
    for (int s = 1; s < n; ++s) {
      allowed[s] = allowed[s] && sums[s];
      if (allowed[s]) ++interior;
    }
    if (interior == 0) {
      best.irreducible = true;
      return best;
    }
    if (best.p == 0 || degs.size() < best.factors.size()) {
      best.p = p;
      best.factors = modp::factor_squarefree(F, fm, p);
    }
  }
  if (best.p == 0) throw BudgetExceeded("no suitable prime for factorization");
  best.sums = allowed;
  return best;
}

}  // namespace

bool poly_less(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

bool irreducible_by_degrees(const IntPoly& f, int primes) {
  if (f.degree() <= 0) return false;
  if (f.degree() == 1) return true;
  return choose_prime(f, primes).irreducible;
}

std::vector<IntPoly> factor_squarefree_int(const IntPoly& f0, const FactorOptions& opt) {
  IntPoly f = primitive_part(f0);
  const int n = f.degree();
  if (n <= 0) return {};
  if (n == 1) return {f};
  PrimeChoice pc = choose_prime(f, opt.primes_tried);
  if (pc.irreducible || pc.factors.size() == 1) return {f};

  // Mignotte-type bound on coefficients of lc * (any factor).
  Integer norm2 = 0;
  for (const auto& c : f.coeffs()) norm2 += c * c;
  Integer bound = isqrt_ceil(norm2) * abs(f.lead());
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  bound = 2 * bound + 1;
  int steps = 0;
  Integer M(static_cast<unsigned long>(pc.p));
  while (M <= bound) {
    M *= M;
    ++steps;
  }
  std::vector<IntPoly> lifted = lift(f, pc.factors, pc.p, steps);

  std::vector<IntPoly> out;
  std::vector<std::size_t> idx(lifted.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::uint64_t examined = 0;
  for (std::size_t s = 1; 2 * s <= idx.size(); ++s) {
    bool restart = true;
    while (restart) {
      restart = false;
      const std::size_t r = idx.size();
      if (2 * s > r) break;
      std::vector<std::size_t> sel(s);
      std::iota(sel.begin(), sel.end(), 0);
      const Integer lc = f.lead();
      for (;;) {
        if (++examined > opt.recombination_budget)
          throw BudgetExceeded("factor recombination budget exhausted");
        int deg = 0;
        for (auto k : sel) deg += lifted[idx[k]].degree();
        bool plausible = deg < static_cast<int>(pc.sums.size()) && pc.sums[deg];
        if (plausible) {
          // constant-term filter before forming the full product
          Integer c0 = mod_nonneg(lc, M);
          for (auto k : sel) c0 = mod_nonneg(c0 * lifted[idx[k]].coeff(0), M);
          if (c0 > M / 2) c0 -= M;
          const Integer target = lc * f.coeff(0);
          if (sgn(c0) == 0 ? sgn(target) != 0 : !mpz_divisible_p(target.get_mpz_t(), c0.get_mpz_t()))
            plausible = false;
        }
        if (plausible) {
          IntPoly g = IntPoly{lc};
          for (auto k : sel) g = mul_mod(g, lifted[idx[k]], M);
          g = primitive_part(symmetric(g, M));
          if (auto q = try_exact_div(f, g)) {
            out.push_back(g);
            f = primitive_part(*q);
            std::vector<std::size_t> rest;
            for (std::size_t k = 0; k < r; ++k)
              if (std::find(sel.begin(), sel.end(), k) == sel.end()) rest.push_back(idx[k]);
            idx = std::move(rest);
            restart = true;
            break;
          }
        }
        // next combination
        std::size_t i = s;
        while (i > 0 && sel[i - 1] == r - s + i - 1) --i;
        if (i == 0) break;
        ++sel[i - 1];
        for (std::size_t j = i; j < s; ++j) sel[j] = sel[j - 1] + 1;
      }
    }
  }
  if (f.degree() > 0) out.push_back(f);
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

Factorization factor_with_content(const UniPoly& p, const FactorOptions& opt) {
  if (p.is_zero()) throw ValidationError("factorization of the zero polynomial");
  auto [unit, prim] = split_content(p);
  Factorization out{unit, {}};
  for (auto& [s, e] : squarefree_decomposition(prim))
    for (auto& g : factor_squarefree_int(s, opt)) out.factors.emplace_back(g, e);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  return out;
}

std::vector<std::pair<UniPoly, unsigned>> factor_over_rationals(const UniPoly& p) {
  std::vector<std::pair<UniPoly, unsigned>> out;
  for (auto& [g, e] : factor_with_content(p).factors) out.emplace_back(to_uni(g), e);
  return out;
}

}  // namespace corrh::arith
