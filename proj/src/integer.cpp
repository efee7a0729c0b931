#include "corrheight/integer.hpp"

#include <algorithm>
#include <random>

#include "corrheight/errors.hpp"

namespace corrh::arith {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ValidationError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::size_t bit_length(const Integer& z) {
  if (z == 0) return 0;
  return mpz_sizeinbase(z.get_mpz_t(), 2);
}

long valuation(const Integer& z, const Integer& p) {
  if (z == 0) throw ValidationError("valuation of zero");
  Integer t = z;
  return static_cast<long>(mpz_remove(t.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rational& r, const Integer& p) {
  return valuation(r.get_num(), p) - valuation(r.get_den(), p);
}

bool is_probable_prime(const Integer& z) {
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

std::vector<std::uint64_t> primes_from(std::uint64_t from, std::size_t count) {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  Integer p = from > 0 ? Integer(static_cast<unsigned long>(from - 1)) : Integer(0);
  while (out.size() < count) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    out.push_back(p.get_ui());
  }
  return out;
}

namespace {

// Pollard-Brent rho; returns a nontrivial factor or 0 when the budget runs out.
Integer pollard_brent(const Integer& n, std::uint64_t& budget) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ mpz_get_ui(n.get_mpz_t()));
  while (budget > 0) {
    Integer y = Integer(static_cast<unsigned long>(rng() % 1'000'000'007ULL)) % n;
    Integer c = Integer(static_cast<unsigned long>(1 + rng() % 1'000'000'007ULL)) % n;
    Integer g = 1, r = 1, q = 1, x, ys;
    const std::uint64_t m = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r.get_ui(); ++i) y = (y * y + c) % n;
      std::uint64_t k = 0;
      do {
        ys = y;
        const std::uint64_t lim = std::min<std::uint64_t>(m, r.get_ui() - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          Integer d = abs(x - y);
          q = (q * d) % n;
        }
        g = gcd(q, n);
        k += lim;
        budget = budget > lim ? budget - lim : 0;
      } while (k < r.get_ui() && g == 1 && budget > 0);
      r *= 2;
    } while (g == 1 && budget > 0);
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        g = gcd(Integer(abs(x - ys)), n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

void split(const Integer& n, std::vector<Integer>& primes, std::uint64_t& budget) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    primes.push_back(n);
    return;
  }
  Integer d = pollard_brent(n, budget);
  if (d == 0) throw BudgetExceeded("integer factorisation budget exhausted on a " +
                                   std::to_string(bit_length(n)) + "-bit cofactor");
  split(d, primes, budget);
  split(n / d, primes, budget);
}

}  // namespace

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& z,
                                                         const std::vector<Integer>& hints,
                                                         std::uint64_t rho_budget) {
  if (z == 0) throw ValidationError("cannot factor zero");
  Integer n = abs(z);
  std::vector<Integer> primes;
  auto strip = [&](const Integer& p) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  };
  for (const auto& h : hints)
    if (h > 1) strip(h);
  for (unsigned long p = 2; p < 10000 && n > 1; p = (p == 2 ? 3 : p + 2)) {
    if (Integer(p) * Integer(p) > n) break;
    strip(Integer(p));
  }
  std::uint64_t budget = rho_budget;
  split(n, primes, budget);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Integer, unsigned>> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1u);
  }
  return out;
}

Integer naive_height_integer(const Rational& r) {
  Integer a = abs(r.get_num());
  return a > r.get_den() ? a : Integer(r.get_den());
}

}  // namespace corrh::arith
