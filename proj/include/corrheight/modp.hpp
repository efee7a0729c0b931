#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "corrheight/poly.hpp"

namespace corrh::arith::modp {

// Polynomials over F_p for p < 2^31, constant term first, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

struct Field {
  std::uint64_t p;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;  // a != 0
  std::uint64_t from(const Integer& z) const;
};

void trim(Poly& a);
int degree(const Poly& a);
Poly reduce(const IntPoly& f, std::uint64_t p);
IntPoly lift_symmetric(const Poly& a, std::uint64_t p);

Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly mul(const Field& F, const Poly& a, const Poly& b);
Poly scale(const Field& F, const Poly& a, std::uint64_t s);
std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b);
Poly rem(const Field& F, const Poly& a, const Poly& b);
Poly monic(const Field& F, const Poly& a);
Poly gcd(const Field& F, Poly a, Poly b);
Poly derivative(const Field& F, const Poly& a);
std::uint64_t eval(const Field& F, const Poly& a, std::uint64_t x);
Poly powmod(const Field& F, const Poly& base, const Integer& e, const Poly& m);

bool is_squarefree(const Field& F, const Poly& a);

// Distinct-degree factorization of a monic squarefree polynomial: (product, degree) pairs.
std::vector<std::pair<Poly, int>> distinct_degree(const Field& F, const Poly& f);
// Equal-degree splitting (Cantor-Zassenhaus), odd p. Deterministic for a given seed.
std::vector<Poly> equal_degree(const Field& F, const Poly& f, int d, std::uint64_t seed);
// Monic irreducible factors of a monic squarefree polynomial.
std::vector<Poly> factor_squarefree(const Field& F, const Poly& f, std::uint64_t seed = 1);
// Degrees of the irreducible factors, without splitting.
std::vector<int> factor_degrees(const Field& F, const Poly& f);
bool is_irreducible(const Field& F, const Poly& f);
// Roots in F_p of a nonzero polynomial (distinct, ascending).
std::vector<std::uint64_t> roots(const Field& F, const Poly& f, std::uint64_t seed = 1);

}  // namespace corrh::arith::modp
