#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace corrh::arith {

using Integer = mpz_class;
/// Canonical rational: gcd(|num|, den) = 1 and den > 0 (gmpxx keeps this after canonicalize()).
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Number of bits of |z| (0 for z = 0).
std::size_t bit_length(const Integer& z);

/// p-adic valuation of a nonzero integer.
long valuation(const Integer& z, const Integer& p);
/// p-adic valuation of a nonzero rational.
long valuation(const Rational& r, const Integer& p);

bool is_probable_prime(const Integer& z);

/// Primes in increasing order starting at `from` (inclusive).
std::vector<std::uint64_t> primes_from(std::uint64_t from, std::size_t count);

/// Prime factorisation of |z| (z != 0) as (prime, exponent) pairs in increasing order.
/// Trial division followed by Pollard-Brent rho; a cofactor that cannot be split within
/// `rho_budget` iterations raises BudgetExceeded. `hints` are primes tried first.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& z,
                                                         const std::vector<Integer>& hints = {},
                                                         std::uint64_t rho_budget = 2'000'000);

/// max(|num|, den); the naive height of r is its logarithm.
Integer naive_height_integer(const Rational& r);

}  // namespace corrh::arith
