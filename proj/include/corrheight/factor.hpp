#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "corrheight/upoly.hpp"

namespace corrh::arith {

struct Factorization {
  Rational unit;  // p = unit * prod(f^e)
  std::vector<std::pair<IntPoly, unsigned>> factors;
};

struct FactorOptions {
  // subsets examined during recombination before giving up
  std::uint64_t recombination_budget = 2'000'000;
  int primes_tried = 6;
};

/// Irreducible factors of a primitive squarefree polynomial of positive degree.
std::vector<IntPoly> factor_squarefree_int(const IntPoly& f, const FactorOptions& opt = {});
Factorization factor_with_content(const UniPoly& p, const FactorOptions& opt = {});
/// Factors are primitive integer polynomials with positive leading coefficient,
/// ordered by degree and then coefficients.
std::vector<std::pair<UniPoly, unsigned>> factor_over_rationals(const UniPoly& p);

/// Cheap irreducibility proof via factor degrees modulo several primes. True means
/// certainly irreducible; false means undecided.
bool irreducible_by_degrees(const IntPoly& f, int primes = 6);

/// Ordering used for factor lists: degree, then coefficients from the top.
bool poly_less(const IntPoly& a, const IntPoly& b);

}  // namespace corrh::arith
