#pragma once

#include <string>
#include <vector>

#include "corrheight/algebraic.hpp"

namespace corrh {

/// A place of Q(a), or for finite primes a packet of places sharing one Newton slope.
struct Place {
  bool archimedean = true;
  std::size_t root_index = 0;  // into conjugate_boxes()
  bool pair = false;           // complex embedding standing for itself and its conjugate
  Integer prime;               // finite places
  std::size_t segment = 0;

  std::string to_string() const;
};

struct PlaceValue {
  Place place;
  Rational weight;  // local degree over the global degree
  Interval logabs;  // log |a|_v
};

struct NewtonSegment {
  Rational slope;
  long length = 0;
};

/// Lower hull of (i, v_q(c_i)). A root with q-adic valuation -s lies on the slope-s segment,
/// so log|a|_q = s log q: for x - 2 at q = 2 the slope is -1 and log|2|_2 = -log 2.
std::vector<NewtonSegment> newton_polygon(const IntPoly& p, const Integer& q);

/// Every archimedean place, plus every segment at primes dividing the leading or constant
/// coefficient. `hints` are primes tried first when factoring those coefficients.
std::vector<PlaceValue> enumerate_place_values(const AlgebraicNumber& a, const std::vector<Integer>& hints = {});

/// Only the places where |a|_v can exceed 1: archimedean ones and primes dividing lc(minpoly).
std::vector<PlaceValue> enumerate_large_place_values(const AlgebraicNumber& a, const std::vector<Integer>& hints = {});

/// Sum of weight * log|a|_v; must contain 0.
Interval product_formula_check(const AlgebraicNumber& a, const std::vector<Integer>& hints = {});

/// Sum of weight * max(0, log|a|_v).
HeightEstimate height_from_places(const ProjPoint& a, const std::vector<Integer>& hints = {});

}  // namespace corrh
