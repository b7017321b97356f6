#pragma once

#include <utility>
#include <vector>

#include "dyndeg/ints.hpp"
#include "dyndeg/poly.hpp"

namespace dyndeg {

// p = content * product of factors[i].first ^ factors[i].second, with each
// factor primitive, irreducible over the rationals, positive leading
// coefficient, sorted by degree then coefficients
struct RationalFactorization {
  Int content = 1;
  std::vector<std::pair<IntPolynomial, unsigned>> factors;
};

RationalFactorization factor_over_rationals(const IntPolynomial& p);

// irreducible factors of a squarefree primitive polynomial, sorted
std::vector<IntPolynomial> factor_squarefree_primitive(const IntPolynomial& f);

// distinct rational roots (ascending)
std::vector<Rat> rational_roots(const IntPolynomial& p);

} // namespace dyndeg
