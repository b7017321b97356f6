#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dyndeg/ints.hpp"
#include "dyndeg/poly.hpp"

namespace dyndeg {

// Polynomials over F_p for a word-sized prime p: coefficient vectors in [0, p),
// constant term first, trimmed. Used for modular factor patterns, the Hensel
// base case, and residue-field arithmetic.
using FpPoly = std::vector<uint64_t>;

namespace fp {

void trim(FpPoly& a);
int degree(const FpPoly& a);
bool is_zero(const FpPoly& a);
bool is_one(const FpPoly& a);
FpPoly one();
FpPoly x();
FpPoly constant(uint64_t c, uint64_t p);

FpPoly from_int_poly(const IntPolynomial& f, uint64_t p);
IntPolynomial to_int_poly(const FpPoly& a);

FpPoly add(const FpPoly& a, const FpPoly& b, uint64_t p);
FpPoly sub(const FpPoly& a, const FpPoly& b, uint64_t p);
FpPoly mul(const FpPoly& a, const FpPoly& b, uint64_t p);
FpPoly scale(const FpPoly& a, uint64_t k, uint64_t p);
FpPoly monic(const FpPoly& a, uint64_t p);
void divmod(const FpPoly& num, const FpPoly& den, FpPoly& q, FpPoly& r, uint64_t p);
FpPoly rem(const FpPoly& num, const FpPoly& den, uint64_t p);
FpPoly gcd(FpPoly a, FpPoly b, uint64_t p);  // monic gcd
// g = gcd(a, b) monic with s*a + t*b = g
void ext_gcd(const FpPoly& a, const FpPoly& b, FpPoly& g, FpPoly& s, FpPoly& t, uint64_t p);
FpPoly powmod(const FpPoly& base, const Int& e, const FpPoly& mod, uint64_t p);
FpPoly derivative(const FpPoly& a, uint64_t p);
uint64_t eval(const FpPoly& a, uint64_t v, uint64_t p);

std::vector<std::pair<FpPoly, unsigned>> squarefree_decomp(const FpPoly& f, uint64_t p);
// distinct-degree split of a squarefree monic f: list of (product of the
// irreducible factors of degree d, d), d ascending
std::vector<std::pair<FpPoly, unsigned>> ddf(const FpPoly& f, uint64_t p);
// equal-degree split: f is a squarefree monic product of irreducibles of degree d
std::vector<FpPoly> edf(const FpPoly& f, unsigned d, uint64_t p);
// all monic irreducible factors with multiplicity, deterministic order
std::vector<std::pair<FpPoly, unsigned>> factor(const FpPoly& f, uint64_t p);

// degree multiset of the irreducible factors of squarefree monic f (cheap, DDF only)
std::vector<unsigned> factor_degrees(const FpPoly& f, uint64_t p);

} // namespace fp

} // namespace dyndeg
