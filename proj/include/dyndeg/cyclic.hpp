#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dyndeg/config.hpp"
#include "dyndeg/enclosure.hpp"
#include "dyndeg/poly.hpp"

namespace dyndeg {

// Certificate that the degree-p cyclic algebra built on L = Q(zeta_p, p-th
// root of gamma) with u^p = q is a division algebra. The witness is the
// power-residue value gamma^((q^f-1)/p) in the residue field F_q[t]/(h): it
// differs from 1 exactly when gamma is not a p-th power there, which forces
// x^p - gamma to stay irreducible and the algebra to have no zero divisors.
struct CyclicAlgebraCertificate {
  int64_t p = 0;        // odd prime, the cyclic degree
  int64_t k = 0;        // gamma = zeta^k + zeta^(-k); 0 in the radicand variant
  Int radicand = 0;     // gamma = a for the integer-radicand variant; 0 otherwise
  int64_t q = 0;        // accepted residue characteristic
  int64_t f = 0;        // residue degree, the multiplicative order of q mod p
  IntPolynomial residue_factor;  // irreducible degree-f factor of Phi_p mod q,
                                 // coefficients lifted to [0, q)
  IntPolynomial gamma_residue;   // image of gamma in F_q[t]/(residue_factor)
  Int power_residue_exponent = 0;  // (q^f - 1)/p
  IntPolynomial witness;           // gamma_residue^exponent, neither 0 nor 1
  std::string algebra_descriptor;  // symbolic direct sum of u^i L with u^p = q
  IntPolynomial min_poly_over_Q;   // Psi_p(x^p), or x^p - a for the radicand variant
  Int variety_dimension = 0;       // p^2 (p-1) / 2
  Enclosure lambda1;               // (2 cos(pi/p))^(2/p), or a^(2/p)
  bool invertible = true;          // false when 1/lambda1 is not an algebraic integer
};

struct KummerDegreeCheck {
  bool ok = false;
  IntPolynomial poly;  // Psi_p(x^p), the minimal polynomial candidate
  int64_t degree = 0;
  std::string detail;
};

// verifies Psi_p(x^p) is irreducible of degree p(p-1)/2 over Q, so adjoining
// a p-th root of gamma = zeta^k + zeta^(-k) yields a degree-p extension of
// Q(zeta_p); the polynomial does not depend on k
KummerDegreeCheck kummer_degree_check(int64_t p, int64_t k);

// single-prime Frobenius data: everything needed to decide whether q makes
// gamma a p-th power non-residue
struct FrobeniusProbe {
  int64_t q = 0;
  int64_t f = 0;
  IntPolynomial residue_factor;
  IntPolynomial gamma_residue;
  Int exponent = 0;
  IntPolynomial witness;
  bool accepted = false;  // witness is neither 0 nor 1
};

FrobeniusProbe frobenius_probe(int64_t p, int64_t k, int64_t q);
FrobeniusProbe frobenius_probe_radicand(int64_t p, const Int& a, int64_t q);

// scans primes q <= cfg.q_bound in ascending order, skipping q = p, and
// returns the certificate for the first q whose witness is nontrivial;
// throws BoundExhausted when the bound runs out
CyclicAlgebraCertificate frobenius_prime_search(int64_t p, int64_t k,
                                                const RunConfig& cfg);

// integer-radicand variant with gamma = a >= 2 and a not a perfect p-th
// power; additionally skips primes dividing a, and p = 3 is allowed
CyclicAlgebraCertificate frobenius_prime_search_radicand(int64_t p, const Int& a,
                                                         const RunConfig& cfg);

// true when x^p - gamma_residue has no root in F_q[t]/(residue_factor); for
// prime p this is equivalent to irreducibility, since a reducible x^p - c
// forces c to be a p-th power and then x^p - c splits off a linear factor.
// Enumerates all q^f field elements, so it requires q^f <= cap.
bool pth_power_absent_brute_force(int64_t p, int64_t q,
                                  const IntPolynomial& residue_factor,
                                  const IntPolynomial& gamma_residue,
                                  uint64_t cap);

// certified enclosure of (2 cos(pi/p))^(2/p), proved strictly inside
// (1, 4^(1/p)); width at most tol
Enclosure cyclic_lambda1(int64_t p, const Rat& tol, int prec_cap_bits);

// certified enclosure of a^(2/p) for the radicand variant, proved > 1
Enclosure radicand_lambda1(int64_t p, const Int& a, const Rat& tol,
                           int prec_cap_bits);

// enclosures of (2 cos(pi/p))^(2/p) for each listed prime, certified
// pairwise strictly decreasing and every term > 1
std::vector<Enclosure> lambda1_sequence(const std::vector<int64_t>& ps,
                                        const Rat& tol, int prec_cap_bits);

// smallest prime p >= 3 with a^(2/p) certified inside (1, 1 + eps)
int64_t smallest_prime_below_eps(const Int& a, const Rat& eps, const Rat& tol,
                                 int prec_cap_bits);

// structural self-check of the anti-involution on the monomial basis
// u^i z^j g^(m/p) (z = zeta_p, g^(1/p) the adjoined root): the map
// phi(u^i z^j g^(m/p)) = u^i z^(i m - j) g^(m/p) squares to the identity
// and reverses every product of two basis monomials
bool anti_involution_self_check(int64_t p);

} // namespace dyndeg
