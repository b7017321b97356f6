#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dyndeg/config.hpp"
#include "dyndeg/enclosure.hpp"
#include "dyndeg/poly.hpp"
#include "dyndeg/spectrum.hpp"

namespace dyndeg {

// solution of Z^2 - p X^2 = 1
struct PellSolution {
  Int X = 0;
  Int Z = 1;
};

// fundamental solution (smallest X > 0) via the continued fraction of sqrt(p);
// p must be >= 2 and not a perfect square
PellSolution pell_fundamental(int64_t p);
// k-th power of a solution under the group law of the Pell conic
PellSolution pell_power(const PellSolution& s, int64_t p, unsigned k);

// Hilbert symbol (a, b)_v over Q for nonzero a, b; place 0 is the real place,
// any other value must be a prime
int hilbert_symbol(const Int& a, const Int& b, uint64_t place);

// decides whether the quaternion algebra (a, b / Q) is a division algebra by
// evaluating Hilbert symbols at the real place, 2, and every odd prime dividing
// a or b; checks the product formula as a self-test and can report the symbols
bool quaternion_division_exact(const Int& a, const Int& b, std::string* detail = nullptr);

enum class WitnessMode { Exact, IsotropyAbsent };

struct DivisionWitness {
  WitnessMode mode = WitnessMode::Exact;
  int64_t p = 0;
  int64_t height = 0;  // exhaustive isotropy search height (0 in exact mode)
  std::string detail;
};

// smallest prime p <= prime_bound carrying a division witness for the algebra
// (a, p / F) with F = Q[w]/(T) and a given by a_repr(w).  Degree-one T uses
// exact Hilbert symbols; larger degrees fall back to an exhaustive search for
// isotropic vectors of bounded coefficient height.
DivisionWitness division_witness_search(const IntPolynomial& a_repr, const IntPolynomial& T,
                                        int64_t prime_bound, int64_t height_bound);

// smallest n in [1, scan_cap] with |1 - gamma^n| < eps certified for every
// unit-circle embedding, where w = gamma + 1/gamma runs over the given
// isolating intervals of roots of T
int64_t near_one_power_search(const IntPolynomial& T, const std::vector<RatInterval>& unit_ws,
                              const Rat& eps, int prec_cap_bits, int64_t scan_cap);

struct PositivityResult {
  int64_t N = 0;        // even exponent used for the unit-group element
  PellSolution pell;    // possibly a power of the supplied solution
  IntPolynomial x, y, z;  // components of c, reduced mod T
  std::vector<Enclosure> c_squared;  // value of c^2 at every real embedding of F
};

// searches for an even exponent N (and a Pell scaling) making
// c = x i + y j + z ij in (a, p / F) satisfy c^2 < 0 at every real embedding,
// where a = w^2 - 4 and the components come from the Chebyshev basis
//   x = pX V_N(w), y = V_{N+1}(w), z = Z U_N(w)  (V_m = gamma^m + gamma^-m)
PositivityResult positivity_search(const IntPolynomial& T, int64_t p, const PellSolution& pell,
                                   const RunConfig& cfg);

// certified enclosures of f at every real root of T, in root order
std::vector<Enclosure> evaluate_at_real_roots(const IntPolynomial& f, const IntPolynomial& T,
                                              const Rat& tol, int prec_cap_bits);

enum class RealizationType { Type1, Type2 };

struct RealizationCertificate {
  IntPolynomial input_poly;
  int g = 0;
  RealizationType type_tag = RealizationType::Type2;
  IntPolynomial trace_field_poly;  // minimal polynomial of w = gamma + 1/gamma
  IntPolynomial a_repr;            // a = w^2 - 4 as a polynomial in w
  Enclosure gamma_w;               // w at the distinguished unit-circle embedding
  DivisionWitness division;
  PellSolution pell;
  int64_t exponent_N = 0;
  IntPolynomial c_x, c_y, c_z;  // components of c, reduced mod trace_field_poly
  std::vector<Enclosure> c_squared_conjugates;
  DynamicalSpectrum claimed_spectrum;
};

// totally-real route: P monic irreducible with all roots real and |P(0)| = 1
RealizationCertificate realize_type1(const IntPolynomial& P, const RunConfig& cfg);
// quaternionic route: P monic irreducible, roots real or on the unit circle
// with at least one unit-circle pair, |P(0)| = 1, P != x +- 1
RealizationCertificate realize_type2(const IntPolynomial& P, const RunConfig& cfg);

struct CertificateCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  bool ok = false;
  std::vector<CertificateCheck> checks;
};

// independent re-validation of a certificate: recomputes the derived data and
// re-certifies the sign conditions instead of trusting the stored values
VerificationReport verify_certificate(const RealizationCertificate& cert, const RunConfig& cfg);

} // namespace dyndeg
