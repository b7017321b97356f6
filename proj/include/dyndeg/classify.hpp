#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dyndeg/enclosure.hpp"
#include "dyndeg/poly.hpp"
#include "dyndeg/roots.hpp"

namespace dyndeg {

struct KroneckerResult {
  bool all_roots_of_unity = false;
  std::vector<int> orders;    // ascending, one entry per root, when successful
  std::string failure_reason; // set otherwise
};
// decides whether every root is a root of unity; requires monic input
KroneckerResult kronecker_test(const IntPolynomial& p);

// order of the roots of an irreducible monic factor found by iterating the
// power transform until it collapses to (x-1)^deg; 0 when the coefficient
// bound is violated or max_order is reached (roots are not roots of unity)
int root_of_unity_order_by_iteration(const IntPolynomial& factor, int max_order);

struct SalemResult {
  bool is_salem = false;
  std::string reason;
  std::optional<Enclosure> lambda;
};
SalemResult salem_check(const IntPolynomial& p, const Rat& tol, int prec_cap_bits);

struct PisotResult {
  bool is_pisot = false;
  std::string reason;
  std::optional<Enclosure> lambda;
};
PisotResult pisot_check(const IntPolynomial& p, const Rat& tol, int prec_cap_bits);

struct EligibilityResult {
  bool eligible = false;
  std::string reason;
  int real_count = 0;
  int unit_count = 0;
  bool constant_pm1 = false;
};
// eligibility for the realization pipeline: irreducible monic polynomial whose
// roots are all real or on the unit circle, with at least one unit-circle root
EligibilityResult main_theorem_eligible(const IntPolynomial& p);

enum class SqrtBranch { Whole, Split };
struct SqrtMinPolyResult {
  SqrtBranch branch;
  IntPolynomial q; // minimal polynomial of sqrt(lambda)
};
// minimal polynomial of the square root of the Salem root of p:
// either p(x^2) itself (Whole) or the factor q with q(x) q(-x) = p(x^2) (Split)
SqrtMinPolyResult sqrt_min_poly(const IntPolynomial& salem_poly, const Rat& tol,
                                int prec_cap_bits);

struct NthRootWitness {
  IntPolynomial s_poly;       // roots are the n-th powers of q's roots
  IntPolynomial salem_factor; // the Salem factor of s_poly
  int unit_count;             // unit-circle roots of q, at least 1
};
// certifies that the minimal polynomial q of an n-th root of a Salem number
// keeps an algebraic conjugate on the unit circle
NthRootWitness nth_root_conjugate_witness(const IntPolynomial& q, int n, const Rat& tol,
                                          int prec_cap_bits);

struct PolynomialClass {
  enum class Tag { RootsOfUnity, Salem, Pisot, MainTheoremEligible, TotallyRealUnit, Other };
  Tag tag = Tag::Other;
  std::vector<int> orders;         // RootsOfUnity
  std::optional<Enclosure> lambda; // Salem / Pisot
  int real_count = 0;
  int unit_count = 0;
  std::string reason; // Other
};
PolynomialClass classify(const IntPolynomial& p, const Rat& tol, int prec_cap_bits);

const char* class_tag_name(PolynomialClass::Tag tag);

} // namespace dyndeg
