#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dyndeg/config.hpp"
#include "dyndeg/enclosure.hpp"
#include "dyndeg/poly.hpp"

namespace dyndeg {

// exact positional description of a real algebraic number: the root at
// `root_index` (ascending) among the real roots of the irreducible monic
// `min_poly`, together with a certified enclosure. Two values are equal
// exactly when polynomial and index agree, which makes deduplication and
// comparison decidable.
struct AlgebraicValue {
  IntPolynomial min_poly;
  int root_index = 0;
  Enclosure value;

  bool same_number(const AlgebraicValue& o) const {
    return min_poly == o.min_poly && root_index == o.root_index;
  }
};

// exact -1/0/+1 comparison; refines both enclosures from the minimal
// polynomials until they separate (or proves equality positionally)
int compare_algebraic(const AlgebraicValue& a, const AlgebraicValue& b,
                      int prec_cap_bits);

// shrink the enclosure of `v` until its width is at most `tol`
void refine_algebraic(AlgebraicValue& v, const Rat& tol, int prec_cap_bits);

// first dynamical degree of the lattice action with characteristic
// polynomial P: the squared maximum root modulus, as an exact value
AlgebraicValue first_dd_of_poly(const IntPolynomial& P, const Rat& tol,
                                int prec_cap_bits);

// every monic integer polynomial of degree 2g whose roots all lie in the
// open disk of radius c, constant term forced to +-1 when the automorphism
// filter is on, real roots required to have even multiplicity
struct CandidateSet {
  int64_t g = 0;
  Rat c;
  std::vector<IntPolynomial> polys;       // survivors in lexicographic order
  std::vector<AlgebraicValue> dd_values;  // ascending, deduplicated exactly
  Int search_space = 0;                   // coefficient tuples examined
};

CandidateSet enumerate_bounded(int64_t g, const Rat& c, bool filter_automorphism,
                               const RunConfig& cfg);

struct LadderEntry {
  std::string source;         // construction, e.g. "Psi_N trace field, N = 5, 10"
  std::string family;         // "type-1", "type-2/3" or "type-4"
  std::string divisibility;   // the endomorphism-algebra degree condition on g
  AlgebraicValue lambda1;
};

// entries ascending by lambda1; equal values from different parameters are
// merged into one entry with all sources listed
struct TypeLadder {
  int64_t g = 0;
  std::vector<LadderEntry> entries;
};

// N is usable for the unit-eigenvalue ladder when the trace polynomial of
// the N-th cyclotomic polynomial has unit constant term; fails exactly at
// N = 4, N = 2^m and N = 4p^k
bool type1_admissible(unsigned N);

// cyclotomic-unit ladder: roots of unity of order N with deg Psi_N | g,
// lambda1 = (max |2cos(2 pi m / N)| over m coprime to N)^2, first `count`
// distinct values ascending
TypeLadder type1_ladder(int64_t g, int count, const Rat& tol, int prec_cap_bits);

// quadratic family x^2 + s x + t over Z (t = +-1) and over real quadratic
// fields of discriminant <= 40 (s integral, t a unit, coefficient height
// bounded); candidates are the degree-4 norms to Z of the field case
TypeLadder type23_quadratic_candidates(int64_t g, int64_t height_bound,
                                       const Rat& tol, int prec_cap_bits);

struct MinimalFirstDD {
  AlgebraicValue value;     // smallest first dynamical degree > 1 found
  std::string attained_by;  // source and family of the attaining entry
  TypeLadder ladder;        // the merged ladder the minimum was taken over
};

// merges the type-1 ladder, the quadratic family (g even) and the trivial
// unit entry, then picks the smallest value strictly above 1; supported for
// 2 <= g <= 6
MinimalFirstDD minimal_first_dd(int64_t g, const RunConfig& cfg);

} // namespace dyndeg
