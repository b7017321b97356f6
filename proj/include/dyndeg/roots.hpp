#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dyndeg/enclosure.hpp"
#include "dyndeg/poly.hpp"

namespace dyndeg {

// disk in the complex plane with rational center, certified to contain at
// least one root; rad_sq is an exact upper bound on the squared radius
struct ComplexDisk {
  Rat re, im;
  Rat rad_sq;
};

// real root location: isolating interval with non-root endpoints (or a
// degenerate exact point for rational roots)
struct RealRootLoc {
  RatInterval iv;
  std::optional<Rat> exact;
};

// unit-circle structure of a squarefree polynomial with nonzero constant term
struct UnitCircleSplit {
  bool plus_one = false;            // x - 1 divides
  bool minus_one = false;           // x + 1 divides
  std::vector<RatInterval> w_ivs;   // isolating intervals in (-2, 2), ascending,
                                    // one per unit-circle conjugate pair
  IntPolynomial reciprocal_core;    // gcd with the reciprocal, ±1 roots stripped
  IntPolynomial trace_poly;         // trace polynomial of the core (zero if core constant)
};

// complete certified root layout of a squarefree polynomial:
//   deg = [zero] + #real + 2*#unit pairs + 2*#off-circle disks
struct RootLayout {
  IntPolynomial poly;                // squarefree primitive, the analyzed polynomial
  bool zero_root = false;
  std::vector<RealRootLoc> reals;    // ascending; excludes 0
  UnitCircleSplit unit;              // ±1 flags count toward reals as well
  std::vector<ComplexDisk> upper;    // non-real upper-half roots off the unit circle,
                                     // pairwise disjoint, one root each
};

// moduli of all roots with multiplicity, descending by interval midpoint
struct RootProfile {
  int degree = 0;
  std::vector<Enclosure> moduli;
  int real_count = 0;
  int unit_circle_count = 0;
};

RootLayout analyze_squarefree(const IntPolynomial& sf, const Rat& tol, int prec_cap_bits);
// shrink all real intervals and disk radii below the width target
void refine_layout(RootLayout& layout, const Rat& width_target, int prec_cap_bits);

RootProfile root_profile(const IntPolynomial& p, const Rat& tol, int prec_cap_bits);

// exact count of roots on the unit circle, with multiplicity; requires
// nonzero polynomial with nonzero constant term
int unit_circle_root_count(const IntPolynomial& p);

// enclosure of the largest root modulus
Enclosure max_modulus_certified(const IntPolynomial& p, const Rat& tol, int prec_cap_bits);

// -- building blocks ------------------------------------------------------

// isolating intervals for all real roots of a squarefree polynomial,
// ascending, endpoints non-roots; rational roots are exact points
std::vector<RealRootLoc> isolate_real_roots(const IntPolynomial& sf);
// bisection below the width target; iv must isolate a simple root
RatInterval refine_real_root(const IntPolynomial& sf, RatInterval iv, const Rat& width_target);
// isolating intervals for the real roots of sf inside (lo, hi)
std::vector<RatInterval> isolate_real_roots_in(const IntPolynomial& sf, const Rat& lo, const Rat& hi);

UnitCircleSplit unit_circle_split(const IntPolynomial& sf);

// modulus and squared-modulus intervals of the root inside a disk
RatInterval disk_modulus_sq(const ComplexDisk& d, int prec_bits);
RatInterval disk_modulus(const ComplexDisk& d, int prec_bits);
RatInterval real_root_modulus_sq(const RealRootLoc& r);
RatInterval real_root_modulus(const RealRootLoc& r);

// Cauchy bound: strict bound on the absolute value of every root
Rat cauchy_root_bound(const IntPolynomial& p);

// double-precision root guesses from the companion matrix (with radix scaling)
std::vector<std::pair<double, double>> double_root_guesses(const IntPolynomial& sf);

} // namespace dyndeg
