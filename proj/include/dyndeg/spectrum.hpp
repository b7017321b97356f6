#pragma once

#include <string>
#include <vector>

#include "dyndeg/enclosure.hpp"
#include "dyndeg/poly.hpp"

namespace dyndeg {

// square integer matrix, row-major
struct RationalRepMatrix {
  int dim = 0;
  std::vector<Int> entries;

  RationalRepMatrix() = default;
  explicit RationalRepMatrix(int n) : dim(n), entries(static_cast<size_t>(n) * n, Int(0)) {}

  Int& at(int i, int j) { return entries[static_cast<size_t>(i) * dim + j]; }
  const Int& at(int i, int j) const { return entries[static_cast<size_t>(i) * dim + j]; }

  static RationalRepMatrix identity(int n);
  static RationalRepMatrix scalar(int n, const Int& m);
  // block-diagonal matrix of `copies` companion blocks of monic f; its
  // characteristic polynomial is f^copies
  static RationalRepMatrix companion_block(const IntPolynomial& f, int copies);
};

struct GaussianRat {
  Rat re, im;

  GaussianRat() : re(0), im(0) {}
  GaussianRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  GaussianRat operator+(const GaussianRat& o) const { return {re + o.re, im + o.im}; }
  GaussianRat operator-(const GaussianRat& o) const { return {re - o.re, im - o.im}; }
  GaussianRat operator*(const GaussianRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussianRat operator/(const GaussianRat& o) const;
  bool is_zero() const { return re == 0 && im == 0; }
  Rat norm() const { return re * re + im * im; }
};

// square matrix over the Gaussian rationals, row-major
struct AnalyticRepMatrix {
  int dim = 0;
  std::vector<GaussianRat> entries;

  AnalyticRepMatrix() = default;
  explicit AnalyticRepMatrix(int n) : dim(n), entries(static_cast<size_t>(n) * n) {}

  GaussianRat& at(int i, int j) { return entries[static_cast<size_t>(i) * dim + j]; }
  const GaussianRat& at(int i, int j) const { return entries[static_cast<size_t>(i) * dim + j]; }

  static AnalyticRepMatrix scalar(int n, const GaussianRat& v);
  // realification: each entry a+bi becomes the 2x2 block [[a,-b],[b,a]];
  // entries must have integer parts
  RationalRepMatrix realification() const;
};

// dynamical degrees of the action described by the source: lambda_k is the
// product of the k largest squared eigenvalue moduli, one representative per
// conjugate pair
struct DynamicalSpectrum {
  int g = 0;
  std::vector<Enclosure> lambdas;  // lambda_0 .. lambda_g, lambda_0 exactly 1
  int multiplicity = 1;            // uniform char-root multiplicity (2g / deg F)
  std::string source;
};

DynamicalSpectrum spectrum_from_min_poly(const IntPolynomial& F, int g, const Rat& tol,
                                         int prec_cap_bits);
DynamicalSpectrum spectrum_from_matrix(const RationalRepMatrix& M, const Rat& tol,
                                       int prec_cap_bits);

// exact determinant by fraction-free elimination
Int det_exact(const RationalRepMatrix& M);
// exact determinant over the Gaussian rationals
GaussianRat det_exact(const AnalyticRepMatrix& A);

// monic characteristic polynomial det(xI - M), computed exactly
IntPolynomial char_polynomial(const RationalRepMatrix& M);

// fixed-point count of the endomorphism with rational representation M:
// det(I - M), exact; 0 signals a positive-dimensional fixed locus
Int fix_count_rational(const RationalRepMatrix& M);

// checks |det(I - A)|^2 = det(I - M) for an analytic/rational representation
// pair of the same endomorphism; exact on Gaussian-rational input
struct FixConsistencyReport {
  bool ok = false;
  GaussianRat analytic_det;  // det(I - A)
  Rat analytic_norm;         // |det(I - A)|^2
  Int rational_det;          // det(I - M)
  std::string detail;
};
FixConsistencyReport fix_count_consistency(const AnalyticRepMatrix& A,
                                           const RationalRepMatrix& M);

// verifies det(nI - M) = F(n)^{2g/deg F} for the companion-block model matrix
// M with characteristic polynomial F^{2g/deg F}
struct ShiftedFixReport {
  bool ok = false;
  Int det_value = 0;   // det(nI - M), exact
  Int poly_value = 0;  // F(n)^{2g/deg F}
  std::string detail;
};
ShiftedFixReport shifted_fix_identity(const IntPolynomial& F, int g, const Int& n);

} // namespace dyndeg
