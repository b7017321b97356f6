#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dyndeg/ints.hpp"

namespace dyndeg {

// Dense univariate integer polynomial, constant term first.
// The zero polynomial has an empty coefficient vector and degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

  static IntPolynomial zero() { return IntPolynomial(); }
  static IntPolynomial constant(Int v) { return IntPolynomial({std::move(v)}); }
  static IntPolynomial x() { return IntPolynomial({Int(0), Int(1)}); }
  // x^n - c
  static IntPolynomial power_minus(unsigned n, Int c);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Int>& coeffs() const { return c_; }
  // coefficient of x^i, 0 outside range
  const Int& operator[](size_t i) const;
  Int leading() const { return c_.empty() ? Int(0) : c_.back(); }
  Int constant_term() const { return c_.empty() ? Int(0) : c_.front(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
  bool operator!=(const IntPolynomial& o) const { return c_ != o.c_; }
  bool operator<(const IntPolynomial& o) const;  // degree, then lexicographic from top

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  IntPolynomial operator-() const;
  IntPolynomial times(const Int& k) const;
  IntPolynomial shifted(unsigned k) const;  // multiply by x^k

  IntPolynomial derivative() const;
  Int content() const;  // gcd of coefficients, 0 for zero polynomial
  IntPolynomial primitive_part() const;  // content removed, leading coefficient positive

  Int eval(const Int& x) const;
  Rat eval(const Rat& x) const;
  double eval_double(double x) const;

  // substitution p(q(x))
  IntPolynomial compose(const IntPolynomial& q) const;
  // p(x^k)
  IntPolynomial stretch(unsigned k) const;
  // p(-x)
  IntPolynomial negate_variable() const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Int> c_;
};

// quotient and remainder over the rationals, represented exactly;
// exact_divide throws if the division leaves a remainder
bool try_exact_divide(const IntPolynomial& num, const IntPolynomial& den, IntPolynomial& quot);
IntPolynomial exact_divide(const IntPolynomial& num, const IntPolynomial& den);
// pseudo-remainder: lead(den)^(deg num - deg den + 1) * num = q*den + r
IntPolynomial pseudo_remainder(const IntPolynomial& num, const IntPolynomial& den);

// Integer polynomial scaled by a positive denominator, content-normalized:
// gcd(content(num), den) = 1, den > 0.
class RationalPolynomial {
 public:
  RationalPolynomial() : den_(1) {}
  RationalPolynomial(IntPolynomial num, Int den);
  explicit RationalPolynomial(const IntPolynomial& num) : RationalPolynomial(num, 1) {}
  explicit RationalPolynomial(const std::vector<Rat>& coeffs);

  const IntPolynomial& numerator() const { return num_; }
  const Int& denominator() const { return den_; }
  int degree() const { return num_.degree(); }
  bool is_zero() const { return num_.is_zero(); }
  Rat coeff(size_t i) const { return Rat(num_[i]) / Rat(den_); }
  Rat eval(const Rat& x) const { return num_.eval(x) / Rat(den_); }

  RationalPolynomial operator+(const RationalPolynomial& o) const;
  RationalPolynomial operator-(const RationalPolynomial& o) const;
  RationalPolynomial operator*(const RationalPolynomial& o) const;
  RationalPolynomial operator-() const;

 private:
  IntPolynomial num_;
  Int den_;
};

// endpoint of a real interval, possibly infinite
struct Bound {
  enum Kind { NegInf, Finite, PosInf } kind = Finite;
  Rat value;
  static Bound neg_inf() { return {NegInf, Rat(0)}; }
  static Bound pos_inf() { return {PosInf, Rat(0)}; }
  static Bound at(Rat v) { return {Finite, std::move(v)}; }
};

class SturmChain {
 public:
  explicit SturmChain(const IntPolynomial& source);

  const IntPolynomial& source() const { return source_; }
  const std::vector<RationalPolynomial>& chain() const { return chain_; }

  int variations_at(const Bound& b) const;
  // distinct real roots of the squarefree part of source in (lo, hi]
  int count(const Bound& lo, const Bound& hi) const;

 private:
  IntPolynomial source_;
  std::vector<RationalPolynomial> chain_;
  // sign-preserving integer chain used for evaluation
  std::vector<IntPolynomial> ichain_;
};

// -- polycore operations ------------------------------------------------

// primitive gcd over the rationals, positive leading coefficient
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);

// classical resultant Res_x(a, b) of two integer polynomials
Int resultant(const IntPolynomial& a, const IntPolynomial& b);

// Res_y(a(y), y^n - x), eliminating y: up to sign the polynomial whose roots are
// the n-th powers of a's roots; normalized monic when a is monic, otherwise the
// leading coefficient is lead(a)^n
IntPolynomial resultant(const IntPolynomial& a, unsigned n);

// exact number of distinct real roots of p in (lo, hi]
int sturm_count(const IntPolynomial& p, const Bound& lo, const Bound& hi);
int sturm_count(const IntPolynomial& p);  // whole line

IntPolynomial cyclotomic(unsigned n);
IntPolynomial real_cyclotomic(unsigned n);

// monic polynomial whose root multiset is the k-th powers of p's roots
IntPolynomial root_power_transform(const IntPolynomial& p, unsigned k);

IntPolynomial reciprocal(const IntPolynomial& p);
bool is_palindromic(const IntPolynomial& p);
bool is_anti_palindromic(const IntPolynomial& p);

// for monic palindromic p of degree 2d, the monic T of degree d with x^d T(x+1/x) = p
IntPolynomial trace_polynomial(const IntPolynomial& p);

// s_m and its friends in Z[w]: x^m + x^-m = chebyshev_s(m)(w) where w = x + 1/x
IntPolynomial chebyshev_s(unsigned m);

bool irreducible_over_rationals(const IntPolynomial& p);

// squarefree decomposition (Yun): list of (factor, multiplicity), factors primitive,
// pairwise coprime, multiplicities strictly increasing
std::vector<std::pair<IntPolynomial, unsigned>> squarefree_decomposition(const IntPolynomial& p);
IntPolynomial squarefree_part(const IntPolynomial& p);

// multiplicity of (x - r) in p for rational r
unsigned root_multiplicity(const IntPolynomial& p, const Rat& r);

} // namespace dyndeg
