#pragma once

#include <optional>
#include <string>

#include "dyndeg/ints.hpp"

namespace dyndeg {

// closed interval with exact rational endpoints
struct RatInterval {
  Rat lo, hi;

  RatInterval() : lo(0), hi(0) {}
  RatInterval(Rat l, Rat h);
  static RatInterval exact(const Rat& v) { return RatInterval(v, v); }

  Rat mid() const { return (lo + hi) / 2; }
  Rat width() const { return hi - lo; }
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
  bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool disjoint(const RatInterval& o) const { return hi < o.lo || o.hi < lo; }
  bool strictly_positive() const { return lo > 0; }
  bool strictly_negative() const { return hi < 0; }

  RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }
  RatInterval operator*(const RatInterval& o) const;
  RatInterval operator-() const { return {-hi, -lo}; }
  RatInterval pow(unsigned k) const;
  // interval of |x| over the interval
  RatInterval abs() const;

  static RatInterval hull(const RatInterval& a, const RatInterval& b);
};

// certified rational bounds on sqrt(v), within 2^-prec_bits of the true value
Rat sqrt_lower(const Rat& v, int prec_bits);
Rat sqrt_upper(const Rat& v, int prec_bits);
RatInterval sqrt_interval(const RatInterval& iv, int prec_bits);  // iv.lo >= 0
// certified bounds on v^(1/k), v >= 0
RatInterval kth_root_interval(const RatInterval& iv, unsigned k, int prec_bits);

// floor(n^(1/k)) for n >= 0
Int ikth_root(const Int& n, unsigned k);

// Decimal midpoint/radius enclosure. The midpoint is an exact decimal with
// `digits` fractional digits, the radius an exact decimal with three
// significant digits, so the string form round-trips without loss.
class Enclosure {
 public:
  Enclosure() : mid_(0), rad_(0), digits_(9) {}

  // canonicalize an interval: round the midpoint to `digits` fractional
  // digits and push the rounding slack into the radius (rounded outward)
  static Enclosure from_interval(const RatInterval& iv, int digits);
  // exact value with zero radius; the value must be representable with
  // `digits` fractional digits, otherwise falls back to from_interval
  static Enclosure exact_point(const Rat& v, int digits);

  const Rat& mid() const { return mid_; }
  const Rat& rad() const { return rad_; }
  int digits() const { return digits_; }
  Rat lo() const { return mid_ - rad_; }
  Rat hi() const { return mid_ + rad_; }
  RatInterval interval() const { return RatInterval(lo(), hi()); }
  bool is_exact() const { return rad_ == 0; }
  bool contains(const Rat& v) const { return lo() <= v && v <= hi(); }
  double approx() const;

  // optional closed-form annotation for values known exactly
  const std::optional<std::string>& exact_form() const { return exact_form_; }
  void set_exact_form(std::string s) { exact_form_ = std::move(s); }

  // canonical form: "mid=<decimal> rad=<decimal> digits=<n>[ exact=<form>]"
  std::string str() const;
  static Enclosure parse(const std::string& s);

  bool operator==(const Enclosure& o) const {
    return mid_ == o.mid_ && rad_ == o.rad_ && digits_ == o.digits_ && exact_form_ == o.exact_form_;
  }

 private:
  Rat mid_, rad_;
  int digits_;
  std::optional<std::string> exact_form_;
};

// smallest digit count d with 10^-d <= tol
int digits_for_tolerance(const Rat& tol);
// digit count used when canonicalizing enclosures produced under tol; one
// extra digit keeps the midpoint rounding slack well under the tolerance
int enclosure_digits(const Rat& tol);
// the refinement target used before canonicalizing at the matching digit count
Rat refine_target(const Rat& tol);

} // namespace dyndeg
