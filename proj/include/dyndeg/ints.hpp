#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyndeg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int int_abs(const Int& a) { return boost::multiprecision::abs(a); }
inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline int sign_of(const Int& a) { return a.sign(); }
inline int sign_of(const Rat& r) { return r.sign(); }

Int int_pow(Int base, uint64_t e);
Rat rat_pow(Rat base, int64_t e);

// floor(sqrt(a)) for a >= 0
Int isqrt(const Int& a);
bool is_perfect_square(const Int& a);
// exact integer k-th root if a is a perfect k-th power, else nullopt semantics via bool
bool perfect_kth_root(const Int& a, unsigned k, Int& root);

Int binomial(unsigned n, unsigned k);

bool is_prime_u64(uint64_t n);
std::vector<std::pair<uint64_t, unsigned>> factor_u64(uint64_t n);
uint64_t euler_phi(uint64_t n);
std::vector<uint64_t> divisors_of(uint64_t n);

uint64_t mul_mod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t pow_mod_u64(uint64_t a, uint64_t e, uint64_t m);
// multiplicative order of a mod m (requires gcd(a, m) = 1)
uint64_t mult_order_u64(uint64_t a, uint64_t m);

// parse a decimal literal (optional sign, optional fractional part, optional e-exponent)
// into an exact rational; throws std::invalid_argument on malformed input
Rat parse_decimal(const std::string& s);

// render r as a decimal string with exactly `digits` fractional digits,
// rounding half away from zero; exact (no double involved)
std::string decimal_fixed(const Rat& r, int digits);

// smallest decimal with `sig` significant digits that is >= r (r >= 0 required)
Rat decimal_ceil_sig(const Rat& r, int sig);
std::string decimal_sci(const Rat& r, int sig);

} // namespace dyndeg
