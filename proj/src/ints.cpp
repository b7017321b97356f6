#include "dyndeg/ints.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace dyndeg {

Int int_pow(Int base, uint64_t e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

Rat rat_pow(Rat base, int64_t e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("rat_pow: zero to negative power");
    base = Rat(1) / base;
    e = -e;
  }
  Rat r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

Int isqrt(const Int& a) {
  if (a < 0) throw std::domain_error("isqrt: negative input");
  if (a == 0) return 0;
  Int x = Int(1) << (static_cast<unsigned>(boost::multiprecision::msb(a)) / 2 + 1);
  for (;;) {
    Int y = (x + a / x) / 2;
    if (y >= x) break;
    x = y;
  }
  return x;
}

bool is_perfect_square(const Int& a) {
  if (a < 0) return false;
  Int r = isqrt(a);
  return r * r == a;
}

bool perfect_kth_root(const Int& a, unsigned k, Int& root) {
  if (k == 0) throw std::domain_error("perfect_kth_root: k = 0");
  if (a < 0 && k % 2 == 0) return false;
  Int m = int_abs(a);
  if (m <= 1) {
    root = a;
    return true;
  }
  unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(m)) + 1;
  Int lo = 1, hi = Int(1) << (bits / k + 1);
  while (lo < hi) {
    Int mid = (lo + hi + 1) / 2;
    if (int_pow(mid, k) <= m)
      lo = mid;
    else
      hi = mid - 1;
  }
  if (int_pow(lo, k) != m) return false;
  root = (a < 0) ? Int(-lo) : lo;
  return true;
}

Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

uint64_t mul_mod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t pow_mod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod_u64(r, a, m);
    a = mul_mod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic Miller-Rabin base set for 64-bit integers
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = pow_mod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<std::pair<uint64_t, unsigned>> factor_u64(uint64_t n) {
  std::vector<std::pair<uint64_t, unsigned>> out;
  for (uint64_t p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

uint64_t euler_phi(uint64_t n) {
  uint64_t r = n;
  for (auto& [p, e] : factor_u64(n)) {
    (void)e;
    r -= r / p;
  }
  return r;
}

std::vector<uint64_t> divisors_of(uint64_t n) {
  std::vector<uint64_t> divs{1};
  for (auto& [p, e] : factor_u64(n)) {
    size_t sz = divs.size();
    uint64_t pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

uint64_t mult_order_u64(uint64_t a, uint64_t m) {
  if (m <= 1) throw std::domain_error("mult_order_u64: modulus must exceed 1");
  a %= m;
  if (std::gcd(a, m) != 1) throw std::domain_error("mult_order_u64: not coprime");
  uint64_t phi = euler_phi(m);
  uint64_t order = phi;
  for (uint64_t d : divisors_of(phi)) {
    if (pow_mod_u64(a, d, m) == 1) {
      order = d;
      break;
    }
  }
  return order;
}

Rat parse_decimal(const std::string& s) {
  size_t i = 0, n = s.size();
  auto fail = [&]() { throw std::invalid_argument("malformed decimal: " + s); };
  if (n == 0) fail();
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') {
    neg = (s[i] == '-');
    ++i;
  }
  Int mant = 0;
  long frac_digits = 0;
  bool any = false, dot = false;
  for (; i < n && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
    if (s[i] == '.') {
      if (dot) fail();
      dot = true;
    } else {
      mant = mant * 10 + (s[i] - '0');
      if (dot) ++frac_digits;
      any = true;
    }
  }
  if (!any) fail();
  long expo = 0;
  if (i < n && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < n && (s[i] == '+' || s[i] == '-')) {
      eneg = (s[i] == '-');
      ++i;
    }
    if (i >= n) fail();
    long ev = 0;
    for (; i < n; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail();
      ev = ev * 10 + (s[i] - '0');
      if (ev > 1000000) fail();
    }
    expo = eneg ? -ev : ev;
  }
  if (i != n) fail();
  long net = expo - frac_digits;
  Rat r(mant);
  if (net > 0)
    r *= Rat(int_pow(10, static_cast<uint64_t>(net)));
  else if (net < 0)
    r /= Rat(int_pow(10, static_cast<uint64_t>(-net)));
  return neg ? Rat(-r) : r;
}

std::string decimal_fixed(const Rat& r, int digits) {
  if (digits < 0) throw std::invalid_argument("decimal_fixed: negative digit count");
  Int scale = int_pow(10, static_cast<uint64_t>(digits));
  Rat scaled = r * Rat(scale);
  Int num = rat_num(scaled), den = rat_den(scaled);
  bool neg = num < 0;
  if (neg) num = -num;
  // round half away from zero
  Int q = (2 * num + den) / (2 * den);
  std::string ds = q.str();
  if (digits > 0) {
    if (static_cast<int>(ds.size()) <= digits) ds.insert(0, digits + 1 - ds.size(), '0');
    ds.insert(ds.size() - digits, ".");
  }
  if (neg && q != 0) ds.insert(0, "-");
  return ds;
}

Rat decimal_ceil_sig(const Rat& r, int sig) {
  if (r < 0) throw std::domain_error("decimal_ceil_sig: negative input");
  if (r == 0) return 0;
  // find e with 10^e <= r < 10^(e+1)
  long e = 0;
  Rat t = r;
  while (t >= 10) {
    t /= 10;
    ++e;
  }
  while (t < 1) {
    t *= 10;
    --e;
  }
  long shift = sig - 1 - e;
  Rat scaled = shift >= 0 ? r * Rat(int_pow(10, static_cast<uint64_t>(shift)))
                          : r / Rat(int_pow(10, static_cast<uint64_t>(-shift)));
  Int num = rat_num(scaled), den = rat_den(scaled);
  Int q = (num + den - 1) / den;  // ceil
  Rat out(q);
  return shift >= 0 ? out / Rat(int_pow(10, static_cast<uint64_t>(shift)))
                    : out * Rat(int_pow(10, static_cast<uint64_t>(-shift)));
}

std::string decimal_sci(const Rat& r, int sig) {
  if (r < 0) return "-" + decimal_sci(-r, sig);
  if (r == 0) return "0";
  long e = 0;
  Rat t = r;
  while (t >= 10) {
    t /= 10;
    ++e;
  }
  while (t < 1) {
    t *= 10;
    --e;
  }
  long shift = sig - 1 - e;
  Rat scaled = shift >= 0 ? r * Rat(int_pow(10, static_cast<uint64_t>(shift)))
                          : r / Rat(int_pow(10, static_cast<uint64_t>(-shift)));
  Int num = rat_num(scaled), den = rat_den(scaled);
  Int q = (2 * num + den) / (2 * den);
  std::string ds = q.str();
  if (static_cast<int>(ds.size()) > sig) {
    // rounding bumped 999.. to 1000..; renormalize
    ds.pop_back();
    ++e;
  }
  std::string mant = ds.substr(0, 1);
  if (ds.size() > 1) mant += "." + ds.substr(1);
  return mant + "e" + std::to_string(e);
}

} // namespace dyndeg
