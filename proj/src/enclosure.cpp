#include "dyndeg/enclosure.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dyndeg {

RatInterval::RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) throw std::domain_error("RatInterval: lo > hi");
}

RatInterval RatInterval::operator*(const RatInterval& o) const {
  Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  return {std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d))};
}

RatInterval RatInterval::pow(unsigned k) const {
  RatInterval r = RatInterval::exact(1);
  RatInterval base = *this;
  while (k > 0) {
    // plain repeated multiplication keeps even-power tightening simple
    if (k % 2 == 1) r = r * base;
    k /= 2;
    if (k > 0) base = base * base;
  }
  return r;
}

RatInterval RatInterval::abs() const {
  if (lo >= 0) return *this;
  if (hi <= 0) return {-hi, -lo};
  return {Rat(0), std::max(Rat(-lo), hi)};
}

RatInterval RatInterval::hull(const RatInterval& a, const RatInterval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Rat sqrt_lower(const Rat& v, int prec_bits) {
  if (v < 0) throw std::domain_error("sqrt_lower: negative input");
  if (v == 0) return 0;
  Int scale = Int(1) << prec_bits;
  Int n = rat_num(v) * scale * scale / rat_den(v);  // floor(v * 4^prec)
  return Rat(isqrt(n), scale);
}

Rat sqrt_upper(const Rat& v, int prec_bits) {
  if (v < 0) throw std::domain_error("sqrt_upper: negative input");
  if (v == 0) return 0;
  Int scale = Int(1) << prec_bits;
  Int n = rat_num(v) * scale * scale / rat_den(v);
  Int u = isqrt(n) + 1;
  // tighten by one when (u-1)^2 already dominates v * 4^prec
  if (Rat((u - 1) * (u - 1)) >= v * Rat(scale * scale)) --u;
  return Rat(u, scale);
}

RatInterval sqrt_interval(const RatInterval& iv, int prec_bits) {
  if (iv.lo < 0) throw std::domain_error("sqrt_interval: negative lower end");
  return {sqrt_lower(iv.lo, prec_bits), sqrt_upper(iv.hi, prec_bits)};
}

Int ikth_root(const Int& n, unsigned k) {
  if (n < 0) throw std::domain_error("ikth_root: negative input");
  if (k == 0) throw std::domain_error("ikth_root: k = 0");
  if (n <= 1 || k == 1) return n;
  size_t bits = boost::multiprecision::msb(n) + 1;
  Int hi = Int(1) << (bits / k + 1);
  Int lo = 0;
  while (lo < hi) {
    Int mid = (lo + hi + 1) / 2;
    if (int_pow(mid, k) <= n) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

RatInterval kth_root_interval(const RatInterval& iv, unsigned k, int prec_bits) {
  if (iv.lo < 0) throw std::domain_error("kth_root_interval: negative lower end");
  if (k == 0) throw std::domain_error("kth_root_interval: k = 0");
  Int scale = Int(1) << prec_bits;
  Int scale_k = int_pow(scale, k);
  auto root_lower = [&](const Rat& v) -> Rat {
    Int n = rat_num(v) * scale_k / rat_den(v);
    return Rat(ikth_root(n, k), scale);
  };
  auto root_upper = [&](const Rat& v) -> Rat {
    Int n = rat_num(v) * scale_k / rat_den(v);
    Int u = ikth_root(n, k) + 1;
    if (Rat(int_pow(u - 1, k)) >= v * Rat(scale_k)) --u;
    return Rat(u, scale);
  };
  return {root_lower(iv.lo), root_upper(iv.hi)};
}

static Rat decimal_value(const std::string& s) { return parse_decimal(s); }

Enclosure Enclosure::from_interval(const RatInterval& iv, int digits) {
  if (digits < 1 || digits > 80) throw std::domain_error("Enclosure: digit count out of range");
  Enclosure e;
  e.digits_ = digits;
  Rat true_mid = iv.mid();
  Rat true_rad = iv.width() / 2;
  std::string mid_str = decimal_fixed(true_mid, digits);
  e.mid_ = decimal_value(mid_str);
  Rat slack = rat_abs(e.mid_ - true_mid);
  Rat rad = true_rad + slack;
  e.rad_ = rad == 0 ? Rat(0) : decimal_ceil_sig(rad, 3);
  return e;
}

Enclosure Enclosure::exact_point(const Rat& v, int digits) {
  if (digits < 1 || digits > 80) throw std::domain_error("Enclosure: digit count out of range");
  Rat rounded = decimal_value(decimal_fixed(v, digits));
  if (rounded != v) return from_interval(RatInterval::exact(v), digits);
  Enclosure e;
  e.digits_ = digits;
  e.mid_ = v;
  e.rad_ = 0;
  return e;
}

double Enclosure::approx() const { return mid_.convert_to<double>(); }

std::string Enclosure::str() const {
  std::ostringstream os;
  os << "mid=" << decimal_fixed(mid_, digits_) << " rad=";
  if (rad_ == 0) os << "0";
  else os << decimal_sci(rad_, 3);
  os << " digits=" << digits_;
  if (exact_form_) os << " exact=" << *exact_form_;
  return os.str();
}

Enclosure Enclosure::parse(const std::string& s) {
  std::istringstream is(s);
  std::string tok;
  Enclosure e;
  bool saw_mid = false, saw_rad = false, saw_digits = false;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("Enclosure::parse: bad token " + tok);
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "mid") {
      e.mid_ = decimal_value(val);
      saw_mid = true;
    } else if (key == "rad") {
      e.rad_ = decimal_value(val);
      saw_rad = true;
    } else if (key == "digits") {
      e.digits_ = std::stoi(val);
      saw_digits = true;
    } else if (key == "exact") {
      e.exact_form_ = val;
    } else {
      throw std::invalid_argument("Enclosure::parse: unknown key " + key);
    }
  }
  if (!saw_mid || !saw_rad || !saw_digits)
    throw std::invalid_argument("Enclosure::parse: missing fields in '" + s + "'");
  if (e.rad_ < 0) throw std::invalid_argument("Enclosure::parse: negative radius");
  return e;
}

int digits_for_tolerance(const Rat& tol) {
  if (tol <= 0) throw std::domain_error("digits_for_tolerance: tolerance must be positive");
  int d = 1;
  Rat t(1, 10);
  while (t > tol && d < 80) {
    t /= 10;
    ++d;
  }
  return d;
}

int enclosure_digits(const Rat& tol) { return std::min(80, digits_for_tolerance(tol) + 1); }

Rat refine_target(const Rat& tol) { return tol / 4; }

} // namespace dyndeg
