#include "dyndeg/poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace dyndeg {

void IntPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::power_minus(unsigned n, Int c) {
  std::vector<Int> v(n + 1, Int(0));
  v[0] = -std::move(c);
  v[n] = 1;
  return IntPolynomial(std::move(v));
}

const Int& IntPolynomial::operator[](size_t i) const {
  static const Int zero_(0);
  return i < c_.size() ? c_[i] : zero_;
}

bool IntPolynomial::operator<(const IntPolynomial& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<Int> v(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  std::vector<Int> v(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) v[i] -= o.c_[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (is_zero() || o.is_zero()) return zero();
  std::vector<Int> v(c_.size() + o.c_.size() - 1, Int(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] != 0) v[i + j] += c_[i] * o.c_[j];
    }
  }
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<Int> v = c_;
  for (auto& x : v) x = -x;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::times(const Int& k) const {
  if (k == 0) return zero();
  std::vector<Int> v = c_;
  for (auto& x : v) x *= k;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::shifted(unsigned k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<Int> v(c_.size() + k, Int(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i + k] = c_[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::derivative() const {
  if (degree() < 1) return zero();
  std::vector<Int> v(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Int(i);
  return IntPolynomial(std::move(v));
}

Int IntPolynomial::content() const {
  Int g = 0;
  for (const auto& x : c_) g = int_gcd(g, x);
  return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return zero();
  Int g = content();
  if (leading() < 0) g = -g;
  std::vector<Int> v = c_;
  for (auto& x : v) x /= g;
  return IntPolynomial(std::move(v));
}

Int IntPolynomial::eval(const Int& x) const {
  Int r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

Rat IntPolynomial::eval(const Rat& x) const {
  Rat r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * x + Rat(c_[i]);
  return r;
}

double IntPolynomial::eval_double(double x) const {
  double r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i].convert_to<double>();
  return r;
}

IntPolynomial IntPolynomial::compose(const IntPolynomial& q) const {
  IntPolynomial r = zero();
  for (size_t i = c_.size(); i-- > 0;) r = r * q + constant(c_[i]);
  return r;
}

IntPolynomial IntPolynomial::stretch(unsigned k) const {
  if (k == 0) throw std::domain_error("stretch: k = 0");
  if (is_zero()) return zero();
  std::vector<Int> v(static_cast<size_t>(degree()) * k + 1, Int(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::negate_variable() const {
  std::vector<Int> v = c_;
  for (size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
  return IntPolynomial(std::move(v));
}

std::string IntPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& c = c_[i];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Int a = int_abs(c);
    if (a != 1 || i == 0) os << a.str();
    if (i > 0) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

// division over the rationals; returns quotient and remainder with den > 0
static void rat_divmod(const IntPolynomial& num, const IntPolynomial& den,
                       std::vector<Rat>& quot, std::vector<Rat>& rem) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rat> r(num.coeffs().size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = Rat(num.coeffs()[i]);
  int dn = num.degree(), dd = den.degree();
  quot.assign(dn >= dd && dn >= 0 ? dn - dd + 1 : 0, Rat(0));
  Rat lead = Rat(den.leading());
  for (int i = dn; i >= dd && i >= 0; --i) {
    Rat q = r[i] / lead;
    if (q == 0) continue;
    quot[i - dd] = q;
    for (int j = 0; j <= dd; ++j) r[i - dd + j] -= q * Rat(den[j]);
  }
  if (dd >= 0 && dn >= dd) r.resize(dd > 0 ? dd : 0);
  rem = std::move(r);
}

bool try_exact_divide(const IntPolynomial& num, const IntPolynomial& den, IntPolynomial& quot) {
  if (den.is_zero()) return false;
  if (num.is_zero()) {
    quot = IntPolynomial::zero();
    return true;
  }
  if (num.degree() < den.degree()) return false;
  std::vector<Rat> q, r;
  rat_divmod(num, den, q, r);
  for (const auto& x : r)
    if (x != 0) return false;
  std::vector<Int> qi(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    if (rat_den(q[i]) != 1) return false;
    qi[i] = rat_num(q[i]);
  }
  quot = IntPolynomial(std::move(qi));
  return true;
}

IntPolynomial exact_divide(const IntPolynomial& num, const IntPolynomial& den) {
  IntPolynomial q;
  if (!try_exact_divide(num, den, q)) throw std::domain_error("exact_divide: inexact division");
  return q;
}

IntPolynomial pseudo_remainder(const IntPolynomial& num, const IntPolynomial& den) {
  if (den.is_zero()) throw std::domain_error("pseudo_remainder: zero divisor");
  std::vector<Int> r = num.coeffs();
  int dn = num.degree(), dd = den.degree();
  if (dn < dd) return num;
  Int lead = den.leading();
  for (int i = dn; i >= dd; --i) {
    Int top = r[i];
    for (int j = 0; j <= i; ++j) r[j] *= lead;
    if (top != 0) {
      for (int j = 0; j <= dd; ++j) r[i - dd + j] -= top * den[j];
    }
  }
  r.resize(dd > 0 ? dd : 0);
  return IntPolynomial(std::move(r));
}

RationalPolynomial::RationalPolynomial(IntPolynomial num, Int den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw std::domain_error("RationalPolynomial: zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  Int g = int_gcd(num_.content(), den_);
  if (g > 1) {
    std::vector<Int> v = num_.coeffs();
    for (auto& x : v) x /= g;
    num_ = IntPolynomial(std::move(v));
    den_ /= g;
  }
}

RationalPolynomial::RationalPolynomial(const std::vector<Rat>& coeffs) : den_(1) {
  Int den = 1;
  for (const auto& r : coeffs) den = int_lcm(den, rat_den(r));
  std::vector<Int> v(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) v[i] = rat_num(coeffs[i]) * (den / rat_den(coeffs[i]));
  *this = RationalPolynomial(IntPolynomial(std::move(v)), den);
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& o) const {
  return RationalPolynomial(num_.times(o.den_) + o.num_.times(den_), den_ * o.den_);
}
RationalPolynomial RationalPolynomial::operator-(const RationalPolynomial& o) const {
  return RationalPolynomial(num_.times(o.den_) - o.num_.times(den_), den_ * o.den_);
}
RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& o) const {
  return RationalPolynomial(num_ * o.num_, den_ * o.den_);
}
RationalPolynomial RationalPolynomial::operator-() const { return RationalPolynomial(-num_, den_); }

// -- gcd, resultant ------------------------------------------------------

IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("poly_gcd: both inputs zero");
  IntPolynomial r0 = a.primitive_part(), r1 = b.primitive_part();
  if (r0.degree() < r1.degree()) std::swap(r0, r1);
  while (!r1.is_zero()) {
    IntPolynomial r = pseudo_remainder(r0, r1);
    r0 = std::move(r1);
    r1 = r.primitive_part();
  }
  return r0.primitive_part();
}

// Bareiss fraction-free determinant of the Sylvester matrix
Int resultant(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("resultant: zero input");
  int m = a.degree(), n = b.degree();
  if (m == 0) return int_pow(a.leading(), n);
  if (n == 0) return int_pow(b.leading(), m);
  size_t dim = m + n;
  std::vector<Int> s(dim * dim, Int(0));
  auto at = [&](size_t i, size_t j) -> Int& { return s[i * dim + j]; };
  for (int row = 0; row < n; ++row)
    for (int j = 0; j <= m; ++j) at(row, row + j) = a[m - j];
  for (int row = 0; row < m; ++row)
    for (int j = 0; j <= n; ++j) at(n + row, row + j) = b[n - j];
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < dim; ++k) {
    if (at(k, k) == 0) {
      size_t piv = k + 1;
      while (piv < dim && at(piv, k) == 0) ++piv;
      if (piv == dim) return 0;
      for (size_t j = 0; j < dim; ++j) std::swap(at(k, j), at(piv, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < dim; ++i) {
      for (size_t j = k + 1; j < dim; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign > 0 ? at(dim - 1, dim - 1) : Int(-at(dim - 1, dim - 1));
}

// power sums p_1..p_count of the roots, as exact rationals (integers when monic)
static std::vector<Rat> power_sums(const IntPolynomial& p, size_t count) {
  int m = p.degree();
  Rat lead(p.leading());
  std::vector<Rat> a(m + 1);  // a[i] = coeff of x^(m-i) normalized monic
  for (int i = 0; i <= m; ++i) a[i] = Rat(p[m - i]) / lead;
  std::vector<Rat> ps(count + 1, Rat(0));
  for (size_t j = 1; j <= count; ++j) {
    Rat s = 0;
    size_t lim = std::min<size_t>(j - 1, m);
    for (size_t i = 1; i <= lim; ++i) s += a[i] * ps[j - i];
    if (j <= static_cast<size_t>(m))
      ps[j] = -Rat(Int(j)) * a[j] - s;
    else
      ps[j] = -s;
  }
  return ps;
}

// monic polynomial of degree m with prescribed root power sums s_1..s_m
static std::vector<Rat> newton_inverse(const std::vector<Rat>& s, size_t m) {
  std::vector<Rat> e(m + 1);
  e[0] = 1;
  for (size_t t = 1; t <= m; ++t) {
    Rat acc = 0;
    for (size_t i = 1; i <= t; ++i) {
      Rat term = e[t - i] * s[i];
      if (i % 2 == 0) acc -= term;
      else acc += term;
    }
    e[t] = acc / Rat(Int(t));
  }
  std::vector<Rat> coeffs(m + 1);  // constant first
  for (size_t t = 0; t <= m; ++t) {
    Rat v = e[t];
    if (t % 2 == 1) v = -v;
    coeffs[m - t] = v;
  }
  return coeffs;
}

IntPolynomial resultant(const IntPolynomial& a, unsigned n) {
  if (a.is_zero()) throw std::domain_error("resultant: zero input");
  if (n == 0) throw std::domain_error("resultant: power relation needs n >= 1");
  int m = a.degree();
  if (m == 0) throw std::domain_error("resultant: constant input, elimination vacuous");
  std::vector<Rat> ps = power_sums(a, static_cast<size_t>(m) * n);
  std::vector<Rat> s(m + 1);
  for (int j = 1; j <= m; ++j) s[j] = ps[static_cast<size_t>(j) * n];
  std::vector<Rat> c = newton_inverse(s, m);
  Int scale = int_pow(a.leading(), n);
  std::vector<Int> out(m + 1);
  for (int i = 0; i <= m; ++i) {
    Rat v = c[i] * Rat(scale);
    if (rat_den(v) != 1) throw std::logic_error("resultant: expected integral coefficients");
    out[i] = rat_num(v);
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial root_power_transform(const IntPolynomial& p, unsigned k) {
  if (k == 0) throw std::domain_error("root_power_transform: k = 0");
  if (p.is_zero()) throw std::domain_error("root_power_transform: zero polynomial");
  if (!p.is_monic()) throw std::domain_error("root_power_transform: input must be monic");
  if (k == 1) return p;
  if (p.degree() == 0) return p;
  return resultant(p, k);
}

// -- Sturm ---------------------------------------------------------------

static int sign_at_bound(const IntPolynomial& p, const Bound& b) {
  if (p.is_zero()) return 0;
  switch (b.kind) {
    case Bound::Finite: {
      Rat v = p.eval(b.value);
      return sign_of(v);
    }
    case Bound::PosInf:
      return sign_of(p.leading());
    case Bound::NegInf: {
      int s = sign_of(p.leading());
      return (p.degree() % 2 == 0) ? s : -s;
    }
  }
  return 0;
}

SturmChain::SturmChain(const IntPolynomial& source) : source_(source) {
  if (source.is_zero()) throw std::domain_error("SturmChain: zero polynomial");
  IntPolynomial r0 = squarefree_part(source);
  if (r0.degree() == 0) {
    ichain_.push_back(r0);
    chain_.emplace_back(r0);
    return;
  }
  IntPolynomial r1 = r0.derivative().primitive_part();
  ichain_.push_back(r0);
  ichain_.push_back(r1);
  IntPolynomial prev = std::move(r0), cur = std::move(r1);
  while (cur.degree() > 0) {
    int delta = prev.degree() - cur.degree();
    IntPolynomial rr = pseudo_remainder(prev, cur);
    // pseudo_remainder scales by lead(cur)^(delta+1); flip so the scale is positive
    if (sign_of(cur.leading()) < 0 && (delta + 1) % 2 == 1) rr = -rr;
    if (rr.is_zero()) break;
    IntPolynomial nxt = -rr;
    // keep coefficients small, positive scaling preserves the sign sequence
    Int cont = nxt.content();
    if (cont > 1) {
      std::vector<Int> v = nxt.coeffs();
      for (auto& x : v) x /= cont;
      nxt = IntPolynomial(std::move(v));
    }
    ichain_.push_back(nxt);
    prev = std::move(cur);
    cur = std::move(nxt);
  }
  chain_.reserve(ichain_.size());
  for (const auto& q : ichain_) chain_.emplace_back(q);
}

int SturmChain::variations_at(const Bound& b) const {
  int var = 0, last = 0;
  for (const auto& q : ichain_) {
    int s = sign_at_bound(q, b);
    if (s == 0) continue;
    if (last != 0 && s != last) ++var;
    last = s;
  }
  return var;
}

int SturmChain::count(const Bound& lo, const Bound& hi) const {
  return variations_at(lo) - variations_at(hi);
}

int sturm_count(const IntPolynomial& p, const Bound& lo, const Bound& hi) {
  if (p.is_zero()) throw std::domain_error("sturm_count: zero polynomial");
  SturmChain ch(p);
  return ch.count(lo, hi);
}

int sturm_count(const IntPolynomial& p) {
  return sturm_count(p, Bound::neg_inf(), Bound::pos_inf());
}

// -- cyclotomic ----------------------------------------------------------

IntPolynomial cyclotomic(unsigned n) {
  if (n == 0) throw std::domain_error("cyclotomic: n = 0");
  static std::map<unsigned, IntPolynomial> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  std::function<IntPolynomial(unsigned)> phi = [&](unsigned m) -> IntPolynomial {
    auto found = memo.find(m);
    if (found != memo.end()) return found->second;
    IntPolynomial result;
    if (m == 1) {
      result = IntPolynomial({Int(-1), Int(1)});
    } else {
      IntPolynomial num = IntPolynomial::power_minus(m, 1);  // x^m - 1
      for (uint64_t d : divisors_of(m)) {
        if (d == m) continue;
        num = exact_divide(num, phi(static_cast<unsigned>(d)));
      }
      result = num;
    }
    memo.emplace(m, result);
    return result;
  };
  return phi(n);
}

IntPolynomial chebyshev_s(unsigned m) {
  static std::vector<IntPolynomial> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (memo.empty()) {
    memo.push_back(IntPolynomial::constant(2));
    memo.push_back(IntPolynomial::x());
  }
  while (memo.size() <= m) {
    size_t k = memo.size();
    memo.push_back(IntPolynomial::x() * memo[k - 1] - memo[k - 2]);
  }
  return memo[m];
}

IntPolynomial reciprocal(const IntPolynomial& p) {
  if (p.constant_term() == 0) throw std::domain_error("reciprocal: zero constant term");
  std::vector<Int> v(p.coeffs().rbegin(), p.coeffs().rend());
  return IntPolynomial(std::move(v));
}

bool is_palindromic(const IntPolynomial& p) {
  if (p.is_zero() || p.constant_term() == 0) return false;
  return reciprocal(p) == p;
}

bool is_anti_palindromic(const IntPolynomial& p) {
  if (p.is_zero() || p.constant_term() == 0) return false;
  return reciprocal(p) == -p;
}

IntPolynomial trace_polynomial(const IntPolynomial& p) {
  if (!p.is_monic()) throw std::domain_error("trace_polynomial: input must be monic");
  int deg = p.degree();
  if (deg < 2 || deg % 2 != 0) throw std::domain_error("trace_polynomial: degree must be even and >= 2");
  if (!is_palindromic(p)) throw std::domain_error("trace_polynomial: input must be self-reciprocal with p(0) = +1");
  int d = deg / 2;
  IntPolynomial t = IntPolynomial::constant(p[d]);
  for (int k = 1; k <= d; ++k) {
    if (p[d + k] != 0) t = t + chebyshev_s(k).times(p[d + k]);
  }
  return t;
}

IntPolynomial real_cyclotomic(unsigned n) {
  if (n < 3) throw std::domain_error("real_cyclotomic: defined for n >= 3 only");
  return trace_polynomial(cyclotomic(n));
}

// -- squarefree ----------------------------------------------------------

std::vector<std::pair<IntPolynomial, unsigned>> squarefree_decomposition(const IntPolynomial& p) {
  std::vector<std::pair<IntPolynomial, unsigned>> out;
  if (p.degree() < 1) return out;
  IntPolynomial f = p.primitive_part();
  IntPolynomial fp = f.derivative();
  IntPolynomial a = poly_gcd(f, fp);
  IntPolynomial b = exact_divide(f, a);
  IntPolynomial c = exact_divide(fp, a);
  IntPolynomial d = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    IntPolynomial fac = poly_gcd(b, d);
    if (fac.degree() > 0) out.emplace_back(fac, i);
    b = exact_divide(b, fac);
    c = exact_divide(d, fac);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("squarefree_part: zero polynomial");
  if (p.degree() < 1) return IntPolynomial::constant(1);
  IntPolynomial g = poly_gcd(p, p.derivative());
  if (g.degree() == 0) return p.primitive_part();
  return exact_divide(p.primitive_part(), g).primitive_part();
}

unsigned root_multiplicity(const IntPolynomial& p, const Rat& r) {
  if (p.is_zero()) throw std::domain_error("root_multiplicity: zero polynomial");
  IntPolynomial lin({Int(-rat_num(r)), rat_den(r)});
  IntPolynomial cur = p;
  unsigned m = 0;
  IntPolynomial q;
  while (cur.degree() >= 1 && try_exact_divide(cur, lin, q)) {
    cur = q;
    ++m;
  }
  return m;
}

} // namespace dyndeg
