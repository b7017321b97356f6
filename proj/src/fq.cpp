#include "dyndeg/fq.hpp"

#include <algorithm>
#include <stdexcept>

namespace dyndeg {
namespace fp {

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }
bool is_zero(const FpPoly& a) { return a.empty(); }
bool is_one(const FpPoly& a) { return a.size() == 1 && a[0] == 1; }
FpPoly one() { return FpPoly{1}; }
FpPoly x() { return FpPoly{0, 1}; }

FpPoly constant(uint64_t c, uint64_t p) {
  c %= p;
  if (c == 0) return {};
  return FpPoly{c};
}

FpPoly from_int_poly(const IntPolynomial& f, uint64_t p) {
  FpPoly a(f.coeffs().size());
  Int m(p);
  for (size_t i = 0; i < a.size(); ++i) {
    Int r = f.coeffs()[i] % m;
    if (r < 0) r += m;
    a[i] = r.convert_to<uint64_t>();
  }
  trim(a);
  return a;
}

IntPolynomial to_int_poly(const FpPoly& a) {
  std::vector<Int> v(a.size());
  for (size_t i = 0; i < a.size(); ++i) v[i] = Int(a[i]);
  return IntPolynomial(std::move(v));
}

FpPoly add(const FpPoly& a, const FpPoly& b, uint64_t p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b, uint64_t p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}

FpPoly mul(const FpPoly& a, const FpPoly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] = (r[i + j] + mul_mod_u64(a[i], b[j], p)) % p;
    }
  }
  trim(r);
  return r;
}

FpPoly scale(const FpPoly& a, uint64_t k, uint64_t p) {
  k %= p;
  if (k == 0) return {};
  FpPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mul_mod_u64(a[i], k, p);
  trim(r);
  return r;
}

FpPoly monic(const FpPoly& a, uint64_t p) {
  if (a.empty()) return a;
  uint64_t lead = a.back();
  if (lead == 1) return a;
  uint64_t inv = pow_mod_u64(lead, p - 2, p);
  return scale(a, inv, p);
}

void divmod(const FpPoly& num, const FpPoly& den, FpPoly& q, FpPoly& r, uint64_t p) {
  if (den.empty()) throw std::domain_error("fp::divmod: division by zero");
  r = num;
  int dn = degree(num), dd = degree(den);
  if (dn < dd) {
    q.clear();
    return;
  }
  q.assign(dn - dd + 1, 0);
  uint64_t inv = pow_mod_u64(den.back(), p - 2, p);
  for (int i = dn; i >= dd; --i) {
    if (static_cast<size_t>(i) >= r.size() || r[i] == 0) continue;
    uint64_t c = mul_mod_u64(r[i], inv, p);
    q[i - dd] = c;
    for (int j = 0; j <= dd; ++j) {
      r[i - dd + j] = (r[i - dd + j] + p - mul_mod_u64(c, den[j], p)) % p;
    }
  }
  trim(r);
}

FpPoly rem(const FpPoly& num, const FpPoly& den, uint64_t p) {
  FpPoly q, r;
  divmod(num, den, q, r, p);
  return r;
}

FpPoly gcd(FpPoly a, FpPoly b, uint64_t p) {
  while (!b.empty()) {
    FpPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

void ext_gcd(const FpPoly& a, const FpPoly& b, FpPoly& g, FpPoly& s, FpPoly& t, uint64_t p) {
  FpPoly r0 = a, r1 = b;
  FpPoly s0 = one(), s1 = {};
  FpPoly t0 = {}, t1 = one();
  while (!r1.empty()) {
    FpPoly q, r;
    divmod(r0, r1, q, r, p);
    FpPoly s2 = sub(s0, mul(q, s1, p), p);
    FpPoly t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1); r1 = std::move(r);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (r0.empty()) throw std::domain_error("fp::ext_gcd: both inputs zero");
  uint64_t inv = pow_mod_u64(r0.back(), p - 2, p);
  g = scale(r0, inv, p);
  s = scale(s0, inv, p);
  t = scale(t0, inv, p);
}

FpPoly powmod(const FpPoly& base, const Int& e, const FpPoly& mod, uint64_t p) {
  if (e < 0) throw std::domain_error("fp::powmod: negative exponent");
  FpPoly result = rem(one(), mod, p);
  if (e == 0) return result;
  FpPoly b = rem(base, mod, p);
  size_t nbits = boost::multiprecision::msb(e) + 1;
  for (size_t i = nbits; i-- > 0;) {
    result = rem(mul(result, result, p), mod, p);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) {
      result = rem(mul(result, b, p), mod, p);
    }
  }
  return result;
}

FpPoly derivative(const FpPoly& a, uint64_t p) {
  if (a.size() <= 1) return {};
  FpPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = mul_mod_u64(a[i], i % p, p);
  trim(r);
  return r;
}

uint64_t eval(const FpPoly& a, uint64_t v, uint64_t p) {
  uint64_t r = 0;
  for (size_t i = a.size(); i-- > 0;) r = (mul_mod_u64(r, v, p) + a[i]) % p;
  return r;
}

std::vector<std::pair<FpPoly, unsigned>> squarefree_decomp(const FpPoly& f_in, uint64_t p) {
  std::vector<std::pair<FpPoly, unsigned>> out;
  FpPoly f = monic(f_in, p);
  if (degree(f) < 1) return out;
  unsigned e = 1;  // power of p accumulated through inseparable descent
  while (degree(f) > 0) {
    FpPoly fp_ = derivative(f, p);
    if (is_zero(fp_)) {
      // f is a polynomial in x^p
      FpPoly g((f.size() - 1) / p + 1);
      for (size_t i = 0; i < g.size(); ++i) g[i] = f[i * p];
      f = std::move(g);
      e *= static_cast<unsigned>(p);
      continue;
    }
    FpPoly a = gcd(f, fp_, p);
    FpPoly b;
    {
      FpPoly q, r;
      divmod(f, a, q, r, p);
      b = std::move(q);
    }
    unsigned i = 1;
    while (degree(b) > 0) {
      FpPoly c = gcd(b, a, p);
      FpPoly layer;
      {
        FpPoly q, r;
        divmod(b, c, q, r, p);
        layer = std::move(q);
      }
      if (degree(layer) > 0) out.emplace_back(layer, i * e);
      {
        FpPoly q, r;
        divmod(a, c, q, r, p);
        a = std::move(q);
      }
      b = std::move(c);
      ++i;
    }
    // anything left in a is a p-th power; the loop top descends on it
    f = std::move(a);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.second < y.second; });
  return out;
}

std::vector<std::pair<FpPoly, unsigned>> ddf(const FpPoly& f_in, uint64_t p) {
  std::vector<std::pair<FpPoly, unsigned>> out;
  FpPoly f = monic(f_in, p);
  FpPoly h = rem(x(), f, p);  // x^(p^d) mod f, starting at d = 0
  unsigned d = 0;
  while (degree(f) > 0 && 2 * (d + 1) <= static_cast<unsigned>(degree(f))) {
    ++d;
    h = powmod(h, Int(p), f, p);
    FpPoly g = gcd(sub(h, x(), p), f, p);
    if (degree(g) > 0) {
      out.emplace_back(g, d);
      FpPoly q, r;
      divmod(f, g, q, r, p);
      f = std::move(q);
      h = rem(h, f, p);
    }
  }
  if (degree(f) > 0) out.emplace_back(f, static_cast<unsigned>(degree(f)));
  return out;
}

// deterministic equal-degree splitting; sweeps small test polynomials
static bool edf_try_split(const FpPoly& f, const FpPoly& u, unsigned d, uint64_t p, FpPoly& split) {
  if (p == 2) {
    // trace map over F_2: u + u^2 + ... + u^(2^(d-1))
    FpPoly acc;
    FpPoly pw = rem(u, f, p);
    for (unsigned i = 0; i < d; ++i) {
      acc = add(acc, pw, p);
      pw = rem(mul(pw, pw, p), f, p);
    }
    split = gcd(acc, f, p);
  } else {
    Int e = (int_pow(Int(p), d) - 1) / 2;
    FpPoly w = powmod(u, e, f, p);
    split = gcd(sub(w, one(), p), f, p);
  }
  int ds = degree(split);
  return ds > 0 && ds < degree(f);
}

static void edf_recurse(const FpPoly& f, unsigned d, uint64_t p, std::vector<FpPoly>& out) {
  if (degree(f) == static_cast<int>(d)) {
    out.push_back(monic(f, p));
    return;
  }
  // candidates: x + c, then monic quadratics, then monic cubics
  for (unsigned cand_deg = 1; cand_deg <= 3; ++cand_deg) {
    uint64_t combos = 1;
    for (unsigned i = 0; i < cand_deg; ++i) {
      combos *= p;
      if (combos > 4000000) { combos = 4000000; break; }
    }
    for (uint64_t code = 0; code < combos; ++code) {
      FpPoly u(cand_deg + 1, 0);
      u[cand_deg] = 1;
      uint64_t rest = code;
      for (unsigned i = 0; i < cand_deg; ++i) {
        u[i] = rest % p;
        rest /= p;
      }
      FpPoly split;
      if (edf_try_split(f, u, d, p, split)) {
        FpPoly q, r;
        divmod(f, split, q, r, p);
        edf_recurse(split, d, p, out);
        edf_recurse(q, d, p, out);
        return;
      }
    }
  }
  throw std::logic_error("fp::edf: no separating element found");
}

std::vector<FpPoly> edf(const FpPoly& f, unsigned d, uint64_t p) {
  std::vector<FpPoly> out;
  if (degree(f) <= 0) return out;
  if (degree(f) % d != 0) throw std::domain_error("fp::edf: degree mismatch");
  edf_recurse(monic(f, p), d, p, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<FpPoly, unsigned>> factor(const FpPoly& f, uint64_t p) {
  std::vector<std::pair<FpPoly, unsigned>> out;
  if (degree(f) < 1) return out;
  for (const auto& [layer, mult] : squarefree_decomp(f, p)) {
    for (const auto& [prod, d] : ddf(layer, p)) {
      for (const auto& irr : edf(prod, d, p)) out.emplace_back(irr, mult);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<unsigned> factor_degrees(const FpPoly& f, uint64_t p) {
  std::vector<unsigned> degs;
  for (const auto& [prod, d] : ddf(f, p)) {
    unsigned count = static_cast<unsigned>(degree(prod)) / d;
    for (unsigned i = 0; i < count; ++i) degs.push_back(d);
  }
  std::sort(degs.begin(), degs.end());
  return degs;
}

} // namespace fp
} // namespace dyndeg
