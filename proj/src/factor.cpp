#include "dyndeg/factor.hpp"

#include <algorithm>
#include <bitset>
#include <numeric>
#include <stdexcept>

#include "dyndeg/errors.hpp"
#include "dyndeg/fq.hpp"

namespace dyndeg {

namespace {

constexpr int kMaxDegreeBits = 129;
using DegreeSet = std::bitset<kMaxDegreeBits>;

// degrees realizable as sums of sub-multisets of the modular factor degrees
DegreeSet subset_degree_sums(const std::vector<unsigned>& degs) {
  DegreeSet s;
  s.set(0);
  for (unsigned d : degs) s |= s << d;
  return s;
}

struct ModularPattern {
  uint64_t prime;
  std::vector<unsigned> degrees;
};

// reduction mod p is usable when it preserves degree and stays squarefree
bool good_reduction(const IntPolynomial& f, uint64_t p) {
  if (f.leading() % Int(p) == 0) return false;
  FpPoly fb = fp::from_int_poly(f, p);
  FpPoly fd = fp::derivative(fb, p);
  if (fp::is_zero(fd)) return false;
  return fp::degree(fp::gcd(fb, fd, p)) == 0;
}

std::vector<ModularPattern> modular_patterns(const IntPolynomial& f, size_t want) {
  std::vector<ModularPattern> out;
  for (uint64_t p = 3; p < 100000 && out.size() < want; p += 2) {
    if (!is_prime_u64(p)) continue;
    if (!good_reduction(f, p)) continue;
    FpPoly fb = fp::monic(fp::from_int_poly(f, p), p);
    out.push_back({p, fp::factor_degrees(fb, p)});
  }
  if (out.empty()) throw std::logic_error("factor: no prime of good reduction found");
  return out;
}

// modulus bound: a monic factor of monic f has sup-norm at most 2^deg(f) * ||f||_2
Int coefficient_bound(const IntPolynomial& f) {
  Int sq = 0;
  for (const auto& c : f.coeffs()) sq += c * c;
  Int norm2 = isqrt(sq) + 1;
  return (Int(1) << f.degree()) * norm2;
}

IntPolynomial mod_reduce(const IntPolynomial& f, const Int& m) {
  std::vector<Int> v = f.coeffs();
  for (auto& c : v) {
    c %= m;
    if (c < 0) c += m;
  }
  return IntPolynomial(std::move(v));
}

IntPolynomial mod_reduce_symmetric(const IntPolynomial& f, const Int& m) {
  std::vector<Int> v = f.coeffs();
  Int half = m / 2;
  for (auto& c : v) {
    c %= m;
    if (c < 0) c += m;
    if (c > half) c -= m;
  }
  return IntPolynomial(std::move(v));
}

IntPolynomial mod_mul(const IntPolynomial& a, const IntPolynomial& b, const Int& m) {
  return mod_reduce(a * b, m);
}

IntPolynomial mod_sub(const IntPolynomial& a, const IntPolynomial& b, const Int& m) {
  return mod_reduce(a - b, m);
}

// division with remainder mod m; den must be monic
void mod_divmod(const IntPolynomial& num, const IntPolynomial& den, const Int& m,
                IntPolynomial& quot, IntPolynomial& rem) {
  if (!den.is_monic()) throw std::logic_error("mod_divmod: divisor must be monic");
  std::vector<Int> r = num.coeffs();
  int dn = num.degree(), dd = den.degree();
  if (dn < dd) {
    quot = IntPolynomial::zero();
    rem = mod_reduce(num, m);
    return;
  }
  std::vector<Int> q(dn - dd + 1, Int(0));
  for (int i = dn; i >= dd; --i) {
    Int c = r[i] % m;
    if (c < 0) c += m;
    if (c == 0) { r[i] = 0; continue; }
    q[i - dd] = c;
    for (int j = 0; j <= dd; ++j) {
      r[i - dd + j] = (r[i - dd + j] - c * den[j]) % m;
    }
    r[i] = 0;
  }
  r.resize(dd > 0 ? dd : 0);
  quot = mod_reduce(IntPolynomial(std::move(q)), m);
  rem = mod_reduce(IntPolynomial(std::move(r)), m);
}

struct HenselPair {
  IntPolynomial g, h;  // f = g*h mod m
  IntPolynomial s, t;  // s*g + t*h = 1 mod m
};

// one quadratic lifting step: modulus m -> m^2
HenselPair hensel_step(const IntPolynomial& f, const HenselPair& in, const Int& m) {
  Int m2 = m * m;
  IntPolynomial e = mod_sub(f, in.g * in.h, m2);
  IntPolynomial q, r;
  mod_divmod(mod_mul(in.s, e, m2), in.h, m2, q, r);
  HenselPair out;
  out.g = mod_reduce(in.g + in.t * e + q * in.g, m2);
  out.h = mod_reduce(in.h + r, m2);
  IntPolynomial b = mod_reduce(in.s * out.g + in.t * out.h - IntPolynomial::constant(1), m2);
  IntPolynomial c, d;
  mod_divmod(mod_mul(in.s, b, m2), out.h, m2, c, d);
  out.s = mod_sub(in.s, d, m2);
  out.t = mod_reduce(in.t - in.t * b - c * out.g, m2);
  return out;
}

// lift the factorization f = prod(facs) mod p to modulus target (a power of p);
// f monic, facs monic and pairwise coprime mod p
std::vector<IntPolynomial> hensel_lift_list(const IntPolynomial& f,
                                            const std::vector<FpPoly>& facs, uint64_t p,
                                            const Int& target) {
  if (facs.size() == 1) return {mod_reduce(f, target)};
  size_t half = facs.size() / 2;
  FpPoly gbar = fp::one(), hbar = fp::one();
  for (size_t i = 0; i < half; ++i) gbar = fp::mul(gbar, facs[i], p);
  for (size_t i = half; i < facs.size(); ++i) hbar = fp::mul(hbar, facs[i], p);
  FpPoly gg, ss, tt;
  fp::ext_gcd(gbar, hbar, gg, ss, tt, p);
  if (!fp::is_one(gg)) throw std::logic_error("hensel: factors not coprime mod p");

  HenselPair cur{fp::to_int_poly(gbar), fp::to_int_poly(hbar),
                 fp::to_int_poly(ss), fp::to_int_poly(tt)};
  Int m(p);
  while (m < target) {
    cur = hensel_step(mod_reduce(f, m * m), cur, m);
    m *= m;
  }
  cur.g = mod_reduce(cur.g, target);
  cur.h = mod_reduce(cur.h, target);
  std::vector<FpPoly> left(facs.begin(), facs.begin() + half);
  std::vector<FpPoly> right(facs.begin() + half, facs.end());
  std::vector<IntPolynomial> out = hensel_lift_list(cur.g, left, p, target);
  std::vector<IntPolynomial> rest = hensel_lift_list(cur.h, right, p, target);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

// next subset of {0..n-1} of the same cardinality, colex order; false when exhausted
bool next_subset(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = 0; i < k; ++i) {
    int limit = (i + 1 < k) ? idx[i + 1] : n;
    if (idx[i] + 1 < limit) {
      ++idx[i];
      for (int j = 0; j < i; ++j) idx[j] = j;
      return true;
    }
  }
  return false;
}

// Zassenhaus factorization of a monic squarefree polynomial of degree >= 2
// with no rational roots
std::vector<IntPolynomial> factor_monic_core(const IntPolynomial& f_in) {
  IntPolynomial f = f_in;
  int n = f.degree();
  if (n >= kMaxDegreeBits)
    throw BoundExhausted("factorization: degree " + std::to_string(n) + " exceeds the supported range");
  std::vector<ModularPattern> pats = modular_patterns(f, 5);

  DegreeSet allowed;
  allowed.set();
  for (const auto& pat : pats) allowed &= subset_degree_sums(pat.degrees);
  bool any_proper = false;
  for (int d = 1; d < n; ++d)
    if (allowed.test(d)) { any_proper = true; break; }
  if (!any_proper) return {f};

  const ModularPattern* best = &pats[0];
  for (const auto& pat : pats)
    if (pat.degrees.size() < best->degrees.size()) best = &pat;
  if (best->degrees.size() > 28)
    throw BoundExhausted("factorization: modular factor count " +
                         std::to_string(best->degrees.size()) +
                         " exceeds the recombination budget");

  uint64_t p = best->prime;
  FpPoly fbar = fp::monic(fp::from_int_poly(f, p), p);
  std::vector<FpPoly> modular;
  for (const auto& [prod, d] : fp::ddf(fbar, p))
    for (const auto& irr : fp::edf(prod, d, p)) modular.push_back(irr);
  std::sort(modular.begin(), modular.end());

  Int bound = coefficient_bound(f);
  Int target(p);
  while (target <= 2 * bound) target *= p;
  std::vector<IntPolynomial> lifted = hensel_lift_list(f, modular, p, target);

  std::vector<IntPolynomial> result;
  std::vector<int> live(lifted.size());
  for (size_t i = 0; i < live.size(); ++i) live[i] = static_cast<int>(i);

  for (size_t card = 1; !live.empty() && card <= live.size() / 2;) {
    std::vector<int> idx(card);
    for (size_t i = 0; i < card; ++i) idx[i] = static_cast<int>(i);
    bool found = false;
    while (true) {
      int deg = 0;
      for (int i : idx) deg += lifted[live[i]].degree();
      if (deg < n && allowed.test(deg)) {
        IntPolynomial g = IntPolynomial::constant(1);
        for (int i : idx) g = mod_reduce(g * lifted[live[i]], target);
        g = mod_reduce_symmetric(g, target);
        Int g0 = g.constant_term();
        Int f0 = f.constant_term();
        if (g0 != 0 && f0 % g0 == 0) {
          IntPolynomial quot;
          if (try_exact_divide(f, g, quot)) {
            result.push_back(g);
            f = quot;
            n = f.degree();
            std::vector<int> keep;
            for (size_t i = 0, j = 0; i < live.size(); ++i) {
              if (j < idx.size() && static_cast<int>(i) == idx[j]) { ++j; continue; }
              keep.push_back(live[i]);
            }
            live = std::move(keep);
            found = true;
            break;
          }
        }
      }
      if (!next_subset(idx, static_cast<int>(live.size()))) break;
    }
    if (!found) ++card;
  }
  if (f.degree() > 0) result.push_back(f);
  return result;
}

} // namespace

// divisor enumeration is feasible when the extreme coefficients are word-sized
// and easy to factor; larger inputs go through the full factorization instead
bool divisor_path_feasible(const Int& a) {
  return a <= Int(1000000000000ull);
}

std::vector<Rat> rational_roots_small(const IntPolynomial& f) {
  std::vector<Rat> roots;
  uint64_t a0 = int_abs(f.constant_term()).convert_to<uint64_t>();
  uint64_t an = int_abs(f.leading()).convert_to<uint64_t>();
  for (uint64_t num : divisors_of(a0)) {
    for (uint64_t den : divisors_of(an)) {
      if (std::gcd(num, den) != 1) continue;
      for (int s : {1, -1}) {
        Rat r(Int(num) * s, Int(den));
        if (f.eval(r) == 0) roots.push_back(r);
      }
    }
  }
  return roots;
}

std::vector<Rat> rational_roots(const IntPolynomial& p) {
  std::vector<Rat> roots;
  if (p.degree() < 1) return roots;
  IntPolynomial f = p.primitive_part();
  if (f.constant_term() == 0) {
    roots.push_back(Rat(0));
    do {
      f = exact_divide(f, IntPolynomial::x());
    } while (f.degree() > 0 && f.constant_term() == 0);
  }
  if (f.degree() >= 1) {
    Int a0 = int_abs(f.constant_term()), an = int_abs(f.leading());
    if (divisor_path_feasible(a0) && divisor_path_feasible(an)) {
      auto extra = rational_roots_small(f);
      roots.insert(roots.end(), extra.begin(), extra.end());
    } else {
      for (const auto& g : factor_squarefree_primitive(squarefree_part(f)))
        if (g.degree() == 1) roots.push_back(Rat(-g[0], g[1]));
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<IntPolynomial> factor_squarefree_primitive(const IntPolynomial& f_in) {
  std::vector<IntPolynomial> out;
  if (f_in.degree() < 1) return out;
  IntPolynomial f = f_in.primitive_part();

  if (f.constant_term() == 0) {
    out.push_back(IntPolynomial::x());
    f = exact_divide(f, IntPolynomial::x());
  }
  // strip linear factors from rational roots when divisor enumeration is cheap
  if (f.degree() >= 2 && divisor_path_feasible(int_abs(f.constant_term())) &&
      divisor_path_feasible(int_abs(f.leading()))) {
    for (const Rat& r : rational_roots_small(f)) {
      IntPolynomial lin({Int(-rat_num(r)), rat_den(r)});
      IntPolynomial q;
      if (try_exact_divide(f, lin, q)) {
        out.push_back(lin.primitive_part());
        f = q.primitive_part();
      }
    }
  }
  if (f.degree() == 1) {
    out.push_back(f);
  } else if (f.degree() >= 2) {
    Int lc = f.leading();
    if (lc == 1) {
      auto core = factor_monic_core(f);
      out.insert(out.end(), core.begin(), core.end());
    } else {
      // monic transform F(x) = lc^(n-1) f(x/lc); roots scale by lc and factors
      // map back by the inverse substitution
      int n = f.degree();
      std::vector<Int> v(n + 1);
      v[n] = 1;
      Int pw = 1;  // lc^(n-1-i)
      for (int i = n - 1; i >= 0; --i) {
        v[i] = f[i] * pw;
        pw *= lc;
      }
      IntPolynomial F(std::move(v));
      for (const IntPolynomial& G : factor_monic_core(F)) {
        int m = G.degree();
        std::vector<Int> w(m + 1);
        Int s = 1;
        for (int i = 0; i <= m; ++i) {
          w[i] = G[i] * s;
          s *= lc;
        }
        out.push_back(IntPolynomial(std::move(w)).primitive_part());
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RationalFactorization factor_over_rationals(const IntPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("factor_over_rationals: zero polynomial");
  RationalFactorization fz;
  fz.content = p.content();
  if (p.leading() < 0) fz.content = -fz.content;
  if (p.degree() < 1) return fz;
  for (const auto& [layer, mult] : squarefree_decomposition(p)) {
    for (const auto& irr : factor_squarefree_primitive(layer)) {
      fz.factors.emplace_back(irr, mult);
    }
  }
  std::sort(fz.factors.begin(), fz.factors.end());
  return fz;
}

bool irreducible_over_rationals(const IntPolynomial& p) {
  if (p.degree() < 1) return false;
  IntPolynomial f = p.primitive_part();
  if (f.degree() == 1) return true;
  if (poly_gcd(f, f.derivative()).degree() > 0) return false;
  if (!rational_roots(f).empty()) return false;
  if (f.is_monic()) return factor_monic_core(f).size() == 1;
  return factor_squarefree_primitive(f).size() == 1;
}

} // namespace dyndeg
