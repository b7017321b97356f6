#include "dyndeg/realize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dyndeg/classify.hpp"
#include "dyndeg/errors.hpp"
#include "dyndeg/factor.hpp"
#include "dyndeg/roots.hpp"

namespace dyndeg {

namespace {

// -- polynomial arithmetic mod a monic T ----------------------------------

IntPolynomial reduce_mod(const IntPolynomial& f, const IntPolynomial& T) {
  int d = T.degree();
  if (d < 0 || !T.is_monic()) throw std::invalid_argument("reduce_mod: modulus must be monic");
  if (f.degree() < d) return f;
  std::vector<Int> c(f.coeffs());
  for (int i = static_cast<int>(c.size()) - 1; i >= d; --i) {
    if (c[i] == 0) continue;
    Int q = c[i];
    for (int j = 0; j <= d; ++j) c[i - d + j] -= q * T[j];
  }
  c.resize(static_cast<size_t>(d > 0 ? d : 0));
  return IntPolynomial(std::move(c));
}

IntPolynomial mulmod(const IntPolynomial& a, const IntPolynomial& b, const IntPolynomial& T) {
  return reduce_mod(a * b, T);
}

// V_n, V_(n+1), U_n mod T for the Chebyshev-like sequences in w:
//   V_0 = 2, V_1 = w, V_(n+1) = w V_n - V_(n-1)
//   U_0 = 1, U_1 = w, U_(n+1) = w U_n - U_(n-1)
// computed by a doubling ladder so large n stays cheap:
//   V_2k = V_k^2 - 2, V_(2k+1) = V_k V_(k+1) - w,
//   U_2k = U_k V_k - 1, U_(2k+1) = U_k V_(k+1)
void chebyshev_triple_mod(const IntPolynomial& T, int64_t n, IntPolynomial& Vn, IntPolynomial& Vn1,
                          IntPolynomial& Un) {
  if (n < 0) throw std::invalid_argument("chebyshev_triple_mod: negative index");
  const IntPolynomial w = reduce_mod(IntPolynomial::x(), T);
  const IntPolynomial two = reduce_mod(IntPolynomial::constant(2), T);
  const IntPolynomial one = reduce_mod(IntPolynomial::constant(1), T);
  IntPolynomial Vk = two, Vk1 = w, Uk = one;
  if (n > 0) {
    int hb = 62;
    while (((n >> hb) & 1) == 0) --hb;
    for (int b = hb; b >= 0; --b) {
      if (((n >> b) & 1) == 0) {
        IntPolynomial nv = reduce_mod(Vk * Vk - two, T);
        IntPolynomial nv1 = reduce_mod(Vk * Vk1 - w, T);
        IntPolynomial nu = reduce_mod(Uk * Vk - one, T);
        Vk = std::move(nv);
        Vk1 = std::move(nv1);
        Uk = std::move(nu);
      } else {
        IntPolynomial nv = reduce_mod(Vk * Vk1 - w, T);
        IntPolynomial nv1 = reduce_mod(Vk1 * Vk1 - two, T);
        IntPolynomial nu = mulmod(Uk, Vk1, T);
        Vk = std::move(nv);
        Vk1 = std::move(nv1);
        Uk = std::move(nu);
      }
    }
  }
  Vn = std::move(Vk);
  Vn1 = std::move(Vk1);
  Un = std::move(Uk);
}

// -- dyadic outward-rounded interval arithmetic ----------------------------
//
// The doubling ladder squares its operands at every level, so plain rational
// intervals would square their denominator sizes as well.  Rounding every
// endpoint outward to a fixed dyadic grid keeps each endpoint at `bits` bits
// of denominator while preserving containment.

Rat dyadic_floor(const Rat& v, int bits) {
  Int num = rat_num(v) << bits;
  const Int& den = rat_den(v);
  Int q = num / den;
  if (q * den != num && num < 0) --q;
  return Rat(q, Int(1) << bits);
}

Rat dyadic_ceil(const Rat& v, int bits) { return -dyadic_floor(-v, bits); }

RatInterval dy_outward(const RatInterval& iv, int bits) {
  return RatInterval(dyadic_floor(iv.lo, bits), dyadic_ceil(iv.hi, bits));
}

RatInterval dy_mul(const RatInterval& a, const RatInterval& b, int bits) {
  return dy_outward(a * b, bits);
}

// interval values of V_(n-1) and V_n over an interval of w
void ladder_pair_interval(const RatInterval& w_iv, int64_t n, int bits, RatInterval& Vn_prev,
                          RatInterval& Vn) {
  if (n < 1) throw std::invalid_argument("ladder_pair_interval: index must be >= 1");
  const RatInterval w = dy_outward(w_iv, bits);
  const RatInterval two = RatInterval::exact(2);
  // state (V_k, V_(k+1)) for k the consumed bit prefix of n-1
  RatInterval Vk = two, Vk1 = w;
  int64_t m = n - 1;
  if (m > 0) {
    int hb = 62;
    while (((m >> hb) & 1) == 0) --hb;
    for (int b = hb; b >= 0; --b) {
      if (((m >> b) & 1) == 0) {
        RatInterval nv = dy_mul(Vk, Vk, bits) - two;
        RatInterval nv1 = dy_mul(Vk, Vk1, bits) - w;
        Vk = nv;
        Vk1 = nv1;
      } else {
        RatInterval nv = dy_mul(Vk, Vk1, bits) - w;
        RatInterval nv1 = dy_mul(Vk1, Vk1, bits) - two;
        Vk = nv;
        Vk1 = nv1;
      }
    }
  }
  Vn_prev = Vk;
  Vn = Vk1;
}

// interval of V_n over an interval of w
RatInterval ladder_value_interval(const RatInterval& w_iv, int64_t n, int bits) {
  if (n == 0) return RatInterval::exact(2);
  RatInterval prev, cur;
  ladder_pair_interval(w_iv, n, bits, prev, cur);
  return cur;
}

// interval of the positivity gate p X^2 (D + 2) - 4 over an interval of w,
// using D + 2 = 2 V_N^2 - V_(N-1)^2 - 2 w^2 + 4
RatInterval gate_interval(const RatInterval& w_iv, int64_t N, const Int& pX2, int bits) {
  RatInterval Vprev, VN;
  ladder_pair_interval(w_iv, N, bits, Vprev, VN);
  const RatInterval w = dy_outward(w_iv, bits);
  RatInterval d2 = dy_mul(VN, VN, bits) * RatInterval::exact(2) - dy_mul(Vprev, Vprev, bits) -
                   dy_mul(w, w, bits) * RatInterval::exact(2) + RatInterval::exact(4);
  return d2 * RatInterval::exact(Rat(pX2)) - RatInterval::exact(4);
}

// -- root bookkeeping -------------------------------------------------------

struct EmbeddingRoot {
  RatInterval iv;
  bool unit = false;  // w in (-2, 2), i.e. gamma on the unit circle
  std::optional<Rat> exact;
};

// ascending real roots of T, each flagged unit or real; |w| = 2 never occurs
// for the trace polynomial of an irreducible P of degree >= 2
std::vector<EmbeddingRoot> embedding_roots(const IntPolynomial& T, int prec_cap_bits) {
  IntPolynomial sf = squarefree_part(T);
  if (sturm_count(sf) != sf.degree()) {
    throw EligibilityError("trace polynomial is not totally real");
  }
  std::vector<EmbeddingRoot> out;
  for (const RealRootLoc& loc : isolate_real_roots(sf)) {
    EmbeddingRoot r;
    r.iv = loc.iv;
    r.exact = loc.exact;
    out.push_back(std::move(r));
  }
  const Rat two(2);
  for (EmbeddingRoot& r : out) {
    if (r.exact) {
      r.unit = rat_abs(*r.exact) < two;
      if (rat_abs(*r.exact) == two) throw EligibilityError("trace polynomial has w = +-2");
      continue;
    }
    Rat width = r.iv.width();
    int rounds = 0;
    while (!(r.iv.hi < two && r.iv.lo > -two) && !(r.iv.lo > two) && !(r.iv.hi < -two)) {
      width /= 16;
      r.iv = refine_real_root(sf, r.iv, width);
      if (++rounds > prec_cap_bits) {
        throw PrecisionExhausted("could not separate an embedding from |w| = 2");
      }
    }
    r.unit = r.iv.hi < two && r.iv.lo > -two;
  }
  return out;
}

// refine a root interval of sf below the width target, keeping exact points
RatInterval refine_root(const IntPolynomial& sf, const EmbeddingRoot& r, const Rat& width_target) {
  if (r.exact) return RatInterval::exact(*r.exact);
  if (r.iv.width() <= width_target) return r.iv;
  return refine_real_root(sf, r.iv, width_target);
}

Rat pow2_inverse(int bits) { return Rat(Int(1), Int(1) << bits); }

// -- Hilbert symbol helpers -------------------------------------------------

int legendre_symbol(const Int& u, uint64_t p) {
  Int m = u % Int(p);
  if (m < 0) m += Int(p);
  if (m == 0) throw std::invalid_argument("legendre_symbol: argument divisible by p");
  uint64_t r = m.convert_to<uint64_t>();
  return pow_mod_u64(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

Int strip_factor(Int v, const Int& q, unsigned& e) {
  e = 0;
  while (v % q == 0) {
    v /= q;
    ++e;
  }
  return v;
}

// -- bounded isotropy search ------------------------------------------------
//
// Searches for a nonzero triple (x, y, z) over Z[w]/(T) with coefficient
// height at most H and a x^2 + p y^2 - z^2 = 0 in the quotient ring.  The
// squared halves meet in the middle: the sets {a x^2} and {p y^2} are paired
// against a hash set of {z^2}.  Squaring is even in each variable, so only
// sign-canonical representatives are enumerated.

struct SquareTable {
  // one row of d int64 coefficients per canonical vector; row 0 is the zero vector
  std::vector<int64_t> flat;
  size_t rows = 0;
  int d = 0;
};

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// a hash linear over Z/2^64, so the hash of -(u + v) is -(h(u) + h(v))
// and the pair loop never has to materialize the summed row
struct LinearHash {
  std::vector<uint64_t> mult;
  explicit LinearHash(int d) {
    mult.resize(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) mult[static_cast<size_t>(i)] = splitmix64(static_cast<uint64_t>(i)) | 1;
  }
  uint64_t operator()(const int64_t* row) const {
    uint64_t h = 0;
    for (size_t i = 0; i < mult.size(); ++i) h += static_cast<uint64_t>(row[i]) * mult[i];
    return h;
  }
};

// open-addressed set of rows keyed by their linear hash; full rows are only
// compared after a 64-bit hash match
struct RowSet {
  size_t mask = 0;
  std::vector<uint64_t> hash;
  std::vector<uint32_t> idx;  // row index + 1, 0 marks an empty slot
  const SquareTable* table = nullptr;

  void build(const SquareTable& t, const LinearHash& lh) {
    table = &t;
    size_t cap = 16;
    while (cap < t.rows * 2) cap <<= 1;
    mask = cap - 1;
    hash.assign(cap, 0);
    idx.assign(cap, 0);
    for (size_t r = 0; r < t.rows; ++r) {
      const int64_t* row = &t.flat[r * static_cast<size_t>(t.d)];
      uint64_t h = lh(row);
      size_t s = h & mask;
      bool dup = false;
      while (idx[s] != 0) {
        if (hash[s] == h) {
          const int64_t* other = &t.flat[(idx[s] - 1) * static_cast<size_t>(t.d)];
          if (std::equal(row, row + t.d, other)) {
            dup = true;  // duplicate square value, one representative suffices
            break;
          }
        }
        s = (s + 1) & mask;
      }
      if (!dup) {
        hash[s] = h;
        idx[s] = static_cast<uint32_t>(r + 1);
      }
    }
  }
};

// all vectors in [-H, H]^d whose first nonzero coordinate is positive,
// preceded by the zero vector
std::vector<std::vector<Int>> canonical_vectors(int d, int64_t H) {
  std::vector<std::vector<Int>> out;
  std::vector<int64_t> cur(static_cast<size_t>(d), -H);
  for (;;) {
    int64_t first = 0;
    for (int i = d - 1; i >= 0; --i) {
      if (cur[static_cast<size_t>(i)] != 0) first = cur[static_cast<size_t>(i)];
    }
    if (first >= 0) {
      std::vector<Int> v(static_cast<size_t>(d));
      for (int i = 0; i < d; ++i) v[static_cast<size_t>(i)] = cur[static_cast<size_t>(i)];
      out.push_back(std::move(v));
    }
    int i = 0;
    while (i < d && cur[static_cast<size_t>(i)] == H) {
      cur[static_cast<size_t>(i)] = -H;
      ++i;
    }
    if (i == d) break;
    ++cur[static_cast<size_t>(i)];
  }
  // move the zero vector to the front so the (x, y) = (0, 0) pair has index (0, 0)
  for (size_t r = 0; r < out.size(); ++r) {
    bool zero = true;
    for (const Int& v : out[r]) zero = zero && v == 0;
    if (zero) {
      std::swap(out[0], out[r]);
      break;
    }
  }
  return out;
}

SquareTable squares_scaled(const std::vector<std::vector<Int>>& vecs, const IntPolynomial& T,
                           const Int& scale) {
  const int d = T.degree();
  SquareTable t;
  t.d = d;
  t.rows = vecs.size();
  t.flat.resize(t.rows * static_cast<size_t>(d));
  const Int limit = Int(1) << 61;
  for (size_t r = 0; r < vecs.size(); ++r) {
    IntPolynomial sq = reduce_mod(IntPolynomial(vecs[r]) * IntPolynomial(vecs[r]), T);
    for (int i = 0; i < d; ++i) {
      Int c = sq[static_cast<size_t>(i)] * scale;
      if (int_abs(c) >= limit) throw std::overflow_error("isotropy search coefficient overflow");
      t.flat[r * static_cast<size_t>(d) + static_cast<size_t>(i)] = c.convert_to<int64_t>();
    }
  }
  return t;
}

int64_t isotropy_height_for_degree(int d, int64_t height_bound) {
  // keep the pair loop under roughly 1.2e9 iterations: (2H+1)^(2d) <= 4.8e9
  int64_t H = 1;
  while (true) {
    long double side = powl(static_cast<long double>(2 * (H + 1) + 1), static_cast<long double>(d));
    if (side * side / 4.0L > 1.2e9L) break;
    ++H;
  }
  return std::min(H, height_bound);
}

bool isotropy_solution_exists(const IntPolynomial& a_red, const IntPolynomial& T, int64_t p,
                              int64_t H) {
  const int d = T.degree();
  std::vector<std::vector<Int>> vecs = canonical_vectors(d, H);
  SquareTable ax2;  // a x^2 rows
  {
    const Int one(1);
    SquareTable plain = squares_scaled(vecs, T, one);
    ax2.d = d;
    ax2.rows = plain.rows;
    ax2.flat.resize(plain.flat.size());
    const Int limit = Int(1) << 61;
    for (size_t r = 0; r < plain.rows; ++r) {
      std::vector<Int> c(static_cast<size_t>(d));
      for (int i = 0; i < d; ++i) c[static_cast<size_t>(i)] = plain.flat[r * d + i];
      IntPolynomial scaled = reduce_mod(IntPolynomial(std::move(c)) * a_red, T);
      for (int i = 0; i < d; ++i) {
        Int v = scaled[static_cast<size_t>(i)];
        if (int_abs(v) >= limit) throw std::overflow_error("isotropy search coefficient overflow");
        ax2.flat[r * static_cast<size_t>(d) + static_cast<size_t>(i)] = v.convert_to<int64_t>();
      }
    }
  }
  SquareTable py2 = squares_scaled(vecs, T, Int(p));
  SquareTable z2 = squares_scaled(vecs, T, Int(1));
  const LinearHash lh(d);
  RowSet zset;
  zset.build(z2, lh);

  std::vector<uint64_t> ah(ax2.rows), ph(py2.rows);
  for (size_t i = 0; i < ax2.rows; ++i) ah[i] = lh(&ax2.flat[i * static_cast<size_t>(d)]);
  for (size_t j = 0; j < py2.rows; ++j) ph[j] = lh(&py2.flat[j * static_cast<size_t>(d)]);

  std::vector<int64_t> s(static_cast<size_t>(d));
  const size_t mask = zset.mask;
  for (size_t i = 0; i < ax2.rows; ++i) {
    const int64_t* arow = &ax2.flat[i * static_cast<size_t>(d)];
    const uint64_t hi_part = ah[i];
    for (size_t j = (i == 0 ? 1 : 0); j < py2.rows; ++j) {
      uint64_t hs = hi_part + ph[j];  // hash of a x^2 + p y^2, the required z^2
      size_t slot = hs & mask;
      if (zset.idx[slot] == 0) continue;  // fast path: empty home slot
      const int64_t* prow = &py2.flat[j * static_cast<size_t>(d)];
      while (zset.idx[slot] != 0) {
        if (zset.hash[slot] == hs) {
          for (int k = 0; k < d; ++k) s[static_cast<size_t>(k)] = arow[k] + prow[k];
          const int64_t* zrow =
              &z2.flat[(zset.idx[slot] - 1) * static_cast<size_t>(d)];
          if (std::equal(s.begin(), s.end(), zrow)) return true;
        }
        slot = (slot + 1) & mask;
      }
    }
  }
  return false;
}

std::vector<uint64_t> odd_prime_divisors(const Int& v) {
  Int m = int_abs(v);
  std::vector<uint64_t> out;
  if (m > (Int(1) << 62)) throw std::overflow_error("hilbert place factorization overflow");
  for (auto& [q, e] : factor_u64(m.convert_to<uint64_t>())) {
    (void)e;
    if (q % 2 == 1) out.push_back(q);
  }
  return out;
}

int64_t next_prime_after(int64_t p) {
  int64_t q = p + 1;
  while (!is_prime_u64(static_cast<uint64_t>(q))) ++q;
  return q;
}

}  // namespace

// -- Pell equation ----------------------------------------------------------

PellSolution pell_fundamental(int64_t p) {
  if (p < 2) throw std::invalid_argument("pell_fundamental: p must be >= 2");
  Int P(p);
  Int a0 = isqrt(P);
  if (a0 * a0 == P) throw std::invalid_argument("pell_fundamental: p is a perfect square");
  // continued fraction of sqrt(p); test every convergent h/k for h^2 - p k^2 = 1
  Int m = 0, d = 1, a = a0;
  Int h_prev = 1, h = a0, k_prev = 0, k = 1;
  for (int step = 0; step < 1000000; ++step) {
    if (h * h - P * k * k == 1) return {k, h};
    m = d * a - m;
    d = (P - m * m) / d;
    a = (a0 + m) / d;
    Int h_next = a * h + h_prev;
    Int k_next = a * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  throw std::logic_error("pell_fundamental: period scan failed");
}

PellSolution pell_power(const PellSolution& s, int64_t p, unsigned k) {
  PellSolution r;  // identity (X, Z) = (0, 1)
  PellSolution base = s;
  unsigned e = k;
  while (e > 0) {
    if (e & 1) {
      PellSolution t;
      t.Z = r.Z * base.Z + Int(p) * r.X * base.X;
      t.X = r.Z * base.X + r.X * base.Z;
      r = t;
    }
    PellSolution b2;
    b2.Z = base.Z * base.Z + Int(p) * base.X * base.X;
    b2.X = 2 * base.X * base.Z;
    base = b2;
    e >>= 1;
  }
  return r;
}

// -- Hilbert symbols over Q ---------------------------------------------------

int hilbert_symbol(const Int& a, const Int& b, uint64_t place) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: arguments must be nonzero");
  if (place == 0) return (a < 0 && b < 0) ? -1 : 1;
  if (place == 2) {
    unsigned alpha, beta;
    Int u = strip_factor(a, Int(2), alpha);
    Int v = strip_factor(b, Int(2), beta);
    auto eps = [](const Int& x) {
      Int m = x % 4;
      if (m < 0) m += 4;
      return m == 3 ? 1u : 0u;  // (x - 1)/2 mod 2 for odd x
    };
    auto omega = [](const Int& x) {
      Int m = x % 8;
      if (m < 0) m += 8;
      return (m == 1 || m == 7) ? 0u : 1u;  // (x^2 - 1)/8 mod 2 for odd x
    };
    unsigned e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
    return (e % 2 == 0) ? 1 : -1;
  }
  if (place % 2 == 0 || !is_prime_u64(place)) {
    throw std::invalid_argument("hilbert_symbol: place must be 0, 2, or an odd prime");
  }
  unsigned alpha, beta;
  Int u = strip_factor(a, Int(place), alpha);
  Int v = strip_factor(b, Int(place), beta);
  int s = 1;
  if (beta % 2 == 1) s *= legendre_symbol(u, place);
  if (alpha % 2 == 1) s *= legendre_symbol(v, place);
  if (alpha % 2 == 1 && beta % 2 == 1 && ((place - 1) / 2) % 2 == 1) s = -s;
  return s;
}

bool quaternion_division_exact(const Int& a, const Int& b, std::string* detail) {
  std::vector<uint64_t> places = {0, 2};
  for (uint64_t q : odd_prime_divisors(a)) places.push_back(q);
  for (uint64_t q : odd_prime_divisors(b)) places.push_back(q);
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());

  int product = 1;
  bool division = false;
  std::ostringstream os;
  for (uint64_t v : places) {
    int s = hilbert_symbol(a, b, v);
    product *= s;
    if (s == -1) division = true;
    if (os.tellp() > 0) os << ' ';
    if (v == 0) {
      os << "(a,b)_inf=" << (s > 0 ? "+1" : "-1");
    } else {
      os << "(a,b)_" << v << '=' << (s > 0 ? "+1" : "-1");
    }
  }
  // symbols are +1 at every place not listed, so the listed ones must multiply to +1
  if (product != 1) throw std::logic_error("hilbert symbol product formula violated");
  if (detail) *detail = os.str();
  return division;
}

// -- division witness search --------------------------------------------------

DivisionWitness division_witness_search(const IntPolynomial& a_repr, const IntPolynomial& T,
                                        int64_t prime_bound, int64_t height_bound) {
  if (!T.is_monic() || T.degree() < 1) {
    throw std::invalid_argument("division_witness_search: T must be monic of degree >= 1");
  }
  IntPolynomial a_red = reduce_mod(a_repr, T);
  if (a_red.is_zero()) {
    throw std::invalid_argument("division_witness_search: a vanishes in the field");
  }
  const int d = T.degree();
  if (d == 1) {
    Int w0 = -T[0];
    Int a_val = a_repr.eval(w0);
    if (a_val == 0) throw std::invalid_argument("division_witness_search: a vanishes in the field");
    if (a_val > 0 && is_perfect_square(a_val)) {
      throw std::invalid_argument("division_witness_search: a is a square, the algebra always splits");
    }
    for (int64_t p = 2; p <= prime_bound; p = next_prime_after(p)) {
      std::string sym;
      if (quaternion_division_exact(a_val, Int(p), &sym)) {
        DivisionWitness w;
        w.mode = WitnessMode::Exact;
        w.p = p;
        w.height = 0;
        w.detail = sym;
        return w;
      }
    }
    throw BoundExhausted("no division witness prime up to " + std::to_string(prime_bound));
  }

  const int64_t H = isotropy_height_for_degree(d, height_bound);
  for (int64_t p = 2; p <= prime_bound; p = next_prime_after(p)) {
    if (!isotropy_solution_exists(a_red, T, p, H)) {
      DivisionWitness w;
      w.mode = WitnessMode::IsotropyAbsent;
      w.p = p;
      w.height = H;
      std::ostringstream os;
      os << "no isotropic vector for a x^2 + " << p << " y^2 - z^2 over Z[w]/(T) up to height " << H;
      w.detail = os.str();
      return w;
    }
  }
  throw BoundExhausted("no division witness prime up to " + std::to_string(prime_bound));
}

// -- near-one power search ------------------------------------------------------

int64_t near_one_power_search(const IntPolynomial& T, const std::vector<RatInterval>& unit_ws,
                              const Rat& eps, int prec_cap_bits, int64_t scan_cap) {
  if (eps <= 0) throw std::invalid_argument("near_one_power_search: eps must be positive");
  if (unit_ws.empty()) throw std::invalid_argument("near_one_power_search: no unit-circle roots");
  IntPolynomial sf = squarefree_part(T);
  const Rat eps2 = eps * eps;
  const double eps2_f = static_cast<double>(rat_num(eps2).convert_to<double>() /
                                            rat_den(eps2).convert_to<double>());

  struct Root {
    RatInterval iv;
    double theta;
  };
  std::vector<Root> roots;
  for (const RatInterval& iv : unit_ws) {
    RatInterval r = iv;
    if (r.width() > pow2_inverse(48)) r = refine_real_root(sf, r, pow2_inverse(48));
    double wf = r.mid().convert_to<double>();
    if (wf < -2 || wf > 2) throw std::invalid_argument("near_one_power_search: w outside (-2, 2)");
    roots.push_back({r, std::acos(wf / 2)});
  }

  for (int64_t n = 1; n <= scan_cap; ++n) {
    bool plausible = true;
    for (const Root& r : roots) {
      double s = std::sin(static_cast<double>(n) * r.theta / 2);
      if (4 * s * s >= eps2_f * 1.5) {
        plausible = false;
        break;
      }
    }
    if (!plausible) continue;
    // exact confirmation: |1 - gamma^n|^2 = 2 - V_n(w) < eps^2 at every root
    bool all_ok = true;
    for (Root& r : roots) {
      int bits = 192;
      for (;;) {
        RatInterval vn = ladder_value_interval(r.iv, n, bits);
        RatInterval dist = RatInterval::exact(2) - vn;
        if (dist.hi < eps2) break;       // certified close
        if (dist.lo >= eps2) {           // certified far
          all_ok = false;
          break;
        }
        bits *= 2;
        if (bits > std::max(prec_cap_bits, 192)) {
          throw PrecisionExhausted("near_one_power_search: cannot separate |1-gamma^n| from eps");
        }
        r.iv = refine_root(sf, {r.iv, false, std::nullopt}, pow2_inverse(bits / 2));
      }
      if (!all_ok) break;
    }
    if (all_ok) return n;
  }
  throw BoundExhausted("no exponent with |1-gamma^n| < eps up to " + std::to_string(scan_cap));
}

// -- evaluation at real roots -----------------------------------------------

namespace {

RatInterval interval_eval(const IntPolynomial& f, const RatInterval& x) {
  RatInterval acc = RatInterval::exact(0);
  for (int i = f.degree(); i >= 0; --i) {
    acc = acc * x + RatInterval::exact(Rat(f[static_cast<size_t>(i)]));
  }
  return acc;
}

}  // namespace

std::vector<Enclosure> evaluate_at_real_roots(const IntPolynomial& f, const IntPolynomial& T,
                                              const Rat& tol, int prec_cap_bits) {
  IntPolynomial sf = squarefree_part(T);
  const Rat target = refine_target(tol);
  const int digits = enclosure_digits(tol);
  std::vector<Enclosure> out;
  for (const RealRootLoc& loc : isolate_real_roots(sf)) {
    if (loc.exact) {
      out.push_back(Enclosure::exact_point(f.eval(*loc.exact), digits));
      continue;
    }
    RatInterval iv = loc.iv;
    Rat width = iv.width();
    int rounds = 0;
    for (;;) {
      RatInterval val = interval_eval(f, iv);
      if (val.width() <= target) {
        out.push_back(Enclosure::from_interval(val, digits));
        break;
      }
      width /= 16;
      iv = refine_real_root(sf, iv, width);
      if (++rounds > prec_cap_bits) {
        throw PrecisionExhausted("evaluate_at_real_roots: refinement cap reached");
      }
    }
  }
  return out;
}

// -- positivity search ---------------------------------------------------------

namespace {

enum class GateOutcome { Positive, NonPositive, Ambiguous };

// certify the sign of p X^2 (D+2) - 4 at one embedding, escalating precision
GateOutcome certify_gate(const IntPolynomial& sf, EmbeddingRoot& root, int64_t N, const Int& pX2,
                         int prec_cap_bits, RatInterval& gate_out) {
  for (int bits = 192; bits <= std::max(prec_cap_bits, 192); bits *= 2) {
    root.iv = refine_root(sf, root, pow2_inverse(bits / 2));
    RatInterval g = gate_interval(root.iv, N, pX2, bits);
    if (g.lo > 0) {
      gate_out = g;
      return GateOutcome::Positive;
    }
    if (g.hi <= 0) {
      gate_out = g;
      return GateOutcome::NonPositive;
    }
  }
  return GateOutcome::Ambiguous;
}

double to_double(const Rat& r) {
  return rat_num(r).convert_to<double>() / rat_den(r).convert_to<double>();
}

double to_double(const Int& v) { return v.convert_to<double>(); }

}  // namespace

PositivityResult positivity_search(const IntPolynomial& T, int64_t p, const PellSolution& pell,
                                   const RunConfig& cfg) {
  if (!T.is_monic() || T.degree() < 1) {
    throw std::invalid_argument("positivity_search: T must be monic of degree >= 1");
  }
  IntPolynomial sf = squarefree_part(T);
  std::vector<EmbeddingRoot> roots = embedding_roots(T, cfg.precision_cap);
  bool any_unit = false;
  for (const EmbeddingRoot& r : roots) any_unit = any_unit || r.unit;
  if (!any_unit) {
    throw std::invalid_argument("positivity_search: no unit-circle embedding");
  }
  if (pell.Z * pell.Z - Int(p) * pell.X * pell.X != 1 || pell.X <= 0) {
    throw std::invalid_argument("positivity_search: invalid Pell solution");
  }

  // scale the Pell solution until 3 (4 - w^2) p X^2 > 8 at every unit embedding,
  // which leaves room for the oscillating error term
  PellSolution scaled = pell;
  Rat s_min;
  bool have_smin = false;
  for (const EmbeddingRoot& r : roots) {
    if (!r.unit) continue;
    Rat u = std::max(rat_abs(r.iv.lo), rat_abs(r.iv.hi));
    Rat slack = Rat(4) - u * u;
    if (!have_smin || slack < s_min) {
      s_min = slack;
      have_smin = true;
    }
  }
  int scalings = 0;
  while (Rat(3) * s_min * Rat(Int(p) * scaled.X * scaled.X) <= 8) {
    PellSolution sq;
    sq.Z = scaled.Z * scaled.Z + Int(p) * scaled.X * scaled.X;
    sq.X = 2 * scaled.X * scaled.Z;
    scaled = sq;
    if (++scalings > 64) {
      throw BoundExhausted("positivity_search: Pell scaling did not reach the slack budget");
    }
  }
  const Int pX2 = Int(p) * scaled.X * scaled.X;
  const double pX2_f = to_double(pX2);

  // double-precision filter data
  struct UnitData {
    size_t idx;
    double theta;
    double delta_budget;
  };
  struct RealData {
    size_t idx;
    double log_lambda;
    double w2;
  };
  std::vector<UnitData> units;
  std::vector<RealData> reals;
  for (size_t i = 0; i < roots.size(); ++i) {
    EmbeddingRoot& r = roots[i];
    r.iv = refine_root(sf, r, pow2_inverse(52));
    double wf = to_double(r.iv.mid());
    if (r.unit) {
      double rhs = 0.95 * 3 * (4 - wf * wf) - 4 / pX2_f;
      double budget = (-1 + std::sqrt(1 + 2 * rhs)) / 2;
      units.push_back({i, std::acos(wf / 2), budget});
    } else {
      double aw = std::fabs(wf);
      reals.push_back({i, std::log((aw + std::sqrt(aw * aw - 4)) / 2), wf * wf});
    }
  }

  int64_t ambiguous = 0;
  for (int64_t N = 2; N <= cfg.enum_cap; N += 2) {
    bool plausible = true;
    for (const UnitData& u : units) {
      double delta = 2 * std::fabs(std::sin(static_cast<double>(N) * u.theta));
      if (delta >= u.delta_budget) {
        plausible = false;
        break;
      }
    }
    for (const RealData& r : reals) {
      if (!plausible) break;
      double t = 2 * static_cast<double>(N) * r.log_lambda;
      if (t > 60) continue;  // V_2N dwarfs every other term
      double v2n = std::exp(t) + std::exp(-t);
      double v2n2 = std::exp(t - 2 * r.log_lambda) + std::exp(-t + 2 * r.log_lambda);
      double e = 2 * v2n - v2n2 - 2 * (r.w2 - 2) + 2;
      if (pX2_f * e <= 4 * 1.25) plausible = false;
    }
    if (!plausible) continue;

    std::vector<RatInterval> gates(roots.size());
    bool all_pos = true, ambig = false;
    for (size_t i = 0; i < roots.size() && all_pos; ++i) {
      switch (certify_gate(sf, roots[i], N, pX2, cfg.precision_cap, gates[i])) {
        case GateOutcome::Positive:
          break;
        case GateOutcome::NonPositive:
          all_pos = false;
          break;
        case GateOutcome::Ambiguous:
          all_pos = false;
          ambig = true;
          break;
      }
    }
    if (ambig) ++ambiguous;
    if (!all_pos) continue;

    // success: assemble the components and run the dual check
    PositivityResult res;
    res.N = N;
    res.pell = scaled;
    IntPolynomial VN, VN1, UN;
    chebyshev_triple_mod(T, N, VN, VN1, UN);
    const Int px = Int(p) * scaled.X;
    res.x = reduce_mod(VN.times(px), T);
    res.y = VN1;
    res.z = reduce_mod(UN.times(scaled.Z), T);

    // same value through the defining form and through the closed identity
    const IntPolynomial a_red = reduce_mod(IntPolynomial({Int(-4), Int(0), Int(1)}), T);
    IntPolynomial w = reduce_mod(IntPolynomial::x(), T);
    IntPolynomial lhs = reduce_mod(
        mulmod(a_red, mulmod(res.x, res.x, T), T) + mulmod(res.y, res.y, T).times(Int(p)) -
            mulmod(a_red, mulmod(res.z, res.z, T), T).times(Int(p)),
        T);
    IntPolynomial VNm1 = reduce_mod(mulmod(w, VN, T) - VN1, T);
    IntPolynomial d2 = reduce_mod(mulmod(VN, VN, T).times(Int(2)) - mulmod(VNm1, VNm1, T) -
                                      mulmod(w, w, T).times(Int(2)) +
                                      IntPolynomial::constant(4),
                                  T);
    IntPolynomial rhs =
        reduce_mod((IntPolynomial::constant(4) - d2.times(pX2)).times(Int(p)), T);
    if (lhs != rhs) throw std::logic_error("positivity_search: dual-route value mismatch");

    const int digits = enclosure_digits(cfg.tolerance);
    for (size_t i = 0; i < roots.size(); ++i) {
      RatInterval c2(-Rat(Int(p)) * gates[i].hi, -Rat(Int(p)) * gates[i].lo);
      res.c_squared.push_back(Enclosure::from_interval(c2, digits));
    }
    return res;
  }
  std::ostringstream os;
  os << "positivity_search: no admissible exponent up to " << cfg.enum_cap;
  if (ambiguous > 0) os << " (" << ambiguous << " candidates hit the precision cap)";
  throw BoundExhausted(os.str());
}

// -- realization ---------------------------------------------------------------

RealizationCertificate realize_type1(const IntPolynomial& P, const RunConfig& cfg) {
  if (!P.is_monic()) throw EligibilityError("polynomial must be monic");
  if (P.degree() < 2) throw EligibilityError("degree must be at least 2");
  if (int_abs(P.constant_term()) != 1) throw EligibilityError("constant term must be +-1");
  if (!irreducible_over_rationals(P)) throw EligibilityError("polynomial must be irreducible");
  if (sturm_count(P) != P.degree()) {
    throw EligibilityError("not totally real; a unit-circle root requires the quaternionic route");
  }
  RealizationCertificate cert;
  cert.input_poly = P;
  cert.g = P.degree();
  cert.type_tag = RealizationType::Type1;
  cert.trace_field_poly = P;
  cert.a_repr = IntPolynomial::zero();
  cert.claimed_spectrum = spectrum_from_min_poly(P, cert.g, cfg.tolerance, cfg.precision_cap);
  return cert;
}

RealizationCertificate realize_type2(const IntPolynomial& P, const RunConfig& cfg) {
  EligibilityResult elig = main_theorem_eligible(P);
  if (!elig.eligible) throw EligibilityError(elig.reason);
  if (elig.unit_count == 0) {
    throw EligibilityError("no unit-circle root; use the totally-real route");
  }
  if (P.degree() < 2) throw EligibilityError("x - 1 and x + 1 are excluded");
  if (!is_palindromic(P) || P.degree() % 2 != 0) {
    throw EligibilityError("polynomial is not palindromic of even degree");
  }
  const int g = P.degree();

  IntPolynomial T = trace_polynomial(P);
  if (!irreducible_over_rationals(T)) {
    throw std::logic_error("trace polynomial of an irreducible input must be irreducible");
  }
  RealizationCertificate cert;
  cert.input_poly = P;
  cert.g = g;
  cert.type_tag = RealizationType::Type2;
  cert.trace_field_poly = T;
  cert.a_repr = IntPolynomial({Int(-4), Int(0), Int(1)});

  // the distinguished embedding: the largest w inside (-2, 2)
  std::vector<EmbeddingRoot> roots = embedding_roots(T, cfg.precision_cap);
  const EmbeddingRoot* best = nullptr;
  for (const EmbeddingRoot& r : roots) {
    if (r.unit) best = &r;  // roots ascend, the last unit root has the largest w
  }
  if (best == nullptr) throw std::logic_error("eligible input lost its unit-circle embedding");
  {
    RatInterval iv = refine_root(squarefree_part(T), *best, refine_target(cfg.tolerance));
    cert.gamma_w = best->exact
                       ? Enclosure::exact_point(*best->exact, enclosure_digits(cfg.tolerance))
                       : Enclosure::from_interval(iv, enclosure_digits(cfg.tolerance));
  }

  cert.division = division_witness_search(cert.a_repr, T, cfg.prime_bound, cfg.height_bound);
  PellSolution base = pell_fundamental(cert.division.p);
  PositivityResult pos = positivity_search(T, cert.division.p, base, cfg);
  cert.pell = pos.pell;
  cert.exponent_N = pos.N;
  cert.c_x = pos.x;
  cert.c_y = pos.y;
  cert.c_z = pos.z;
  cert.c_squared_conjugates = pos.c_squared;
  cert.claimed_spectrum = spectrum_from_min_poly(P, g, cfg.tolerance, cfg.precision_cap);
  return cert;
}

// -- certificate verification ----------------------------------------------------

namespace {

void add_check(VerificationReport& rep, const std::string& name, bool pass,
               const std::string& detail = "") {
  rep.checks.push_back({name, pass, detail});
}

bool spectra_consistent(const DynamicalSpectrum& a, const DynamicalSpectrum& b) {
  if (a.g != b.g || a.lambdas.size() != b.lambdas.size()) return false;
  for (size_t i = 0; i < a.lambdas.size(); ++i) {
    RatInterval ia = a.lambdas[i].interval(), ib = b.lambdas[i].interval();
    if (ia.disjoint(ib)) return false;
  }
  return true;
}

}  // namespace

VerificationReport verify_certificate(const RealizationCertificate& cert, const RunConfig& cfg) {
  VerificationReport rep;
  const IntPolynomial& P = cert.input_poly;

  if (cert.type_tag == RealizationType::Type1) {
    add_check(rep, "monic-irreducible",
              P.is_monic() && P.degree() >= 2 && irreducible_over_rationals(P));
    add_check(rep, "totally-real", sturm_count(P) == P.degree());
    add_check(rep, "unit-constant", int_abs(P.constant_term()) == 1);
    add_check(rep, "field-polynomial", cert.trace_field_poly == P);
    bool spec_ok = false;
    std::string spec_detail;
    try {
      DynamicalSpectrum fresh = spectrum_from_min_poly(P, cert.g, cfg.tolerance, cfg.precision_cap);
      spec_ok = spectra_consistent(fresh, cert.claimed_spectrum);
    } catch (const std::exception& e) {
      spec_detail = e.what();
    }
    add_check(rep, "spectrum", spec_ok, spec_detail);
  } else {
    EligibilityResult elig = main_theorem_eligible(P);
    add_check(rep, "eligibility", elig.eligible && elig.unit_count > 0, elig.reason);
    bool trace_ok = false;
    if (elig.eligible && is_palindromic(P) && P.degree() >= 2 && P.degree() % 2 == 0) {
      trace_ok = trace_polynomial(P) == cert.trace_field_poly;
    }
    add_check(rep, "trace-polynomial", trace_ok);
    add_check(rep, "a-representation", cert.a_repr == IntPolynomial({Int(-4), Int(0), Int(1)}));
    const Int p(cert.division.p);
    add_check(rep, "division-witness-prime",
              cert.division.p >= 2 && is_prime_u64(static_cast<uint64_t>(cert.division.p)));
    add_check(rep, "pell",
              cert.pell.X > 0 && cert.pell.Z * cert.pell.Z - p * cert.pell.X * cert.pell.X == 1);

    bool comp_ok = false, dual_ok = false, neg_ok = false, gamma_ok = false;
    std::string neg_detail;
    if (trace_ok && cert.exponent_N >= 2 && cert.exponent_N % 2 == 0) {
      const IntPolynomial& T = cert.trace_field_poly;
      IntPolynomial VN, VN1, UN;
      chebyshev_triple_mod(T, cert.exponent_N, VN, VN1, UN);
      const Int px = p * cert.pell.X;
      comp_ok = cert.c_x == reduce_mod(VN.times(px), T) && cert.c_y == VN1 &&
                cert.c_z == reduce_mod(UN.times(cert.pell.Z), T);

      const IntPolynomial a_red = reduce_mod(cert.a_repr, T);
      IntPolynomial lhs = reduce_mod(
          mulmod(a_red, mulmod(cert.c_x, cert.c_x, T), T) +
              mulmod(cert.c_y, cert.c_y, T).times(p) -
              mulmod(a_red, mulmod(cert.c_z, cert.c_z, T), T).times(p),
          T);
      const Int pX2 = p * cert.pell.X * cert.pell.X;
      IntPolynomial w = reduce_mod(IntPolynomial::x(), T);
      IntPolynomial VNm1 = reduce_mod(mulmod(w, VN, T) - VN1, T);
      IntPolynomial d2 = reduce_mod(mulmod(VN, VN, T).times(Int(2)) - mulmod(VNm1, VNm1, T) -
                                        mulmod(w, w, T).times(Int(2)) +
                                        IntPolynomial::constant(4),
                                    T);
      IntPolynomial rhs = reduce_mod((IntPolynomial::constant(4) - d2.times(pX2)).times(p), T);
      dual_ok = lhs == rhs;

      // re-certify negativity at every embedding instead of trusting the stored radii
      try {
        IntPolynomial sf = squarefree_part(T);
        std::vector<EmbeddingRoot> roots = embedding_roots(T, cfg.precision_cap);
        neg_ok = roots.size() == cert.c_squared_conjugates.size();
        for (size_t i = 0; i < roots.size() && neg_ok; ++i) {
          RatInterval gate;
          neg_ok = certify_gate(sf, roots[i], cert.exponent_N, pX2, cfg.precision_cap, gate) ==
                   GateOutcome::Positive;
          if (neg_ok) {
            RatInterval c2(-Rat(p) * gate.hi, -Rat(p) * gate.lo);
            RatInterval stored = cert.c_squared_conjugates[i].interval();
            neg_ok = stored.hi < 0 && !stored.disjoint(c2);
          }
        }
        // the distinguished embedding must sit strictly inside (-2, 2)
        RatInterval gw = cert.gamma_w.interval();
        gamma_ok = gw.lo > -2 && gw.hi < 2;
        if (gamma_ok) {
          bool hit = false;
          for (const EmbeddingRoot& r : roots) {
            hit = hit || (r.unit && !r.iv.disjoint(gw));
          }
          gamma_ok = hit;
        }
      } catch (const std::exception& e) {
        neg_detail = e.what();
        neg_ok = false;
      }
    }
    add_check(rep, "components", comp_ok);
    add_check(rep, "dual-value", dual_ok);
    add_check(rep, "conjugates-negative", neg_ok, neg_detail);
    add_check(rep, "distinguished-embedding", gamma_ok);

    bool spec_ok = false;
    std::string spec_detail;
    try {
      DynamicalSpectrum fresh = spectrum_from_min_poly(P, cert.g, cfg.tolerance, cfg.precision_cap);
      spec_ok = spectra_consistent(fresh, cert.claimed_spectrum);
    } catch (const std::exception& e) {
      spec_detail = e.what();
    }
    add_check(rep, "spectrum", spec_ok, spec_detail);
  }

  rep.ok = true;
  for (const CertificateCheck& c : rep.checks) rep.ok = rep.ok && c.pass;
  return rep;
}

} // namespace dyndeg
