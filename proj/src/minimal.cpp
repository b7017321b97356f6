#include "dyndeg/minimal.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "dyndeg/errors.hpp"
#include "dyndeg/factor.hpp"
#include "dyndeg/roots.hpp"

namespace dyndeg {

namespace {

Int rat_floor(const Rat& v) {
  Int n = numerator(v), d = denominator(v);
  Int q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

Int binom(int n, int k) {
  Int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

uint64_t totient(uint64_t n) {
  uint64_t r = n;
  for (auto [p, e] : factor_u64(n)) r -= r / p;
  return r;
}

// power sums s_0..s_count of the roots of monic p, by Newton's identities
std::vector<Int> power_sums_int(const IntPolynomial& p, int count) {
  int n = p.degree();
  std::vector<Int> s(static_cast<size_t>(count) + 1);
  s[0] = n;
  for (int k = 1; k <= count; ++k) {
    Int acc = k <= n ? Int(k) * p[static_cast<size_t>(n - k)] : Int(0);
    for (int i = 1; i < k && i <= n; ++i)
      acc += p[static_cast<size_t>(n - i)] * s[static_cast<size_t>(k - i)];
    s[static_cast<size_t>(k)] = -acc;
  }
  return s;
}

// monic integer polynomial of degree m with prescribed root power sums
IntPolynomial poly_from_power_sums(const std::vector<Int>& s, int m) {
  std::vector<Rat> e(static_cast<size_t>(m) + 1);
  e[0] = 1;
  for (int k = 1; k <= m; ++k) {
    Rat acc = 0;
    for (int i = 1; i <= k; ++i) {
      Rat term = e[static_cast<size_t>(k - i)] * Rat(s[static_cast<size_t>(i)]);
      acc += (i % 2 == 1) ? term : -term;
    }
    e[static_cast<size_t>(k)] = acc / k;
  }
  std::vector<Int> c(static_cast<size_t>(m) + 1);
  c[static_cast<size_t>(m)] = 1;
  for (int k = 1; k <= m; ++k) {
    Rat v = (k % 2 == 1) ? -e[static_cast<size_t>(k)] : e[static_cast<size_t>(k)];
    if (denominator(v) != 1)
      throw std::logic_error("power-sum reconstruction left a non-integer coefficient");
    c[static_cast<size_t>(m - k)] = numerator(v);
  }
  return IntPolynomial(c);
}

// monic polynomial whose roots are all pairwise products of the roots of a
// and b; its power sums are the products of theirs
IntPolynomial composed_product(const IntPolynomial& a, const IntPolynomial& b) {
  int m = a.degree() * b.degree();
  std::vector<Int> sa = power_sums_int(a, m), sb = power_sums_int(b, m);
  std::vector<Int> s(static_cast<size_t>(m) + 1);
  for (int i = 0; i <= m; ++i)
    s[static_cast<size_t>(i)] = sa[static_cast<size_t>(i)] * sb[static_cast<size_t>(i)];
  return poly_from_power_sums(s, m);
}

AlgebraicValue exact_value(const Rat& r, int digits) {
  if (denominator(r) != 1)
    throw std::logic_error("exact dd values are algebraic integers");
  AlgebraicValue v;
  v.min_poly = IntPolynomial({-numerator(r), Int(1)});
  v.root_index = 0;
  v.value = Enclosure::exact_point(r, digits);
  return v;
}

void refine_interval_of(AlgebraicValue& v, const Rat& width, int digits) {
  if (v.value.is_exact()) return;
  auto locs = isolate_real_roots(v.min_poly);
  if (v.root_index < 0 || v.root_index >= static_cast<int>(locs.size()))
    throw std::logic_error("algebraic value root index out of range");
  const RealRootLoc& loc = locs[static_cast<size_t>(v.root_index)];
  if (loc.exact) {
    v.value = Enclosure::exact_point(*loc.exact, digits);
    return;
  }
  RatInterval iv = refine_real_root(v.min_poly, loc.iv, width);
  v.value = Enclosure::from_interval(iv, digits);
}

// decide value <=> r exactly; a rational value carries a degree-one minimal
// polynomial, so strict inequality always separates under refinement
int compare_value_to_rational(const AlgebraicValue& v, const Rat& r, int prec_cap_bits) {
  if (v.min_poly.degree() == 1) {
    Rat root = -Rat(v.min_poly[0]);
    return root < r ? -1 : (root == r ? 0 : 1);
  }
  AlgebraicValue w = v;
  Rat width = Rat(1, Int(1) << 20);
  for (int round = 0; round < prec_cap_bits; ++round) {
    RatInterval iv = w.value.interval();
    if (iv.hi < r) return -1;
    if (iv.lo > r) return 1;
    refine_interval_of(w, width, w.value.digits());
    width /= 65536;
  }
  throw PrecisionExhausted("comparison of an algebraic value against a rational");
}

} // namespace

int compare_algebraic(const AlgebraicValue& a, const AlgebraicValue& b,
                      int prec_cap_bits) {
  if (a.same_number(b)) return 0;
  AlgebraicValue u = a, v = b;
  Rat width = Rat(1, Int(1) << 20);
  for (int round = 0; round < prec_cap_bits; ++round) {
    RatInterval ia = u.value.interval(), ib = v.value.interval();
    if (ia.hi < ib.lo) return -1;
    if (ib.hi < ia.lo) return 1;
    refine_interval_of(u, width, u.value.digits());
    refine_interval_of(v, width, v.value.digits());
    width /= 65536;
  }
  throw PrecisionExhausted("separation of two distinct algebraic values");
}

void refine_algebraic(AlgebraicValue& v, const Rat& tol, int prec_cap_bits) {
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  (void)prec_cap_bits;
  refine_interval_of(v, refine_target(tol), enclosure_digits(tol));
}

namespace {

// ---- exact first-dynamical-degree machinery ----

// positional value construction from a claimed irreducible factor: the
// unique root of `key` inside (iv.lo, iv.hi]
AlgebraicValue value_from_factor(const IntPolynomial& key, const RatInterval& iv,
                                 const Rat& tol) {
  AlgebraicValue v;
  v.min_poly = key;
  v.root_index = sturm_count(key, Bound::neg_inf(), Bound::at(iv.lo));
  auto locs = isolate_real_roots(key);
  if (v.root_index >= static_cast<int>(locs.size()))
    throw std::logic_error("claimed root index out of range");
  const RealRootLoc& loc = locs[static_cast<size_t>(v.root_index)];
  if (loc.exact) {
    v.value = Enclosure::exact_point(*loc.exact, enclosure_digits(tol));
  } else {
    RatInterval riv = refine_real_root(key, loc.iv, refine_target(tol));
    v.value = Enclosure::from_interval(riv, enclosure_digits(tol));
  }
  return v;
}

// the unique factor with exactly one root in (iv.lo, iv.hi], when no other
// factor claims any; nullptr keeps the caller refining
const IntPolynomial* claiming_factor(
    const std::vector<std::pair<IntPolynomial, unsigned>>& factors,
    const RatInterval& iv) {
  const IntPolynomial* key = nullptr;
  int claimants = 0;
  for (const auto& [f, mult] : factors) {
    int c = sturm_count(f, Bound::at(iv.lo), Bound::at(iv.hi));
    if (c > 0) {
      ++claimants;
      if (c == 1) key = &f;
    }
  }
  return (claimants == 1 && key != nullptr) ? key : nullptr;
}

// exact value alpha^2 for the real root alpha of squarefree monic G
// isolated by iv (alpha irrational, hence nonzero)
AlgebraicValue square_of_real_root(const IntPolynomial& G, RatInterval iv,
                                   const Rat& tol, int prec_cap_bits) {
  while (iv.contains(Rat(0))) iv = refine_real_root(G, iv, iv.width() / 4);
  RationalFactorization rf = factor_over_rationals(root_power_transform(G, 2));
  for (int round = 0; round < prec_cap_bits; ++round) {
    RatInterval sq = iv.pow(2);
    if (const IntPolynomial* key = claiming_factor(rf.factors, sq))
      return value_from_factor(*key, sq, tol);
    iv = refine_real_root(G, iv, iv.width() / 16);
  }
  throw PrecisionExhausted("isolating the square of a real root");
}

// exact value alpha * conj(alpha) for the conjugate pair certified inside
// layout.upper[disk_index]; S is the squarefree polynomial the layout
// analyzes, so the pair product is among the roots of the composed product
// of S with itself
AlgebraicValue pair_product_value(const IntPolynomial& S, RootLayout layout,
                                  size_t disk_index, const Rat& tol,
                                  int prec_cap_bits) {
  RationalFactorization rf = factor_over_rationals(composed_product(S, S));
  Rat width = Rat(1, Int(1) << 12);
  for (int round = 0; round < prec_cap_bits; ++round) {
    RatInterval m2 = disk_modulus_sq(layout.upper[disk_index], 128 + 16 * round);
    if (const IntPolynomial* key = claiming_factor(rf.factors, m2))
      return value_from_factor(*key, m2, tol);
    refine_layout(layout, width, prec_cap_bits);
    width /= 256;
  }
  throw PrecisionExhausted("isolating a conjugate-pair product");
}

struct ModulusGroup {
  enum Kind { Zero, Unit, Real, Disk } kind = Zero;
  RatInterval modulus_sq = RatInterval::exact(Rat(0));  // enclosure of |root|^2
  RealRootLoc real_loc;   // Real only
  size_t disk_index = 0;  // Disk only, index into layout.upper
};

std::vector<ModulusGroup> modulus_groups(const RootLayout& layout, int prec_bits) {
  std::vector<ModulusGroup> gs;
  if (layout.zero_root)
    gs.push_back({ModulusGroup::Zero, RatInterval::exact(Rat(0)), {}, 0});
  if (!layout.unit.w_ivs.empty() || layout.unit.plus_one || layout.unit.minus_one)
    gs.push_back({ModulusGroup::Unit, RatInterval::exact(Rat(1)), {}, 0});
  for (const RealRootLoc& loc : layout.reals)
    gs.push_back({ModulusGroup::Real, real_root_modulus_sq(loc), loc, 0});
  for (size_t i = 0; i < layout.upper.size(); ++i)
    gs.push_back({ModulusGroup::Disk, disk_modulus_sq(layout.upper[i], prec_bits),
                  {}, i});
  return gs;
}

// the irreducible factor of S owning the real root isolated by iv
const IntPolynomial* owning_factor(const std::vector<IntPolynomial>& factors,
                                   const RatInterval& iv) {
  for (const IntPolynomial& f : factors)
    if (sturm_count(f, Bound::at(iv.lo), Bound::at(iv.hi)) == 1) return &f;
  return nullptr;
}

AlgebraicValue group_value(const ModulusGroup& g, const IntPolynomial& S,
                           const std::vector<IntPolynomial>& factors,
                           const RootLayout& layout, const Rat& tol,
                           int prec_cap_bits) {
  switch (g.kind) {
    case ModulusGroup::Zero:
      return exact_value(Rat(0), enclosure_digits(tol));
    case ModulusGroup::Unit:
      return exact_value(Rat(1), enclosure_digits(tol));
    case ModulusGroup::Real: {
      if (g.real_loc.exact) {
        Rat r = *g.real_loc.exact;
        return exact_value(r * r, enclosure_digits(tol));
      }
      const IntPolynomial* G = owning_factor(factors, g.real_loc.iv);
      if (G == nullptr) throw std::logic_error("real root claimed by no factor");
      return square_of_real_root(*G, g.real_loc.iv, tol, prec_cap_bits);
    }
    case ModulusGroup::Disk:
      return pair_product_value(S, layout, g.disk_index, tol, prec_cap_bits);
  }
  throw std::logic_error("unreachable modulus group kind");
}

} // namespace

AlgebraicValue first_dd_of_poly(const IntPolynomial& P, const Rat& tol,
                                int prec_cap_bits) {
  if (P.degree() < 1 || !P.is_monic())
    throw std::invalid_argument("first_dd_of_poly needs a monic non-constant polynomial");
  IntPolynomial S = squarefree_part(P);
  RootLayout layout = analyze_squarefree(S, tol, prec_cap_bits);
  refine_layout(layout, Rat(1, 1024), prec_cap_bits);

  std::vector<IntPolynomial> factors;
  for (auto& [f, mult] : factor_over_rationals(S).factors) factors.push_back(f);

  std::vector<ModulusGroup> gs = modulus_groups(layout, 192);
  if (gs.empty()) throw std::logic_error("polynomial with no roots");

  // drop groups that certifiably cannot attain the maximum modulus, then
  // take the exact maximum over the remaining candidates
  Rat best_lo = 0;
  for (const ModulusGroup& g : gs) best_lo = std::max(best_lo, g.modulus_sq.lo);

  std::optional<AlgebraicValue> best;
  for (const ModulusGroup& g : gs) {
    if (g.modulus_sq.hi < best_lo) continue;
    AlgebraicValue v = group_value(g, S, factors, layout, tol, prec_cap_bits);
    if (!best || compare_algebraic(v, *best, prec_cap_bits) > 0) best = std::move(v);
  }
  return *best;
}

namespace {

// ---- bounded enumeration ----

// Durand-Kerner estimate of the maximum root modulus; nullopt when the
// iteration fails to settle (the exact path then decides alone)
std::optional<double> float_max_modulus(const IntPolynomial& P) {
  int n = P.degree();
  std::vector<std::complex<double>> z(static_cast<size_t>(n));
  std::vector<double> c(static_cast<size_t>(n) + 1);
  double bound = 1.0;
  for (int i = 0; i <= n; ++i) {
    c[static_cast<size_t>(i)] = P[static_cast<size_t>(i)].convert_to<double>();
    if (i < n) bound = std::max(bound, 1.0 + std::abs(c[static_cast<size_t>(i)]));
  }
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> w(1.0, 0.0);
  for (int k = 0; k < n; ++k) {
    z[static_cast<size_t>(k)] = w;
    w *= seed;
  }
  auto eval = [&](std::complex<double> v) {
    std::complex<double> r(1.0, 0.0);
    for (int i = n - 1; i >= 0; --i) r = r * v + c[static_cast<size_t>(i)];
    return r;
  };
  for (int iter = 0; iter < 400; ++iter) {
    double delta = 0.0;
    for (int k = 0; k < n; ++k) {
      std::complex<double> denom(1.0, 0.0);
      for (int j = 0; j < n; ++j)
        if (j != k) denom *= z[static_cast<size_t>(k)] - z[static_cast<size_t>(j)];
      if (std::abs(denom) < 1e-300) return std::nullopt;
      std::complex<double> step = eval(z[static_cast<size_t>(k)]) / denom;
      z[static_cast<size_t>(k)] -= step;
      delta = std::max(delta, std::abs(step));
      if (std::abs(z[static_cast<size_t>(k)]) > 4 * bound) return std::nullopt;
    }
    if (delta < 1e-11) {
      double m = 0.0;
      for (auto& v : z) m = std::max(m, std::abs(v));
      return m;
    }
  }
  return std::nullopt;
}

bool even_real_multiplicities(const IntPolynomial& P) {
  for (const auto& [f, mult] : squarefree_decomposition(P))
    if (mult % 2 == 1 && f.degree() >= 1 && sturm_count(f) > 0) return false;
  return true;
}

// certified decision of "every root modulus is strictly below c": interval
// fast path, exact positional comparison for enclosures straddling c^2
bool all_moduli_below(const IntPolynomial& P, const Rat& c, const Rat& tol,
                      int prec_cap_bits) {
  IntPolynomial S = squarefree_part(P);
  const Rat c2 = c * c;

  // real roots: explicit +-c membership, then a Sturm range count
  if (root_multiplicity(S, c) > 0 || root_multiplicity(S, -c) > 0) return false;
  if (sturm_count(S, Bound::at(-c), Bound::at(c)) < sturm_count(S)) return false;

  RootLayout layout = analyze_squarefree(S, tol, prec_cap_bits);
  Rat width = Rat(1, Int(1) << 12);
  for (int round = 0; round < 8; ++round) {
    bool unresolved = false;
    for (const ModulusGroup& g : modulus_groups(layout, 128 + 16 * round)) {
      if (g.modulus_sq.hi < c2) continue;
      if (g.modulus_sq.lo > c2) return false;
      unresolved = true;
    }
    if (!unresolved) return true;
    refine_layout(layout, width, prec_cap_bits);
    width /= 256;
  }

  // straddlers remain: compare each squared modulus against c^2 exactly
  std::vector<IntPolynomial> factors;
  for (auto& [f, mult] : factor_over_rationals(S).factors) factors.push_back(f);
  for (const ModulusGroup& g : modulus_groups(layout, 256)) {
    if (g.modulus_sq.hi < c2) continue;
    AlgebraicValue v = group_value(g, S, factors, layout, tol, prec_cap_bits);
    if (compare_value_to_rational(v, c2, prec_cap_bits) >= 0) return false;
  }
  return true;
}

void push_dd_value(std::vector<AlgebraicValue>& vals, AlgebraicValue v,
                   int prec_cap_bits) {
  for (const AlgebraicValue& w : vals)
    if (w.same_number(v)) return;
  auto pos = std::lower_bound(vals.begin(), vals.end(), v,
                              [&](const AlgebraicValue& a, const AlgebraicValue& b) {
                                return compare_algebraic(a, b, prec_cap_bits) < 0;
                              });
  vals.insert(pos, std::move(v));
}

} // namespace

CandidateSet enumerate_bounded(int64_t g, const Rat& c, bool filter_automorphism,
                               const RunConfig& cfg) {
  if (g < 2) throw std::invalid_argument("enumeration needs dimension g >= 2");
  if (c <= 1) throw std::invalid_argument("modulus bound c must exceed 1");
  cfg.validate();

  const int n = static_cast<int>(2 * g);
  std::vector<int64_t> bound(static_cast<size_t>(n) + 1, 0);
  Int space = 1;
  Rat cp = 1;
  for (int i = 1; i <= n; ++i) {
    cp *= c;
    Rat limit = cp * Rat(binom(n, i));
    Int b = rat_floor(limit);
    if (Rat(b) == limit) --b;  // the coefficient bound is strict
    if (b < 0) b = 0;
    if (filter_automorphism && i == n && b >= 1) b = 1;
    bound[static_cast<size_t>(i)] = b.convert_to<int64_t>();
    if (filter_automorphism && i == n)
      space *= (b >= 1 ? 2 : 0);
    else
      space *= 2 * b + 1;
  }
  if (space > cfg.enum_cap) {
    std::ostringstream os;
    os << "search space of " << space.str()
       << " coefficient tuples exceeds the enumeration cap " << cfg.enum_cap;
    throw BoundExhausted(os.str());
  }

  CandidateSet out;
  out.g = g;
  out.c = c;
  out.search_space = space;
  if (space == 0) return out;

  const double c_d = c.convert_to<double>();
  std::vector<int64_t> a(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) a[static_cast<size_t>(i)] = -bound[static_cast<size_t>(i)];
  if (filter_automorphism) a[static_cast<size_t>(n)] = -1;

  for (;;) {
    std::vector<Int> coeffs(static_cast<size_t>(n) + 1);
    coeffs[static_cast<size_t>(n)] = 1;
    for (int i = 1; i <= n; ++i)
      coeffs[static_cast<size_t>(n - i)] = a[static_cast<size_t>(i)];
    IntPolynomial P(coeffs);

    // the float estimate only ever rejects, and only with a clear margin;
    // every survivor is decided exactly
    bool keep = true;
    if (auto fm = float_max_modulus(P); fm && *fm > c_d + 0.25) keep = false;
    if (keep) keep = even_real_multiplicities(P);
    if (keep) keep = all_moduli_below(P, c, cfg.tolerance, cfg.precision_cap);
    if (keep) {
      out.polys.push_back(P);
      push_dd_value(out.dd_values,
                    first_dd_of_poly(P, cfg.tolerance, cfg.precision_cap),
                    cfg.precision_cap);
    }

    // odometer, highest-degree coefficient fastest; the constant term steps
    // across {-1, +1} under the automorphism filter
    int i = n;
    for (; i >= 1; --i) {
      int64_t& ai = a[static_cast<size_t>(i)];
      int64_t step = (filter_automorphism && i == n) ? 2 : 1;
      if (ai + step <= bound[static_cast<size_t>(i)]) {
        ai += step;
        break;
      }
      ai = (filter_automorphism && i == n) ? -1 : -bound[static_cast<size_t>(i)];
    }
    if (i == 0) break;
  }
  return out;
}

bool type1_admissible(unsigned N) {
  if (N < 3) return false;
  Int c0 = real_cyclotomic(N).constant_term();
  return c0 == 1 || c0 == -1;
}

namespace {

LadderEntry make_entry(std::string source, std::string family,
                       std::string divisibility, AlgebraicValue v) {
  LadderEntry e;
  e.source = std::move(source);
  e.family = std::move(family);
  e.divisibility = std::move(divisibility);
  e.lambda1 = std::move(v);
  return e;
}

// squared value of a real root location of squarefree monic G
AlgebraicValue squared_root_value(const IntPolynomial& G, const RealRootLoc& loc,
                                  const Rat& tol, int prec_cap_bits) {
  if (loc.exact) return exact_value(*loc.exact * *loc.exact, enclosure_digits(tol));
  return square_of_real_root(G, loc.iv, tol, prec_cap_bits);
}

// lambda1 of the order-N unit-eigenvalue family: the squared maximum
// modulus among the roots of Psi_N (all real); only the extreme roots can
// attain it, and equal moduli square to the same value
AlgebraicValue type1_value(unsigned N, const Rat& tol, int prec_cap_bits) {
  IntPolynomial G = real_cyclotomic(N);
  auto locs = isolate_real_roots(G);
  if (locs.empty()) throw std::logic_error("trace polynomial lost its real roots");
  AlgebraicValue lo_sq = squared_root_value(G, locs.front(), tol, prec_cap_bits);
  if (locs.size() == 1) return lo_sq;
  AlgebraicValue hi_sq = squared_root_value(G, locs.back(), tol, prec_cap_bits);
  return compare_algebraic(lo_sq, hi_sq, prec_cap_bits) >= 0 ? lo_sq : hi_sq;
}

void merge_entry(std::vector<LadderEntry>& entries, LadderEntry e) {
  for (LadderEntry& have : entries) {
    if (have.lambda1.same_number(e.lambda1) && have.family == e.family) {
      have.source += "; " + e.source;
      return;
    }
  }
  entries.push_back(std::move(e));
}

void sort_entries(std::vector<LadderEntry>& entries, int prec_cap_bits) {
  std::sort(entries.begin(), entries.end(),
            [&](const LadderEntry& a, const LadderEntry& b) {
              int c = compare_algebraic(a.lambda1, b.lambda1, prec_cap_bits);
              if (c != 0) return c < 0;
              return a.source < b.source;
            });
}

} // namespace

TypeLadder type1_ladder(int64_t g, int count, const Rat& tol, int prec_cap_bits) {
  if (g < 2) throw std::invalid_argument("the unit-eigenvalue ladder needs g >= 2");
  if (count < 1) throw std::invalid_argument("entry count must be positive");

  TypeLadder ladder;
  ladder.g = g;

  // phi(N) > sqrt(N/2), so deg Psi_N = phi(N)/2 <= g forces N <= 8 g^2
  const uint64_t n_max = 8 * static_cast<uint64_t>(g) * static_cast<uint64_t>(g) + 2;
  std::map<std::pair<std::vector<Int>, int>,
           std::pair<AlgebraicValue, std::vector<unsigned>>>
      grouped;
  for (unsigned N = 3; N <= n_max; ++N) {
    uint64_t e = totient(N) / 2;
    if (e == 0 || static_cast<uint64_t>(g) % e != 0) continue;
    if (!type1_admissible(N)) continue;
    AlgebraicValue v = type1_value(N, tol, prec_cap_bits);
    auto key = std::make_pair(v.min_poly.coeffs(), v.root_index);
    auto it = grouped.find(key);
    if (it == grouped.end())
      grouped.emplace(key, std::make_pair(std::move(v), std::vector<unsigned>{N}));
    else
      it->second.second.push_back(N);
  }

  std::vector<LadderEntry> entries;
  for (auto& [key, pv] : grouped) {
    std::ostringstream src, div;
    src << "unit eigenvalues of order N = ";
    for (size_t i = 0; i < pv.second.size(); ++i) src << (i ? ", " : "") << pv.second[i];
    div << "e | g (e = " << totient(pv.second.front()) / 2 << ")";
    entries.push_back(make_entry(src.str(), "type-1", div.str(), pv.first));
  }
  sort_entries(entries, prec_cap_bits);
  if (count < static_cast<int>(entries.size())) entries.resize(static_cast<size_t>(count));
  ladder.entries = std::move(entries);
  return ladder;
}

namespace {

// element a + b sqrt(d) of a real quadratic field, exact coordinates
struct QuadElt {
  Rat a, b;

  QuadElt() : a(0), b(0) {}
  QuadElt(Rat x, Rat y) : a(std::move(x)), b(std::move(y)) {}

  QuadElt conj() const { return {a, -b}; }
  QuadElt neg() const { return {-a, -b}; }
  Rat trace() const { return 2 * a; }
};

QuadElt qmul(const QuadElt& x, const QuadElt& y, int64_t d) {
  return {x.a * y.a + Rat(d) * x.b * y.b, x.a * y.b + x.b * y.a};
}

Rat qnorm(const QuadElt& x, int64_t d) { return x.a * x.a - Rat(d) * x.b * x.b; }

std::string qstr(const QuadElt& x, int64_t d) {
  std::ostringstream os;
  if (x.b == 0) {
    os << x.a.str();
  } else if (denominator(x.a) == 1 && denominator(x.b) == 1) {
    os << x.a.str() << (x.b < 0 ? " - " : " + ") << rat_abs(x.b).str()
       << "*sqrt(" << d << ")";
  } else {
    Int na = numerator(Rat(2 * x.a)), nb = numerator(Rat(2 * x.b));
    os << "(" << na.str() << (nb < 0 ? " - " : " + ") << (nb < 0 ? -nb : nb).str()
       << "*sqrt(" << d << "))/2";
  }
  return os.str();
}

// fundamental unit > 1 of the maximal order, by an ascending scan of the
// norm-form equations x^2 - d y^2 = +-4 (d = 1 mod 4) or +-1
QuadElt fundamental_unit(int64_t d) {
  bool half = (d % 4 == 1);
  for (Int y = 1; y <= 10000000; ++y) {
    Int dy2 = Int(d) * y * y;
    for (Int off : {Int(half ? -4 : -1), Int(half ? 4 : 1)}) {
      Int x2 = dy2 + off;
      if (x2 <= 0) continue;
      Int x = ikth_root(x2, 2);
      if (x * x != x2) continue;
      if (half) return {Rat(x, 2), Rat(y, 2)};
      return {Rat(x), Rat(y)};
    }
  }
  throw std::logic_error("fundamental unit scan exhausted");
}

} // namespace

TypeLadder type23_quadratic_candidates(int64_t g, int64_t height_bound,
                                       const Rat& tol, int prec_cap_bits) {
  if (g < 2 || g % 2 != 0)
    throw std::invalid_argument("the quadratic family needs even g (2e | g)");
  if (height_bound < 1) throw std::invalid_argument("height bound must be positive");

  TypeLadder ladder;
  ladder.g = g;
  std::vector<LadderEntry> entries;
  const Rat H(height_bound);

  // e = 1: x^2 + s x + t over Z with unit t
  for (int64_t s = -height_bound; s <= height_bound; ++s) {
    for (int64_t t : {-1, 1}) {
      IntPolynomial P({Int(t), Int(s), Int(1)});
      AlgebraicValue v = first_dd_of_poly(P, tol, prec_cap_bits);
      std::ostringstream src;
      src << "x^2 + s x + t over Q, s = " << s << ", t = " << t;
      merge_entry(entries,
                  make_entry(src.str(), "type-2/3", "2e | g (e = 1)", std::move(v)));
    }
  }

  // e = 2: conjugate quadratic pairs over real quadratic fields of
  // discriminant at most 40, expanded to their degree-4 norms over Z
  if (g % 4 == 0) {
    static const int64_t kFields[] = {2, 3, 5, 6, 7, 10, 13, 17, 21, 29, 33, 37};
    std::map<std::vector<Int>, bool> seen;
    for (int64_t d : kFields) {
      bool half = (d % 4 == 1);
      QuadElt eps = fundamental_unit(d);

      // units of coordinate height at most H: +-eps^k, k of either sign
      std::vector<QuadElt> units{{Rat(1), Rat(0)}};
      QuadElt acc = eps;
      while (rat_abs(acc.a) <= H && rat_abs(acc.b) <= H) {
        units.push_back(acc);
        acc = qmul(acc, eps, d);
      }
      QuadElt inv = qnorm(eps, d) == 1 ? eps.conj() : eps.conj().neg();
      acc = inv;
      while (rat_abs(acc.a) <= H && rat_abs(acc.b) <= H) {
        units.push_back(acc);
        acc = qmul(acc, inv, d);
      }

      for (int64_t u = -height_bound; u <= height_bound; ++u) {
        for (int64_t w = -height_bound; w <= height_bound; ++w) {
          QuadElt s = half ? QuadElt(Rat(u) + Rat(w, 2), Rat(w, 2))
                           : QuadElt(Rat(u), Rat(w));
          for (const QuadElt& base : units) {
            for (int sign = 0; sign < 2; ++sign) {
              QuadElt t = sign ? base.neg() : base;
              // (x^2 + s x + t)(x^2 + conj(s) x + conj(t)) expanded over Z
              Rat c3 = s.trace();
              Rat c2 = qnorm(s, d) + t.trace();
              Rat c1 = qmul(s, t.conj(), d).trace();
              Rat c0 = qnorm(t, d);
              if (denominator(c3) != 1 || denominator(c2) != 1 ||
                  denominator(c1) != 1 || denominator(c0) != 1)
                throw std::logic_error("quadratic-pair norm form left fractions");
              IntPolynomial P({numerator(c0), numerator(c1), numerator(c2),
                               numerator(c3), Int(1)});
              if (!seen.emplace(P.coeffs(), true).second) continue;
              AlgebraicValue v = first_dd_of_poly(P, tol, prec_cap_bits);
              std::ostringstream src;
              src << "x^2 + s x + t over Q(sqrt(" << d << ")), s = " << qstr(s, d)
                  << ", t = " << qstr(t, d);
              merge_entry(entries, make_entry(src.str(), "type-2/3",
                                              "2e | g (e = 2)", std::move(v)));
            }
          }
        }
      }
    }
  }

  sort_entries(entries, prec_cap_bits);
  ladder.entries = std::move(entries);
  return ladder;
}

MinimalFirstDD minimal_first_dd(int64_t g, const RunConfig& cfg) {
  if (g < 2 || g > 6)
    throw std::invalid_argument(
        "the minimal first dynamical degree is tabulated for 2 <= g <= 6");
  cfg.validate();

  TypeLadder merged = type1_ladder(g, 8, cfg.tolerance, cfg.precision_cap);
  if (g % 2 == 0) {
    TypeLadder quad =
        type23_quadratic_candidates(g, 2, cfg.tolerance, cfg.precision_cap);
    for (LadderEntry& e : quad.entries) merged.entries.push_back(std::move(e));
  }
  merged.entries.push_back(make_entry(
      "imaginary quadratic multiplication (unit eigenvalues only)", "type-4",
      "d^2 e / 2 | g", exact_value(Rat(1), enclosure_digits(cfg.tolerance))));
  sort_entries(merged.entries, cfg.precision_cap);

  for (const LadderEntry& e : merged.entries) {
    if (compare_value_to_rational(e.lambda1, Rat(1), cfg.precision_cap) > 0) {
      MinimalFirstDD res;
      res.value = e.lambda1;
      res.attained_by = e.source + " [" + e.family + "]";
      res.ladder = std::move(merged);
      return res;
    }
  }
  throw std::logic_error("every ladder entry collapsed to 1");
}

} // namespace dyndeg
