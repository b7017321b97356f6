#include "dyndeg/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "dyndeg/enclosure.hpp"
#include "dyndeg/errors.hpp"
#include "dyndeg/factor.hpp"

namespace dyndeg {

namespace {

Int ifloor(const Rat& v) {
  Int q = rat_num(v) / rat_den(v);
  if (v < 0 && rat_num(v) % rat_den(v) != 0) --q;
  return q;
}

Rat round_dyadic(const Rat& v, unsigned bits) {
  Int scale = Int(1) << bits;
  Rat t = v * Rat(scale) + Rat(1, 2);
  return Rat(ifloor(t), scale);
}

// smallest b with 4^-b <= v, for positive v
int inv_sqrt_bits(const Rat& v) {
  Int num = int_abs(rat_num(v));
  Int den = rat_den(v);
  long ln = static_cast<long>(boost::multiprecision::msb(num));
  long ld = static_cast<long>(boost::multiprecision::msb(den));
  long l = ln - ld; // log2(v) within +-1
  if (l >= 0) return 0;
  return static_cast<int>((-l) / 2 + 2);
}

std::pair<Rat, Rat> horner_qi(const IntPolynomial& p, const Rat& zr, const Rat& zi) {
  Rat fr = 0, fi = 0;
  for (int k = p.degree(); k >= 0; --k) {
    Rat nr = fr * zr - fi * zi + Rat(p[k]);
    Rat ni = fr * zi + fi * zr;
    fr = nr;
    fi = ni;
  }
  return {fr, fi};
}

// trace polynomial of a palindromic polynomial of even degree 2d (monic not
// required): sum of a_{d+k} V_k(w) for k = 0..d with V_0 halved
IntPolynomial trace_poly_any(const IntPolynomial& p) {
  int n = p.degree();
  if (n <= 0 || n % 2 != 0 || !is_palindromic(p))
    throw std::logic_error("trace_poly_any: need palindromic even degree");
  int d = n / 2;
  IntPolynomial t = IntPolynomial::constant(p[d]);
  for (int k = 1; k <= d; ++k) t = t + chebyshev_s(k).times(p[d + k]);
  return t;
}

struct DiskCheck {
  static bool upper_half(const ComplexDisk& d) {
    return d.im > 0 && d.im * d.im > d.rad_sq;
  }
  static bool off_unit_circle(const ComplexDisk& d) {
    Rat m2 = d.re * d.re + d.im * d.im;
    Rat s = m2 + 1 - d.rad_sq;
    return s > 0 && s * s > 4 * m2;
  }
  static bool disjoint(const ComplexDisk& a, const ComplexDisk& b) {
    Rat dx = a.re - b.re, dy = a.im - b.im;
    return dx * dx + dy * dy > 2 * (a.rad_sq + b.rad_sq);
  }
};

// Newton iteration over Q(i) with dyadic rounding; returns a disk of squared
// radius (deg * |f| / |f'|)^2 once it drops below the target
std::optional<ComplexDisk> newton_disk(const IntPolynomial& f, const IntPolynomial& df,
                                       Rat zr, Rat zi, const Rat& target_rsq,
                                       int prec_cap_bits) {
  const Rat n2 = Rat(Int(f.degree()) * Int(f.degree()));
  unsigned prec = 64;
  zr = round_dyadic(zr, prec);
  zi = round_dyadic(zi, prec);
  std::optional<ComplexDisk> best;
  int stall = 0;
  for (int iter = 0; iter < 200; ++iter) {
    auto [fr, fi] = horner_qi(f, zr, zi);
    auto [gr, gi] = horner_qi(df, zr, zi);
    Rat g2 = gr * gr + gi * gi;
    if (g2 == 0) {
      zr += Rat(1, Int(1) << prec);
      continue;
    }
    Rat f2 = fr * fr + fi * fi;
    Rat rsq = n2 * f2 / g2;
    if (!best || rsq < best->rad_sq) {
      best = ComplexDisk{zr, zi, rsq};
      stall = 0;
    } else if (++stall > 12) {
      break;
    }
    if (rsq <= target_rsq) return best;
    zr -= (fr * gr + fi * gi) / g2;
    zi -= (fi * gr - fr * gi) / g2;
    unsigned want = static_cast<unsigned>(2 * inv_sqrt_bits(rsq) + 64);
    prec = std::min(static_cast<unsigned>(prec_cap_bits), std::max(prec, want));
    zr = round_dyadic(zr, prec);
    zi = round_dyadic(zi, prec);
  }
  if (best && best->rad_sq <= target_rsq) return best;
  return std::nullopt;
}

Rat eval_rat(const IntPolynomial& p, const Rat& v) { return p.eval(v); }

// interior split point where the polynomial does not vanish
Rat split_point(const IntPolynomial& sf, const Rat& lo, const Rat& hi) {
  Rat mid = (lo + hi) / 2;
  if (eval_rat(sf, mid) != 0) return mid;
  int n = sf.degree();
  for (int j = 1; j <= n + 1; ++j) {
    Rat c = lo + (hi - lo) * Rat(2 * j + 1, 4 * (n + 2));
    if (c > lo && c < hi && eval_rat(sf, c) != 0) return c;
  }
  throw std::logic_error("split_point: no non-root point found");
}

void isolate_rec(const IntPolynomial& sf, const SturmChain& chain, const Rat& lo,
                 const Rat& hi, int cnt, std::vector<RatInterval>& out) {
  if (cnt == 0) return;
  if (cnt == 1) {
    out.push_back(RatInterval(lo, hi));
    return;
  }
  Rat m = split_point(sf, lo, hi);
  int left = chain.count(Bound::at(lo), Bound::at(m));
  isolate_rec(sf, chain, lo, m, left, out);
  isolate_rec(sf, chain, m, hi, cnt - left, out);
}

} // namespace

Rat cauchy_root_bound(const IntPolynomial& p) {
  int n = p.degree();
  if (n < 1) throw std::invalid_argument("cauchy_root_bound: degree must be positive");
  Rat mx = 0;
  for (int i = 0; i < n; ++i) {
    Rat r = rat_abs(Rat(p[i], p[n]));
    if (r > mx) mx = r;
  }
  Rat cauchy = mx + 1;

  // Fujiwara-style bound 2 max_i (|a_{n-i}|/|a_n|)^(1/i), rounded up to an
  // integer radical; far tighter than the Cauchy bound when the low-order
  // coefficients are large, which keeps bisection depth proportional to the
  // root sizes instead of the coefficient sizes
  Int lead = abs(p.leading());
  Int fmax = 1;
  for (int i = 1; i <= n; ++i) {
    Int a = abs(p[n - i]);
    if (a == 0) continue;
    Int q = (a + lead - 1) / lead;
    Int u = ikth_root(q, static_cast<unsigned>(i));
    while (int_pow(u, static_cast<uint64_t>(i)) < q) ++u;
    if (u > fmax) fmax = u;
  }
  Rat fujiwara = Rat(2 * fmax);
  return fujiwara < cauchy ? fujiwara : cauchy;
}

std::vector<RatInterval> isolate_real_roots_in(const IntPolynomial& sf, const Rat& lo,
                                               const Rat& hi) {
  if (sf.degree() < 1) return {};
  if (eval_rat(sf, lo) == 0 || eval_rat(sf, hi) == 0)
    throw std::invalid_argument("isolate_real_roots_in: endpoint is a root");
  SturmChain chain(sf);
  int cnt = chain.count(Bound::at(lo), Bound::at(hi));
  std::vector<RatInterval> out;
  isolate_rec(sf, chain, lo, hi, cnt, out);
  return out;
}

std::vector<RealRootLoc> isolate_real_roots(const IntPolynomial& sf) {
  std::vector<RealRootLoc> out;
  if (sf.degree() < 1) return out;
  Rat b = cauchy_root_bound(sf);
  auto ivs = isolate_real_roots_in(sf, -b, b);
  out.reserve(ivs.size());
  for (auto& iv : ivs) out.push_back(RealRootLoc{iv, std::nullopt});
  auto rats = rational_roots(sf);
  for (const Rat& r : rats) {
    for (auto& loc : out) {
      if (loc.iv.lo < r && r < loc.iv.hi) {
        loc.iv = RatInterval(r, r);
        loc.exact = r;
        break;
      }
    }
  }
  return out;
}

RatInterval refine_real_root(const IntPolynomial& sf, RatInterval iv, const Rat& width_target) {
  if (iv.lo == iv.hi) return iv;
  int sl = sign_of(eval_rat(sf, iv.lo));
  int sh = sign_of(eval_rat(sf, iv.hi));
  if (sl == 0 || sh == 0 || sl == sh)
    throw std::invalid_argument("refine_real_root: interval must bracket a simple root");
  while (iv.hi - iv.lo > width_target) {
    Rat m = (iv.lo + iv.hi) / 2;
    int sm = sign_of(eval_rat(sf, m));
    if (sm == 0) return RatInterval(m, m);
    if (sm == sl)
      iv = RatInterval(m, iv.hi);
    else
      iv = RatInterval(iv.lo, m);
  }
  return iv;
}

UnitCircleSplit unit_circle_split(const IntPolynomial& sf) {
  if (sf.degree() < 0 || sf[0] == 0)
    throw std::invalid_argument("unit_circle_split: constant term must be nonzero");
  UnitCircleSplit split;
  split.plus_one = (sf.eval(Int(1)) == 0);
  split.minus_one = (sf.eval(Int(-1)) == 0);
  if (sf.degree() < 1) {
    split.reciprocal_core = IntPolynomial::constant(1);
    return split;
  }
  IntPolynomial core = poly_gcd(sf, reciprocal(sf));
  for (const Int& pm : {Int(1), Int(-1)}) {
    if (core.eval(pm) == 0) core = exact_divide(core, IntPolynomial({-pm, Int(1)}));
  }
  split.reciprocal_core = core;
  if (core.degree() <= 0) return split;
  if (!is_palindromic(core))
    throw std::logic_error("unit_circle_split: reciprocal core is not palindromic");
  split.trace_poly = trace_poly_any(core);
  split.w_ivs = isolate_real_roots_in(split.trace_poly, Rat(-2), Rat(2));
  return split;
}

RatInterval disk_modulus(const ComplexDisk& d, int prec_bits) {
  Rat m2 = d.re * d.re + d.im * d.im;
  Rat r_up = sqrt_upper(d.rad_sq, prec_bits);
  Rat lo = sqrt_lower(m2, prec_bits) - r_up;
  if (lo < 0) lo = 0;
  return RatInterval(lo, sqrt_upper(m2, prec_bits) + r_up);
}

RatInterval disk_modulus_sq(const ComplexDisk& d, int prec_bits) {
  RatInterval m = disk_modulus(d, prec_bits);
  return RatInterval(m.lo * m.lo, m.hi * m.hi);
}

RatInterval real_root_modulus(const RealRootLoc& r) {
  if (r.exact) {
    Rat a = rat_abs(*r.exact);
    return RatInterval(a, a);
  }
  return r.iv.abs();
}

RatInterval real_root_modulus_sq(const RealRootLoc& r) {
  RatInterval m = real_root_modulus(r);
  return RatInterval(m.lo * m.lo, m.hi * m.hi);
}

std::vector<std::pair<double, double>> double_root_guesses(const IntPolynomial& sf) {
  int n = sf.degree();
  if (n < 1) return {};
  Rat bound = cauchy_root_bound(sf);
  long t = 0;
  if (bound > 1) {
    Int num = rat_num(bound), den = rat_den(bound);
    t = static_cast<long>(boost::multiprecision::msb(num)) -
        static_cast<long>(boost::multiprecision::msb(den)) + 2;
    if (t < 0) t = 0;
  }
  if (t > 1000)
    throw BoundExhausted("double_root_guesses: root magnitudes exceed double range");
  // scale roots by 2^-t so the companion matrix entries stay within double range
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int j = 1; j < n; ++j) m(j, j - 1) = 1.0;
  Int scale_den = sf[n];
  for (int j = 0; j < n; ++j) {
    Rat bj = Rat(sf[j], scale_den);
    // b_j * 2^{t*(j-n)}
    Rat scaled = bj / Rat(Int(1) << static_cast<unsigned>(t * (n - j)));
    m(j, n - 1) = -static_cast<double>(scaled.convert_to<double>());
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::complex<double> ev = solver.eigenvalues()[j];
    out.emplace_back(std::ldexp(ev.real(), static_cast<int>(t)),
                     std::ldexp(ev.imag(), static_cast<int>(t)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

RootLayout analyze_squarefree(const IntPolynomial& sf_in, const Rat& tol, int prec_cap_bits) {
  if (sf_in.degree() < 0) throw std::invalid_argument("analyze_squarefree: zero polynomial");
  RootLayout layout;
  IntPolynomial sf = sf_in.primitive_part();
  layout.poly = sf;
  IntPolynomial work = sf;
  if (work.degree() >= 1 && work[0] == 0) {
    layout.zero_root = true;
    work = exact_divide(work, IntPolynomial::x());
    if (work[0] == 0)
      throw std::invalid_argument("analyze_squarefree: polynomial is not squarefree");
  }
  if (work.degree() < 1) return layout;

  layout.reals = isolate_real_roots(work);
  layout.unit = unit_circle_split(work);
  int r = static_cast<int>(layout.reals.size());
  int u = static_cast<int>(layout.unit.w_ivs.size());
  int rem = work.degree() - r - 2 * u;
  if (rem < 0 || rem % 2 != 0)
    throw std::logic_error("analyze_squarefree: root count bookkeeping failed");
  int m = rem / 2;
  if (m == 0) return layout;

  IntPolynomial dwork = work.derivative();
  auto guesses = double_root_guesses(work);
  std::vector<std::pair<Rat, Rat>> starts;
  for (auto& [x, y] : guesses) {
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    if (y > 0) starts.emplace_back(Rat(x), Rat(y));
    if (y < 0) starts.emplace_back(Rat(x), Rat(-y));
  }
  std::sort(starts.begin(), starts.end());

  Rat target_rsq = refine_target(tol) * refine_target(tol);
  if (target_rsq > Rat(1, 4096)) target_rsq = Rat(1, 4096);
  for (int round = 0; round < 40; ++round) {
    if (2 * inv_sqrt_bits(target_rsq) + 64 > prec_cap_bits)
      throw PrecisionExhausted("analyze_squarefree: complex roots too close to separate "
                               "within the precision cap");
    std::vector<ComplexDisk> kept;
    for (auto& [x, y] : starts) {
      auto d = newton_disk(work, dwork, x, y, target_rsq, prec_cap_bits);
      if (!d) continue;
      if (!DiskCheck::upper_half(*d)) continue;
      if (!DiskCheck::off_unit_circle(*d)) continue;
      bool clear = true;
      for (auto& k : kept)
        if (!DiskCheck::disjoint(*d, k)) {
          clear = false;
          break;
        }
      if (clear) kept.push_back(*d);
      if (static_cast<int>(kept.size()) == m) break;
    }
    if (static_cast<int>(kept.size()) == m) {
      std::sort(kept.begin(), kept.end(), [](const ComplexDisk& a, const ComplexDisk& b) {
        return a.re != b.re ? a.re < b.re : a.im < b.im;
      });
      layout.upper = std::move(kept);
      return layout;
    }
    // jittered restarts help when two guesses landed on one root
    size_t base = starts.size();
    for (size_t i = 0; i < base && starts.size() < 4 * guesses.size() + 8; ++i) {
      Rat jr = (1 + rat_abs(starts[i].first)) / 1000 * (round + 1);
      starts.emplace_back(starts[i].first + jr, starts[i].second);
    }
    target_rsq /= 65536;
  }
  throw PrecisionExhausted("analyze_squarefree: could not certify all complex roots");
}

void refine_layout(RootLayout& layout, const Rat& width_target, int prec_cap_bits) {
  IntPolynomial work = layout.poly;
  if (layout.zero_root) work = exact_divide(work, IntPolynomial::x());
  for (auto& loc : layout.reals) {
    if (loc.exact) continue;
    loc.iv = refine_real_root(work, loc.iv, width_target);
  }
  if (layout.unit.trace_poly.degree() >= 1) {
    for (auto& iv : layout.unit.w_ivs) {
      // trace roots are simple, so plain sign bisection applies
      iv = refine_real_root(layout.unit.trace_poly, iv, width_target);
    }
  }
  if (layout.upper.empty()) return;
  Rat target_rsq = (width_target / 2) * (width_target / 2);
  bool need = false;
  for (auto& d : layout.upper)
    if (d.rad_sq > target_rsq) need = true;
  if (!need) return;
  IntPolynomial dwork = work.derivative();
  std::vector<ComplexDisk> refined;
  for (auto& d : layout.upper) {
    if (d.rad_sq <= target_rsq) {
      refined.push_back(d);
      continue;
    }
    auto nd = newton_disk(work, dwork, d.re, d.im, target_rsq, prec_cap_bits);
    if (!nd || !DiskCheck::upper_half(*nd) || !DiskCheck::off_unit_circle(*nd))
      throw PrecisionExhausted("refine_layout: disk refinement failed");
    refined.push_back(*nd);
  }
  for (size_t i = 0; i < refined.size(); ++i)
    for (size_t j = i + 1; j < refined.size(); ++j)
      if (!DiskCheck::disjoint(refined[i], refined[j]))
        throw PrecisionExhausted("refine_layout: refined disks are no longer separated");
  layout.upper = std::move(refined);
}

int unit_circle_root_count(const IntPolynomial& p) {
  if (p.degree() < 0) throw EligibilityError("unit_circle_root_count: zero polynomial");
  if (p[0] == 0) throw EligibilityError("unit_circle_root_count: constant term is zero");
  if (p.degree() == 0) return 0;
  int total = 0;
  for (auto& [layer, mult] : squarefree_decomposition(p)) {
    if (layer.degree() < 1) continue;
    UnitCircleSplit split = unit_circle_split(layer);
    int layer_count = 2 * static_cast<int>(split.w_ivs.size());
    if (split.plus_one) ++layer_count;
    if (split.minus_one) ++layer_count;
    total += static_cast<int>(mult) * layer_count;
  }
  return total;
}

RootProfile root_profile(const IntPolynomial& p, const Rat& tol, int prec_cap_bits) {
  if (p.degree() < 0) throw std::invalid_argument("root_profile: zero polynomial");
  RootProfile profile;
  profile.degree = p.degree();
  if (p.degree() == 0) return profile;
  int digits = enclosure_digits(tol);
  int sqrt_bits = std::max(128, digits * 4 + 32);
  Rat width = refine_target(tol);
  std::vector<std::pair<Rat, Enclosure>> entries; // keyed by interval midpoint

  auto push = [&](const Enclosure& e, int copies) {
    for (int i = 0; i < copies; ++i) entries.emplace_back(e.interval().mid(), e);
  };

  for (auto& [layer, mult] : squarefree_decomposition(p)) {
    if (layer.degree() < 1) continue;
    int lm = static_cast<int>(mult);
    RootLayout lay = analyze_squarefree(layer, tol, prec_cap_bits);
    refine_layout(lay, width, prec_cap_bits);
    if (lay.zero_root) {
      push(Enclosure::exact_point(Rat(0), digits), lm);
      profile.real_count += lm;
    }
    for (auto& loc : lay.reals) {
      Enclosure e = loc.exact ? Enclosure::exact_point(rat_abs(*loc.exact), digits)
                              : Enclosure::from_interval(real_root_modulus(loc), digits);
      push(e, lm);
      profile.real_count += lm;
    }
    int unit_here = 2 * static_cast<int>(lay.unit.w_ivs.size());
    if (lay.unit.plus_one) ++unit_here;
    if (lay.unit.minus_one) ++unit_here;
    profile.unit_circle_count += lm * unit_here;
    // the ±1 roots are already covered by the real-root entries
    push(Enclosure::exact_point(Rat(1), digits),
         2 * lm * static_cast<int>(lay.unit.w_ivs.size()));
    for (auto& d : lay.upper)
      push(Enclosure::from_interval(disk_modulus(d, sqrt_bits), digits), 2 * lm);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second.hi() > b.second.hi();
  });
  profile.moduli.reserve(entries.size());
  for (auto& [mid, e] : entries) profile.moduli.push_back(e);
  if (static_cast<int>(profile.moduli.size()) != profile.degree)
    throw std::logic_error("root_profile: modulus count mismatch");
  return profile;
}

Enclosure max_modulus_certified(const IntPolynomial& p, const Rat& tol, int prec_cap_bits) {
  if (p.degree() < 1) throw EligibilityError("max_modulus_certified: no roots");
  int digits = enclosure_digits(tol);
  int sqrt_bits = std::max(128, digits * 4 + 32);
  Rat width = refine_target(tol);
  std::optional<RatInterval> acc;
  bool all_exact = true;
  auto fold = [&](const RatInterval& iv, bool exact) {
    if (!acc) {
      acc = iv;
      all_exact = exact;
      return;
    }
    Rat lo = std::max(acc->lo, iv.lo);
    Rat hi = std::max(acc->hi, iv.hi);
    if (iv.hi > acc->hi) all_exact = exact;
    acc = RatInterval(lo, hi);
  };
  for (auto& [layer, mult] : squarefree_decomposition(p)) {
    if (layer.degree() < 1) continue;
    RootLayout lay = analyze_squarefree(layer, tol, prec_cap_bits);
    refine_layout(lay, width, prec_cap_bits);
    if (lay.zero_root) fold(RatInterval(Rat(0), Rat(0)), true);
    for (auto& loc : lay.reals) fold(real_root_modulus(loc), loc.exact.has_value());
    if (!lay.unit.w_ivs.empty() || lay.unit.plus_one || lay.unit.minus_one)
      fold(RatInterval(Rat(1), Rat(1)), true);
    for (auto& d : lay.upper) fold(disk_modulus(d, sqrt_bits), false);
  }
  if (!acc) throw std::logic_error("max_modulus_certified: no root data");
  if (all_exact && acc->lo == acc->hi) return Enclosure::exact_point(acc->lo, digits);
  return Enclosure::from_interval(*acc, digits);
}

} // namespace dyndeg
