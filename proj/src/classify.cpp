#include "dyndeg/classify.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dyndeg/errors.hpp"
#include "dyndeg/factor.hpp"

namespace dyndeg {

namespace {

bool is_monic(const IntPolynomial& p) { return p.degree() >= 0 && p.leading() == 1; }

IntPolynomial one_minus_x_power(int d) {
  // (x-1)^d
  IntPolynomial r = IntPolynomial::constant(1);
  IntPolynomial lin({-1, 1});
  for (int i = 0; i < d; ++i) r = r * lin;
  return r;
}

// number of real roots counted with multiplicity, excluding ±1
int real_roots_not_pm1(const IntPolynomial& p) {
  int total = 0;
  for (auto& [layer, mult] : squarefree_decomposition(p)) {
    if (layer.degree() < 1) continue;
    int cnt = sturm_count(layer, Bound::neg_inf(), Bound::pos_inf());
    if (layer.eval(Int(1)) == 0) --cnt;
    if (layer.eval(Int(-1)) == 0) --cnt;
    if (layer[0] == 0) --cnt; // the zero root is handled by the caller
    total += static_cast<int>(mult) * cnt;
  }
  return total;
}

} // namespace

const char* class_tag_name(PolynomialClass::Tag tag) {
  switch (tag) {
    case PolynomialClass::Tag::RootsOfUnity: return "roots-of-unity";
    case PolynomialClass::Tag::Salem: return "salem";
    case PolynomialClass::Tag::Pisot: return "pisot";
    case PolynomialClass::Tag::MainTheoremEligible: return "real-or-unit-eligible";
    case PolynomialClass::Tag::TotallyRealUnit: return "totally-real-unit";
    case PolynomialClass::Tag::Other: return "other";
  }
  return "other";
}

int root_of_unity_order_by_iteration(const IntPolynomial& factor, int max_order) {
  int d = factor.degree();
  if (d < 1 || !is_monic(factor))
    throw std::invalid_argument("root_of_unity_order_by_iteration: monic nonconstant input required");
  IntPolynomial target = one_minus_x_power(d);
  // Power sums of the roots, extended on demand.  P_k is assembled from
  // p_k, p_2k, ..., p_dk by Newton's identities; recomputing a resultant
  // per power would cost O(d^2 k) big-integer work for each k.
  std::vector<Int> psum{Int(d)};
  auto extend_to = [&](int need) {
    for (int j = static_cast<int>(psum.size()); j <= need; ++j) {
      Int s = 0;
      int terms = std::min(j - 1, d);
      for (int i = 1; i <= terms; ++i) s += factor[d - i] * psum[j - i];
      if (j <= d) s += Int(j) * factor[d - j];
      psum.push_back(-s);
    }
  };
  for (int k = 1; k <= max_order; ++k) {
    extend_to(d * k);
    std::vector<Int> e(static_cast<size_t>(d) + 1);
    std::vector<Int> coefs(static_cast<size_t>(d) + 1);
    e[0] = 1;
    coefs[d] = 1;
    bool disproved = false;
    for (int m = 1; m <= d && !disproved; ++m) {
      Int acc = 0;
      for (int i = 1; i <= m; ++i) {
        Int term = e[m - i] * psum[static_cast<size_t>(i) * k];
        if (i % 2 == 0) acc -= term; else acc += term;
      }
      e[m] = acc / m;
      coefs[d - m] = (m % 2 == 0) ? e[m] : -e[m];
      // roots of unity force |coef_i| <= binom(d, i); a violation is a disproof
      if (int_abs(coefs[d - m]) > binomial(d, m)) disproved = true;
    }
    if (disproved) return 0;
    if (IntPolynomial(coefs) == target) return k;
  }
  return 0;
}

KroneckerResult kronecker_test(const IntPolynomial& p) {
  if (!is_monic(p)) throw EligibilityError("kronecker_test: input must be monic");
  KroneckerResult res;
  if (p.degree() == 0) {
    res.all_roots_of_unity = true;
    return res;
  }
  if (p[0] == 0) {
    res.failure_reason = "zero is a root (modulus 0, not a root of unity)";
    return res;
  }
  int unit = unit_circle_root_count(p);
  if (unit != p.degree()) {
    std::ostringstream os;
    os << "only " << unit << " of " << p.degree() << " roots lie on the unit circle";
    int stray_real = real_roots_not_pm1(p);
    if (stray_real > 0) os << " (" << stray_real << " real roots differ from ±1)";
    res.failure_reason = os.str();
    return res;
  }
  RationalFactorization fac = factor_over_rationals(p);
  for (auto& [f, mult] : fac.factors) {
    int d = f.degree();
    int bound = std::max(8, 2 * d * d + 6);
    int found = 0;
    for (int n = 1; n <= bound; ++n) {
      if (static_cast<int>(euler_phi(static_cast<uint64_t>(n))) != d) continue;
      if (cyclotomic(static_cast<unsigned>(n)) == f) {
        found = n;
        break;
      }
    }
    if (found == 0) {
      res.failure_reason = "an irreducible factor is not cyclotomic";
      res.orders.clear();
      return res;
    }
    for (unsigned i = 0; i < mult; ++i)
      for (int j = 0; j < d; ++j) res.orders.push_back(found);
  }
  std::sort(res.orders.begin(), res.orders.end());
  res.all_roots_of_unity = true;
  return res;
}

SalemResult salem_check(const IntPolynomial& p, const Rat& tol, int prec_cap_bits) {
  SalemResult res;
  if (!is_monic(p)) {
    res.reason = "not monic";
    return res;
  }
  int d = p.degree();
  if (d < 4 || d % 2 != 0) {
    res.reason = "degree must be even and at least 4";
    return res;
  }
  if (!is_palindromic(p)) {
    res.reason = "coefficients are not palindromic";
    return res;
  }
  if (!irreducible_over_rationals(p)) {
    res.reason = "reducible over the rationals";
    return res;
  }
  int reals = sturm_count(p, Bound::neg_inf(), Bound::pos_inf());
  if (reals != 2) {
    res.reason = "expected exactly 2 real roots, found " + std::to_string(reals);
    return res;
  }
  if (sturm_count(p, Bound::at(Rat(1)), Bound::pos_inf()) != 1) {
    res.reason = "expected exactly one real root greater than 1";
    return res;
  }
  int unit = unit_circle_root_count(p);
  if (unit != d - 2) {
    res.reason = "expected " + std::to_string(d - 2) + " unit-circle roots, found " +
                 std::to_string(unit);
    return res;
  }
  auto locs = isolate_real_roots(p);
  RatInterval iv = locs.back().iv; // largest real root is the Salem number
  iv = refine_real_root(p, iv, refine_target(tol));
  res.is_salem = true;
  res.lambda = Enclosure::from_interval(iv, enclosure_digits(tol));
  (void)prec_cap_bits;
  return res;
}

PisotResult pisot_check(const IntPolynomial& p, const Rat& tol, int prec_cap_bits) {
  PisotResult res;
  if (!is_monic(p)) {
    res.reason = "not monic";
    return res;
  }
  if (p.degree() < 1) {
    res.reason = "constant polynomial";
    return res;
  }
  if (p[0] == 0) {
    res.reason = "no real root greater than 1";
    return res;
  }
  if (!irreducible_over_rationals(p)) {
    res.reason = "reducible over the rationals";
    return res;
  }
  if (sturm_count(p, Bound::at(Rat(1)), Bound::pos_inf()) != 1) {
    res.reason = "expected exactly one real root greater than 1";
    return res;
  }
  if (unit_circle_root_count(p) != 0) {
    res.reason = "has a root on the unit circle";
    return res;
  }
  RootLayout lay = analyze_squarefree(p, tol, prec_cap_bits);
  Rat width = refine_target(tol);
  for (int attempt = 0;; ++attempt) {
    refine_layout(lay, width, prec_cap_bits);
    bool undecided = false, violated = false;
    for (size_t i = 0; i + 1 < lay.reals.size(); ++i) { // all but the largest
      RatInterval m = real_root_modulus(lay.reals[i]);
      if (m.hi < 1) continue;
      if (m.lo >= 1) violated = true;
      else undecided = true;
    }
    for (auto& d : lay.upper) {
      RatInterval m = disk_modulus(d, std::max(128, prec_cap_bits / 8));
      if (m.hi < 1) continue;
      if (m.lo > 1) violated = true;
      else undecided = true;
    }
    if (violated) {
      res.reason = "a conjugate has modulus at least 1";
      return res;
    }
    if (!undecided) break;
    if (attempt >= 24) throw PrecisionExhausted("pisot_check: could not separate moduli from 1");
    width /= 16;
  }
  RatInterval iv = lay.reals.back().exact
                       ? RatInterval::exact(*lay.reals.back().exact)
                       : refine_real_root(p, lay.reals.back().iv, refine_target(tol));
  res.is_pisot = true;
  res.lambda = lay.reals.back().exact
                   ? Enclosure::exact_point(*lay.reals.back().exact, enclosure_digits(tol))
                   : Enclosure::from_interval(iv, enclosure_digits(tol));
  return res;
}

EligibilityResult main_theorem_eligible(const IntPolynomial& p) {
  EligibilityResult res;
  if (!is_monic(p)) {
    res.reason = "not monic";
    return res;
  }
  if (p.degree() < 1) {
    res.reason = "constant polynomial";
    return res;
  }
  res.constant_pm1 = (int_abs(p[0]) == 1);
  if (p[0] == 0) {
    res.real_count = 1;
    res.reason = "zero is a root";
    return res;
  }
  res.real_count = sturm_count(p, Bound::neg_inf(), Bound::pos_inf());
  res.unit_count = unit_circle_root_count(p);
  if (!irreducible_over_rationals(p)) {
    res.reason = "reducible over the rationals";
    return res;
  }
  int overlap = (p.eval(Int(1)) == 0 ? 1 : 0) + (p.eval(Int(-1)) == 0 ? 1 : 0);
  if (res.real_count + res.unit_count - overlap != p.degree()) {
    res.reason = "has a root that is neither real nor on the unit circle";
    return res;
  }
  if (res.unit_count < 1) {
    res.reason = "no unit-circle root";
    return res;
  }
  res.eligible = true;
  return res;
}

SqrtMinPolyResult sqrt_min_poly(const IntPolynomial& salem_poly, const Rat& tol,
                                int prec_cap_bits) {
  SalemResult s = salem_check(salem_poly, tol, prec_cap_bits);
  if (!s.is_salem)
    throw EligibilityError("sqrt_min_poly: input is not a Salem polynomial: " + s.reason);
  IntPolynomial g = salem_poly.stretch(2); // p(x^2)
  if (irreducible_over_rationals(g)) return SqrtMinPolyResult{SqrtBranch::Whole, g};
  RationalFactorization fac = factor_over_rationals(g);
  for (auto& [f, mult] : fac.factors) {
    if (mult != 1 || 2 * f.degree() != g.degree()) continue;
    if (sturm_count(f, Bound::at(Rat(1)), Bound::pos_inf()) != 1) continue;
    if (f * f.negate_variable() == g) return SqrtMinPolyResult{SqrtBranch::Split, f};
  }
  throw std::logic_error("sqrt_min_poly: no factor satisfies q(x) q(-x) = p(x^2)");
}

NthRootWitness nth_root_conjugate_witness(const IntPolynomial& q, int n, const Rat& tol,
                                          int prec_cap_bits) {
  if (n < 1) throw std::invalid_argument("nth_root_conjugate_witness: n must be positive");
  if (!is_monic(q)) throw EligibilityError("nth_root_conjugate_witness: input must be monic");
  NthRootWitness wit;
  wit.s_poly = root_power_transform(q, static_cast<unsigned>(n));
  RationalFactorization fac = factor_over_rationals(wit.s_poly);
  bool found = false;
  for (auto& [f, mult] : fac.factors) {
    SalemResult s = salem_check(f, tol, prec_cap_bits);
    if (s.is_salem) {
      wit.salem_factor = f;
      found = true;
      break;
    }
  }
  if (!found)
    throw EligibilityError("nth_root_conjugate_witness: no Salem factor among the n-th powers");
  IntPolynomial cof = exact_divide(wit.s_poly, wit.salem_factor);
  if (!(cof * wit.salem_factor == wit.s_poly))
    throw std::logic_error("nth_root_conjugate_witness: divisibility check failed");
  wit.unit_count = unit_circle_root_count(q);
  if (wit.unit_count < 1)
    throw EligibilityError("nth_root_conjugate_witness: input has no unit-circle root");
  return wit;
}

PolynomialClass classify(const IntPolynomial& p, const Rat& tol, int prec_cap_bits) {
  PolynomialClass out;
  if (p.degree() < 0) throw std::invalid_argument("classify: zero polynomial");
  if (p.degree() == 0) {
    out.reason = "constant polynomial";
    return out;
  }
  if (!is_monic(p)) {
    out.reason = "not monic";
    return out;
  }
  if (p[0] == 0) {
    out.reason = "zero is a root";
    return out;
  }
  out.real_count = sturm_count(p, Bound::neg_inf(), Bound::pos_inf());
  out.unit_count = unit_circle_root_count(p);

  KroneckerResult kron = kronecker_test(p);
  if (kron.all_roots_of_unity) {
    out.tag = PolynomialClass::Tag::RootsOfUnity;
    out.orders = std::move(kron.orders);
    return out;
  }
  SalemResult salem = salem_check(p, tol, prec_cap_bits);
  if (salem.is_salem) {
    out.tag = PolynomialClass::Tag::Salem;
    out.lambda = salem.lambda;
    return out;
  }
  PisotResult pisot = pisot_check(p, tol, prec_cap_bits);
  if (pisot.is_pisot) {
    out.tag = PolynomialClass::Tag::Pisot;
    out.lambda = pisot.lambda;
    return out;
  }
  EligibilityResult elig = main_theorem_eligible(p);
  if (elig.eligible) {
    out.tag = PolynomialClass::Tag::MainTheoremEligible;
    return out;
  }
  if (out.real_count == p.degree() && int_abs(p[0]) == 1 && irreducible_over_rationals(p)) {
    out.tag = PolynomialClass::Tag::TotallyRealUnit;
    return out;
  }
  out.reason = elig.reason.empty() ? "no recognized class" : elig.reason;
  return out;
}

} // namespace dyndeg
