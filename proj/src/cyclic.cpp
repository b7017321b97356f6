#include "dyndeg/cyclic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dyndeg/errors.hpp"
#include "dyndeg/fq.hpp"
#include "dyndeg/roots.hpp"

namespace dyndeg {

namespace {

void require_prime_at_least(int64_t p, int64_t min_p, const char* what) {
  if (p < min_p || !is_prime_u64(static_cast<uint64_t>(p)))
    throw std::invalid_argument(std::string(what) + " must be a prime >= " +
                                std::to_string(min_p) + ", got " + std::to_string(p));
}

void require_twist_index(int64_t p, int64_t k) {
  if (k < 1 || k > (p - 1) / 2)
    throw std::invalid_argument("twist index k must lie in 1..(p-1)/2");
}

// gamma = a is only usable when no integer p-th root exists; otherwise the
// Kummer layer collapses and x^p - a factors
void require_valid_radicand(int64_t p, const Int& a) {
  if (a < 2) throw std::invalid_argument("radicand must be an integer >= 2");
  Int root;
  if (perfect_kth_root(a, static_cast<unsigned>(p), root))
    throw std::invalid_argument("radicand " + a.str() + " is a perfect " +
                                std::to_string(p) + "-th power");
}

// lexicographically smallest (constant coefficient first) irreducible factor
// of Phi_p over F_q; every factor has degree f = ord_p(q), which the caller
// cross-checks
FpPoly smallest_cyclotomic_factor(int64_t p, int64_t q) {
  FpPoly phi = fp::from_int_poly(cyclotomic(static_cast<unsigned>(p)),
                                 static_cast<uint64_t>(q));
  auto factors = fp::factor(phi, static_cast<uint64_t>(q));
  if (factors.empty()) throw std::logic_error("cyclotomic polynomial lost all factors");
  const FpPoly* best = nullptr;
  for (const auto& [g, mult] : factors) {
    if (mult != 1) throw std::logic_error("Phi_p acquired a repeated factor mod q != p");
    if (best == nullptr || g < *best) best = &g;
  }
  return *best;
}

FrobeniusProbe probe_impl(int64_t p, int64_t k, const Int* radicand, int64_t q) {
  if (!is_prime_u64(static_cast<uint64_t>(q)) || q == p)
    throw std::invalid_argument("residue characteristic must be a prime distinct from p");
  const uint64_t uq = static_cast<uint64_t>(q);

  FrobeniusProbe pr;
  pr.q = q;
  pr.f = static_cast<int64_t>(
      mult_order_u64(static_cast<uint64_t>(q % p), static_cast<uint64_t>(p)));

  FpPoly h = smallest_cyclotomic_factor(p, q);
  if (fp::degree(h) != static_cast<int>(pr.f))
    throw std::logic_error("factor degree disagrees with the order of q mod p");

  FpPoly gamma;
  if (radicand == nullptr) {
    // image of zeta^k + zeta^(-k) under zeta -> t in F_q[t]/(h); note
    // zeta^(-k) = zeta^(p-k) since h divides Phi_p
    FpPoly tk = fp::powmod(fp::x(), Int(k), h, uq);
    FpPoly tk_inv = fp::powmod(fp::x(), Int(p - k), h, uq);
    gamma = fp::add(tk, tk_inv, uq);
  } else {
    Int r = *radicand % q;
    gamma = fp::constant(r.convert_to<uint64_t>(), uq);
  }
  pr.gamma_residue = fp::to_int_poly(gamma);
  pr.residue_factor = fp::to_int_poly(h);

  Int group_order = int_pow(Int(q), static_cast<uint64_t>(pr.f)) - 1;
  if (group_order % p != 0)
    throw std::logic_error("q^f - 1 is not divisible by p despite f = ord_p(q)");
  pr.exponent = group_order / p;

  FpPoly w = fp::powmod(gamma, pr.exponent, h, uq);
  pr.witness = fp::to_int_poly(w);
  pr.accepted = !fp::is_zero(w) && !fp::is_one(w);
  return pr;
}

std::string descriptor(int64_t p, int64_t q, int64_t k, const Int* radicand) {
  std::ostringstream os;
  os << "(+)_{i=0.." << (p - 1) << "} u^i L, u^" << p << " = " << q << ", L = Q(zeta_"
     << p << ", gamma^(1/" << p << ")), gamma = ";
  if (radicand == nullptr)
    os << "zeta_" << p << "^" << k << " + zeta_" << p << "^-" << k;
  else
    os << radicand->str();
  return os.str();
}

CyclicAlgebraCertificate search_impl(int64_t p, int64_t k, const Int* radicand,
                                     const RunConfig& cfg) {
  cfg.validate();
  for (int64_t q = 2; q <= cfg.q_bound; ++q) {
    if (!is_prime_u64(static_cast<uint64_t>(q)) || q == p) continue;
    if (radicand != nullptr && *radicand % q == 0) continue;  // ramified in Q(a^(1/p))
    FrobeniusProbe pr = probe_impl(p, k, radicand, q);
    if (!pr.accepted) continue;

    CyclicAlgebraCertificate cert;
    cert.p = p;
    cert.k = radicand == nullptr ? k : 0;
    cert.radicand = radicand == nullptr ? Int(0) : *radicand;
    cert.q = pr.q;
    cert.f = pr.f;
    cert.residue_factor = pr.residue_factor;
    cert.gamma_residue = pr.gamma_residue;
    cert.power_residue_exponent = pr.exponent;
    cert.witness = pr.witness;
    cert.algebra_descriptor = descriptor(p, q, k, radicand);
    cert.variety_dimension = Int(p) * Int(p) * Int(p - 1) / 2;
    if (radicand == nullptr) {
      KummerDegreeCheck kc = kummer_degree_check(p, k);
      if (!kc.ok) throw EligibilityError("Kummer degree check failed: " + kc.detail);
      cert.min_poly_over_Q = kc.poly;
      cert.lambda1 = cyclic_lambda1(p, cfg.tolerance, cfg.precision_cap);
      cert.invertible = true;  // gamma has norm +-1, so 1/lambda1 stays integral
    } else {
      cert.min_poly_over_Q = IntPolynomial::power_minus(static_cast<unsigned>(p), *radicand);
      cert.lambda1 = radicand_lambda1(p, *radicand, cfg.tolerance, cfg.precision_cap);
      cert.invertible = false;  // 1/a^(1/p) is not an algebraic integer for a >= 2
    }
    return cert;
  }
  throw BoundExhausted("no residue characteristic q <= " + std::to_string(cfg.q_bound) +
                       " certifies a nontrivial power-residue witness");
}

} // namespace

KummerDegreeCheck kummer_degree_check(int64_t p, int64_t k) {
  require_prime_at_least(p, 5, "cyclic degree");
  require_twist_index(p, k);
  KummerDegreeCheck kc;
  // minimal polynomial of 2 cos(2 pi k / p) is Psi_p regardless of k, so the
  // candidate minimal polynomial of its p-th root is Psi_p(x^p) for every k
  kc.poly = real_cyclotomic(static_cast<unsigned>(p)).stretch(static_cast<unsigned>(p));
  kc.degree = kc.poly.degree();
  if (kc.degree != p * (p - 1) / 2)
    throw std::logic_error("Psi_p(x^p) has unexpected degree");
  kc.ok = irreducible_over_rationals(kc.poly);
  std::ostringstream os;
  if (kc.ok)
    os << "Psi_" << p << "(x^" << p << ") irreducible of degree " << kc.degree
       << ", so the p-th root of gamma generates a degree-" << p << " extension";
  else
    os << "Psi_" << p << "(x^" << p << ") is reducible; no degree-" << p
       << " Kummer layer over Q(zeta_" << p << ")";
  kc.detail = os.str();
  return kc;
}

FrobeniusProbe frobenius_probe(int64_t p, int64_t k, int64_t q) {
  require_prime_at_least(p, 5, "cyclic degree");
  require_twist_index(p, k);
  return probe_impl(p, k, nullptr, q);
}

FrobeniusProbe frobenius_probe_radicand(int64_t p, const Int& a, int64_t q) {
  require_prime_at_least(p, 3, "cyclic degree");
  require_valid_radicand(p, a);
  if (a % q == 0)
    throw std::invalid_argument("residue characteristic divides the radicand");
  return probe_impl(p, 0, &a, q);
}

CyclicAlgebraCertificate frobenius_prime_search(int64_t p, int64_t k,
                                                const RunConfig& cfg) {
  require_prime_at_least(p, 5, "cyclic degree");
  require_twist_index(p, k);
  return search_impl(p, k, nullptr, cfg);
}

CyclicAlgebraCertificate frobenius_prime_search_radicand(int64_t p, const Int& a,
                                                         const RunConfig& cfg) {
  require_prime_at_least(p, 3, "cyclic degree");
  require_valid_radicand(p, a);
  return search_impl(p, 0, &a, cfg);
}

bool pth_power_absent_brute_force(int64_t p, int64_t q,
                                  const IntPolynomial& residue_factor,
                                  const IntPolynomial& gamma_residue,
                                  uint64_t cap) {
  require_prime_at_least(p, 3, "cyclic degree");
  if (!is_prime_u64(static_cast<uint64_t>(q)))
    throw std::invalid_argument("residue characteristic must be prime");
  const uint64_t uq = static_cast<uint64_t>(q);
  FpPoly h = fp::from_int_poly(residue_factor, uq);
  FpPoly gamma = fp::rem(fp::from_int_poly(gamma_residue, uq), h, uq);
  int f = fp::degree(h);
  if (f < 1) throw std::invalid_argument("residue factor must be non-constant");

  Int size = int_pow(Int(q), static_cast<uint64_t>(f));
  if (size > cap)
    throw std::invalid_argument("residue field of order " + size.str() +
                                " exceeds the brute-force cap " + std::to_string(cap));

  // walk every element of F_q[t]/(h) by odometer over coefficient vectors and
  // test whether its p-th power hits gamma; for a prime exponent a root of
  // x^p - gamma exists exactly when the binomial is reducible
  std::vector<uint64_t> coeffs(static_cast<size_t>(f), 0);
  for (;;) {
    FpPoly y(coeffs);
    fp::trim(y);
    FpPoly yp = fp::powmod(y, Int(p), h, uq);
    if (yp == gamma) return false;
    size_t pos = 0;
    while (pos < coeffs.size() && ++coeffs[pos] == uq) coeffs[pos++] = 0;
    if (pos == coeffs.size()) break;
  }
  return true;
}

Enclosure cyclic_lambda1(int64_t p, const Rat& tol, int prec_cap_bits) {
  require_prime_at_least(p, 5, "cyclic degree");
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");

  // 2 cos(pi/p) is the largest root of the real cyclotomic polynomial at 2p
  IntPolynomial R = real_cyclotomic(2 * static_cast<unsigned>(p));
  auto roots = isolate_real_roots(R);
  if (roots.empty() || roots.back().exact)
    throw std::logic_error("largest real cyclotomic root should be irrational");
  RatInterval w = roots.back().iv;

  const Rat target = refine_target(tol);
  Rat width = target / 16;
  for (int bits = 128; bits <= prec_cap_bits; bits *= 2) {
    w = refine_real_root(R, w, width);
    if (w.lo <= 1) { width /= 256; continue; }  // still too coarse to certify > 1
    RatInterval lam = kth_root_interval(w.pow(2), static_cast<unsigned>(p), bits);
    RatInterval top = kth_root_interval(RatInterval(Rat(4), Rat(4)),
                                        static_cast<unsigned>(p), bits);
    if (lam.width() <= target && lam.lo > 1 && lam.hi < top.lo)
      return Enclosure::from_interval(lam, enclosure_digits(tol));
    width /= 256;
  }
  throw PrecisionExhausted("cyclic lambda1 for p = " + std::to_string(p));
}

Enclosure radicand_lambda1(int64_t p, const Int& a, const Rat& tol,
                           int prec_cap_bits) {
  require_prime_at_least(p, 3, "cyclic degree");
  require_valid_radicand(p, a);
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");

  const Rat target = refine_target(tol);
  RatInterval sq = RatInterval::exact(Rat(a * a));
  for (int bits = 128; bits <= prec_cap_bits; bits *= 2) {
    RatInterval lam = kth_root_interval(sq, static_cast<unsigned>(p), bits);
    if (lam.width() <= target && lam.lo > 1)
      return Enclosure::from_interval(lam, enclosure_digits(tol));
  }
  throw PrecisionExhausted("radicand lambda1 for p = " + std::to_string(p));
}

std::vector<Enclosure> lambda1_sequence(const std::vector<int64_t>& ps,
                                        const Rat& tol, int prec_cap_bits) {
  for (size_t i = 0; i + 1 < ps.size(); ++i)
    if (ps[i] >= ps[i + 1])
      throw std::invalid_argument("primes must be listed in increasing order");

  std::vector<Enclosure> out;
  out.reserve(ps.size());
  for (int64_t p : ps) out.push_back(cyclic_lambda1(p, tol, prec_cap_bits));

  // certify strict decrease; enclosures are far wider apart than tol at the
  // default tolerance, so refine only on demand
  Rat t = tol;
  for (size_t i = 0; i + 1 < out.size(); ++i) {
    while (out[i + 1].hi() >= out[i].lo()) {
      t /= 1024;
      if (digits_for_tolerance(t) * 4 > prec_cap_bits)
        throw PrecisionExhausted("lambda1 sequence separation");
      out[i] = cyclic_lambda1(ps[i], t, prec_cap_bits);
      out[i + 1] = cyclic_lambda1(ps[i + 1], t, prec_cap_bits);
    }
  }
  for (size_t i = 0; i < out.size(); ++i)
    if (out[i].lo() <= 1) throw std::logic_error("lambda1 sequence term not above 1");
  return out;
}

int64_t smallest_prime_below_eps(const Int& a, const Rat& eps, const Rat& tol,
                                 int prec_cap_bits) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  if (a < 2) throw std::invalid_argument("radicand must be an integer >= 2");
  const Rat ceiling = 1 + eps;
  for (int64_t p = 3; p <= 1000000; ++p) {
    if (!is_prime_u64(static_cast<uint64_t>(p))) continue;
    Int root;
    if (perfect_kth_root(a, static_cast<unsigned>(p), root)) continue;
    Enclosure lam = radicand_lambda1(p, a, tol, prec_cap_bits);
    if (lam.hi() < ceiling) return p;
  }
  throw BoundExhausted("no prime p with a^(2/p) below 1 + eps");
}

namespace {

// monomial u^i z^j g^(m/p) together with central scalar exponents picked up
// by the reductions u^p = q and g^(p/p) = g
struct BasisMonomial {
  int64_t i = 0, j = 0, m = 0;
  int64_t q_exp = 0, g_exp = 0;

  bool operator==(const BasisMonomial& o) const {
    return i == o.i && j == o.j && m == o.m && q_exp == o.q_exp && g_exp == o.g_exp;
  }
};

// product law from z central, u^p = q, and x u = u sigma(x) with
// sigma(g^(1/p)) = z g^(1/p): pulling y's u-power through x's root picks up
// z^(i_y * m_x)
BasisMonomial mono_mul(const BasisMonomial& x, const BasisMonomial& y, int64_t p) {
  BasisMonomial r;
  r.i = (x.i + y.i) % p;
  r.q_exp = x.q_exp + y.q_exp + (x.i + y.i >= p ? 1 : 0);
  r.j = ((x.j + y.j + y.i * x.m) % p + p) % p;
  r.m = (x.m + y.m) % p;
  r.g_exp = x.g_exp + y.g_exp + (x.m + y.m >= p ? 1 : 0);
  return r;
}

BasisMonomial mono_phi(const BasisMonomial& x, int64_t p) {
  BasisMonomial r = x;
  r.j = ((x.i * x.m - x.j) % p + p) % p;
  return r;
}

} // namespace

bool anti_involution_self_check(int64_t p) {
  require_prime_at_least(p, 3, "cyclic degree");
  std::vector<BasisMonomial> basis;
  basis.reserve(static_cast<size_t>(p * p * p));
  for (int64_t i = 0; i < p; ++i)
    for (int64_t j = 0; j < p; ++j)
      for (int64_t m = 0; m < p; ++m) basis.push_back({i, j, m, 0, 0});

  for (const auto& b : basis)
    if (!(mono_phi(mono_phi(b, p), p) == b)) return false;
  for (const auto& x : basis)
    for (const auto& y : basis) {
      BasisMonomial lhs = mono_phi(mono_mul(x, y, p), p);
      BasisMonomial rhs = mono_mul(mono_phi(y, p), mono_phi(x, p), p);
      if (!(lhs == rhs)) return false;
    }
  return true;
}

} // namespace dyndeg
