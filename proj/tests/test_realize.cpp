#include <string>
#include <vector>

#include "doctest.h"
#include "dyndeg/classify.hpp"
#include "dyndeg/errors.hpp"
#include "dyndeg/poly.hpp"
#include "dyndeg/realize.hpp"
#include "dyndeg/roots.hpp"

using namespace dyndeg;

namespace {

IntPolynomial P(std::vector<Int> c) { return IntPolynomial(std::move(c)); }

const IntPolynomial kSalem4 = P({1, -1, -1, -1, 1});
const IntPolynomial kSalem4Sq = P({1, -3, 1, -3, 1});
const IntPolynomial kPhi5 = P({1, 1, 1, 1, 1});
const IntPolynomial kGauss = P({1, 0, 1});     // x^2 + 1
const IntPolynomial kPsi5 = P({-1, 1, 1});     // x^2 + x - 1
const IntPolynomial kPsi7 = P({-1, -2, 1, 1}); // x^3 + x^2 - 2x - 1

RunConfig default_config() { return RunConfig{}; }

bool encloses(const Enclosure& e, const std::string& decimal) {
  Rat v = parse_decimal(decimal);
  return e.lo() <= v && v <= e.hi();
}

// independent dense isotropy check: every coefficient vector (no sign
// canonicalization, no hashing) up to the given height
bool brute_isotropic(const IntPolynomial& a_repr, const IntPolynomial& T, int64_t p, int64_t H) {
  int d = T.degree();
  int64_t span = 2 * H + 1;
  int64_t total = 1;
  for (int i = 0; i < d; ++i) total *= span;
  auto decode = [&](int64_t code) {
    std::vector<Int> c(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
      c[static_cast<size_t>(i)] = Int(code % span - H);
      code /= span;
    }
    return IntPolynomial(std::move(c));
  };
  auto modT = [&](const IntPolynomial& f) {
    IntPolynomial r = f;
    while (r.degree() >= d) {
      std::vector<Int> c(r.coeffs());
      Int q = c.back();
      size_t off = c.size() - 1 - static_cast<size_t>(d);
      for (int j = 0; j <= d; ++j) c[off + static_cast<size_t>(j)] -= q * T[static_cast<size_t>(j)];
      c.pop_back();
      r = IntPolynomial(std::move(c));
    }
    return r;
  };
  for (int64_t cx = 0; cx < total; ++cx) {
    IntPolynomial x = decode(cx);
    IntPolynomial ax2 = modT(modT(x * x) * a_repr);
    for (int64_t cy = 0; cy < total; ++cy) {
      IntPolynomial y = decode(cy);
      IntPolynomial py2 = modT(y * y).times(Int(p));
      for (int64_t cz = 0; cz < total; ++cz) {
        IntPolynomial z = decode(cz);
        if (x.is_zero() && y.is_zero() && z.is_zero()) continue;
        if ((ax2 + py2 - modT(z * z)).is_zero()) return true;
      }
    }
  }
  return false;
}

} // namespace

TEST_SUITE("realize") {

TEST_CASE("pell fundamental solutions") {
  struct Row { int64_t p; Int X, Z; };
  const std::vector<Row> table = {
      {2, 2, 3},   {3, 1, 2},   {5, 4, 9},          {6, 2, 5},
      {7, 3, 8},   {10, 6, 19}, {13, 180, 649},     {61, Int("226153980"), Int("1766319049")},
  };
  for (const Row& r : table) {
    PellSolution s = pell_fundamental(r.p);
    CHECK(s.X == r.X);
    CHECK(s.Z == r.Z);
    CHECK(s.Z * s.Z - Int(r.p) * s.X * s.X == 1);
  }
  CHECK_THROWS_AS(pell_fundamental(4), std::invalid_argument);
  CHECK_THROWS_AS(pell_fundamental(9), std::invalid_argument);
  CHECK_THROWS_AS(pell_fundamental(1), std::invalid_argument);
}

TEST_CASE("pell powers stay on the conic") {
  for (int64_t p : {2, 3, 13}) {
    PellSolution s = pell_fundamental(p);
    for (unsigned k = 0; k <= 4; ++k) {
      PellSolution t = pell_power(s, p, k);
      CHECK(t.Z * t.Z - Int(p) * t.X * t.X == 1);
      if (k >= 1) CHECK(t.X >= s.X);
    }
    CHECK(pell_power(s, p, 0).X == 0);
    CHECK(pell_power(s, p, 0).Z == 1);
    CHECK(pell_power(s, p, 1).X == s.X);
  }
}

TEST_CASE("hilbert symbols at small places") {
  CHECK(hilbert_symbol(Int(-1), Int(3), 3) == -1);
  CHECK(hilbert_symbol(Int(-3), Int(2), 2) == -1);
  CHECK(hilbert_symbol(Int(-1), Int(-1), 0) == -1);
  CHECK(hilbert_symbol(Int(-1), Int(2), 0) == 1);
  CHECK(hilbert_symbol(Int(2), Int(7), 7) == 1);   // 2 = 3^2 mod 7
  CHECK(hilbert_symbol(Int(3), Int(7), 7) == -1);  // 3 is not a square mod 7
  CHECK(hilbert_symbol(Int(5), Int(3), 2) == 1);
  CHECK_THROWS_AS(hilbert_symbol(Int(0), Int(3), 3), std::invalid_argument);
  CHECK_THROWS_AS(hilbert_symbol(Int(1), Int(3), 6), std::invalid_argument);
}

TEST_CASE("hilbert product formula holds on a sweep") {
  // quaternion_division_exact throws if the product over the listed places is not +1
  for (int a = -20; a <= 20; ++a) {
    if (a == 0) continue;
    for (int64_t b : {2, 3, 5, 7, 11, 30}) {
      std::string detail;
      quaternion_division_exact(Int(a), Int(b), &detail);
      CHECK(!detail.empty());
    }
  }
  std::string detail;
  CHECK(quaternion_division_exact(Int(-1), Int(3), &detail));
  CHECK(detail.find("_3=-1") != std::string::npos);
  CHECK(!quaternion_division_exact(Int(-1), Int(2), nullptr));
}

TEST_CASE("division witness in the rational trace field") {
  const IntPolynomial a_repr = P({-4, 0, 1}); // w^2 - 4
  // w = 1: a = -3, and (-3, 2) ramifies at 2
  DivisionWitness w1 = division_witness_search(a_repr, P({-1, 1}), 1000, 12);
  CHECK(w1.mode == WitnessMode::Exact);
  CHECK(w1.p == 2);
  CHECK(w1.height == 0);
  // w = 0: a = -4 ~ -1, split at 2, and (-1, 3) ramifies at 3
  DivisionWitness w0 = division_witness_search(a_repr, P({0, 1}), 1000, 12);
  CHECK(w0.mode == WitnessMode::Exact);
  CHECK(w0.p == 3);

  // a square and positive: the algebra splits for every prime
  CHECK_THROWS_AS(division_witness_search(P({9}), P({-1, 1}), 50, 12), std::invalid_argument);
  // a vanishing in the field is rejected
  CHECK_THROWS_AS(division_witness_search(P({-1, 1, 1}), P({-1, 1, 1}), 50, 12),
                  std::invalid_argument);
}

TEST_CASE("division witness by isotropy absence") {
  const IntPolynomial a_repr = P({-4, 0, 1});
  const IntPolynomial T = trace_polynomial(kPhi5); // w^2 + w - 1
  DivisionWitness w = division_witness_search(a_repr, T, 1000, 12);
  CHECK(w.mode == WitnessMode::IsotropyAbsent);
  CHECK(w.height == 12);
  CHECK(is_prime_u64(static_cast<uint64_t>(w.p)));
  // cross-check with an independent dense enumeration at a smaller height
  CHECK(!brute_isotropic(a_repr, T, w.p, 2));
  // determinism
  DivisionWitness w2 = division_witness_search(a_repr, T, 1000, 12);
  CHECK(w2.p == w.p);

  // a = 1 is isotropic for every p (x = z = 1, y = 0), so the search exhausts
  CHECK_THROWS_AS(division_witness_search(P({1}), T, 5, 12), BoundExhausted);
}

TEST_CASE("bounded isotropy search agrees with dense enumeration") {
  const IntPolynomial T = trace_polynomial(kPhi5);
  // restrict the search to the single prime 2 at height 2 and compare with a
  // dense enumeration over all coefficient vectors at the same height
  for (const IntPolynomial& a :
       {P({-4, 0, 1}), P({1}), P({0, 1}), P({-1}), P({2}), P({-2}), P({1, 1})}) {
    bool brute = brute_isotropic(a, T, 2, 2);
    bool witness_at_2;
    try {
      witness_at_2 = division_witness_search(a, T, 2, 2).p == 2;
    } catch (const BoundExhausted&) {
      witness_at_2 = false;
    }
    CHECK(witness_at_2 == !brute);
  }
}

TEST_CASE("near-one power search") {
  // gamma = +-i: gamma^n returns to 1 first at n = 4
  CHECK(near_one_power_search(P({0, 1}), {RatInterval::exact(0)}, Rat(1, 10), 4096, 1000) == 4);
  // unit root of the Salem quartic trace field, eps = 0.05
  IntPolynomial T = trace_polynomial(kSalem4); // w^2 - w - 3
  auto ws = isolate_real_roots_in(T, Rat(-2), Rat(2));
  REQUIRE(ws.size() == 1);
  CHECK(near_one_power_search(T, ws, Rat(1, 20), 4096, 10000) == 124);
  // impossible demand exhausts the scan bound
  CHECK_THROWS_AS(near_one_power_search(T, ws, Rat(1, 20), 4096, 50), BoundExhausted);
  CHECK_THROWS_AS(near_one_power_search(T, ws, Rat(0), 4096, 50), std::invalid_argument);
}

TEST_CASE("evaluation at real roots") {
  // x^2 at the roots of x^2 - 2 is exactly 2 on both embeddings
  auto vals = evaluate_at_real_roots(P({0, 0, 1}), P({-2, 0, 1}), Rat(1, 1000000000), 4096);
  REQUIRE(vals.size() == 2);
  for (const Enclosure& e : vals) {
    CHECK(encloses(e, "2.0"));
    CHECK(Rat(e.rad()) <= Rat(1, 1000000000));
  }
  // exact rational root
  auto at_zero = evaluate_at_real_roots(P({7, 1}), P({0, 1}), Rat(1, 1000), 4096);
  REQUIRE(at_zero.size() == 1);
  CHECK(at_zero[0].is_exact());
  CHECK(at_zero[0].mid() == 7);
}

TEST_CASE("positivity search in the gaussian case") {
  RunConfig cfg = default_config();
  PellSolution pell = pell_fundamental(3);
  PositivityResult res = positivity_search(P({0, 1}), 3, pell, cfg);
  CHECK(res.N == 2);
  CHECK(res.pell.X == 1);
  CHECK(res.pell.Z == 2);
  // V_2(0) = -2, V_3(0) = 0, U_2(0) = -1
  CHECK(res.x == P({-6}));
  CHECK(res.y.is_zero());
  CHECK(res.z == P({-2}));
  REQUIRE(res.c_squared.size() == 1);
  CHECK(res.c_squared[0].is_exact());
  CHECK(res.c_squared[0].mid() == -96);
}

TEST_CASE("realization of x^2 + 1") {
  RunConfig cfg = default_config();
  RealizationCertificate cert = realize_type2(kGauss, cfg);
  CHECK(cert.g == 2);
  CHECK(cert.type_tag == RealizationType::Type2);
  CHECK(cert.trace_field_poly == P({0, 1}));
  CHECK(cert.division.mode == WitnessMode::Exact);
  CHECK(cert.division.p == 3);
  CHECK(cert.exponent_N == 2);
  CHECK(cert.gamma_w.is_exact());
  CHECK(cert.gamma_w.mid() == 0);
  REQUIRE(cert.claimed_spectrum.lambdas.size() == 3);
  CHECK(cert.claimed_spectrum.lambdas[1].is_exact());
  CHECK(cert.claimed_spectrum.lambdas[1].mid() == 1);

  VerificationReport rep = verify_certificate(cert, cfg);
  CHECK(rep.ok);
}

TEST_CASE("realization of the fifth cyclotomic polynomial") {
  RunConfig cfg = default_config();
  RealizationCertificate cert = realize_type2(kPhi5, cfg);
  CHECK(cert.g == 4);
  CHECK(cert.trace_field_poly == P({-1, 1, 1}));
  CHECK(cert.division.mode == WitnessMode::IsotropyAbsent);
  CHECK(cert.exponent_N % 2 == 0);
  for (const Enclosure& e : cert.c_squared_conjugates) CHECK(e.hi() < 0);
  // every root is on the unit circle, so the whole spectrum collapses to 1
  for (const Enclosure& l : cert.claimed_spectrum.lambdas) {
    CHECK(l.is_exact());
    CHECK(l.mid() == 1);
  }
  CHECK(verify_certificate(cert, cfg).ok);
}

TEST_CASE("realization of the salem quartic") {
  RunConfig cfg = default_config();
  RealizationCertificate cert = realize_type2(kSalem4, cfg);
  CHECK(cert.g == 4);
  CHECK(cert.trace_field_poly == P({-3, -1, 1}));
  CHECK(cert.exponent_N % 2 == 0);
  CHECK(cert.exponent_N >= 2);
  REQUIRE(cert.c_squared_conjugates.size() == 2);
  for (const Enclosure& e : cert.c_squared_conjugates) CHECK(e.hi() < 0);
  // lambda_1 is the square of the Salem number
  REQUIRE(cert.claimed_spectrum.lambdas.size() == 5);
  CHECK(encloses(cert.claimed_spectrum.lambdas[1], "2.965572633988663388290"));
  CHECK(cert.claimed_spectrum.lambdas[4].is_exact());
  CHECK(cert.claimed_spectrum.lambdas[4].mid() == 1);
  // the distinguished embedding is the unit-circle one
  CHECK(cert.gamma_w.hi() < 2);
  CHECK(cert.gamma_w.lo() > -2);

  VerificationReport rep = verify_certificate(cert, cfg);
  CHECK(rep.ok);
}

TEST_CASE("realization along the square root of a salem number") {
  RunConfig cfg = default_config();
  // sqrt of the salem4sq root recovers salem4 as the split factor
  SqrtMinPolyResult split = sqrt_min_poly(kSalem4Sq, cfg.tolerance, cfg.precision_cap);
  CHECK(split.branch == SqrtBranch::Split);
  CHECK(split.q == kSalem4);

  // sqrt of the salem4 root needs the full stretched polynomial
  SqrtMinPolyResult whole = sqrt_min_poly(kSalem4, cfg.tolerance, cfg.precision_cap);
  CHECK(whole.branch == SqrtBranch::Whole);
  CHECK(whole.q == kSalem4.stretch(2));

  RealizationCertificate cert = realize_type2(whole.q, cfg);
  CHECK(cert.g == 8);
  CHECK(cert.exponent_N % 2 == 0);
  for (const Enclosure& e : cert.c_squared_conjugates) CHECK(e.hi() < 0);
  // lambda_1 of the realized variety is the Salem number itself
  CHECK(encloses(cert.claimed_spectrum.lambdas[1], "1.722083805739042245027"));
  CHECK(verify_certificate(cert, cfg).ok);
}

TEST_CASE("totally real realizations") {
  RunConfig cfg = default_config();
  RealizationCertificate c5 = realize_type1(kPsi5, cfg);
  CHECK(c5.g == 2);
  CHECK(c5.type_tag == RealizationType::Type1);
  CHECK(c5.trace_field_poly == kPsi5);
  REQUIRE(c5.claimed_spectrum.lambdas.size() == 3);
  CHECK(encloses(c5.claimed_spectrum.lambdas[1], "2.618033988749894848205"));
  CHECK(c5.claimed_spectrum.lambdas[2].is_exact());
  CHECK(c5.claimed_spectrum.lambdas[2].mid() == 1);
  CHECK(verify_certificate(c5, cfg).ok);

  RealizationCertificate c7 = realize_type1(kPsi7, cfg);
  CHECK(c7.g == 3);
  CHECK(encloses(c7.claimed_spectrum.lambdas[1], "3.246979603717467061050"));
  CHECK(verify_certificate(c7, cfg).ok);
}

TEST_CASE("realization rejections") {
  RunConfig cfg = default_config();
  // type 1 requires totally real input
  CHECK_THROWS_AS(realize_type1(kGauss, cfg), EligibilityError);
  // constant term must be a unit
  CHECK_THROWS_AS(realize_type1(P({-2, 0, 1}), cfg), EligibilityError);
  // reducible input
  CHECK_THROWS_AS(realize_type1(P({1, 2, 1}), cfg), EligibilityError);
  // degree 1 is excluded
  CHECK_THROWS_AS(realize_type1(P({-1, 1}), cfg), EligibilityError);
  CHECK_THROWS_AS(realize_type2(P({-1, 1}), cfg), EligibilityError);
  CHECK_THROWS_AS(realize_type2(P({1, 1}), cfg), EligibilityError);
  // totally real input belongs to the other route
  CHECK_THROWS_AS(realize_type2(P({1, -3, 1}), cfg), EligibilityError);
  // off-circle complex roots are not eligible
  CHECK_THROWS_AS(realize_type2(P({2, 0, 1}), cfg), EligibilityError);
}

TEST_CASE("tampered certificates fail verification") {
  RunConfig cfg = default_config();
  RealizationCertificate cert = realize_type2(kGauss, cfg);
  REQUIRE(verify_certificate(cert, cfg).ok);

  RealizationCertificate bad = cert;
  bad.c_x = P({1});
  VerificationReport rep = verify_certificate(bad, cfg);
  CHECK(!rep.ok);
  bool found = false;
  for (const CertificateCheck& c : rep.checks)
    if (c.name == "components") { found = true; CHECK(!c.pass); }
  CHECK(found);

  bad = cert;
  bad.exponent_N += 1; // odd exponent, derived data no longer matches
  CHECK(!verify_certificate(bad, cfg).ok);

  bad = cert;
  bad.pell.X += 1;
  CHECK(!verify_certificate(bad, cfg).ok);

  bad = cert;
  bad.trace_field_poly = P({-1, 1});
  CHECK(!verify_certificate(bad, cfg).ok);

  bad = cert;
  bad.claimed_spectrum.lambdas[1] = Enclosure::exact_point(Rat(7), 9);
  CHECK(!verify_certificate(bad, cfg).ok);
}

} // TEST_SUITE
