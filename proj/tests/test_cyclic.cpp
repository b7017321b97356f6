#include <string>
#include <vector>

#include "doctest.h"
#include "dyndeg/cyclic.hpp"
#include "dyndeg/errors.hpp"
#include "dyndeg/poly.hpp"

using namespace dyndeg;

namespace {

IntPolynomial P(std::vector<Int> c) { return IntPolynomial(std::move(c)); }

const Rat kTol = Rat(1, 1000000000);
const int kPrecCap = 4096;

RunConfig default_config() { return RunConfig{}; }

bool encloses(const Enclosure& e, const std::string& decimal) {
  Rat v = parse_decimal(decimal);
  return e.lo() <= v && v <= e.hi();
}

} // namespace

TEST_CASE("kummer degree check") {
  KummerDegreeCheck k5 = kummer_degree_check(5, 2);
  CHECK(k5.ok);
  CHECK(k5.degree == 10);
  CHECK(k5.poly == P({-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}));  // x^10 + x^5 - 1
  // the polynomial only sees the minimal polynomial of gamma, never k itself
  CHECK(kummer_degree_check(5, 1).poly == k5.poly);

  CHECK(kummer_degree_check(7, 3).degree == 21);
  CHECK(kummer_degree_check(7, 3).ok);
  CHECK(kummer_degree_check(11, 1).degree == 55);
  CHECK(kummer_degree_check(11, 1).ok);
  KummerDegreeCheck k13 = kummer_degree_check(13, 6);
  CHECK(k13.ok);
  CHECK(k13.degree == 78);
  CHECK(k13.poly == real_cyclotomic(13).stretch(13));

  CHECK_THROWS_AS(kummer_degree_check(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(kummer_degree_check(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(kummer_degree_check(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(kummer_degree_check(5, 3), std::invalid_argument);
}

TEST_CASE("frobenius probe matches hand-checked residue data") {
  // p = 5, k = 2, q = 11: f = 1, h = t + 2, so t = 9 and gamma = 9^2 + 9^3 = 7;
  // witness 7^2 = 5 mod 11
  FrobeniusProbe a = frobenius_probe(5, 2, 11);
  CHECK(a.f == 1);
  CHECK(a.residue_factor == P({2, 1}));
  CHECK(a.gamma_residue == P({7}));
  CHECK(a.exponent == 2);
  CHECK(a.witness == P({5}));
  CHECK(a.accepted);

  // p = 7, k = 3, q = 2: f = 3, exponent (8-1)/7 = 1, so the witness is gamma
  // itself; h is the lex-smaller cubic factor 1 + t^2 + t^3 of Phi_7 mod 2
  FrobeniusProbe b = frobenius_probe(7, 3, 2);
  CHECK(b.f == 3);
  CHECK(b.residue_factor == P({1, 0, 1, 1}));
  CHECK(b.gamma_residue == P({0, 1}));
  CHECK(b.exponent == 1);
  CHECK(b.witness == P({0, 1}));
  CHECK(b.accepted);

  // p = 11, q = 3: f = 5, exponent (243-1)/11 = 22
  FrobeniusProbe c = frobenius_probe(11, 1, 3);
  CHECK(c.f == 5);
  CHECK(c.residue_factor == P({2, 0, 1, 2, 1, 1}));
  CHECK(c.gamma_residue == P({0, 2, 2, 1, 1}));
  CHECK(c.exponent == 22);
  CHECK(c.witness == P({2, 1, 1, 1, 2}));
  CHECK(c.accepted);

  // p = 13, q = 3: f = 3, exponent (27-1)/13 = 2
  FrobeniusProbe d = frobenius_probe(13, 1, 3);
  CHECK(d.f == 3);
  CHECK(d.residue_factor == P({2, 0, 1, 1}));
  CHECK(d.gamma_residue == P({0, 2, 1}));
  CHECK(d.witness == P({0, 1, 1}));
  CHECK(d.accepted);

  // rejected characteristics for p = 5, k = 2: everything below 11
  CHECK_FALSE(frobenius_probe(5, 2, 2).accepted);
  CHECK_FALSE(frobenius_probe(5, 2, 3).accepted);
  CHECK_FALSE(frobenius_probe(5, 2, 7).accepted);

  CHECK_THROWS_AS(frobenius_probe(5, 2, 5), std::invalid_argument);   // q = p
  CHECK_THROWS_AS(frobenius_probe(5, 2, 4), std::invalid_argument);   // q composite
}

TEST_CASE("frobenius prime search over the automorphism family") {
  RunConfig cfg = default_config();

  CyclicAlgebraCertificate c5 = frobenius_prime_search(5, 2, cfg);
  CHECK(c5.p == 5);
  CHECK(c5.k == 2);
  CHECK(c5.radicand == 0);
  CHECK(c5.q == 11);
  CHECK(c5.f == 1);
  CHECK(c5.witness == P({5}));
  CHECK(c5.power_residue_exponent == 2);
  CHECK(c5.min_poly_over_Q == P({-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}));
  CHECK(c5.variety_dimension == 50);
  CHECK(c5.invertible);
  CHECK(c5.algebra_descriptor.find("u^5 = 11") != std::string::npos);
  CHECK(encloses(c5.lambda1, "1.212257992415468508091171"));
  CHECK(c5.lambda1.rad() <= kTol);

  CHECK(frobenius_prime_search(7, 3, cfg).q == 2);
  CHECK(frobenius_prime_search(11, 1, cfg).q == 3);

  CyclicAlgebraCertificate c13 = frobenius_prime_search(13, 1, cfg);
  CHECK(c13.q == 3);
  CHECK(c13.f == 3);
  CHECK(c13.variety_dimension == 1014);
  CHECK(encloses(c13.lambda1, "1.107495654982876992029643"));

  // deterministic: the same call rebuilds the identical certificate
  CyclicAlgebraCertificate again = frobenius_prime_search(5, 2, cfg);
  CHECK(again.q == c5.q);
  CHECK(again.residue_factor == c5.residue_factor);
  CHECK(again.witness == c5.witness);
  CHECK(again.lambda1 == c5.lambda1);
  CHECK(again.algebra_descriptor == c5.algebra_descriptor);

  RunConfig tight = cfg;
  tight.q_bound = 7;  // 2, 3, 7 are all rejected for p = 5, k = 2
  CHECK_THROWS_AS(frobenius_prime_search(5, 2, tight), BoundExhausted);
}

TEST_CASE("frobenius prime search with an integer radicand") {
  RunConfig cfg = default_config();

  CyclicAlgebraCertificate v5 = frobenius_prime_search_radicand(5, Int(2), cfg);
  CHECK(v5.p == 5);
  CHECK(v5.k == 0);
  CHECK(v5.radicand == 2);
  CHECK(v5.q == 11);  // q = 2 divides the radicand, 3 and 7 give trivial witnesses
  CHECK(v5.f == 1);
  CHECK(v5.gamma_residue == P({2}));
  CHECK(v5.witness == P({4}));
  CHECK(v5.min_poly_over_Q == P({-2, 0, 0, 0, 0, 1}));  // x^5 - 2
  CHECK_FALSE(v5.invertible);
  CHECK(encloses(v5.lambda1, "1.319507910772894259374002"));

  CHECK(frobenius_prime_search_radicand(7, Int(2), cfg).q == 29);
  CHECK(frobenius_prime_search_radicand(11, Int(2), cfg).q == 23);
  CHECK(frobenius_prime_search_radicand(13, Int(2), cfg).q == 53);

  // the p = 3 case is allowed for the radicand variant
  CyclicAlgebraCertificate v3 = frobenius_prime_search_radicand(3, Int(2), cfg);
  CHECK(v3.q == 7);
  CHECK(v3.residue_factor == P({3, 1}));
  CHECK(v3.witness == P({4}));

  // perfect p-th powers collapse the Kummer layer and are rejected up front
  CHECK_THROWS_AS(frobenius_prime_search_radicand(3, Int(8), cfg), std::invalid_argument);
  CHECK_THROWS_AS(frobenius_prime_search_radicand(5, Int(32), cfg), std::invalid_argument);
  CHECK_THROWS_AS(frobenius_prime_search_radicand(5, Int(1), cfg), std::invalid_argument);
}

TEST_CASE("power-residue witness agrees with brute-force root enumeration") {
  // for prime p, x^p - gamma is irreducible over F_{q^f} exactly when gamma
  // has no p-th root there; the witness must match the exhaustive answer on
  // accepted and rejected characteristics alike
  for (auto [p, k] : std::vector<std::pair<int64_t, int64_t>>{{5, 2}, {7, 3}, {11, 1}, {13, 1}}) {
    for (int64_t q : {2, 3, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
      if (q == p) continue;
      FrobeniusProbe pr = frobenius_probe(p, k, q);
      Int size = int_pow(Int(q), static_cast<uint64_t>(pr.f));
      if (size > 1000000) continue;
      bool absent = pth_power_absent_brute_force(p, q, pr.residue_factor,
                                                 pr.gamma_residue, 1000000);
      CHECK_MESSAGE(absent == pr.accepted,
                    "p=", p, " k=", k, " q=", q, " witness and brute force disagree");
    }
  }

  for (int64_t p : {5, 7, 11, 13}) {
    for (int64_t q : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53}) {
      if (q == p) continue;
      FrobeniusProbe pr = frobenius_probe_radicand(p, Int(2), q);
      Int size = int_pow(Int(q), static_cast<uint64_t>(pr.f));
      if (size > 1000000) continue;
      bool absent = pth_power_absent_brute_force(p, q, pr.residue_factor,
                                                 pr.gamma_residue, 1000000);
      CHECK_MESSAGE(absent == pr.accepted,
                    "p=", p, " a=2 q=", q, " witness and brute force disagree");
    }
  }

  // gamma = 1 is everyone's p-th power
  CHECK_FALSE(pth_power_absent_brute_force(5, 11, P({2, 1}), P({1}), 1000000));
  // enumeration must refuse fields larger than the cap
  CHECK_THROWS_AS(pth_power_absent_brute_force(5, 3, frobenius_probe(5, 1, 3).residue_factor,
                                               P({2}), 50),
                  std::invalid_argument);
}

TEST_CASE("lambda1 sequence is certified decreasing toward 1") {
  std::vector<int64_t> ps = {5, 7, 11, 13, 17, 19};
  std::vector<Enclosure> seq = lambda1_sequence(ps, kTol, kPrecCap);
  REQUIRE(seq.size() == 6);

  CHECK(encloses(seq[0], "1.212257992415468508091171"));
  CHECK(encloses(seq[1], "1.183228191702276476478869"));
  CHECK(encloses(seq[2], "1.125816472983790544555519"));
  CHECK(encloses(seq[3], "1.107495654982876992029643"));
  CHECK(encloses(seq[4], "1.082774049592073554125655"));
  CHECK(encloses(seq[5], "1.074136763920375118632651"));

  for (size_t i = 0; i + 1 < seq.size(); ++i) CHECK(seq[i + 1].hi() < seq[i].lo());
  for (const Enclosure& e : seq) {
    CHECK(e.lo() > 1);
    CHECK(e.rad() <= kTol);
  }

  CHECK_THROWS_AS(lambda1_sequence({7, 5}, kTol, kPrecCap), std::invalid_argument);
  CHECK_THROWS_AS(cyclic_lambda1(3, kTol, kPrecCap), std::invalid_argument);
  CHECK_THROWS_AS(cyclic_lambda1(9, kTol, kPrecCap), std::invalid_argument);
}

TEST_CASE("radicand lambda1 values and the epsilon thresholds") {
  CHECK(encloses(radicand_lambda1(5, Int(2), kTol, kPrecCap),
                 "1.319507910772894259374002"));
  CHECK(encloses(radicand_lambda1(11, Int(2), kTol, kPrecCap),
                 "1.134312522195462580992498"));
  CHECK(encloses(radicand_lambda1(29, Int(2), kTol, kPrecCap),
                 "1.048964255323034497136890"));
  CHECK(radicand_lambda1(29, Int(2), kTol, kPrecCap).lo() > 1);
  CHECK_THROWS_AS(radicand_lambda1(3, Int(8), kTol, kPrecCap), std::invalid_argument);

  // smallest primes with 2^(2/p) certified below 1.5, 1.1, 1.05
  CHECK(smallest_prime_below_eps(Int(2), Rat(1, 2), kTol, kPrecCap) == 5);
  CHECK(smallest_prime_below_eps(Int(2), Rat(1, 10), kTol, kPrecCap) == 17);
  CHECK(smallest_prime_below_eps(Int(2), Rat(1, 20), kTol, kPrecCap) == 29);
  // a generous eps admits p = 3 immediately
  CHECK(smallest_prime_below_eps(Int(2), Rat(2), kTol, kPrecCap) == 3);
  // perfect-power exponents are skipped, not fatal: 8 = 2^3 rules out p = 3
  CHECK(smallest_prime_below_eps(Int(8), Rat(1), kTol, kPrecCap) == 7);
}

TEST_CASE("anti-involution bookkeeping on the monomial basis") {
  CHECK(anti_involution_self_check(3));
  CHECK(anti_involution_self_check(5));
  CHECK(anti_involution_self_check(7));
  CHECK(anti_involution_self_check(11));
  CHECK_THROWS_AS(anti_involution_self_check(4), std::invalid_argument);
}
