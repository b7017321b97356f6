#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "dyndeg/classify.hpp"
#include "dyndeg/errors.hpp"
#include "dyndeg/poly.hpp"

using namespace dyndeg;

namespace {

IntPolynomial P(std::vector<Int> c) { return IntPolynomial(std::move(c)); }

const Rat kTol = Rat(1, 1000000000);
const int kPrecCap = 4096;

const IntPolynomial kLehmer = P({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
const IntPolynomial kSalem4 = P({1, -1, -1, -1, 1});
const IntPolynomial kSalem6 = P({1, 0, -1, -1, -1, 0, 1});
const IntPolynomial kSalem8 = P({1, 0, 0, -1, -1, -1, 0, 0, 1});
const IntPolynomial kSalem4Sq = P({1, -3, 1, -3, 1}); // roots are squares of kSalem4's

} // namespace

TEST_SUITE("classify") {

TEST_CASE("kronecker accepts cyclotomic products with correct orders") {
  auto k5 = kronecker_test(cyclotomic(5));
  REQUIRE(k5.all_roots_of_unity);
  CHECK(k5.orders == std::vector<int>{5, 5, 5, 5});

  auto mix = kronecker_test(cyclotomic(3) * cyclotomic(4));
  REQUIRE(mix.all_roots_of_unity);
  CHECK(mix.orders == std::vector<int>{3, 3, 4, 4});

  auto rep = kronecker_test(cyclotomic(6) * cyclotomic(6) * cyclotomic(1));
  REQUIRE(rep.all_roots_of_unity);
  CHECK(rep.orders == std::vector<int>{1, 6, 6, 6, 6});

  for (unsigned n : {1u, 2u, 8u, 15u, 36u, 99u, 100u}) {
    auto r = kronecker_test(cyclotomic(n));
    REQUIRE(r.all_roots_of_unity);
    CHECK(static_cast<int>(r.orders.size()) == cyclotomic(n).degree());
    for (int o : r.orders) CHECK(o == static_cast<int>(n));
  }
}

TEST_CASE("kronecker rejects with exact witnesses") {
  auto golden = kronecker_test(P({1, -3, 1}));
  CHECK(!golden.all_roots_of_unity);
  CHECK(golden.failure_reason.find("0 of 2") != std::string::npos);

  auto lehmer = kronecker_test(kLehmer);
  CHECK(!lehmer.all_roots_of_unity);
  CHECK(lehmer.failure_reason.find("8 of 10") != std::string::npos);

  auto zero = kronecker_test(P({0, 0, 1}));
  CHECK(!zero.all_roots_of_unity);
  CHECK(zero.failure_reason.find("zero") != std::string::npos);

  CHECK_THROWS_AS((void)kronecker_test(P({1, 2})), EligibilityError);
}

TEST_CASE("power-iteration route agrees with direct matching") {
  CHECK(root_of_unity_order_by_iteration(cyclotomic(12), 100) == 12);
  CHECK(root_of_unity_order_by_iteration(cyclotomic(1), 100) == 1);
  CHECK(root_of_unity_order_by_iteration(cyclotomic(2), 100) == 2);
  CHECK(root_of_unity_order_by_iteration(cyclotomic(7), 100) == 7);
  CHECK(root_of_unity_order_by_iteration(cyclotomic(81), 200) == 81);
  // coefficient growth disproves root-of-unity status quickly
  CHECK(root_of_unity_order_by_iteration(P({1, -3, 1}), 1000) == 0);
  CHECK(root_of_unity_order_by_iteration(kSalem4, 1000) == 0);

  std::mt19937 rng(20240918);
  for (int trial = 0; trial < 12; ++trial) {
    unsigned n = 1 + rng() % 40;
    auto matched = kronecker_test(cyclotomic(n));
    REQUIRE(matched.all_roots_of_unity);
    CHECK(matched.orders.front() == static_cast<int>(n));
    CHECK(root_of_unity_order_by_iteration(cyclotomic(n), 200) == static_cast<int>(n));
  }
}

TEST_CASE("salem recognition on the fixture set") {
  struct Fx {
    IntPolynomial p;
    double lambda;
  };
  std::vector<Fx> fixtures = {
      {kSalem4, 1.722083805739043},
      {kSalem6, 1.4012683679398554},
      {kSalem8, 1.2806381562677585},
      {kLehmer, 1.176280818259916},
      {kSalem4Sq, 2.9655726339886843},
  };
  for (const auto& fx : fixtures) {
    SalemResult r = salem_check(fx.p, kTol, kPrecCap);
    REQUIRE(r.is_salem);
    REQUIRE(r.lambda.has_value());
    CHECK(r.lambda->approx() == doctest::Approx(fx.lambda).epsilon(1e-10));
    CHECK((r.lambda->hi() - r.lambda->lo()).convert_to<double>() <= 1e-9);
  }
}

TEST_CASE("salem rejection reasons") {
  CHECK(salem_check(cyclotomic(12), kTol, kPrecCap).reason.find("2 real roots") !=
        std::string::npos);
  CHECK(!salem_check(P({1, -3, 1}), kTol, kPrecCap).is_salem);  // degree 2
  CHECK(!salem_check(P({1, 0, -1, 0, 0, 1}), kTol, kPrecCap).is_salem); // odd-degree
  CHECK(salem_check(P({1, 0, 2, 0, 1}), kTol, kPrecCap).reason.find("reducible") !=
        std::string::npos);
  CHECK(salem_check(P({-1, -1, 0, 0, 1}), kTol, kPrecCap).reason.find("palindromic") !=
        std::string::npos);
  CHECK(!salem_check(P({2, -3, -3, -3, 2}), kTol, kPrecCap).is_salem); // non-monic
  // Salem squares remain Salem: the power transform of a fixture
  SalemResult sq = salem_check(root_power_transform(kSalem6, 2), kTol, kPrecCap);
  CHECK(sq.is_salem);
  CHECK(sq.lambda->approx() == doctest::Approx(1.4012683679398554 * 1.4012683679398554)
                                   .epsilon(1e-9));
}

TEST_CASE("pisot recognition") {
  PisotResult two = pisot_check(P({-2, 1}), kTol, kPrecCap);
  REQUIRE(two.is_pisot);
  CHECK(two.lambda->is_exact());
  CHECK(two.lambda->approx() == doctest::Approx(2.0));

  PisotResult phi = pisot_check(P({-1, -1, 1}), kTol, kPrecCap);
  REQUIRE(phi.is_pisot);
  CHECK(phi.lambda->approx() == doctest::Approx(1.6180339887498949).epsilon(1e-10));

  PisotResult plastic = pisot_check(P({-1, -1, 0, 1}), kTol, kPrecCap);
  REQUIRE(plastic.is_pisot);
  CHECK(plastic.lambda->approx() == doctest::Approx(1.3247179572447454).epsilon(1e-10));

  PisotResult golden2 = pisot_check(P({1, -3, 1}), kTol, kPrecCap);
  REQUIRE(golden2.is_pisot);
  CHECK(golden2.lambda->approx() == doctest::Approx(2.618033988749895).epsilon(1e-10));

  CHECK(pisot_check(kSalem4, kTol, kPrecCap).reason.find("unit circle") != std::string::npos);
  CHECK(!pisot_check(P({-2, 0, 1}), kTol, kPrecCap).is_pisot); // conjugate -sqrt2 outside
  CHECK(!pisot_check(P({-1, 1}), kTol, kPrecCap).is_pisot);    // root 1 not > 1
  CHECK(!pisot_check(P({2, 3, 1}), kTol, kPrecCap).is_pisot);  // reducible
}

TEST_CASE("realization eligibility") {
  EligibilityResult s4 = main_theorem_eligible(kSalem4);
  CHECK(s4.eligible);
  CHECK(s4.real_count == 2);
  CHECK(s4.unit_count == 2);
  CHECK(s4.constant_pm1);

  EligibilityResult phi7 = main_theorem_eligible(cyclotomic(7));
  CHECK(phi7.eligible);
  CHECK(phi7.real_count == 0);
  CHECK(phi7.unit_count == 6);

  // two non-real roots of modulus != 1
  EligibilityResult bad = main_theorem_eligible(P({-1, 0, 1, 0, 1}));
  CHECK(!bad.eligible);
  CHECK(bad.reason.find("neither real nor on the unit circle") != std::string::npos);

  EligibilityResult nounit = main_theorem_eligible(P({1, -3, 1}));
  CHECK(!nounit.eligible);
  CHECK(nounit.reason.find("no unit-circle root") != std::string::npos);

  CHECK(!main_theorem_eligible(P({-1, 0, 0, 0, 1})).eligible); // x^4-1 reducible
  EligibilityResult lin = main_theorem_eligible(P({-1, 1}));
  CHECK(lin.eligible); // x-1: the double-counted root 1 is handled exactly
  CHECK(lin.real_count == 1);
  CHECK(lin.unit_count == 1);
}

TEST_CASE("square-root minimal polynomial dichotomy") {
  // the classic fixtures all stay irreducible after the substitution
  for (const auto* p : {&kSalem4, &kSalem6, &kSalem8, &kLehmer}) {
    SqrtMinPolyResult r = sqrt_min_poly(*p, kTol, kPrecCap);
    CHECK(r.branch == SqrtBranch::Whole);
    CHECK(r.q == p->stretch(2));
    CHECK(irreducible_over_rationals(r.q));
    // the other branch must fail
    CHECK(!(r.q * r.q.negate_variable() == p->stretch(2)));
  }
  // squares of Salem roots split back to the original polynomial
  SqrtMinPolyResult split = sqrt_min_poly(kSalem4Sq, kTol, kPrecCap);
  CHECK(split.branch == SqrtBranch::Split);
  CHECK(split.q == kSalem4);
  CHECK(split.q * split.q.negate_variable() == kSalem4Sq.stretch(2));
  CHECK(!(split.q == kSalem4Sq.stretch(2)));

  CHECK_THROWS_AS((void)sqrt_min_poly(cyclotomic(12), kTol, kPrecCap), EligibilityError);
}

TEST_CASE("n-th root conjugate witness") {
  NthRootWitness w1 = nth_root_conjugate_witness(kSalem4, 1, kTol, kPrecCap);
  CHECK(w1.s_poly == kSalem4);
  CHECK(w1.salem_factor == kSalem4);
  CHECK(w1.unit_count == 2);

  IntPolynomial q = sqrt_min_poly(kSalem4, kTol, kPrecCap).q;
  NthRootWitness w2 = nth_root_conjugate_witness(q, 2, kTol, kPrecCap);
  CHECK(w2.salem_factor == kSalem4);
  CHECK(w2.unit_count >= 1);

  CHECK_THROWS_AS((void)nth_root_conjugate_witness(P({1, -3, 1}), 2, kTol, kPrecCap),
                  EligibilityError);
}

TEST_CASE("classification tags") {
  PolynomialClass c1 = classify(cyclotomic(3) * cyclotomic(8), kTol, kPrecCap);
  CHECK(c1.tag == PolynomialClass::Tag::RootsOfUnity);
  CHECK(c1.orders == std::vector<int>{3, 3, 8, 8, 8, 8});

  CHECK(classify(kLehmer, kTol, kPrecCap).tag == PolynomialClass::Tag::Salem);
  CHECK(classify(P({-1, -1, 1}), kTol, kPrecCap).tag == PolynomialClass::Tag::Pisot);
  // eligible but neither Salem nor Pisot: power transform with several unit pairs
  PolynomialClass elig = classify(cyclotomic(5), kTol, kPrecCap);
  CHECK(elig.tag == PolynomialClass::Tag::RootsOfUnity);
  // totally real with unit constant term
  PolynomialClass tru = classify(P({-1, 1, 1}), kTol, kPrecCap);
  CHECK(tru.tag == PolynomialClass::Tag::TotallyRealUnit);
  CHECK(tru.real_count == 2);
  // x^2-3x+1 is Pisot (2.618 with conjugate 0.382)
  CHECK(classify(P({1, -3, 1}), kTol, kPrecCap).tag == PolynomialClass::Tag::Pisot);
  // x^2-5x+1: root 4.79, conjugate 0.208 -> Pisot as well; x^2-3 -> Other
  CHECK(classify(P({-3, 0, 1}), kTol, kPrecCap).tag == PolynomialClass::Tag::Other);
  CHECK(classify(P({2, 0, 1}), kTol, kPrecCap).tag == PolynomialClass::Tag::Other);
  CHECK(classify(P({3, 2}), kTol, kPrecCap).tag == PolynomialClass::Tag::Other);
  CHECK(classify(P({0, 1}), kTol, kPrecCap).tag == PolynomialClass::Tag::Other);

  // a Salem polynomial is also eligibility-positive; the more specific tag wins
  EligibilityResult se = main_theorem_eligible(kSalem4);
  CHECK(se.eligible);
  CHECK(classify(kSalem4, kTol, kPrecCap).tag == PolynomialClass::Tag::Salem);
}

} // TEST_SUITE
