#include <map>
#include <random>

#include "doctest.h"
#include "dyndeg/factor.hpp"
#include "dyndeg/fq.hpp"
#include "dyndeg/poly.hpp"

using namespace dyndeg;

namespace {

IntPolynomial P(std::vector<long long> c) {
  std::vector<Int> v(c.size());
  for (size_t i = 0; i < c.size(); ++i) v[i] = Int(c[i]);
  return IntPolynomial(std::move(v));
}

IntPolynomial rebuild(const RationalFactorization& fz) {
  IntPolynomial p = IntPolynomial::constant(fz.content);
  for (const auto& [f, m] : fz.factors)
    for (unsigned i = 0; i < m; ++i) p = p * f;
  return p;
}

} // namespace

TEST_SUITE("factor") {

TEST_CASE("mod-p polynomial arithmetic") {
  uint64_t p = 19;
  FpPoly a = fp::from_int_poly(P({1, 1, 1, 1, 1}), p);  // x^4+x^3+x^2+x+1
  FpPoly b = fp::from_int_poly(P({-1, 1}), p);
  FpPoly prod = fp::mul(a, b, p);
  CHECK(fp::degree(prod) == 5);
  CHECK(fp::eval(prod, 3, p) == ((fp::eval(a, 3, p) * fp::eval(b, 3, p)) % p));
  FpPoly q, r;
  fp::divmod(prod, a, q, r, p);
  CHECK(fp::is_zero(r));
  CHECK(q == b);
  CHECK(fp::gcd(prod, a, p) == fp::monic(a, p));
  FpPoly g, s, t;
  fp::ext_gcd(a, b, g, s, t, p);
  CHECK(fp::is_one(g));
  FpPoly check = fp::add(fp::mul(s, a, p), fp::mul(t, b, p), p);
  CHECK(fp::is_one(check));
  FpPoly pw = fp::powmod(fp::x(), Int(19 * 19 * 19 * 19), a, p);
  CHECK(pw == fp::rem(fp::x(), a, p));  // x^(p^4) = x mod a since a | x^5 - 1 pattern splits
}

TEST_CASE("mod-p factorization") {
  uint64_t p = 19;
  // ord_5(19) = 2, so x^4+x^3+x^2+x+1 splits into two quadratics mod 19
  FpPoly a = fp::from_int_poly(P({1, 1, 1, 1, 1}), p);
  auto degs = fp::factor_degrees(a, p);
  CHECK(degs == std::vector<unsigned>({2, 2}));
  auto facs = fp::factor(a, p);
  REQUIRE(facs.size() == 2);
  FpPoly prod = fp::mul(facs[0].first, facs[1].first, p);
  CHECK(prod == a);
  // squarefree decomposition mod p with a repeated factor
  FpPoly b2 = fp::from_int_poly(P({1, 1}), p);
  FpPoly sq = fp::mul(fp::mul(b2, b2, p), fp::from_int_poly(P({2, 1}), p), p);
  auto layers = fp::squarefree_decomp(sq, p);
  REQUIRE(layers.size() == 2);
  CHECK(layers[0].second == 1);
  CHECK(layers[1].second == 2);
  // equal-degree splitting over F_2
  uint64_t p2 = 2;
  FpPoly f7 = fp::from_int_poly(P({1, 1, 1, 1, 1, 1, 1}), p2);  // x^6+...+1, two cubics mod 2
  auto d2 = fp::factor_degrees(f7, p2);
  CHECK(d2 == std::vector<unsigned>({3, 3}));
  auto split = fp::factor(f7, p2);
  REQUIRE(split.size() == 2);
  CHECK(fp::mul(split[0].first, split[1].first, p2) == f7);
}

TEST_CASE("rational roots") {
  IntPolynomial f = P({-1, 2}) * P({-3, 1}) * P({1, 0, 1});
  auto roots = rational_roots(f);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == Rat(1, 2));
  CHECK(roots[1] == Rat(3));
  CHECK(rational_roots(P({1, 0, 1})).empty());
  auto rz = rational_roots(P({0, 0, 1, 1}));  // x^2 (x+1)
  REQUIRE(rz.size() == 2);
  CHECK(rz[0] == Rat(-1));
  CHECK(rz[1] == Rat(0));
  // constant term too large for divisor enumeration: falls back to factorization
  IntPolynomial big = P({-2000003, 1}) * P({-1000003, 1});
  auto rbig = rational_roots(big);
  REQUIRE(rbig.size() == 2);
  CHECK(rbig[0] == Rat(1000003));
  CHECK(rbig[1] == Rat(2000003));
}

TEST_CASE("factorization of named polynomials") {
  auto fz = factor_over_rationals(P({-1, 0, 0, 0, 1}));  // x^4 - 1
  REQUIRE(fz.factors.size() == 3);
  CHECK(fz.content == 1);
  CHECK(fz.factors[0].first == P({-1, 1}));
  CHECK(fz.factors[1].first == P({1, 1}));
  CHECK(fz.factors[2].first == P({1, 0, 1}));

  auto fc = factor_over_rationals(P({-6, 0, 6}));
  CHECK(fc.content == 6);
  REQUIRE(fc.factors.size() == 2);

  auto fneg = factor_over_rationals(P({1, -2}));
  CHECK(fneg.content == -1);
  REQUIRE(fneg.factors.size() == 1);
  CHECK(fneg.factors[0].first == P({-1, 2}));

  // x^10 + x^5 + 1 = cyclotomic(3) * cyclotomic(15)
  IntPolynomial ten = P({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1});
  auto ft = factor_over_rationals(ten);
  REQUIRE(ft.factors.size() == 2);
  CHECK(ft.factors[0].first == cyclotomic(3));
  CHECK(ft.factors[1].first == cyclotomic(15));

  // multiplicities
  IntPolynomial rep = P({1, 1, 1}) * P({1, 1, 1}) * P({-2, 1});
  auto fr = factor_over_rationals(rep);
  REQUIRE(fr.factors.size() == 2);
  CHECK(fr.factors[0].second == 1);
  CHECK(fr.factors[1].first == P({1, 1, 1}));
  CHECK(fr.factors[1].second == 2);

  // non-monic
  IntPolynomial nm = P({-1, 2}) * P({2, 3}) * P({1, 1, 1});
  auto fn = factor_over_rationals(nm);
  CHECK(rebuild(fn) == nm);
  REQUIRE(fn.factors.size() == 3);
}

TEST_CASE("irreducibility") {
  CHECK(irreducible_over_rationals(P({-2, 0, 1})));
  CHECK(irreducible_over_rationals(P({1, 1})));
  CHECK(irreducible_over_rationals(P({1, 0, 0, 0, 1})));   // x^4 + 1, reducible mod every prime
  CHECK(!irreducible_over_rationals(P({4, 0, 0, 0, 1}))); // x^4 + 4
  auto f44 = factor_over_rationals(P({4, 0, 0, 0, 1}));
  REQUIRE(f44.factors.size() == 2);
  CHECK(f44.factors[0].first == P({2, -2, 1}));
  CHECK(f44.factors[1].first == P({2, 2, 1}));
  CHECK(irreducible_over_rationals(P({-2, 0, 0, 0, 0, 1})));  // x^5 - 2
  CHECK(irreducible_over_rationals(cyclotomic(105)));
  // Lehmer polynomial
  IntPolynomial lehmer = P({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
  CHECK(irreducible_over_rationals(lehmer));
  // Swinnerton-Dyer style product: (x^2-2)(x^2-3)(x^2-6) has only degree <= 2 factors
  IntPolynomial sd = P({-2, 0, 1}) * P({-3, 0, 1}) * P({-6, 0, 1});
  auto fsd = factor_over_rationals(sd);
  CHECK(fsd.factors.size() == 3);
  CHECK(!irreducible_over_rationals(P({1, 2, 1})));
  CHECK(!irreducible_over_rationals(IntPolynomial::constant(5)));
}

TEST_CASE("randomized factor recovery") {
  std::vector<IntPolynomial> pool = {
      P({-1, 1}), P({1, 1}), P({-2, 1}), P({1, 0, 1}), P({-2, 0, 1}), P({-1, -1, 1}),
      cyclotomic(5), cyclotomic(7), cyclotomic(8), cyclotomic(12), P({-1, 2}), P({1, 3}),
  };
  std::mt19937_64 rng(20240915);
  for (int trial = 0; trial < 40; ++trial) {
    IntPolynomial p = IntPolynomial::constant(1);
    std::map<size_t, unsigned> expect;
    int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) {
      size_t pick = rng() % pool.size();
      unsigned mult = 1 + static_cast<unsigned>(rng() % 2);
      for (unsigned j = 0; j < mult; ++j) p = p * pool[pick];
      expect[pick] += mult;
    }
    auto fz = factor_over_rationals(p);
    CHECK(rebuild(fz) == p);
    unsigned total_deg = 0;
    for (const auto& [f, m] : fz.factors) {
      CHECK(irreducible_over_rationals(f));
      total_deg += static_cast<unsigned>(f.degree()) * m;
    }
    CHECK(total_deg == static_cast<unsigned>(p.degree()));
  }
}

} // TEST_SUITE
