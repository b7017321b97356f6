#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "dyndeg/classify.hpp"
#include "dyndeg/config.hpp"
#include "dyndeg/cyclic.hpp"
#include "dyndeg/minimal.hpp"
#include "dyndeg/poly.hpp"
#include "dyndeg/realize.hpp"
#include "dyndeg/serialize.hpp"
#include "dyndeg/spectrum.hpp"

using namespace dyndeg;

namespace {

IntPolynomial P(std::vector<Int> c) { return IntPolynomial(std::move(c)); }

const IntPolynomial kLehmer =
    P({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
const IntPolynomial kSalem4 = P({1, -1, -1, -1, 1});

} // namespace

TEST_CASE("polynomial file text round-trips exactly") {
  std::vector<IntPolynomial> samples = {
      P({1}),
      P({-7, 0, 3}),
      P({Int("-123456789012345678901234567890"), 1}),
      kLehmer,
  };
  for (const auto& p : samples) {
    IntPolynomial back = parse_poly_text(poly_file_text(p));
    CHECK(back == p);
    CHECK(poly_file_text(back) == poly_file_text(p));
  }
}

TEST_CASE("polynomial file parser handles comments, blanks and signs") {
  std::string text =
      "# minimal polynomial of the golden ratio\n"
      "\n"
      "-1   # constant term\n"
      "  -1\n"
      "+1\n";
  IntPolynomial p = parse_poly_text(text);
  CHECK(p == P({-1, -1, 1}));

  CHECK_THROWS_AS(parse_poly_text(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly_text("# only a comment\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly_text("1\nx\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly_text("1\n2 3\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly_text("1.5\n"), std::invalid_argument);

  // the line number appears in the message
  try {
    parse_poly_text("1\n\nbad\n");
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("polynomial files round-trip through disk") {
  std::string path = "/tmp/dyndeg_test_poly.txt";
  write_poly_file(path, kLehmer);
  IntPolynomial back = read_poly_file(path);
  CHECK(back == kLehmer);
  std::remove(path.c_str());

  CHECK_THROWS_AS(read_poly_file("/tmp/dyndeg_missing_poly.txt"), std::invalid_argument);
}

TEST_CASE("polynomial json keeps constant-first decimal strings") {
  Json j = poly_json(P({-2, 0, 1}));
  CHECK(j["coeffs"][0] == "-2");
  CHECK(j["coeffs"][1] == "0");
  CHECK(j["coeffs"][2] == "1");
  CHECK(poly_from_json(j) == P({-2, 0, 1}));
  CHECK(poly_json(poly_from_json(j)).dump() == j.dump());
}

TEST_CASE("enclosure json round-trips bit-exactly") {
  RunConfig cfg;
  Enclosure exact = Enclosure::exact_point(Rat(7, 4), 12);
  Enclosure back = enclosure_from_json(enclosure_json(exact));
  CHECK(back == exact);

  SalemResult s = salem_check(kLehmer, cfg.tolerance, cfg.precision_cap);
  REQUIRE(s.is_salem);
  REQUIRE(s.lambda.has_value());
  Json j = enclosure_json(*s.lambda);
  Enclosure round = enclosure_from_json(j);
  CHECK(round == *s.lambda);
  CHECK(enclosure_json(round).dump() == j.dump());
  CHECK(j["mid"].get<std::string>().substr(0, 7) == "1.17628");
}

TEST_CASE("algebraic value json round-trips") {
  RunConfig cfg;
  AlgebraicValue v = first_dd_of_poly(kSalem4, cfg.tolerance, cfg.precision_cap);
  Json j = algebraic_value_json(v);
  AlgebraicValue back = algebraic_value_from_json(j);
  CHECK(back.min_poly == v.min_poly);
  CHECK(back.root_index == v.root_index);
  CHECK(back.value == v.value);
  CHECK(algebraic_value_json(back).dump() == j.dump());
}

TEST_CASE("classification output carries class, counts and enclosure") {
  RunConfig cfg;
  PolynomialClass c = classify(kLehmer, cfg.tolerance, cfg.precision_cap);
  Json j = classification_json(kLehmer, c);
  CHECK(j["class"] == "salem");
  CHECK(j["real_count"] == 2);
  CHECK(j.contains("lambda"));

  std::string text = classification_text(kLehmer, c);
  CHECK(text.find("class: salem") != std::string::npos);
  CHECK(text.find("lambda: mid=1.17628") != std::string::npos);

  IntPolynomial cyc = cyclotomic(5) * cyclotomic(1);
  PolynomialClass u = classify(cyc, cfg.tolerance, cfg.precision_cap);
  Json ju = classification_json(cyc, u);
  CHECK(ju["class"] == "roots-of-unity");
  CHECK(ju["orders"].size() == 5); // one order per root
  std::string tu = classification_text(cyc, u);
  CHECK(tu.find("orders:") != std::string::npos);
}

TEST_CASE("spectrum output marks the exact-1 entries") {
  RunConfig cfg;
  DynamicalSpectrum s = spectrum_from_min_poly(kSalem4, 4, cfg.tolerance, cfg.precision_cap);
  Json j = spectrum_json(s);
  REQUIRE(j["lambdas"].size() == 5);
  CHECK(j["lambdas"][0]["exact_one"] == true);
  CHECK(j["lambdas"][1]["exact_one"] == false);
  CHECK(j["lambdas"][1]["k"] == 1);

  std::string text = spectrum_text(s);
  CHECK(text.find("g = 4") != std::string::npos);
  CHECK(text.find("exactly 1") != std::string::npos);
  CHECK(text.find("yes") != std::string::npos);
}

TEST_CASE("fixed point reports serialize") {
  AnalyticRepMatrix a = AnalyticRepMatrix::scalar(2, GaussianRat{Rat(2), Rat(1)});
  FixConsistencyReport fr = fix_count_consistency(a, a.realification());
  Json jf = fix_consistency_json(fr);
  CHECK(jf["ok"] == true);
  CHECK(jf["analytic_norm"] == jf["rational_det"]);

  ShiftedFixReport sr = shifted_fix_identity(kSalem4, 2, Int(3));
  Json js = shifted_fix_json(kSalem4, 2, Int(3), sr);
  CHECK(js["ok"] == true);
  CHECK(js["n"] == "3");
  CHECK(js["det_value"] == js["poly_value"]);
}

TEST_CASE("realization certificate json round-trips byte-identically") {
  RunConfig cfg;
  RealizationCertificate cert = realize_type2(kSalem4, cfg);
  Json j = realization_json(cert);
  CHECK(j["type"] == "type-2");
  CHECK(j["record"] == "realization-certificate");

  RealizationCertificate back = realization_from_json(j);
  CHECK(realization_json(back).dump() == j.dump());
  CHECK(back.input_poly == cert.input_poly);
  CHECK(back.g == cert.g);
  CHECK(back.trace_field_poly == cert.trace_field_poly);
  CHECK(back.a_repr == cert.a_repr);
  CHECK(back.gamma_w == cert.gamma_w);
  CHECK(back.division.mode == cert.division.mode);
  CHECK(back.pell.X == cert.pell.X);
  CHECK(back.pell.Z == cert.pell.Z);
  CHECK(back.exponent_N == cert.exponent_N);
  CHECK(back.c_x == cert.c_x);
  CHECK(back.c_squared_conjugates.size() == cert.c_squared_conjugates.size());

  // the round-tripped certificate still verifies
  VerificationReport report = verify_certificate(back, cfg);
  CHECK(report.ok);

  std::string text = realization_text(cert);
  CHECK(text.find("type-2") != std::string::npos);
  CHECK(text.find("pell:") != std::string::npos);
  CHECK(text.find("c^2 at the real embeddings") != std::string::npos);

  Json jv = verification_json(report);
  CHECK(jv["ok"] == true);
  CHECK(jv["checks"].size() == report.checks.size());
  std::string tv = verification_text(report);
  CHECK(tv.find("verification: PASS") != std::string::npos);
}

TEST_CASE("cyclic certificate json round-trips byte-identically") {
  RunConfig cfg;
  CyclicAlgebraCertificate cert = frobenius_prime_search(5, 1, cfg);
  Json j = cyclic_json(cert);
  CHECK(j["p"] == 5);
  CHECK(j["record"] == "cyclic-algebra-certificate");

  CyclicAlgebraCertificate back = cyclic_from_json(j);
  CHECK(cyclic_json(back).dump() == j.dump());
  CHECK(back.q == cert.q);
  CHECK(back.f == cert.f);
  CHECK(back.residue_factor == cert.residue_factor);
  CHECK(back.witness == cert.witness);
  CHECK(back.lambda1 == cert.lambda1);

  std::string text = cyclic_text(cert);
  CHECK(text.find("degree p = 5") != std::string::npos);
  CHECK(text.find("residue field: F_") != std::string::npos);
  // residue-field elements print in the residue generator t
  CHECK(text.find("(t") != std::string::npos);

  CyclicAlgebraCertificate rad = frobenius_prime_search_radicand(3, Int(2), cfg);
  Json jr = cyclic_json(rad);
  CHECK(cyclic_json(cyclic_from_json(jr)).dump() == jr.dump());
  std::string tr = cyclic_text(rad);
  CHECK(tr.find("gamma = 2 (integer radicand)") != std::string::npos);
}

TEST_CASE("ladder, minimal and candidate tables render with aligned columns") {
  RunConfig cfg;
  MinimalFirstDD m = minimal_first_dd(2, cfg);
  Json jm = minimal_json(m);
  CHECK(jm["g"] == 2);
  CHECK(jm["value"]["value"]["mid"].get<std::string>().substr(0, 6) == "2.6180");
  CHECK(jm["ladder"]["entries"].size() == m.ladder.entries.size());
  for (const auto& row : jm["ladder"]["entries"]) CHECK(row["g"] == 2);

  std::string tm = minimal_text(m);
  CHECK(tm.find("g = 2") != std::string::npos);
  CHECK(tm.find("attained by:") != std::string::npos);
  CHECK(tm.find("lambda1") != std::string::npos);
  CHECK(tm.find("divisibility") != std::string::npos);
  CHECK(tm.find("type-1") != std::string::npos);

  CandidateSet cs = enumerate_bounded(2, Rat(21, 20), true, cfg);
  Json jc = candidate_set_json(cs);
  CHECK(jc["search_space"] == "2106");
  CHECK(jc["polys"].size() == 19);
  std::string tc = candidate_set_text(cs);
  CHECK(tc.find("search space: 2106") != std::string::npos);
  CHECK(tc.find("survivors: 19") != std::string::npos);
}

TEST_CASE("structured output is deterministic") {
  RunConfig cfg;
  RealizationCertificate a = realize_type2(kSalem4, cfg);
  RealizationCertificate b = realize_type2(kSalem4, cfg);
  CHECK(realization_json(a).dump(2) == realization_json(b).dump(2));

  MinimalFirstDD m1 = minimal_first_dd(3, cfg);
  MinimalFirstDD m2 = minimal_first_dd(3, cfg);
  CHECK(minimal_json(m1).dump() == minimal_json(m2).dump());
}
