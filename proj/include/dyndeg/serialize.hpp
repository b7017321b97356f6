#pragma once

#include <string>

#include "json.hpp"

#include "dyndeg/classify.hpp"
#include "dyndeg/cyclic.hpp"
#include "dyndeg/enclosure.hpp"
#include "dyndeg/minimal.hpp"
#include "dyndeg/poly.hpp"
#include "dyndeg/realize.hpp"
#include "dyndeg/spectrum.hpp"

namespace dyndeg {

using Json = nlohmann::ordered_json;

// Polynomial files: one decimal coefficient per line, constant term first,
// '#' starts a comment, blank lines ignored. Writing then reading a
// polynomial reproduces it exactly.
IntPolynomial parse_poly_text(const std::string& text);
std::string poly_file_text(const IntPolynomial& p);
IntPolynomial read_poly_file(const std::string& path);
void write_poly_file(const std::string& path, const IntPolynomial& p);

// Structured forms. Field order is fixed, integers are decimal strings,
// enclosures carry midpoint/radius decimal strings with their digit counts,
// so equal inputs serialize to byte-identical text.
Json poly_json(const IntPolynomial& p);
IntPolynomial poly_from_json(const Json& j);
Json enclosure_json(const Enclosure& e);
Enclosure enclosure_from_json(const Json& j);

Json algebraic_value_json(const AlgebraicValue& v);
AlgebraicValue algebraic_value_from_json(const Json& j);

Json classification_json(const IntPolynomial& input, const PolynomialClass& c);
Json spectrum_json(const DynamicalSpectrum& s);
Json fix_consistency_json(const FixConsistencyReport& r);
Json shifted_fix_json(const IntPolynomial& F, int g, const Int& n, const ShiftedFixReport& r);
Json realization_json(const RealizationCertificate& cert);
RealizationCertificate realization_from_json(const Json& j);
Json verification_json(const VerificationReport& r);
Json cyclic_json(const CyclicAlgebraCertificate& cert);
CyclicAlgebraCertificate cyclic_from_json(const Json& j);
Json ladder_json(const TypeLadder& lad);
Json minimal_json(const MinimalFirstDD& m);
Json candidate_set_json(const CandidateSet& cs);

// Aligned plain-text renderings of the same records.
std::string classification_text(const IntPolynomial& input, const PolynomialClass& c);
std::string spectrum_text(const DynamicalSpectrum& s);
std::string realization_text(const RealizationCertificate& cert);
std::string verification_text(const VerificationReport& r);
std::string cyclic_text(const CyclicAlgebraCertificate& cert);
std::string ladder_text(const TypeLadder& lad);
std::string minimal_text(const MinimalFirstDD& m);
std::string candidate_set_text(const CandidateSet& cs);

} // namespace dyndeg
