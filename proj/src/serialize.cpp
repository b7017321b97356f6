#include "dyndeg/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace dyndeg {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool is_decimal_integer(const std::string& s) {
  size_t i = (s.size() > 1 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::vector<std::string> int_strings(const std::vector<Int>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const Int& x : v) out.push_back(x.str());
  return out;
}

std::vector<Int> ints_from_json(const Json& j) {
  std::vector<Int> out;
  out.reserve(j.size());
  for (const auto& s : j) out.emplace_back(s.get<std::string>());
  return out;
}

// fixed two-space column gap, left-aligned
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& r : rows)
    for (size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.resize(i + 1, 0);
      width[i] = std::max(width[i], r[i].size());
    }
  std::ostringstream os;
  for (const auto& r : rows) {
    std::string line;
    for (size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

std::string midrad_mid(const Enclosure& e) {
  std::string s = e.str();
  size_t mid = s.find("mid=") + 4;
  size_t sp = s.find(' ', mid);
  return s.substr(mid, sp - mid);
}

std::string midrad_rad(const Enclosure& e) {
  std::string s = e.str();
  size_t rad = s.find("rad=") + 4;
  size_t sp = s.find(' ', rad);
  return s.substr(rad, sp - rad);
}

} // namespace

IntPolynomial parse_poly_text(const std::string& text) {
  std::vector<Int> coeffs;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!is_decimal_integer(line)) {
      std::ostringstream os;
      os << "polynomial file line " << lineno << " is not a decimal integer: '" << line << "'";
      throw std::invalid_argument(os.str());
    }
    if (line[0] == '+') line.erase(0, 1);
    coeffs.emplace_back(line);
  }
  if (coeffs.empty())
    throw std::invalid_argument("polynomial file contains no coefficients");
  return IntPolynomial(std::move(coeffs));
}

std::string poly_file_text(const IntPolynomial& p) {
  std::ostringstream os;
  os << "# " << p.to_string() << '\n';
  for (const Int& c : p.coeffs()) os << c.str() << '\n';
  return os.str();
}

IntPolynomial read_poly_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open polynomial file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_poly_text(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_poly_file(const std::string& path, const IntPolynomial& p) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write polynomial file: " + path);
  out << poly_file_text(p);
}

Json poly_json(const IntPolynomial& p) {
  Json j;
  j["coeffs"] = int_strings(p.coeffs());
  j["text"] = p.to_string();
  return j;
}

IntPolynomial poly_from_json(const Json& j) {
  return IntPolynomial(ints_from_json(j.at("coeffs")));
}

Json enclosure_json(const Enclosure& e) {
  Json j;
  j["mid"] = midrad_mid(e);
  j["rad"] = midrad_rad(e);
  j["digits"] = e.digits();
  if (e.exact_form()) j["exact"] = *e.exact_form();
  return j;
}

Enclosure enclosure_from_json(const Json& j) {
  std::ostringstream os;
  os << "mid=" << j.at("mid").get<std::string>() << " rad=" << j.at("rad").get<std::string>()
     << " digits=" << j.at("digits").get<int>();
  if (j.contains("exact")) os << " exact=" << j.at("exact").get<std::string>();
  return Enclosure::parse(os.str());
}

Json algebraic_value_json(const AlgebraicValue& v) {
  Json j;
  j["min_poly"] = poly_json(v.min_poly);
  j["root_index"] = v.root_index;
  j["value"] = enclosure_json(v.value);
  return j;
}

AlgebraicValue algebraic_value_from_json(const Json& j) {
  AlgebraicValue v;
  v.min_poly = poly_from_json(j.at("min_poly"));
  v.root_index = j.at("root_index").get<int>();
  v.value = enclosure_from_json(j.at("value"));
  return v;
}

Json classification_json(const IntPolynomial& input, const PolynomialClass& c) {
  Json j;
  j["record"] = "classification";
  j["polynomial"] = poly_json(input);
  j["class"] = class_tag_name(c.tag);
  if (c.tag == PolynomialClass::Tag::RootsOfUnity) j["orders"] = c.orders;
  if (c.lambda) j["lambda"] = enclosure_json(*c.lambda);
  j["real_count"] = c.real_count;
  j["unit_count"] = c.unit_count;
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

Json spectrum_json(const DynamicalSpectrum& s) {
  Json j;
  j["record"] = "spectrum";
  j["g"] = s.g;
  j["multiplicity"] = s.multiplicity;
  j["source"] = s.source;
  Json rows = Json::array();
  for (size_t k = 0; k < s.lambdas.size(); ++k) {
    Json row;
    row["k"] = k;
    row["lambda"] = enclosure_json(s.lambdas[k]);
    row["exact_one"] = s.lambdas[k].is_exact() && s.lambdas[k].mid() == 1;
    rows.push_back(std::move(row));
  }
  j["lambdas"] = std::move(rows);
  return j;
}

Json fix_consistency_json(const FixConsistencyReport& r) {
  Json j;
  j["record"] = "fix-consistency";
  j["ok"] = r.ok;
  j["analytic_det_re"] = Rat(r.analytic_det.re).str();
  j["analytic_det_im"] = Rat(r.analytic_det.im).str();
  j["analytic_norm"] = Rat(r.analytic_norm).str();
  j["rational_det"] = r.rational_det.str();
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

Json shifted_fix_json(const IntPolynomial& F, int g, const Int& n, const ShiftedFixReport& r) {
  Json j;
  j["record"] = "shifted-fix";
  j["polynomial"] = poly_json(F);
  j["g"] = g;
  j["n"] = n.str();
  j["ok"] = r.ok;
  j["det_value"] = r.det_value.str();
  j["poly_value"] = r.poly_value.str();
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

namespace {

const char* witness_mode_name(WitnessMode m) {
  return m == WitnessMode::Exact ? "exact" : "isotropy-absent";
}

WitnessMode witness_mode_from(const std::string& s) {
  if (s == "exact") return WitnessMode::Exact;
  if (s == "isotropy-absent") return WitnessMode::IsotropyAbsent;
  throw std::invalid_argument("unknown witness mode: " + s);
}

} // namespace

Json realization_json(const RealizationCertificate& cert) {
  Json j;
  j["record"] = "realization-certificate";
  j["type"] = cert.type_tag == RealizationType::Type1 ? "type-1" : "type-2";
  j["polynomial"] = poly_json(cert.input_poly);
  j["g"] = cert.g;
  j["trace_field_poly"] = poly_json(cert.trace_field_poly);
  j["a_repr"] = poly_json(cert.a_repr);
  j["gamma_w"] = enclosure_json(cert.gamma_w);
  Json d;
  d["mode"] = witness_mode_name(cert.division.mode);
  d["p"] = cert.division.p;
  d["height"] = cert.division.height;
  d["detail"] = cert.division.detail;
  j["division"] = std::move(d);
  Json pell;
  pell["X"] = cert.pell.X.str();
  pell["Z"] = cert.pell.Z.str();
  j["pell"] = std::move(pell);
  j["exponent_N"] = cert.exponent_N;
  j["c_x"] = poly_json(cert.c_x);
  j["c_y"] = poly_json(cert.c_y);
  j["c_z"] = poly_json(cert.c_z);
  Json cs = Json::array();
  for (const Enclosure& e : cert.c_squared_conjugates) cs.push_back(enclosure_json(e));
  j["c_squared_conjugates"] = std::move(cs);
  j["claimed_spectrum"] = spectrum_json(cert.claimed_spectrum);
  return j;
}

RealizationCertificate realization_from_json(const Json& j) {
  RealizationCertificate cert;
  cert.type_tag = j.at("type").get<std::string>() == "type-1" ? RealizationType::Type1
                                                              : RealizationType::Type2;
  cert.input_poly = poly_from_json(j.at("polynomial"));
  cert.g = j.at("g").get<int>();
  cert.trace_field_poly = poly_from_json(j.at("trace_field_poly"));
  cert.a_repr = poly_from_json(j.at("a_repr"));
  cert.gamma_w = enclosure_from_json(j.at("gamma_w"));
  const Json& d = j.at("division");
  cert.division.mode = witness_mode_from(d.at("mode").get<std::string>());
  cert.division.p = d.at("p").get<int64_t>();
  cert.division.height = d.at("height").get<int64_t>();
  cert.division.detail = d.at("detail").get<std::string>();
  cert.pell.X = Int(j.at("pell").at("X").get<std::string>());
  cert.pell.Z = Int(j.at("pell").at("Z").get<std::string>());
  cert.exponent_N = j.at("exponent_N").get<int64_t>();
  cert.c_x = poly_from_json(j.at("c_x"));
  cert.c_y = poly_from_json(j.at("c_y"));
  cert.c_z = poly_from_json(j.at("c_z"));
  for (const auto& e : j.at("c_squared_conjugates"))
    cert.c_squared_conjugates.push_back(enclosure_from_json(e));
  const Json& s = j.at("claimed_spectrum");
  cert.claimed_spectrum.g = s.at("g").get<int>();
  cert.claimed_spectrum.multiplicity = s.at("multiplicity").get<int>();
  cert.claimed_spectrum.source = s.at("source").get<std::string>();
  for (const auto& row : s.at("lambdas"))
    cert.claimed_spectrum.lambdas.push_back(enclosure_from_json(row.at("lambda")));
  return cert;
}

Json verification_json(const VerificationReport& r) {
  Json j;
  j["record"] = "verification";
  j["ok"] = r.ok;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json row;
    row["name"] = c.name;
    row["pass"] = c.pass;
    if (!c.detail.empty()) row["detail"] = c.detail;
    checks.push_back(std::move(row));
  }
  j["checks"] = std::move(checks);
  return j;
}

Json cyclic_json(const CyclicAlgebraCertificate& cert) {
  Json j;
  j["record"] = "cyclic-algebra-certificate";
  j["p"] = cert.p;
  j["k"] = cert.k;
  j["radicand"] = cert.radicand.str();
  j["q"] = cert.q;
  j["f"] = cert.f;
  j["residue_factor"] = poly_json(cert.residue_factor);
  j["residue_factor"]["text"] = cert.residue_factor.to_string("t");
  j["gamma_residue"] = poly_json(cert.gamma_residue);
  j["gamma_residue"]["text"] = cert.gamma_residue.to_string("t");
  j["power_residue_exponent"] = cert.power_residue_exponent.str();
  j["witness"] = poly_json(cert.witness);
  j["witness"]["text"] = cert.witness.to_string("t");
  j["algebra_descriptor"] = cert.algebra_descriptor;
  j["min_poly_over_Q"] = poly_json(cert.min_poly_over_Q);
  j["variety_dimension"] = cert.variety_dimension.str();
  j["lambda1"] = enclosure_json(cert.lambda1);
  j["invertible"] = cert.invertible;
  return j;
}

CyclicAlgebraCertificate cyclic_from_json(const Json& j) {
  CyclicAlgebraCertificate cert;
  cert.p = j.at("p").get<int64_t>();
  cert.k = j.at("k").get<int64_t>();
  cert.radicand = Int(j.at("radicand").get<std::string>());
  cert.q = j.at("q").get<int64_t>();
  cert.f = j.at("f").get<int64_t>();
  cert.residue_factor = poly_from_json(j.at("residue_factor"));
  cert.gamma_residue = poly_from_json(j.at("gamma_residue"));
  cert.power_residue_exponent = Int(j.at("power_residue_exponent").get<std::string>());
  cert.witness = poly_from_json(j.at("witness"));
  cert.algebra_descriptor = j.at("algebra_descriptor").get<std::string>();
  cert.min_poly_over_Q = poly_from_json(j.at("min_poly_over_Q"));
  cert.variety_dimension = Int(j.at("variety_dimension").get<std::string>());
  cert.lambda1 = enclosure_from_json(j.at("lambda1"));
  cert.invertible = j.at("invertible").get<bool>();
  return cert;
}

Json ladder_json(const TypeLadder& lad) {
  Json j;
  j["record"] = "ladder";
  j["g"] = lad.g;
  Json rows = Json::array();
  for (const auto& e : lad.entries) {
    Json row;
    row["g"] = lad.g;
    row["value"] = algebraic_value_json(e.lambda1);
    row["source"] = e.source;
    row["family"] = e.family;
    row["divisibility"] = e.divisibility;
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

Json minimal_json(const MinimalFirstDD& m) {
  Json j;
  j["record"] = "minimal-first-dd";
  j["g"] = m.ladder.g;
  j["value"] = algebraic_value_json(m.value);
  j["attained_by"] = m.attained_by;
  j["ladder"] = ladder_json(m.ladder);
  return j;
}

Json candidate_set_json(const CandidateSet& cs) {
  Json j;
  j["record"] = "candidate-set";
  j["g"] = cs.g;
  j["c"] = Rat(cs.c).str();
  j["search_space"] = cs.search_space.str();
  Json polys = Json::array();
  for (const auto& p : cs.polys) polys.push_back(poly_json(p));
  j["polys"] = std::move(polys);
  Json dds = Json::array();
  for (const auto& v : cs.dd_values) dds.push_back(algebraic_value_json(v));
  j["dd_values"] = std::move(dds);
  return j;
}

std::string classification_text(const IntPolynomial& input, const PolynomialClass& c) {
  std::ostringstream os;
  os << "polynomial: " << input.to_string() << '\n';
  os << "class: " << class_tag_name(c.tag) << '\n';
  if (c.tag == PolynomialClass::Tag::RootsOfUnity) {
    os << "orders:";
    for (int o : c.orders) os << ' ' << o;
    os << '\n';
  }
  if (c.lambda) os << "lambda: " << c.lambda->str() << '\n';
  os << "real roots off the unit circle: " << c.real_count
     << ", unit-circle roots: " << c.unit_count << '\n';
  if (!c.reason.empty()) os << "reason: " << c.reason << '\n';
  return os.str();
}

std::string spectrum_text(const DynamicalSpectrum& s) {
  std::ostringstream os;
  os << "dynamical degrees, g = " << s.g << ", multiplicity " << s.multiplicity << " ("
     << s.source << ")\n";
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"k", "lambda_k", "exactly 1"});
  for (size_t k = 0; k < s.lambdas.size(); ++k) {
    bool one = s.lambdas[k].is_exact() && s.lambdas[k].mid() == 1;
    rows.push_back({std::to_string(k), s.lambdas[k].str(), one ? "yes" : "no"});
  }
  os << render_table(rows);
  return os.str();
}

std::string realization_text(const RealizationCertificate& cert) {
  std::ostringstream os;
  os << "realization certificate ("
     << (cert.type_tag == RealizationType::Type1 ? "type-1" : "type-2") << ")\n";
  os << "polynomial: " << cert.input_poly.to_string() << '\n';
  os << "g: " << cert.g << '\n';
  os << "trace field: Q[w]/(" << cert.trace_field_poly.to_string("w") << ")\n";
  os << "a = " << cert.a_repr.to_string("w") << '\n';
  os << "w enclosure: " << cert.gamma_w.str() << '\n';
  os << "division witness: mode=" << witness_mode_name(cert.division.mode)
     << " p=" << cert.division.p << " height=" << cert.division.height << '\n';
  if (!cert.division.detail.empty()) os << "  " << cert.division.detail << '\n';
  os << "pell: X=" << cert.pell.X.str() << " Z=" << cert.pell.Z.str() << '\n';
  os << "exponent N: " << cert.exponent_N << '\n';
  os << "c = x i + y j + z ij, reduced mod the trace field polynomial:\n";
  os << "  x = " << cert.c_x.to_string("w") << '\n';
  os << "  y = " << cert.c_y.to_string("w") << '\n';
  os << "  z = " << cert.c_z.to_string("w") << '\n';
  os << "c^2 at the real embeddings:\n";
  for (const auto& e : cert.c_squared_conjugates) os << "  " << e.str() << '\n';
  os << spectrum_text(cert.claimed_spectrum);
  return os.str();
}

std::string verification_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "verification: " << (r.ok ? "PASS" : "FAIL") << '\n';
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : r.checks)
    rows.push_back({c.pass ? "pass" : "FAIL", c.name, c.detail});
  os << render_table(rows);
  return os.str();
}

std::string cyclic_text(const CyclicAlgebraCertificate& cert) {
  std::ostringstream os;
  os << "cyclic algebra certificate, degree p = " << cert.p << '\n';
  if (cert.radicand != 0)
    os << "gamma = " << cert.radicand.str() << " (integer radicand)\n";
  else
    os << "gamma = zeta^" << cert.k << " + zeta^-" << cert.k << " in Q(zeta_" << cert.p << ")\n";
  os << "algebra: " << cert.algebra_descriptor << '\n';
  os << "residue prime q = " << cert.q << ", residue degree f = " << cert.f << '\n';
  os << "residue field: F_" << cert.q << "[t]/(" << cert.residue_factor.to_string("t") << ")\n";
  os << "gamma mod q: " << cert.gamma_residue.to_string("t") << '\n';
  os << "power-residue exponent (q^f - 1)/p = " << cert.power_residue_exponent.str() << '\n';
  os << "witness gamma^exponent = " << cert.witness.to_string("t") << " (not 0, not 1)\n";
  os << "minimal polynomial over Q: " << cert.min_poly_over_Q.to_string() << '\n';
  os << "variety dimension: " << cert.variety_dimension.str() << '\n';
  os << "lambda1: " << cert.lambda1.str() << '\n';
  os << "invertible: " << (cert.invertible ? "yes" : "no") << '\n';
  return os.str();
}

std::string ladder_text(const TypeLadder& lad) {
  std::ostringstream os;
  os << "first dynamical degree ladder, g = " << lad.g << '\n';
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"lambda1", "family", "divisibility", "source"});
  for (const auto& e : lad.entries)
    rows.push_back({e.lambda1.value.str(), e.family, e.divisibility, e.source});
  os << render_table(rows);
  return os.str();
}

std::string minimal_text(const MinimalFirstDD& m) {
  std::ostringstream os;
  os << "minimal first dynamical degree above 1, g = " << m.ladder.g << '\n';
  os << "value: " << m.value.value.str() << '\n';
  os << "minimal polynomial: " << m.value.min_poly.to_string()
     << " (root " << m.value.root_index << ")\n";
  os << "attained by: " << m.attained_by << '\n';
  os << ladder_text(m.ladder);
  return os.str();
}

std::string candidate_set_text(const CandidateSet& cs) {
  std::ostringstream os;
  os << "candidate characteristic polynomials, g = " << cs.g << ", all root moduli < "
     << Rat(cs.c).str() << '\n';
  os << "search space: " << cs.search_space.str() << " coefficient tuples, survivors: "
     << cs.polys.size() << '\n';
  os << "first dynamical degrees (" << cs.dd_values.size() << "):\n";
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"value", "minimal polynomial", "root"});
  for (const auto& v : cs.dd_values)
    rows.push_back({v.value.str(), v.min_poly.to_string(), std::to_string(v.root_index)});
  os << render_table(rows);
  os << "survivors:\n";
  for (const auto& p : cs.polys) os << "  " << p.to_string() << '\n';
  return os.str();
}

} // namespace dyndeg
