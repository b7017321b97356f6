#include "dyndeg/config.hpp"

#include <cstdlib>
#include <stdexcept>

namespace dyndeg {

OutputFormat parse_output_format(const std::string& s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "structured") return OutputFormat::Structured;
  throw std::invalid_argument("output format must be 'text' or 'structured', got '" + s + "'");
}

std::string output_format_name(OutputFormat f) {
  return f == OutputFormat::Text ? "text" : "structured";
}

static const char* env_str(const char* name) {
  const char* v = std::getenv(name);
  return (v && *v) ? v : nullptr;
}

static int64_t env_i64(const char* name, int64_t fallback) {
  const char* v = env_str(name);
  if (!v) return fallback;
  try {
    return std::stoll(v);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(name) + ": not an integer: " + v);
  }
}

RunConfig RunConfig::from_env() {
  RunConfig c;
  if (const char* v = env_str("DYNDEG_TOLERANCE")) c.tolerance = parse_decimal(v);
  c.precision_cap = static_cast<int>(env_i64("DYNDEG_PRECISION_CAP", c.precision_cap));
  c.prime_bound = env_i64("DYNDEG_PRIME_BOUND", c.prime_bound);
  c.height_bound = env_i64("DYNDEG_HEIGHT_BOUND", c.height_bound);
  c.q_bound = env_i64("DYNDEG_Q_BOUND", c.q_bound);
  c.enum_cap = env_i64("DYNDEG_ENUM_CAP", c.enum_cap);
  if (const char* v = env_str("DYNDEG_OUTPUT_FORMAT")) c.output_format = parse_output_format(v);
  c.seed = static_cast<uint64_t>(env_i64("DYNDEG_SEED", static_cast<int64_t>(c.seed)));
  c.validate();
  return c;
}

void RunConfig::validate() const {
  if (!(tolerance > 0 && tolerance <= Rat(1, 1000)))
    throw std::invalid_argument("tolerance must lie in (0, 1e-3]");
  if (precision_cap < 64) throw std::invalid_argument("precision cap must be at least 64 bits");
  if (prime_bound < 2) throw std::invalid_argument("prime bound must be at least 2");
  if (height_bound < 1) throw std::invalid_argument("height bound must be positive");
  if (q_bound < 2) throw std::invalid_argument("q bound must be at least 2");
  if (enum_cap < 1) throw std::invalid_argument("enumeration cap must be positive");
}

} // namespace dyndeg
