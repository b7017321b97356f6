#pragma once

#include <cstdint>
#include <string>

#include "dyndeg/ints.hpp"

namespace dyndeg {

enum class OutputFormat { Text, Structured };

// runtime knobs shared by every subcommand; flags take precedence over
// environment variables (DYNDEG_*), which take precedence over defaults
struct RunConfig {
  Rat tolerance = Rat(1, 1000000000);  // enclosure radius target
  int precision_cap = 4096;            // working-precision ceiling, bits
  int64_t prime_bound = 100000;        // largest prime tried in witness searches
  int64_t height_bound = 12;           // coefficient height in isotropy searches
  int64_t q_bound = 1000;              // residue characteristic bound
  int64_t enum_cap = 200000;           // candidate cap for enumerations
  OutputFormat output_format = OutputFormat::Text;
  uint64_t seed = 20240917;            // randomized property tests only

  // defaults overlaid with any DYNDEG_* environment variables
  static RunConfig from_env();
  // throws std::invalid_argument when a field is out of range
  void validate() const;
};

OutputFormat parse_output_format(const std::string& s);
std::string output_format_name(OutputFormat f);

} // namespace dyndeg
