#pragma once

// Run-time settings shared by the CLI and the acceptance runner.  Defaults
// are built in; a JSON file may override any subset of keys.

#include <cstdint>
#include <string>

#include "ws/distr.hpp"
#include "ws/oracle.hpp"
#include "ws/types.hpp"

namespace ws {

enum class OutputFormat { Json, Csv, Text };

struct RunConfig {
  SeriesConfig series;
  QuadConfig quad;
  PairOptions pairing;
  OutputFormat format = OutputFormat::Json;
  std::string out_path;  // empty: stdout
  std::uint64_t seed = 20240611;
};

OutputFormat parse_format(const std::string& s);
const char* to_string(OutputFormat f);

// Keys: series_rel_tol, series_max_terms, quad_rel_tol, quad_abs_tol,
// quad_max_panels, abel_eps_ladder, extrapolation_order, damping
// ("exponential" | "gaussian"), threads, pair_tol, format, out, seed.
// Unknown keys are an error.
void apply_config_text(RunConfig& cfg, const std::string& json_text);
void apply_config_file(RunConfig& cfg, const std::string& path);

// Every key with its current value; apply_config_text reads it back.
std::string config_to_json_text(const RunConfig& cfg);

// Path from WS_CONFIG, or empty.
std::string config_path_from_env();

}  // namespace ws
