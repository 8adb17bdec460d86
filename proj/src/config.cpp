#include "ws/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ws/error.hpp"
#include "ws/serialize.hpp"

namespace ws {

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "text") return OutputFormat::Text;
  throw Error(ErrorCode::InvalidArgument, "unknown output format: " + s);
}

const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Text: return "text";
  }
  return "?";
}

void apply_config_text(RunConfig& cfg, const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::Parse, "config: top level must be an object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "series_rel_tol") cfg.series.rel_tol = v.get<double>();
      else if (key == "series_max_terms") cfg.series.max_terms = v.get<int>();
      else if (key == "quad_rel_tol") cfg.quad.rel_tol = v.get<double>();
      else if (key == "quad_abs_tol") cfg.quad.abs_tol = v.get<double>();
      else if (key == "quad_max_panels") cfg.quad.max_panels = v.get<int>();
      else if (key == "abel_eps_ladder") cfg.quad.abel_eps_ladder = v.get<std::vector<double>>();
      else if (key == "extrapolation_order") cfg.quad.extrapolation_order = v.get<int>();
      else if (key == "damping") {
        const std::string d = v.get<std::string>();
        if (d == "exponential") cfg.quad.damping = Damping::Exponential;
        else if (d == "gaussian") cfg.quad.damping = Damping::Gaussian;
        else throw Error(ErrorCode::Parse, "config: damping must be exponential or gaussian");
      } else if (key == "threads") cfg.quad.threads = v.get<int>();
      else if (key == "pair_tol") cfg.pairing.tol = v.get<double>();
      else if (key == "format") cfg.format = parse_format(v.get<std::string>());
      else if (key == "out") cfg.out_path = v.get<std::string>();
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else throw Error(ErrorCode::Parse, "config: unknown key " + key);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("config: ") + e.what());
  }
  validate(cfg.quad);
  if (!(cfg.series.rel_tol > 0.0) || cfg.series.max_terms < 1 || !(cfg.pairing.tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "config: tolerances and term caps must be positive");
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "config: cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

std::string config_to_json_text(const RunConfig& cfg) {
  json j;
  j["series_rel_tol"] = cfg.series.rel_tol;
  j["series_max_terms"] = cfg.series.max_terms;
  j["quad_rel_tol"] = cfg.quad.rel_tol;
  j["quad_abs_tol"] = cfg.quad.abs_tol;
  j["quad_max_panels"] = cfg.quad.max_panels;
  j["abel_eps_ladder"] = cfg.quad.abel_eps_ladder;
  j["extrapolation_order"] = cfg.quad.extrapolation_order;
  j["damping"] = cfg.quad.damping == Damping::Gaussian ? "gaussian" : "exponential";
  j["threads"] = cfg.quad.threads;
  j["pair_tol"] = cfg.pairing.tol;
  j["format"] = to_string(cfg.format);
  j["out"] = cfg.out_path;
  j["seed"] = cfg.seed;
  return j.dump();
}

std::string config_path_from_env() {
  const char* p = std::getenv("WS_CONFIG");
  return p ? std::string(p) : std::string();
}

}  // namespace ws
