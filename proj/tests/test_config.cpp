#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "ws/config.hpp"
#include "ws/error.hpp"

using namespace ws;

TEST_CASE("defaults") {
  const RunConfig c;
  CHECK(c.format == OutputFormat::Json);
  CHECK(c.out_path.empty());
  CHECK(c.quad.abel_eps_ladder == std::vector<double>{1e-2, 5e-3, 2.5e-3, 1.25e-3});
  CHECK(c.quad.damping == Damping::Exponential);
  CHECK(c.pairing.tol > 0.0);
}

TEST_CASE("every documented key is read") {
  RunConfig c;
  apply_config_text(c, R"({"series_rel_tol": 1e-14, "series_max_terms": 777, "quad_rel_tol": 1e-10,
    "quad_abs_tol": 1e-12, "quad_max_panels": 500, "abel_eps_ladder": [0.02, 0.01, 0.005],
    "extrapolation_order": 2, "damping": "gaussian", "threads": 2, "pair_tol": 1e-9,
    "format": "csv", "out": "x.csv", "seed": 42})");
  CHECK(c.series.rel_tol == 1e-14);
  CHECK(c.series.max_terms == 777);
  CHECK(c.quad.rel_tol == 1e-10);
  CHECK(c.quad.abs_tol == 1e-12);
  CHECK(c.quad.max_panels == 500);
  CHECK(c.quad.abel_eps_ladder.size() == 3);
  CHECK(c.quad.extrapolation_order == 2);
  CHECK(c.quad.damping == Damping::Gaussian);
  CHECK(c.quad.threads == 2);
  CHECK(c.pairing.tol == 1e-9);
  CHECK(c.format == OutputFormat::Csv);
  CHECK(c.out_path == "x.csv");
  CHECK(c.seed == 42);
}

TEST_CASE("a partial file leaves other keys alone") {
  RunConfig c;
  apply_config_text(c, R"({"format": "text"})");
  CHECK(c.format == OutputFormat::Text);
  CHECK(c.seed == RunConfig{}.seed);
}

TEST_CASE("bad input is rejected") {
  RunConfig c;
  CHECK_THROWS_AS(apply_config_text(c, R"({"no_such_key": 1})"), Error);
  CHECK_THROWS_AS(apply_config_text(c, R"({"damping": "lorentzian"})"), Error);
  CHECK_THROWS_AS(apply_config_text(c, R"({"abel_eps_ladder": [0.001, 0.01]})"), Error);
  CHECK_THROWS_AS(apply_config_text(c, R"({"series_max_terms": 0})"), Error);
  CHECK_THROWS_AS(apply_config_text(c, R"({"format": "xml"})"), Error);
  CHECK_THROWS_AS(apply_config_text(c, "[1, 2]"), Error);
  CHECK_THROWS_AS(apply_config_text(c, "{not json"), Error);
  CHECK_THROWS_AS(apply_config_file(c, "/nonexistent/ws.json"), Error);
}

TEST_CASE("dump and reload is the identity") {
  RunConfig c;
  apply_config_text(c, R"({"quad_rel_tol": 3e-11, "damping": "gaussian", "out": "o.json", "seed": 7})");
  const std::string text = config_to_json_text(c);
  RunConfig d;
  apply_config_text(d, text);
  CHECK(config_to_json_text(d) == text);
}

TEST_CASE("file and environment") {
  const std::string path = "test_config_tmp.json";
  {
    std::ofstream f(path);
    f << R"({"seed": 99})";
  }
  RunConfig c;
  apply_config_file(c, path);
  CHECK(c.seed == 99);
  setenv("WS_CONFIG", path.c_str(), 1);
  CHECK(config_path_from_env() == path);
  unsetenv("WS_CONFIG");
  CHECK(config_path_from_env().empty());
  std::remove(path.c_str());
}
