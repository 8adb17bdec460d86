#include <doctest.h>
#include <sys/wait.h>

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <string>

#include "ws/ws.h"

using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// stdout only; stderr goes to /dev/null unless asked for.
Run ws(const std::string& args, const std::string& env = "", bool merge_stderr = false) {
  const std::string cmd = env + (env.empty() ? "" : " ") + WS_CLI_PATH + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::complex<double> cx(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
}

}  // namespace

TEST_CASE("eval is byte-for-byte deterministic") {
  const std::string args = "eval --kind jj --mu 0.7 --nu 0.2 --rho 1.6 --x-symbolic";
  const Run a = ws(args), b = ws(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Run f1 = ws("eval --kind hplus --mu 0.5 --nu 1.5 --rho -0.3 --x 2 --format csv");
  const Run f2 = ws("eval --kind hplus --mu 0.5 --nu 1.5 --rho -0.3 --x 2 --format csv");
  CHECK(f1.code == 0);
  CHECK(f1.out == f2.out);
}

TEST_CASE("eval JSON re-read through the C API pairs like the pair command") {
  const Run e = ws("eval --kind jj --mu 0.7 --nu 0.2 --rho 1.6 --x-symbolic");
  REQUIRE(e.code == 0);
  ws_result* r = nullptr;
  REQUIRE(ws_result_from_json(e.out.c_str(), &r) == WS_OK);
  ws_config* cfg = ws_config_new();
  ws_complex v;
  REQUIRE(ws_result_pair_bump(cfg, r, 1.1, 0.4, &v) == WS_OK);
  ws_config_free(cfg);
  ws_result_free(r);

  const Run p = ws("pair --kind jj --mu 0.7 --nu 0.2 --rho 1.6 --center 1.1 --width 0.4");
  REQUIRE(p.code == 0);
  const std::complex<double> pv = cx(json::parse(p.out).at("value"));
  CHECK(std::abs(pv - std::complex<double>(v.re, v.im)) < 1e-12);
}

TEST_CASE("pointwise eval agrees with the oracle command") {
  const Run e = ws("eval --kind jj --mu 0.5 --nu 1.5 --rho -0.3 --x 2");
  const Run o = ws("oracle --kind jj --mu 0.5 --nu 1.5 --rho -0.3 --x 2");
  REQUIRE(e.code == 0);
  REQUIRE(o.code == 0);
  const auto a = cx(json::parse(e.out).at("value")), b = cx(json::parse(o.out).at("oracle"));
  CHECK(std::abs(a - b) < 1e-8 * std::abs(b));
}

TEST_CASE("exit codes") {
  // usage
  CHECK(ws("eval --mu 1").code == 1);
  CHECK(ws("frobnicate").code == 1);
  // argument: bump support must stay in (0, inf)
  const Run bad = ws("pair --kind jj --mu 0 --nu 0 --rho 1.5 --center 1 --width 1");
  CHECK(bad.code == 2);
  CHECK(json::parse(bad.out).at("error").at("code") == 2);
  // validity
  CHECK(ws("eval --kind hplus --mu 2 --nu 0 --rho 0.5 --x 2").code == 2);
  // strict degenerate
  CHECK(ws("eval --kind jj --mu 0 --nu 0 --rho 3 --x-symbolic --strict-degenerate").code == 3);
  CHECK(ws("eval --kind jj --mu 0 --nu 0 --rho 3 --x-symbolic").code == 0);
  // a check tolerance no computation can meet
  const Run chk = ws("pair --kind jj --mu 0 --nu 0 --rho 1.5 --center 1.6 --width 0.3 --check --check-tol 1e-30");
  CHECK(chk.code == 5);
  CHECK(json::parse(chk.out).at("check_pass") == false);
  const Run ok = ws("pair --kind jj --mu 0 --nu 0 --rho 1.5 --center 1.6 --width 0.3 --check");
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out).at("check_pass") == true);
}

TEST_CASE("errors go to stderr with the command name") {
  const Run r = ws("eval --kind hplus --mu 2 --nu 0 --rho 0.5 --x 2", "", true);
  CHECK(r.out.find("ws eval: validity violated") != std::string::npos);
}

TEST_CASE("CSV header and row") {
  const Run r = ws("pair --kind jj --mu 0 --nu 0 --rho 1 --center 1 --width 0.5 --format csv");
  REQUIRE(r.code == 0);
  const std::string head = r.out.substr(0, r.out.find('\n'));
  CHECK(head == "kind,mu_re,mu_im,nu_re,nu_im,rho_re,rho_im,center,width,value_re,value_im,oracle_re,oracle_im,abs_diff");
  const std::string row = r.out.substr(head.size() + 1);
  // closure: the value is the bump at 1, exp(-1)
  CHECK(row.find("jj,0,0,0,0,1,0,1,0.5,0.36787944117144233,") == 0);
}

TEST_CASE("config file, environment and flag precedence") {
  const std::string path = "test_cli_cfg.json";
  write_file(path, R"({"format": "csv"})");
  const std::string args = "eval --kind jj --mu 0.5 --nu 1.5 --rho -0.3 --x 2";
  const Run env = ws(args, "WS_CONFIG=" + path);
  CHECK(env.code == 0);
  CHECK(env.out.rfind("kind,", 0) == 0);
  const Run flag = ws(args + " --config " + path);
  CHECK(flag.out == env.out);
  // explicit flags beat the file
  const Run over = ws(args + " --format json", "WS_CONFIG=" + path);
  CHECK(over.out.rfind("{", 0) == 0);
  // a broken file is an argument error
  write_file(path, R"({"nope": 1})");
  CHECK(ws(args, "WS_CONFIG=" + path).code == 2);
  std::remove(path.c_str());
}

TEST_CASE("--out writes the record to a file") {
  const std::string path = "test_cli_out.json";
  const Run r = ws("eval --kind ki --mu 0.3 --nu 0.5 --rho 0.2 --z 2 --out " + path);
  CHECK(r.code == 0);
  std::ifstream f(path);
  const json j = json::parse(f);
  CHECK(j.at("regime") == "function");
  std::remove(path.c_str());
}

TEST_CASE("kernel subcommand") {
  const Run p = ws("kernel power --mu 0.5 --gamma -1 --x 0.3 --y 1.9");
  REQUIRE(p.code == 0);
  CHECK(std::abs(cx(json::parse(p.out).at("values").at(0).at("value")) - 0.3) < 1e-13);
  const Run c = ws("kernel power --mu 0.5 --gamma 0 --x 1 --y 1 --pair-center 1 --pair-width 0.5");
  REQUIRE(c.code == 0);
  CHECK(c.out.find("0.36787944117144") != std::string::npos);
  CHECK(ws("kernel wave --mu 0.8 --nu 1.5 --gamma -0.3 --x 0.3 --y 1.9").code == 2);
  CHECK(ws("kernel wave --mu 0.8 --nu 1.5 --gamma -0.3 --x 0.3 --y 1.9 --allow-outside-hypothesis").code == 0);
}

TEST_CASE("selftest subset") {
  const Run r = ws("selftest --only 1,7 --format text");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS   1") != std::string::npos);
  CHECK(r.out.find("PASS   7") != std::string::npos);
}
