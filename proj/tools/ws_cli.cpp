// ws: command-line front end over the C interface.
//
//   ws eval     --kind jj --mu 0 --nu 0 --rho -0.5 --x 2
//   ws pair     --mu 0.5 --nu 0.5 --rho 1 --center 1 --width 0.4 --check
//   ws oracle   --mu 0 --nu 0 --rho -0.5 --x 2
//   ws kernel   power --mu 1 --gamma 0 --pair-center 1 --pair-width 0.3
//   ws selftest [--only 1,3]
//
// Exit codes: 0 ok, 1 usage, 2 invalid input, 3 unsupported degenerate case,
// 4 numerical failure, 5 check above tolerance.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ws/ws.h"

namespace {

using json = nlohmann::ordered_json;

enum class Format { Json, Csv, Text };

struct Failure {
  ws_status status;
  std::string message;
};

int exit_code(ws_status s) {
  switch (s) {
    case WS_OK: return 0;
    case WS_E_ARGUMENT:
    case WS_E_VALIDITY: return 2;
    case WS_E_DEGENERATE: return 3;
    case WS_E_NUMERIC: return 4;
    case WS_E_CHECK: return 5;
  }
  return 4;
}

const char* status_name(ws_status s) {
  switch (s) {
    case WS_OK: return "ok";
    case WS_E_ARGUMENT: return "invalid-argument";
    case WS_E_VALIDITY: return "validity";
    case WS_E_DEGENERATE: return "unsupported-degenerate";
    case WS_E_NUMERIC: return "numerical-failure";
    case WS_E_CHECK: return "check-failed";
  }
  return "?";
}

void check(ws_status s) {
  if (s != WS_OK) throw Failure{s, ws_last_error()};
}

struct ResultDeleter {
  void operator()(ws_result* r) const { ws_result_free(r); }
};
using Result = std::unique_ptr<ws_result, ResultDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  ws_string_free(s);
  return out;
}

// "1.5", "-2i", "0.5+0.25i", "1-3i"
ws_complex parse_complex(const std::string& text) {
  const char* s = text.c_str();
  char* end = nullptr;
  const double first = std::strtod(s, &end);
  if (end == s) throw Failure{WS_E_ARGUMENT, "cannot parse number: " + text};
  std::string rest = end;
  if (rest.empty()) return {first, 0.0};
  if (rest == "i") return {0.0, first};
  const char* r = rest.c_str();
  char* end2 = nullptr;
  const double second = std::strtod(r, &end2);
  if (end2 != r && std::string(end2) == "i" && (rest[0] == '+' || rest[0] == '-')) return {first, second};
  throw Failure{WS_E_ARGUMENT, "cannot parse complex number: " + text};
}

json cjson(ws_complex z) { return json{{"re", z.re}, {"im", z.im}}; }

// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string ctext(ws_complex z) {
  if (z.im == 0.0) return num(z.re);
  return num(z.re) + (z.im < 0 ? " - " : " + ") + num(std::abs(z.im)) + "i";
}

struct Common {
  std::string format = "";
  std::string out;
  std::string config;
  bool strict_degenerate = false;
};

struct Session {
  ws_config* cfg = nullptr;
  Format format = Format::Json;
  std::string out_path;
  ~Session() { ws_config_free(cfg); }
};

Format parse_format(const std::string& f) {
  if (f == "json") return Format::Json;
  if (f == "csv") return Format::Csv;
  if (f == "text") return Format::Text;
  throw Failure{WS_E_ARGUMENT, "unknown format " + f + " (json, csv, text)"};
}

// Defaults, then the config file (--config, else WS_CONFIG), then flags.
void open_session(Session& s, const Common& c) {
  s.cfg = ws_config_new();
  if (!s.cfg) throw Failure{WS_E_NUMERIC, "out of memory"};
  std::string path = c.config;
  if (path.empty()) {
    const char* env = std::getenv("WS_CONFIG");
    if (env) path = env;
  }
  if (!path.empty()) check(ws_config_apply_file(s.cfg, path.c_str()));
  ws_config_set_strict_degenerate(s.cfg, c.strict_degenerate);
  s.format = parse_format(c.format.empty() ? ws_config_format(s.cfg) : c.format);
  s.out_path = c.out.empty() ? ws_config_out_path(s.cfg) : c.out;
}

void emit(const Session& s, const std::string& text) {
  if (s.out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(s.out_path, std::ios::binary);
  if (!f) throw Failure{WS_E_ARGUMENT, "cannot write " + s.out_path};
  f << text;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line + "\n";
}

struct Integral {
  std::string kind = "jj";
  std::string mu = "0", nu = "0", rho = "0";
};

void add_integral_options(CLI::App* app, Integral& p) {
  app->add_option("--kind", p.kind, "jj, hplus, hminus, kj or ki")->capture_default_str();
  app->add_option("--mu", p.mu, "order of the scaled Bessel factor (complex: a+bi)")->capture_default_str();
  app->add_option("--nu", p.nu, "order of J_nu(k)")->capture_default_str();
  app->add_option("--rho", p.rho, "power of k")->required();
}

json params_json(const Integral& p) {
  return json{{"kind", p.kind},
              {"mu", cjson(parse_complex(p.mu))},
              {"nu", cjson(parse_complex(p.nu))},
              {"rho", cjson(parse_complex(p.rho))}};
}

std::vector<std::string> params_cells(const Integral& p) {
  const ws_complex mu = parse_complex(p.mu), nu = parse_complex(p.nu), rho = parse_complex(p.rho);
  return {p.kind, num(mu.re), num(mu.im), num(nu.re), num(nu.im), num(rho.re), num(rho.im)};
}

const std::vector<std::string> kParamHeader = {"kind", "mu_re", "mu_im", "nu_re", "nu_im", "rho_re", "rho_im"};

// --- eval ---------------------------------------------------------------------

struct EvalArgs {
  Integral p;
  std::optional<std::string> x;
  bool symbolic = false;
};

void cmd_eval(const Session& s, const EvalArgs& a) {
  ws_kind kind;
  check(ws_parse_kind(a.p.kind.c_str(), &kind));
  if (!a.symbolic && !a.x) throw Failure{WS_E_ARGUMENT, "give --x (or --z) or --x-symbolic"};
  const ws_complex arg = a.symbolic ? ws_complex{1.0, 0.0} : parse_complex(*a.x);
  ws_result* raw = nullptr;
  check(ws_evaluate(s.cfg, kind, parse_complex(a.p.mu), parse_complex(a.p.nu), parse_complex(a.p.rho), arg,
                    a.symbolic, &raw));
  Result r(raw);
  char* js = nullptr;
  check(ws_result_to_json(r.get(), &js));
  const json body = json::parse(take(js));

  if (s.format == Format::Json) {
    json out;
    out["schema"] = body.at("schema");
    out["command"] = "eval";
    out["params"] = params_json(a.p);
    if (a.symbolic) out["params"]["x"] = "symbolic";
    else out["params"]["x"] = cjson(arg);
    for (const auto& [k, v] : body.items()) {
      if (k != "schema") out[k] = v;
    }
    emit(s, out.dump(2) + "\n");
    return;
  }
  if (s.format == Format::Csv) {
    std::string text;
    if (ws_result_is_scalar(r.get())) {
      auto head = kParamHeader;
      head.insert(head.end(), {"x_re", "x_im", "regime", "value_re", "value_im"});
      auto row = params_cells(a.p);
      const ws_complex v = ws_result_value(r.get());
      row.insert(row.end(), {num(arg.re), num(arg.im), ws_result_regime(r.get()), num(v.re), num(v.im)});
      text = csv_line(head) + csv_line(row);
    } else {
      text = csv_line({"term", "tag", "lambda_re", "lambda_im", "m", "side"});
      int i = 0;
      for (const json& t : body.at("terms")) {
        const json& b = t.at("basis");
        const bool has_l = b.contains("lambda");
        text += csv_line({std::to_string(i++), b.at("tag").get<std::string>(),
                          has_l ? num(b["lambda"]["re"].get<double>()) : "",
                          has_l ? num(b["lambda"]["im"].get<double>()) : "",
                          b.contains("m") ? std::to_string(b["m"].get<int>()) : "",
                          b.contains("side") ? b["side"].get<std::string>() : ""});
      }
    }
    emit(s, text);
    return;
  }
  std::ostringstream os;
  os << "regime: " << ws_result_regime(r.get()) << "\n";
  if (ws_result_is_scalar(r.get())) {
    os << "value: " << ctext(ws_result_value(r.get())) << "\n";
  } else {
    for (const json& t : body.at("terms")) {
      const json& b = t.at("basis");
      os << "term: " << b.at("tag").get<std::string>();
      if (b.contains("lambda")) os << "(" << ctext({b["lambda"]["re"], b["lambda"]["im"]}) << ")";
      if (b.contains("m")) os << "(m = " << b["m"].get<int>() << ")";
      if (b.contains("side")) os << " side " << b["side"].get<std::string>();
      os << "\n";
    }
  }
  for (size_t i = 0; i < ws_result_note_count(r.get()); ++i) os << "note: " << ws_result_note(r.get(), i) << "\n";
  emit(s, os.str());
}

// --- pair ---------------------------------------------------------------------

struct PairArgs {
  Integral p;
  double center = 1.0, width = 0.4;
  bool check = false;
  double check_tol = 1e-6;
};

int cmd_pair(const Session& s, const PairArgs& a) {
  ws_kind kind;
  check(ws_parse_kind(a.p.kind.c_str(), &kind));
  const ws_complex mu = parse_complex(a.p.mu), nu = parse_complex(a.p.nu), rho = parse_complex(a.p.rho);
  ws_result* raw = nullptr;
  check(ws_evaluate(s.cfg, kind, mu, nu, rho, {1.0, 0.0}, 1, &raw));
  Result r(raw);
  ws_complex value{};
  check(ws_result_pair_bump(s.cfg, r.get(), a.center, a.width, &value));
  std::optional<ws_complex> oracle;
  double oracle_err = 0.0, diff = 0.0;
  if (a.check) {
    ws_complex o{};
    check(ws_oracle_pairing(s.cfg, kind, mu, nu, rho, a.center, a.width, &o, &oracle_err));
    oracle = o;
    diff = std::hypot(value.re - o.re, value.im - o.im);
  }
  const bool mismatch = oracle && !(diff <= a.check_tol);

  if (s.format == Format::Json) {
    json out;
    out["schema"] = "ws-kernel/1";
    out["command"] = "pair";
    out["params"] = params_json(a.p);
    out["test_function"] = json{{"type", "bump"}, {"center", a.center}, {"width", a.width}};
    out["regime"] = ws_result_regime(r.get());
    out["value"] = cjson(value);
    if (oracle) {
      out["oracle"] = cjson(*oracle);
      out["oracle_abs_error"] = oracle_err;
      out["abs_diff"] = diff;
      out["check_tol"] = a.check_tol;
      out["check_pass"] = !mismatch;
    }
    emit(s, out.dump(2) + "\n");
  } else if (s.format == Format::Csv) {
    auto head = kParamHeader;
    head.insert(head.end(), {"center", "width", "value_re", "value_im", "oracle_re", "oracle_im", "abs_diff"});
    auto row = params_cells(a.p);
    row.insert(row.end(), {num(a.center), num(a.width), num(value.re), num(value.im),
                           oracle ? num(oracle->re) : "", oracle ? num(oracle->im) : "", oracle ? num(diff) : ""});
    emit(s, csv_line(head) + csv_line(row));
  } else {
    std::ostringstream os;
    os << "pairing: " << ctext(value) << "\n";
    if (oracle) {
      os << "oracle: " << ctext(*oracle) << "  (abs error " << num(oracle_err) << ")\n";
      os << "abs diff: " << num(diff) << (mismatch ? "  ABOVE " : "  within ") << num(a.check_tol) << "\n";
    }
    emit(s, os.str());
  }
  if (mismatch) {
    std::cerr << "ws: oracle discrepancy " << num(diff) << " above --check-tol " << num(a.check_tol) << "\n";
    return exit_code(WS_E_CHECK);
  }
  return 0;
}

// --- oracle -------------------------------------------------------------------

struct OracleArgs {
  Integral p;
  std::optional<std::string> x;
  std::optional<double> center, width;
  bool check = false;
  double check_tol = 1e-8;
};

int cmd_oracle(const Session& s, const OracleArgs& a) {
  ws_kind kind;
  check(ws_parse_kind(a.p.kind.c_str(), &kind));
  const ws_complex mu = parse_complex(a.p.mu), nu = parse_complex(a.p.nu), rho = parse_complex(a.p.rho);
  const bool pairing = a.center.has_value();
  if (pairing != a.width.has_value()) throw Failure{WS_E_ARGUMENT, "--center and --width go together"};
  if (!pairing && !a.x) throw Failure{WS_E_ARGUMENT, "give --x (or --z), or --center and --width"};
  ws_complex value{};
  double err = 0.0;
  ws_complex closed{};
  const ws_complex arg = pairing ? ws_complex{1.0, 0.0} : parse_complex(*a.x);
  if (pairing) check(ws_oracle_pairing(s.cfg, kind, mu, nu, rho, *a.center, *a.width, &value, &err));
  else check(ws_oracle_function(s.cfg, kind, mu, nu, rho, arg, &value, &err));
  double diff = 0.0;
  if (a.check) {
    ws_result* raw = nullptr;
    check(ws_evaluate(s.cfg, kind, mu, nu, rho, arg, pairing, &raw));
    Result r(raw);
    if (pairing) check(ws_result_pair_bump(s.cfg, r.get(), *a.center, *a.width, &closed));
    else closed = ws_result_value(r.get());
    diff = std::hypot(value.re - closed.re, value.im - closed.im);
  }
  const double scale = pairing ? 1.0 : std::max(1.0, std::hypot(value.re, value.im));
  const bool mismatch = a.check && !(diff <= a.check_tol * scale);

  if (s.format == Format::Json) {
    json out;
    out["schema"] = "ws-kernel/1";
    out["command"] = "oracle";
    out["params"] = params_json(a.p);
    if (pairing) out["test_function"] = json{{"type", "bump"}, {"center", *a.center}, {"width", *a.width}};
    else out["params"]["x"] = cjson(arg);
    out["oracle"] = cjson(value);
    out["oracle_abs_error"] = err;
    if (a.check) {
      out["closed_form"] = cjson(closed);
      out["abs_diff"] = diff;
      out["check_pass"] = !mismatch;
    }
    emit(s, out.dump(2) + "\n");
  } else if (s.format == Format::Csv) {
    auto head = kParamHeader;
    head.insert(head.end(), {"x_re", "x_im", "center", "width", "oracle_re", "oracle_im", "oracle_abs_error",
                             "value_re", "value_im", "abs_diff"});
    auto row = params_cells(a.p);
    row.insert(row.end(), {pairing ? "" : num(arg.re), pairing ? "" : num(arg.im), pairing ? num(*a.center) : "",
                           pairing ? num(*a.width) : "", num(value.re), num(value.im), num(err),
                           a.check ? num(closed.re) : "", a.check ? num(closed.im) : "", a.check ? num(diff) : ""});
    emit(s, csv_line(head) + csv_line(row));
  } else {
    std::ostringstream os;
    os << "oracle: " << ctext(value) << "  (abs error " << num(err) << ")\n";
    if (a.check) os << "closed form: " << ctext(closed) << "\nabs diff: " << num(diff) << "\n";
    emit(s, os.str());
  }
  return mismatch ? exit_code(WS_E_CHECK) : 0;
}

// --- kernel -------------------------------------------------------------------

struct KernelArgs {
  std::string which;
  double mu = 0.0, nu = 0.0;
  std::string gamma = "0";
  std::vector<double> window;
  std::string sign = "+";
  bool outside = false;
  std::optional<double> x, y;
  double lo = 0.5, hi = 5.0;
  int n = 10;
  std::optional<double> pair_center, pair_width;
};

int cmd_kernel(const Session& s, const KernelArgs& a) {
  ws_kernel_spec spec{};
  spec.kind = a.which == "projection" ? WS_KERNEL_PROJECTION : a.which == "power" ? WS_KERNEL_POWER : WS_KERNEL_WAVE;
  spec.mu = a.mu;
  spec.nu = a.which == "power" ? a.mu : a.nu;
  spec.gamma = parse_complex(a.gamma);
  if (a.sign != "+" && a.sign != "-") throw Failure{WS_E_ARGUMENT, "--sign must be + or -"};
  spec.sign = a.sign == "-" ? -1 : 1;
  spec.allow_outside_hypothesis = a.outside;
  if (spec.kind == WS_KERNEL_PROJECTION) {
    if (a.window.size() != 2) throw Failure{WS_E_ARGUMENT, "projection needs --window a,b"};
    spec.window_lo = a.window[0];
    spec.window_hi = a.window[1];
  }
  if (a.pair_center.has_value() != a.pair_width.has_value()) {
    throw Failure{WS_E_ARGUMENT, "--pair-center and --pair-width go together"};
  }
  if (!(a.n >= 1) || !(a.hi >= a.lo)) throw Failure{WS_E_ARGUMENT, "grid needs --n >= 1 and --grid-max >= --grid-min"};

  // The (x, y) points: a single point, the diagonal y = 1 when pairing, or an n x n grid.
  std::vector<double> xs, ys;
  auto axis = [&](std::optional<double> fixed) {
    std::vector<double> v;
    if (fixed) return std::vector<double>{*fixed};
    for (int i = 0; i < a.n; ++i) v.push_back(a.n == 1 ? a.lo : a.lo + (a.hi - a.lo) * i / (a.n - 1));
    return v;
  };
  if (a.pair_center) {
    xs = {a.x.value_or(a.y.value_or(1.0))};
    ys = {a.y.value_or(xs[0])};
  } else {
    xs = axis(a.x);
    ys = axis(a.y);
  }

  json rows = json::array();
  std::string csv = csv_line({"x", "y", "kind", "value_re", "value_im", "pairing_re", "pairing_im", "test_at_1"});
  std::ostringstream text;
  std::vector<std::string> notes;
  for (double x : xs) {
    for (double y : ys) {
      ws_result* raw = nullptr;
      const ws_status st = ws_kernel(&spec, x, y, &raw);
      if (st == WS_E_ARGUMENT && x == y && (xs.size() > 1 || ys.size() > 1)) {
        // Grid points on the diagonal may have neither a value nor a distribution.
        const std::string why = ws_last_error();
        rows.push_back(json{{"x", x}, {"y", y}, {"kind", "undefined"}, {"reason", why}});
        csv += csv_line({num(x), num(y), "undefined", "", "", "", "", ""});
        text << "K(" << num(x) << ", " << num(y) << ") undefined: " << why << "\n";
        continue;
      }
      check(st);
      Result r(raw);
      for (size_t i = 0; i < ws_result_note_count(r.get()); ++i) {
        const std::string nt = ws_result_note(r.get(), i);
        if (std::find(notes.begin(), notes.end(), nt) == notes.end()) notes.push_back(nt);
      }
      json row{{"x", x}, {"y", y}};
      const bool scalar = ws_result_is_scalar(r.get());
      row["kind"] = scalar ? "value" : "distribution";
      std::vector<std::string> cells = {num(x), num(y), scalar ? "value" : "distribution"};
      if (scalar) {
        const ws_complex v = ws_result_value(r.get());
        row["value"] = cjson(v);
        cells.insert(cells.end(), {num(v.re), num(v.im)});
        text << "K(" << num(x) << ", " << num(y) << ") = " << ctext(v) << "\n";
      } else {
        cells.insert(cells.end(), {"", ""});
      }
      if (!scalar && a.pair_center) {
        ws_complex v{};
        check(ws_result_pair_bump(s.cfg, r.get(), *a.pair_center, *a.pair_width, &v));
        // Bump value at ratio 1, for comparison with the gamma = 0 closure.
        const double t = (1.0 - *a.pair_center) / *a.pair_width;
        const double at1 = std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
        row["pairing"] = cjson(v);
        row["test_at_ratio_1"] = at1;
        cells.insert(cells.end(), {num(v.re), num(v.im), num(at1)});
        text << "<K(r y, y), phi(r)> at y = " << num(y) << ": " << ctext(v) << "  (phi(1) = " << num(at1) << ")\n";
      } else {
        cells.insert(cells.end(), {"", "", ""});
        if (!scalar) text << "K(" << num(x) << ", " << num(y) << ") is a distribution in x / y\n";
      }
      rows.push_back(row);
      csv += csv_line(cells);
    }
  }
  if (s.format == Format::Json) {
    json out;
    out["schema"] = "ws-kernel/1";
    out["command"] = "kernel";
    out["kernel"] = a.which;
    out["params"] = json{{"mu", a.mu}, {"nu", spec.nu}, {"gamma", cjson(spec.gamma)}};
    if (spec.kind == WS_KERNEL_PROJECTION) out["params"]["window"] = a.window;
    if (spec.kind == WS_KERNEL_WAVE) out["params"]["sign"] = a.sign;
    out["values"] = rows;
    out["notes"] = notes;
    emit(s, out.dump(2) + "\n");
  } else if (s.format == Format::Csv) {
    emit(s, csv);
  } else {
    for (const auto& nt : notes) text << "note: " << nt << "\n";
    emit(s, text.str());
  }
  return 0;
}

// --- selftest -----------------------------------------------------------------

int cmd_selftest(const Session& s, const std::vector<int>& only) {
  // Lines go out as each criterion finishes when writing to stdout.
  struct Sink {
    bool live;
    std::string text;
  } sink{s.out_path.empty(), {}};
  auto cb = [](const char* line, void* user) {
    auto* k = static_cast<Sink*>(user);
    if (k->live) {
      std::cout << line << "\n";
      std::cout.flush();
    } else {
      k->text += std::string(line) + "\n";
    }
  };
  int passed = 0, total = 0;
  check(ws_selftest(s.cfg, only.empty() ? nullptr : only.data(), only.size(), cb, &sink, &passed, &total));
  const std::string summary = std::to_string(passed) + "/" + std::to_string(total) + " criteria passed\n";
  if (sink.live) std::cout << summary;
  else emit(s, sink.text + summary);
  return passed == total ? 0 : exit_code(WS_E_CHECK);
}

void report_failure(const Session* s, const std::string& command, const Failure& f) {
  std::cerr << "ws " << command << ": " << f.message << "\n";
  if (!s || !s->cfg) return;
  try {
    if (s->format == Format::Json) {
      json out;
      out["schema"] = "ws-kernel/1";
      out["command"] = command;
      out["error"] = json{{"code", exit_code(f.status)}, {"status", status_name(f.status)}, {"message", f.message}};
      emit(*s, out.dump(2) + "\n");
    } else if (s->format == Format::Csv) {
      emit(*s, csv_line({"error_code", "status", "message"}) +
                   csv_line({std::to_string(exit_code(f.status)), status_name(f.status), "\"" + f.message + "\""}));
    } else {
      emit(*s, std::string("error (") + status_name(f.status) + "): " + f.message + "\n");
    }
  } catch (...) {
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weber-Schafheitlin integrals, distributional pairings and Bessel-operator kernels"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "json, csv or text (default json)");
    sub->add_option("--out", common.out, "write to this file instead of stdout");
    sub->add_option("--config", common.config, "JSON settings file (fallback: $WS_CONFIG)");
    sub->add_flag("--strict-degenerate", common.strict_degenerate,
                  "reject rho in Z with (1-rho+-mu+nu)/2 in Z instead of evaluating by continuity");
  };

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "closed form, pointwise or as a distribution in x");
  add_integral_options(eval, ev.p);
  auto* xopt = eval->add_option("--x,--z", ev.x, "argument x > 0 (z for kj, ki)");
  eval->add_flag("--x-symbolic", ev.symbolic, "return the distribution in x")->excludes(xopt);
  add_common(eval);

  PairArgs pa;
  auto* pair = app.add_subcommand("pair", "pair the distribution with a bump test function");
  add_integral_options(pair, pa.p);
  pair->add_option("--center", pa.center, "bump center")->capture_default_str();
  pair->add_option("--width", pa.width, "bump half width")->capture_default_str();
  pair->add_flag("--check", pa.check, "compare with the quadrature oracle");
  pair->add_option("--check-tol", pa.check_tol, "absolute tolerance for --check")->capture_default_str();
  add_common(pair);

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "brute-force quadrature value");
  add_integral_options(oracle, oa.p);
  oracle->add_option("--x,--z", oa.x, "argument x > 0 (z for kj, ki)");
  oracle->add_option("--center", oa.center, "bump center (pairing mode)");
  oracle->add_option("--width", oa.width, "bump half width (pairing mode)");
  oracle->add_flag("--check", oa.check, "compare with the closed form");
  oracle->add_option("--check-tol", oa.check_tol, "relative tolerance for --check")->capture_default_str();
  add_common(oracle);

  KernelArgs ka;
  auto* kernel = app.add_subcommand("kernel", "kernels of functions of the Bessel operator");
  kernel->add_option("which", ka.which, "projection, power or wave")
      ->required()
      ->check(CLI::IsMember({"projection", "power", "wave"}));
  kernel->add_option("--mu", ka.mu, "order mu > -1")->capture_default_str();
  kernel->add_option("--nu", ka.nu, "second order (wave)")->capture_default_str();
  kernel->add_option("--gamma", ka.gamma, "power of H (power, wave)")->capture_default_str();
  kernel->add_option("--window", ka.window, "spectral window a,b (projection)")->delimiter(',')->expected(2);
  kernel->add_option("--sign", ka.sign, "+ or - (wave)")->capture_default_str();
  kernel->add_flag("--allow-outside-hypothesis", ka.outside, "wave kernels with mu or nu <= 1, tagged");
  kernel->add_option("--x", ka.x, "single x instead of the grid");
  kernel->add_option("--y", ka.y, "single y instead of the grid");
  kernel->add_option("--grid-min", ka.lo, "grid start")->capture_default_str();
  kernel->add_option("--grid-max", ka.hi, "grid end")->capture_default_str();
  kernel->add_option("--n", ka.n, "grid points per axis")->capture_default_str();
  kernel->add_option("--pair-center", ka.pair_center, "pair a distributional kernel with a bump in x / y");
  kernel->add_option("--pair-width", ka.pair_width, "bump half width for --pair-center");
  add_common(kernel);

  std::vector<int> only;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria and print a pass/fail table");
  selftest->add_option("--only", only, "criterion ids, e.g. 1,3")->delimiter(',');
  add_common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Session session;
  try {
    open_session(session, common);
    if (command == "eval") {
      cmd_eval(session, ev);
      return 0;
    }
    if (command == "pair") return cmd_pair(session, pa);
    if (command == "oracle") return cmd_oracle(session, oa);
    if (command == "kernel") return cmd_kernel(session, ka);
    return cmd_selftest(session, only);
  } catch (const Failure& f) {
    report_failure(&session, command, f);
    return exit_code(f.status);
  } catch (const std::exception& e) {
    report_failure(&session, command, Failure{WS_E_NUMERIC, e.what()});
    return 4;
  }
}
