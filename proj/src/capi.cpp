#include "ws/ws.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "ws/abkernel.hpp"
#include "ws/acceptance.hpp"
#include "ws/config.hpp"
#include "ws/error.hpp"
#include "ws/oracle.hpp"
#include "ws/serialize.hpp"
#include "ws/wsint.hpp"

struct ws_config {
  ws::RunConfig run;
  bool strict_degenerate = false;
  std::string format_name = "json";
};

struct ws_result {
  bool scalar = true;
  ws::cplx value{};
  std::string regime = "function";
  ws::GeneralizedFunction dist;
  std::vector<std::string> notes;
};

namespace {

thread_local std::string g_last_error;

ws_status status_of(ws::ErrorCode c) {
  switch (c) {
    case ws::ErrorCode::Validity: return WS_E_VALIDITY;
    case ws::ErrorCode::UnsupportedDegenerate: return WS_E_DEGENERATE;
    case ws::ErrorCode::InvalidArgument:
    case ws::ErrorCode::Parse: return WS_E_ARGUMENT;
    default: return WS_E_NUMERIC;
  }
}

template <class F>
ws_status guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return WS_OK;
  } catch (const ws::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WS_E_NUMERIC;
  }
}

ws_status fail(ws_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

ws::cplx to_cplx(ws_complex z) { return {z.re, z.im}; }
ws_complex from_cplx(ws::cplx z) { return {z.real(), z.imag()}; }

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

const ws::RunConfig& run_of(const ws_config* cfg) {
  static const ws::RunConfig defaults;
  return cfg ? cfg->run : defaults;
}

ws::WSOptions options_of(const ws_config* cfg) {
  ws::WSOptions o;
  if (cfg) {
    o.strict_degenerate = cfg->strict_degenerate;
    o.series = cfg->run.series;
  }
  return o;
}

ws::IntegralKind kind_of(ws_kind k) {
  switch (k) {
    case WS_KIND_JJ: return ws::IntegralKind::JJ;
    case WS_KIND_HPLUS_J: return ws::IntegralKind::HplusJ;
    case WS_KIND_HMINUS_J: return ws::IntegralKind::HminusJ;
    case WS_KIND_KJ: return ws::IntegralKind::KJ;
    case WS_KIND_KI: return ws::IntegralKind::KI;
  }
  throw ws::Error(ws::ErrorCode::InvalidArgument, "unknown integral kind");
}

ws::WSParams params(ws_kind kind, ws_complex mu, ws_complex nu, ws_complex rho, ws_complex arg, bool symbolic) {
  ws::WSParams p;
  p.kind = kind_of(kind);
  p.mu = to_cplx(mu);
  p.nu = to_cplx(nu);
  p.rho = to_cplx(rho);
  p.arg = to_cplx(arg);
  p.symbolic = symbolic;
  return p;
}

}  // namespace

extern "C" {

const char* ws_version(void) { return "1.0.0"; }

const char* ws_last_error(void) { return g_last_error.c_str(); }

void ws_string_free(char* s) { std::free(s); }

ws_config* ws_config_new(void) {
  try {
    return new ws_config;
  } catch (...) {
    return nullptr;
  }
}

void ws_config_free(ws_config* cfg) { delete cfg; }

ws_status ws_config_apply_json(ws_config* cfg, const char* json_text) {
  if (!cfg || !json_text) return fail(WS_E_ARGUMENT, "null argument");
  return guard([&] {
    ws::RunConfig next = cfg->run;
    ws::apply_config_text(next, json_text);
    cfg->run = next;
    cfg->format_name = ws::to_string(cfg->run.format);
  });
}

ws_status ws_config_apply_file(ws_config* cfg, const char* path) {
  if (!cfg || !path) return fail(WS_E_ARGUMENT, "null argument");
  return guard([&] {
    ws::RunConfig next = cfg->run;
    ws::apply_config_file(next, path);
    cfg->run = next;
    cfg->format_name = ws::to_string(cfg->run.format);
  });
}

void ws_config_set_strict_degenerate(ws_config* cfg, int strict) {
  if (cfg) cfg->strict_degenerate = strict != 0;
}

const char* ws_config_format(const ws_config* cfg) { return cfg ? cfg->format_name.c_str() : "json"; }

const char* ws_config_out_path(const ws_config* cfg) { return cfg ? cfg->run.out_path.c_str() : ""; }

unsigned long long ws_config_seed(const ws_config* cfg) { return run_of(cfg).seed; }

ws_status ws_config_to_json(const ws_config* cfg, char** json_out) {
  if (!json_out) return fail(WS_E_ARGUMENT, "null argument");
  return guard([&] { *json_out = dup(ws::config_to_json_text(run_of(cfg))); });
}

ws_status ws_parse_kind(const char* name, ws_kind* out) {
  if (!name || !out) return fail(WS_E_ARGUMENT, "null argument");
  const std::string n = name;
  if (n == "jj") *out = WS_KIND_JJ;
  else if (n == "hplus" || n == "h+j" || n == "hplusj") *out = WS_KIND_HPLUS_J;
  else if (n == "hminus" || n == "h-j" || n == "hminusj") *out = WS_KIND_HMINUS_J;
  else if (n == "kj") *out = WS_KIND_KJ;
  else if (n == "ki") *out = WS_KIND_KI;
  else return fail(WS_E_ARGUMENT, "unknown kind \"" + n + "\" (expected jj, hplus, hminus, kj, ki)");
  return WS_OK;
}

ws_status ws_evaluate(const ws_config* cfg, ws_kind kind, ws_complex mu, ws_complex nu, ws_complex rho,
                      ws_complex arg, int symbolic, ws_result** out) {
  if (!out) return fail(WS_E_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] {
    const ws::WSResult w = ws::evaluate(params(kind, mu, nu, rho, arg, symbolic != 0), options_of(cfg));
    auto* r = new ws_result;
    r->scalar = w.is_scalar;
    r->value = w.value;
    r->regime = ws::to_string(w.regime);
    r->dist = w.dist;
    r->notes = w.notes;
    *out = r;
  });
}

void ws_result_free(ws_result* r) { delete r; }

int ws_result_is_scalar(const ws_result* r) { return r && r->scalar ? 1 : 0; }

ws_complex ws_result_value(const ws_result* r) { return r ? from_cplx(r->value) : ws_complex{0.0, 0.0}; }

const char* ws_result_regime(const ws_result* r) { return r ? r->regime.c_str() : ""; }

size_t ws_result_note_count(const ws_result* r) { return r ? r->notes.size() : 0; }

const char* ws_result_note(const ws_result* r, size_t i) {
  return r && i < r->notes.size() ? r->notes[i].c_str() : nullptr;
}

ws_status ws_result_pair_bump(const ws_config* cfg, const ws_result* r, double center, double width,
                              ws_complex* out) {
  if (!r || !out) return fail(WS_E_ARGUMENT, "null argument");
  if (r->scalar) return fail(WS_E_ARGUMENT, "result is a pointwise value; nothing to pair");
  return guard([&] {
    const ws::Bump phi(center, width);
    *out = from_cplx(ws::pair(r->dist, phi, run_of(cfg).pairing));
  });
}

ws_status ws_result_to_json(const ws_result* r, char** json_out) {
  if (!r || !json_out) return fail(WS_E_ARGUMENT, "null argument");
  return guard([&] {
    ws::json j;
    j["schema"] = ws::kSchema;
    j["regime"] = r->regime;
    j["scalar"] = r->scalar;
    if (r->scalar) j["value"] = ws::to_json(r->value);
    else j["terms"] = ws::to_json(r->dist).at("terms");
    j["notes"] = r->notes;
    *json_out = dup(j.dump(2));
  });
}

ws_status ws_result_from_json(const char* json_text, ws_result** out) {
  if (!json_text || !out) return fail(WS_E_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] {
    ws::json j;
    try {
      j = ws::json::parse(json_text);
    } catch (const ws::json::exception& e) {
      throw ws::Error(ws::ErrorCode::Parse, e.what());
    }
    auto* r = new ws_result;
    try {
      r->regime = j.value("regime", std::string("function"));
      if (j.contains("terms")) {
        r->scalar = false;
        r->dist = ws::generalized_function_from_json(j);
      } else {
        r->value = ws::complex_from_json(j.at("value"));
      }
      if (j.contains("notes")) r->notes = j.at("notes").get<std::vector<std::string>>();
    } catch (const ws::json::exception& e) {
      delete r;
      throw ws::Error(ws::ErrorCode::Parse, e.what());
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

ws_status ws_oracle_function(const ws_config* cfg, ws_kind kind, ws_complex mu, ws_complex nu, ws_complex rho,
                             ws_complex arg, ws_complex* value, double* abs_error) {
  if (!value) return fail(WS_E_ARGUMENT, "null argument");
  return guard([&] {
    const ws::WSParams p = params(kind, mu, nu, rho, arg, false);
    const std::string v = ws::validity_violation(p);
    if (!v.empty()) throw ws::Error(ws::ErrorCode::Validity, v);
    ws::OracleValue o;
    if (p.kind == ws::IntegralKind::KJ || p.kind == ws::IntegralKind::KI) {
      o = ws::quad_kexp(p, run_of(cfg).quad);
    } else {
      if (arg.im != 0.0) throw ws::Error(ws::ErrorCode::InvalidArgument, "x must be real");
      o = ws::quad_ws(p, arg.re, run_of(cfg).quad);
    }
    *value = from_cplx(o.value);
    if (abs_error) *abs_error = o.abs_error;
  });
}

ws_status ws_oracle_pairing(const ws_config* cfg, ws_kind kind, ws_complex mu, ws_complex nu, ws_complex rho,
                            double center, double width, ws_complex* value, double* abs_error) {
  if (!value) return fail(WS_E_ARGUMENT, "null argument");
  return guard([&] {
    const ws::WSParams p = params(kind, mu, nu, rho, {1.0, 0.0}, true);
    const std::string v = ws::validity_violation(p);
    if (!v.empty()) throw ws::Error(ws::ErrorCode::Validity, v);
    const ws::Bump phi(center, width);
    const ws::OracleValue o = ws::quad_pairing(p, phi, run_of(cfg).quad);
    *value = from_cplx(o.value);
    if (abs_error) *abs_error = o.abs_error;
  });
}

ws_status ws_kernel(const ws_kernel_spec* spec, double x, double y, ws_result** out) {
  if (!spec || !out) return fail(WS_E_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] {
    ws::KernelSpec s;
    s.mu = spec->mu;
    s.nu = spec->nu;
    s.gamma = to_cplx(spec->gamma);
    s.sign = spec->sign < 0 ? ws::Side::Minus : ws::Side::Plus;
    s.allow_outside_hypothesis = spec->allow_outside_hypothesis != 0;
    if (spec->kind == WS_KERNEL_PROJECTION) s.window = std::make_pair(spec->window_lo, spec->window_hi);
    auto* r = new ws_result;
    try {
      if (spec->kind == WS_KERNEL_PROJECTION) {
        r->value = ws::projection_kernel(s, x, y);
      } else {
        const ws::KernelValue k =
            spec->kind == WS_KERNEL_POWER ? ws::power_kernel(s, x, y) : ws::wave_operator_kernel(s, x, y);
        r->scalar = k.is_scalar;
        r->value = k.value;
        r->dist = k.dist;
        r->notes = k.notes;
        r->regime = k.is_scalar ? "function" : "distribution";
      }
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

ws_status ws_selftest(const ws_config* cfg, const int* ids, size_t n_ids, ws_line_callback cb, void* user,
                      int* passed, int* total) {
  return guard([&] {
    std::vector<int> only;
    if (ids) only.assign(ids, ids + n_ids);
    const auto results = ws::run_acceptance(run_of(cfg), only, [&](const ws::CriterionResult& r) {
      if (cb) cb(ws::format_line(r).c_str(), user);
    });
    int p = 0;
    for (const auto& r : results) p += r.pass ? 1 : 0;
    if (passed) *passed = p;
    if (total) *total = static_cast<int>(results.size());
  });
}

}  // extern "C"
