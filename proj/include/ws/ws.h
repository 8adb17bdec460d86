#ifndef WS_WS_H
#define WS_WS_H

/* C interface to the Weber-Schafheitlin evaluator, the quadrature oracle and
 * the Bessel-operator kernels.  Every call returns a status code; on failure
 * ws_last_error() holds a message for the calling thread.  Strings returned
 * through char** are owned by the caller and released with ws_string_free. */

#include <stddef.h>

#if defined(WS_BUILDING_LIBRARY)
#define WS_API __attribute__((visibility("default")))
#else
#define WS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  WS_OK = 0,
  WS_E_ARGUMENT = 1,   /* malformed input, bad config key, bad test function */
  WS_E_VALIDITY = 2,   /* parameters outside the convergence region */
  WS_E_DEGENERATE = 3, /* unsupported degenerate integer case (strict mode) */
  WS_E_NUMERIC = 4,    /* series, quadrature or extrapolation failure */
  WS_E_CHECK = 5       /* oracle comparison above tolerance */
} ws_status;

typedef enum { WS_KIND_JJ, WS_KIND_HPLUS_J, WS_KIND_HMINUS_J, WS_KIND_KJ, WS_KIND_KI } ws_kind;

typedef enum { WS_KERNEL_PROJECTION, WS_KERNEL_POWER, WS_KERNEL_WAVE } ws_kernel_kind;

typedef struct {
  double re, im;
} ws_complex;

typedef struct ws_config ws_config;
typedef struct ws_result ws_result;

WS_API const char* ws_version(void);
WS_API const char* ws_last_error(void);
WS_API void ws_string_free(char* s);

/* Settings; defaults are built in. */
WS_API ws_config* ws_config_new(void);
WS_API void ws_config_free(ws_config* cfg);
/* Apply a JSON object of settings (keys as in the config file). */
WS_API ws_status ws_config_apply_json(ws_config* cfg, const char* json_text);
WS_API ws_status ws_config_apply_file(ws_config* cfg, const char* path);
/* Reject rho in Z with (1 - rho +- mu + nu)/2 in Z instead of continuing. */
WS_API void ws_config_set_strict_degenerate(ws_config* cfg, int strict);
/* "json", "csv" or "text"; output path, "" for stdout; seed. */
WS_API const char* ws_config_format(const ws_config* cfg);
WS_API const char* ws_config_out_path(const ws_config* cfg);
WS_API unsigned long long ws_config_seed(const ws_config* cfg);
WS_API ws_status ws_config_to_json(const ws_config* cfg, char** json_out);

WS_API ws_status ws_parse_kind(const char* name, ws_kind* out);

/* Closed form.  arg is x > 0 (JJ, H+-J) or z (K kinds); symbolic asks for the
 * distribution in x. */
WS_API ws_status ws_evaluate(const ws_config* cfg, ws_kind kind, ws_complex mu, ws_complex nu, ws_complex rho,
                             ws_complex arg, int symbolic, ws_result** out);
WS_API void ws_result_free(ws_result* r);
WS_API int ws_result_is_scalar(const ws_result* r);
WS_API ws_complex ws_result_value(const ws_result* r);
WS_API const char* ws_result_regime(const ws_result* r);
WS_API size_t ws_result_note_count(const ws_result* r);
WS_API const char* ws_result_note(const ws_result* r, size_t i);
/* Pairing with the bump exp(-1/(1-t^2)), t = (x - center)/width. */
WS_API ws_status ws_result_pair_bump(const ws_config* cfg, const ws_result* r, double center, double width,
                                     ws_complex* out);
/* Full record: scalar value or term list, regime, notes. */
WS_API ws_status ws_result_to_json(const ws_result* r, char** json_out);
/* Re-read a term list written by ws_result_to_json. */
WS_API ws_status ws_result_from_json(const char* json_text, ws_result** out);

/* Quadrature oracle. */
WS_API ws_status ws_oracle_function(const ws_config* cfg, ws_kind kind, ws_complex mu, ws_complex nu,
                                    ws_complex rho, ws_complex arg, ws_complex* value, double* abs_error);
WS_API ws_status ws_oracle_pairing(const ws_config* cfg, ws_kind kind, ws_complex mu, ws_complex nu,
                                   ws_complex rho, double center, double width, ws_complex* value,
                                   double* abs_error);

/* Kernels of functions of H_mu at (x, y).  window_lo/hi are used by the
 * projection kernel only; sign is +1 or -1 for wave-operator kernels. */
typedef struct {
  ws_kernel_kind kind;
  double mu, nu;
  ws_complex gamma;
  double window_lo, window_hi;
  int sign;
  int allow_outside_hypothesis;
} ws_kernel_spec;

WS_API ws_status ws_kernel(const ws_kernel_spec* spec, double x, double y, ws_result** out);

/* Acceptance criteria; ids may be NULL (all).  The callback, if any, gets one
 * formatted line per criterion.  *passed counts passing criteria. */
typedef void (*ws_line_callback)(const char* line, void* user);
WS_API ws_status ws_selftest(const ws_config* cfg, const int* ids, size_t n_ids, ws_line_callback cb, void* user,
                             int* passed, int* total);

#ifdef __cplusplus
}
#endif

#endif
