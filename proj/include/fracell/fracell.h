/* C interface to the fracell toolkit.
 *
 * Every call returns a fracell_status. On failure the thread-local message
 * from fracell_last_error() describes the cause. Strings returned through
 * char** parameters are owned by the caller and released with
 * fracell_string_free(). Handles are released with their *_free function;
 * passing NULL to a free function is a no-op.
 *
 * Transform convention: u_hat(lambda) = int u(x) exp(i lambda x) dx. The
 * symbol lambda^a of a one-axis operator takes arg(lambda) = pi on the
 * negative axis.
 */
#ifndef FRACELL_FRACELL_H_
#define FRACELL_FRACELL_H_

#include <stddef.h>

#if defined(_WIN32)
#if defined(FRACELL_BUILDING_LIBRARY)
#define FRACELL_API __declspec(dllexport)
#else
#define FRACELL_API __declspec(dllimport)
#endif
#else
#define FRACELL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fracell_status {
  FRACELL_OK = 0,
  FRACELL_ERR_INVALID_ARGUMENT = 1,
  FRACELL_ERR_NON_CONVERGENT = 2,
  FRACELL_ERR_DOMAIN_ORDER = 3,
  FRACELL_ERR_WRONG_SIGN = 4,
  FRACELL_ERR_NOT_SMOOTH_ENOUGH = 5,
  FRACELL_ERR_NOT_ANALYTIC = 6,
  FRACELL_ERR_BRANCH_COLLISION = 7,
  FRACELL_ERR_DC_UNDEFINED = 8,
  FRACELL_ERR_EDGE_LEAKAGE = 9,
  FRACELL_ERR_DIMENSION_MISMATCH = 10,
  FRACELL_ERR_NOT_ELLIPTIC = 11,
  FRACELL_ERR_NO_R_FOUND = 12,
  FRACELL_ERR_CUTOFF_EXCEEDS_NYQUIST = 13,
  FRACELL_ERR_TOO_FEW_BANDS = 14,
  FRACELL_ERR_UNRELIABLE_ESTIMATE = 15,
  FRACELL_ERR_UNKNOWN_CHECK_ID = 16,
  FRACELL_ERR_UNKNOWN_CATALOG_ENTRY = 17,
  FRACELL_ERR_PARSE = 18,
  FRACELL_ERR_IO = 19,
  FRACELL_ERR_PARAMETRIX_SINGULAR = 20,
  FRACELL_ERR_INTERNAL = 99
} fracell_status;

typedef struct fracell_function fracell_function;
typedef struct fracell_symbol fracell_symbol;
typedef struct fracell_field fracell_field;

FRACELL_API const char* fracell_version(void);
FRACELL_API const char* fracell_last_error(void);
/* CamelCase error name, e.g. "NotElliptic"; "Ok" for FRACELL_OK. */
FRACELL_API const char* fracell_status_name(fracell_status status);
FRACELL_API void fracell_string_free(char* s);

/* ---- test functions ---- */

/* Accepts a catalog name (gaussian, step, bump, power, exp) or a JSON object
 * such as {"kind":"power","p":1}. */
FRACELL_API fracell_status fracell_function_parse(const char* text, fracell_function** out);
FRACELL_API void fracell_function_free(fracell_function* f);
FRACELL_API fracell_status fracell_function_to_json(const fracell_function* f, char** out_json);
FRACELL_API fracell_status fracell_function_eval(const fracell_function* f, const double* x, size_t count,
                                                 double* out);
/* JSON array of catalog names. */
FRACELL_API fracell_status fracell_catalog_names(char** out_json);

/* ---- differintegrals ---- */

typedef enum fracell_method {
  FRACELL_METHOD_QUADRATURE = 0,
  FRACELL_METHOD_FOURIER = 1,
  FRACELL_METHOD_HANKEL = 2,
  FRACELL_METHOD_CAPUTO = 3
} fracell_method;

typedef enum fracell_outer {
  FRACELL_OUTER_AUTO = 0,
  FRACELL_OUTER_ANALYTIC = 1,
  FRACELL_OUTER_FINITE_DIFFERENCE = 2
} fracell_outer;

typedef struct fracell_order {
  double nu_re;
  double nu_im;
  int base_is_finite; /* 0 selects c = -inf */
  double base;
} fracell_order;

typedef struct fracell_quadrature {
  int subintervals;
  double grading;
  double truncation_length; /* <= 0 selects the automatic tail cut */
  fracell_outer outer;
  int hankel_nodes;
  double hankel_radius; /* <= 0 selects |x - c| / 2 */
  double fourier_extent; /* box for pointwise Fourier evaluation */
  int fourier_points;
} fracell_quadrature;

FRACELL_API void fracell_quadrature_defaults(fracell_quadrature* q);

/* Pointwise evaluation. The Fourier method samples f on a centred box of
 * q->fourier_extent and interpolates linearly. */
FRACELL_API fracell_status fracell_differint(const fracell_function* f, const fracell_order* ord,
                                             fracell_method method, const fracell_quadrature* q,
                                             const double* x, size_t count, double* out_re,
                                             double* out_im);

/* Evaluation on the uniform grid x0 + i dx, i < count. The Fourier method
 * treats the grid as a periodic box. */
FRACELL_API fracell_status fracell_differint_grid(const fracell_function* f, const fracell_order* ord,
                                                  fracell_method method, const fracell_quadrature* q,
                                                  double x0, double dx, size_t count, double* out_re,
                                                  double* out_im);

/* Gamma-function closed form for power (c = 0) and exponential (c = -inf). */
FRACELL_API fracell_status fracell_closed_form(const fracell_function* f, double nu_re, double nu_im,
                                               double x, double* out_re, double* out_im, int* pole);

/* ---- symbols ---- */

/* {"dim": n, "terms": [{"c": [re, im], "alpha": [a1, ..., an]}, ...]} */
FRACELL_API fracell_status fracell_symbol_parse(const char* json, fracell_symbol** out);
FRACELL_API void fracell_symbol_free(fracell_symbol* p);
FRACELL_API int fracell_symbol_dim(const fracell_symbol* p);
FRACELL_API fracell_status fracell_symbol_eval(const fracell_symbol* p, const double* lambda, size_t dim,
                                               double* out_re, double* out_im);
/* Order, gap, principal symbol, ellipticity report and (C, R) bounds as JSON. */
FRACELL_API fracell_status fracell_symbol_report(const fracell_symbol* p, double scan_max,
                                                 unsigned long long seed, char** out_json);

/* ---- fields ---- */

typedef struct fracell_grid {
  int dim;
  double extent;
  int points;
} fracell_grid;

/* Tensor product of one function per axis (or one function for all axes). */
FRACELL_API fracell_status fracell_field_sample(const fracell_grid* grid, const fracell_function* const* axes,
                                                size_t n_axes, fracell_field** out);
FRACELL_API fracell_status fracell_field_load(const char* path, fracell_field** out);
FRACELL_API fracell_status fracell_field_save(const fracell_field* u, const char* path);
FRACELL_API fracell_status fracell_field_write_csv(const fracell_field* u, const char* path);
FRACELL_API fracell_status fracell_field_grid(const fracell_field* u, fracell_grid* out);
FRACELL_API fracell_status fracell_field_values(const fracell_field* u, double* out_re, double* out_im,
                                                size_t count);
FRACELL_API void fracell_field_free(fracell_field* u);

/* ---- solver ---- */

/* u = E * f with the cutoff parametrix; R_hint <= 0 picks R automatically.
 * The report carries R, the residual spectrum bound above R + 1, and the
 * regularity estimate of u. Either output field pointer may be NULL. */
FRACELL_API fracell_status fracell_solve(const fracell_symbol* p, const fracell_field* f, double R_hint,
                                         fracell_field** u, fracell_field** residual, char** report_json);

/* ---- Sobolev ---- */

FRACELL_API fracell_status fracell_sobolev_norm(const fracell_field* u, double s, double* out);
/* bands_per_octave <= 0 and min_radius <= 0 select the defaults. */
FRACELL_API fracell_status fracell_estimate_regularity(const fracell_field* u, int bands_per_octave,
                                                       double min_radius, char** out_json);
FRACELL_API fracell_status fracell_shell_spectrum_csv(const fracell_field* u, int bands_per_octave,
                                                      char** out_csv);

/* ---- verification ---- */

/* n_ids == 0 runs every check. */
FRACELL_API fracell_status fracell_verify(const char* const* ids, size_t n_ids, char** out_json,
                                          int* all_pass);
FRACELL_API fracell_status fracell_commutator_check(double alpha, const fracell_function* u,
                                                    const fracell_function* phi, char** out_json,
                                                    int* pass);
/* matrix_json == NULL runs the default matrix. out_json holds rows with band
 * tables; out_csv holds the experiment table. */
FRACELL_API fracell_status fracell_experiment_regularity(const char* matrix_json, char** out_csv,
                                                         char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* FRACELL_FRACELL_H_ */
