/*
 * C interface to the Bergman-space Toeplitz laboratory.
 *
 * Objects are opaque handles created by *_parse / *_build / bergman_run_*
 * and released with the matching *_free. Every fallible call returns a
 * bergman_status; on failure bergman_last_error() holds a message for the
 * calling thread. Strings returned through char** are owned by the caller
 * and released with bergman_string_free.
 */
#ifndef BERGMAN_C_H
#define BERGMAN_C_H

#include <stddef.h>

#if defined(BERGMAN_BUILDING_LIBRARY)
#define BERGMAN_API __attribute__((visibility("default")))
#else
#define BERGMAN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bergman_status {
  BERGMAN_OK = 0,
  BERGMAN_ERR_INVALID_ARGUMENT = 1,
  BERGMAN_ERR_PARSE = 2,
  BERGMAN_ERR_DOMAIN = 3,
  BERGMAN_ERR_NOT_CONVERGED = 4,
  BERGMAN_ERR_NON_FINITE = 5,
  BERGMAN_ERR_DIMENSION = 6,
  BERGMAN_ERR_IO = 7,
  BERGMAN_ERR_INTERNAL = 99
} bergman_status;

typedef enum bergman_domain_kind { BERGMAN_DISK = 0, BERGMAN_ANNULUS = 1 } bergman_domain_kind;

/* Plain value; rho is ignored for the disk. */
typedef struct bergman_domain {
  bergman_domain_kind kind;
  double rho;
} bergman_domain;

typedef struct bergman_quad {
  int n_r;
  int n_theta;
} bergman_quad;

typedef enum bergman_method {
  BERGMAN_METHOD_DEFAULT = 0, /* closed form on the disk, quadrature on the annulus */
  BERGMAN_METHOD_CLOSED_FORM = 1,
  BERGMAN_METHOD_QUADRATURE = 2
} bergman_method;

typedef enum bergman_format { BERGMAN_FORMAT_JSON = 0, BERGMAN_FORMAT_CSV = 1 } bergman_format;

typedef enum bergman_verdict {
  BERGMAN_VERDICT_PASS = 0,
  BERGMAN_VERDICT_FAIL = 1,
  BERGMAN_VERDICT_INCONCLUSIVE = 2
} bergman_verdict;

typedef struct bergman_flags {
  int analytic;
  int conjugate_analytic;
  int radial;
  int harmonic;
  int constant;
  int bounded;
  int bounded_on_disk;
  int bounded_on_annulus;
} bergman_flags;

typedef struct bergman_symbol bergman_symbol;
typedef struct bergman_operator bergman_operator;
typedef struct bergman_coeffs bergman_coeffs;
typedef struct bergman_decomposition bergman_decomposition;
typedef struct bergman_report bergman_report;
typedef struct bergman_moments bergman_moments;
typedef struct bergman_battery bergman_battery;

/* Errors and memory. */
BERGMAN_API const char* bergman_last_error(void);
/* Byte offset of the last parse error, or (size_t)-1. */
BERGMAN_API size_t bergman_last_error_offset(void);
BERGMAN_API void bergman_string_free(char* s);
BERGMAN_API const char* bergman_version(void);

/* Domains: "disk" or "annulus:<rho>". */
BERGMAN_API bergman_status bergman_domain_parse(const char* text, bergman_domain* out);
BERGMAN_API bergman_status bergman_domain_validate(bergman_domain domain);

/* Symbols. */
BERGMAN_API bergman_status bergman_symbol_parse(const char* text, bergman_symbol** out);
BERGMAN_API void bergman_symbol_free(bergman_symbol* s);
BERGMAN_API bergman_status bergman_symbol_to_string(const bergman_symbol* s, char** out);
BERGMAN_API bergman_status bergman_symbol_classify(const bergman_symbol* s, bergman_domain domain,
                                                   bergman_flags* out);
BERGMAN_API int bergman_symbol_integrable_on_disk(const bergman_symbol* s);
BERGMAN_API bergman_status bergman_symbol_eval(const bergman_symbol* s, double re, double im,
                                               double* out_re, double* out_im);

/* Truncated Toeplitz operators. */
BERGMAN_API bergman_status bergman_operator_build(bergman_domain domain, const bergman_symbol* s,
                                                  int trunc, bergman_method method,
                                                  bergman_quad quad, bergman_operator** out);
BERGMAN_API void bergman_operator_free(bergman_operator* op);
BERGMAN_API int bergman_operator_dim(const bergman_operator* op);
BERGMAN_API int bergman_operator_first_index(const bergman_operator* op);
/* Entry <s e_k, e_j> addressed by basis indices. */
BERGMAN_API bergman_status bergman_operator_entry(const bergman_operator* op, int j, int k,
                                                  double* re, double* im);
BERGMAN_API bergman_status bergman_operator_write(const bergman_operator* op, bergman_format format,
                                                  char** out);

/* Bergman projection coefficients <g, e_n>. */
BERGMAN_API bergman_status bergman_project(bergman_domain domain, const bergman_symbol* g, int trunc,
                                           bergman_method method, bergman_quad quad,
                                           bergman_coeffs** out);
BERGMAN_API void bergman_coeffs_free(bergman_coeffs* c);
BERGMAN_API int bergman_coeffs_size(const bergman_coeffs* c);
BERGMAN_API int bergman_coeffs_first_index(const bergman_coeffs* c);
BERGMAN_API bergman_status bergman_coeffs_get(const bergman_coeffs* c, int index, double* re,
                                              double* im);
BERGMAN_API bergman_status bergman_coeffs_write(const bergman_coeffs* c, bergman_format format,
                                                char** out);

/* psi = f + u. */
BERGMAN_API bergman_status bergman_decompose(bergman_domain domain, const bergman_symbol* psi,
                                             int trunc, bergman_quad quad,
                                             bergman_decomposition** out);
BERGMAN_API void bergman_decomposition_free(bergman_decomposition* d);
BERGMAN_API double bergman_decomposition_residual_norm(const bergman_decomposition* d);
/* JSON: full decomposition; CSV: analytic-part coefficients. */
BERGMAN_API bergman_status bergman_decomposition_write(const bergman_decomposition* d,
                                                       bergman_format format, char** out);

/* Experiments. A tolerance <= 0 selects the experiment's default. */
BERGMAN_API bergman_status bergman_run_radial_diagonality(bergman_domain domain,
                                                          const bergman_symbol* s, int trunc,
                                                          bergman_quad quad, double tol,
                                                          bergman_report** out);
BERGMAN_API bergman_status bergman_run_commute_check(bergman_domain domain,
                                                     const bergman_symbol* phi,
                                                     const bergman_symbol* psi, int trunc,
                                                     bergman_method method, bergman_quad quad,
                                                     double tol, bergman_report** out);
BERGMAN_API bergman_status bergman_run_proof_identity(bergman_domain domain,
                                                      const bergman_symbol* phi,
                                                      const bergman_symbol* psi, int n_max,
                                                      int trunc, bergman_quad quad, double tol,
                                                      bergman_report** out);
BERGMAN_API bergman_status bergman_run_moment_scan(bergman_domain domain, const bergman_symbol* phi,
                                                   const bergman_symbol* psi, int n_max, int j_max,
                                                   int trunc, bergman_quad quad, double tol,
                                                   bergman_report** report_out,
                                                   bergman_moments** table_out);
BERGMAN_API bergman_status bergman_run_annulus_counterexample(double rho,
                                                              const bergman_symbol* const* partners,
                                                              size_t partner_count, int trunc,
                                                              bergman_quad quad, double tol,
                                                              bergman_report** out);
BERGMAN_API bergman_status bergman_run_harmonic_pair(const bergman_symbol* phi,
                                                     const bergman_symbol* psi, int trunc,
                                                     bergman_quad quad, double tol,
                                                     bergman_report** out);
/* CSV "N,interior_two_norm" over the given truncation orders. */
BERGMAN_API bergman_status bergman_commutator_sweep(bergman_domain domain,
                                                    const bergman_symbol* phi,
                                                    const bergman_symbol* psi, const int* orders,
                                                    size_t order_count, bergman_method method,
                                                    bergman_quad quad, char** csv_out);

/* Reports. */
BERGMAN_API void bergman_report_free(bergman_report* r);
BERGMAN_API bergman_verdict bergman_report_verdict(const bergman_report* r);
BERGMAN_API const char* bergman_report_name(const bergman_report* r);
BERGMAN_API const char* bergman_report_summary(const bergman_report* r);
BERGMAN_API bergman_status bergman_report_metric(const bergman_report* r, const char* name,
                                                 double* re, double* im);
/* timestamp may be NULL to omit the field. */
BERGMAN_API bergman_status bergman_report_write(const bergman_report* r, bergman_format format,
                                                const char* timestamp, char** out);

BERGMAN_API void bergman_moments_free(bergman_moments* m);
BERGMAN_API double bergman_moments_max_abs(const bergman_moments* m);
BERGMAN_API bergman_status bergman_moments_write(const bergman_moments* m, bergman_format format,
                                                 char** out);

/* The fixed verification battery. */
BERGMAN_API bergman_status bergman_battery_run(bergman_battery** out);
BERGMAN_API void bergman_battery_free(bergman_battery* b);
BERGMAN_API size_t bergman_battery_size(const bergman_battery* b);
/* Borrowed; valid until the battery is freed. */
BERGMAN_API const bergman_report* bergman_battery_report(const bergman_battery* b, size_t i);
BERGMAN_API double bergman_battery_seconds(const bergman_battery* b, size_t i);
BERGMAN_API bergman_status bergman_battery_summary_line(const bergman_battery* b, size_t i,
                                                        char** out);
BERGMAN_API bergman_status bergman_battery_write(const bergman_battery* b, const char* timestamp,
                                                 char** out);

#ifdef __cplusplus
}
#endif

#endif /* BERGMAN_C_H */
