/* C interface to the useries library.
 *
 * Every fallible call returns a us_status; on failure us_last_error() holds a
 * message for the calling thread until its next failing call.  Output arrays
 * are caller-allocated.  Handles are opaque and released with their _free
 * function (NULL is accepted).
 */
#ifndef USERIES_USERIES_H
#define USERIES_USERIES_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(USERIES_BUILDING)
#    define US_API __declspec(dllexport)
#  else
#    define US_API __declspec(dllimport)
#  endif
#else
#  define US_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum us_status {
  US_OK = 0,
  US_INVALID_ARGUMENT = 1,
  US_DOMAIN = 2,
  US_DEGREE_OVERFLOW = 3,
  US_NUMERICAL = 4,
  US_CONVERGENCE = 5,
  US_IO = 6,
  US_NOT_FOUND = 7,
  US_INTERNAL = 99
} us_status;

typedef enum us_grid_kind { US_GRID_UNIFORM = 0, US_GRID_CHEBYSHEV = 1 } us_grid_kind;

typedef struct us_function us_function;
typedef struct us_corpus us_corpus;
typedef struct us_eigensystem us_eigensystem;

US_API const char* us_version(void);
US_API const char* us_last_error(void);
US_API const char* us_status_name(us_status s);

/* Functions on [0,1]. */
US_API us_status us_function_poly(const double* coeffs, size_t count, us_function** out);
US_API us_status us_function_callback(double (*fn)(double x, void* user), void* user, us_function** out);
US_API void us_function_free(us_function* f);
US_API us_status us_function_eval(const us_function* f, double x, double* out);
US_API int us_function_is_poly(const us_function* f);
/* Writes up to cap coefficients; *count receives degree + 1 (0 for zero). */
US_API us_status us_function_poly_coeffs(const us_function* f, double* out, size_t cap, size_t* count);
/* x(1-x) h */
US_API us_status us_function_times_psi(const us_function* h, us_function** out);
/* h with f = x(1-x) h; f must be polynomial and vanish at 0 and 1. */
US_API us_status us_function_deflate(const us_function* f, us_function** out);

/* Named functions; path NULL loads $USERIES_CORPUS or the bundled file. */
US_API us_status us_corpus_load(const char* path, us_corpus** out);
US_API void us_corpus_free(us_corpus* c);
US_API size_t us_corpus_size(const us_corpus* c);
US_API const char* us_corpus_name(const us_corpus* c, size_t i);
US_API int us_corpus_is_standard(const us_corpus* c, size_t i);
US_API us_status us_corpus_get(const us_corpus* c, const char* name, us_function** out);

/* count points in [0,1] with first 0 and last 1. */
US_API us_status us_grid_fill(us_grid_kind kind, int count, double* out);

/* Operators.  quad_size <= 0 selects the default rule size. */
US_API us_status us_apply_u(int n, double rho, const us_function* f, const double* xs, size_t count, int quad_size,
                            double* out);
US_API us_status us_bernstein(int n, const us_function* f, us_function** out);
US_API us_status us_u_norm0(int n, double rho, double* out);
US_API us_status us_central_moment(int n, double rho, double y, int r, double* out);

/* Eigenstructure. */
US_API us_status us_eigenvalue(int n, double rho, int j, double* out);
US_API us_status us_eigensystem_create(int n, double rho, us_eigensystem** out);
US_API void us_eigensystem_free(us_eigensystem* s);
US_API int us_eigensystem_degree(const us_eigensystem* s);
US_API us_status us_eigensystem_lambda(const us_eigensystem* s, int j, double* out);
US_API us_status us_eigensystem_poly(const us_eigensystem* s, int j, double* coeffs, size_t cap, size_t* count);
US_API us_status us_limit_eigenvalue(double rho, int j, double* out);

typedef struct us_asymptotic_record {
  int n;
  double eigenvalue_gap;
  double poly_distance;
  double dual_distance;
} us_asymptotic_record;
/* out has count records. */
US_API us_status us_asymptotic_report(double rho, int j, const int* ns, size_t count, us_asymptotic_record* out);

/* Series.  A NULL config, tol <= 0, max_iters <= 0 or grid_count == 0 select
 * the defaults. */
typedef struct us_series_config {
  double tol;
  int max_iters;
  const double* grid;
  size_t grid_count;
} us_series_config;

/* A_n^rho (x(1-x) h) at xs.  values and cofactor may be NULL. */
US_API us_status us_series_apply(int n, double rho, const us_function* h, const us_series_config* cfg,
                                 const double* xs, size_t count, double* values, double* cofactor, int* iterations);
US_API us_status us_series_apply_bernstein(int n, const us_function* h, const us_series_config* cfg,
                                           const double* xs, size_t count, double* values, double* cofactor,
                                           int* iterations);

/* -A_rho^{-1}(x(1-x) h) and the residual H_n^rho(h) at xs. */
US_API us_status us_inverse_neg(double rho, const us_function* h, const double* xs, size_t count, double* out);
US_API us_status us_residual_h(int n, double rho, const us_function* h, const us_series_config* cfg,
                               const double* xs, size_t count, double* out, int* iterations);

/* Bounds.  grid NULL selects the default grid for the moduli. */
US_API us_status us_admissible(int n, double rho, int* out);
US_API us_status us_theorem52_rhs(const us_function* h, int n, double rho, const double* grid, size_t grid_count,
                                  const double* xs, size_t count, double* out);
US_API us_status us_bernstein_limit_rhs(const us_function* h, int n, const double* grid, size_t grid_count,
                                        const double* xs, size_t count, double* out);

typedef struct us_bound_summary {
  int n;
  double rho;
  double epsilon;
  double omega1;
  double omega2;
  double margin;
  double slack;
  int satisfied;
  int iterations;
} us_bound_summary;

/* lhs and rhs have grid_count entries (may be NULL); slack < 0 selects the
 * default. */
US_API us_status us_bound_check(const us_function* h, int n, double rho, const double* grid, size_t grid_count,
                                double slack, const us_series_config* cfg, double* lhs, double* rhs,
                                us_bound_summary* summary);

typedef struct us_convergence_record {
  int n;
  double rho;
  double sup_h;
  double sup_rhs;
  int iterations;
} us_convergence_record;

US_API us_status us_convergence_table(const us_function* h, double rho, const int* ns, size_t count,
                                      const double* grid, size_t grid_count, const us_series_config* cfg,
                                      us_convergence_record* out);

#ifdef __cplusplus
}
#endif

#endif
