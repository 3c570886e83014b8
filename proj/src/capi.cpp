#include "useries/useries.h"

#include <cmath>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "useries/bounds.hpp"
#include "useries/corpus.hpp"
#include "useries/eigen.hpp"
#include "useries/error.hpp"
#include "useries/operators.hpp"
#include "useries/polyfun.hpp"
#include "useries/series.hpp"
#include "useries/voronovskaya.hpp"

struct us_function {
  useries::FunctionHandle fn;
};

struct us_corpus {
  useries::FunctionCorpus corpus;
};

struct us_eigensystem {
  useries::EigenSystem sys;
};

namespace {

thread_local std::string last_error;

us_status fail(us_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

us_status from_errc(useries::Errc c) {
  switch (c) {
    case useries::Errc::invalid_argument: return US_INVALID_ARGUMENT;
    case useries::Errc::domain: return US_DOMAIN;
    case useries::Errc::degree_overflow: return US_DEGREE_OVERFLOW;
    case useries::Errc::numerical: return US_NUMERICAL;
    case useries::Errc::convergence: return US_CONVERGENCE;
    case useries::Errc::io: return US_IO;
    case useries::Errc::not_found: return US_NOT_FOUND;
  }
  return US_INTERNAL;
}

template <class F>
us_status guarded(F&& body) {
  try {
    body();
    return US_OK;
  } catch (const useries::Error& e) {
    return fail(from_errc(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(US_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(US_INTERNAL, e.what());
  }
}

void require(bool ok, const char* msg) {
  if (!ok) throw useries::Error(useries::Errc::invalid_argument, msg);
}

useries::GridSpec grid_from(const double* pts, size_t count) {
  if (!pts || count == 0) return useries::default_grid();
  return useries::GridSpec(std::vector<double>(pts, pts + count));
}

useries::SeriesConfig config_from(const us_series_config* c) {
  useries::SeriesConfig cfg;
  if (!c) return cfg;
  if (c->tol > 0.0) cfg.tol = c->tol;
  if (c->max_iters > 0) cfg.max_iters = c->max_iters;
  if (c->grid && c->grid_count > 0) cfg.grid = grid_from(c->grid, c->grid_count);
  return cfg;
}

us_status copy_coeffs(const useries::Polynomial& p, double* out, size_t cap, size_t* count) {
  const auto c = p.coeffs();
  if (count) *count = c.size();
  if (out && cap < c.size()) return fail(US_INVALID_ARGUMENT, "coefficient buffer too small");
  if (out)
    for (size_t i = 0; i < c.size(); ++i) out[i] = c[i];
  return US_OK;
}

}  // namespace

extern "C" {

const char* us_version(void) { return "0.1.0"; }

const char* us_last_error(void) { return last_error.c_str(); }

const char* us_status_name(us_status s) {
  switch (s) {
    case US_OK: return "ok";
    case US_INVALID_ARGUMENT: return "invalid argument";
    case US_DOMAIN: return "domain error";
    case US_DEGREE_OVERFLOW: return "degree overflow";
    case US_NUMERICAL: return "numerical failure";
    case US_CONVERGENCE: return "convergence failure";
    case US_IO: return "i/o error";
    case US_NOT_FOUND: return "not found";
    case US_INTERNAL: return "internal error";
  }
  return "unknown status";
}

us_status us_function_poly(const double* coeffs, size_t count, us_function** out) {
  return guarded([&] {
    require(out, "us_function_poly: out is NULL");
    require(coeffs || count == 0, "us_function_poly: coeffs is NULL");
    useries::Polynomial p(std::vector<double>(coeffs, coeffs + count));
    *out = new us_function{useries::FunctionHandle(std::move(p))};
  });
}

us_status us_function_callback(double (*fn)(double, void*), void* user, us_function** out) {
  return guarded([&] {
    require(out && fn, "us_function_callback: NULL argument");
    *out = new us_function{useries::FunctionHandle(std::function<double(double)>([fn, user](double x) {
      return fn(x, user);
    }))};
  });
}

void us_function_free(us_function* f) { delete f; }

us_status us_function_eval(const us_function* f, double x, double* out) {
  return guarded([&] {
    require(f && out, "us_function_eval: NULL argument");
    *out = f->fn(x);
  });
}

int us_function_is_poly(const us_function* f) { return f && f->fn.is_polynomial() ? 1 : 0; }

us_status us_function_poly_coeffs(const us_function* f, double* out, size_t cap, size_t* count) {
  us_status st = US_OK;
  const us_status g = guarded([&] {
    require(f, "us_function_poly_coeffs: NULL function");
    const useries::Polynomial* p = f->fn.polynomial();
    if (!p) throw useries::Error(useries::Errc::domain, "us_function_poly_coeffs: function is not a polynomial");
    st = copy_coeffs(*p, out, cap, count);
  });
  return g != US_OK ? g : st;
}

us_status us_function_times_psi(const us_function* h, us_function** out) {
  return guarded([&] {
    require(h && out, "us_function_times_psi: NULL argument");
    if (const useries::Polynomial* p = h->fn.polynomial()) {
      *out = new us_function{useries::FunctionHandle(useries::Polynomial::psi() * *p)};
    } else {
      useries::FunctionHandle inner = h->fn;
      *out = new us_function{useries::FunctionHandle(
          std::function<double(double)>([inner](double x) { return x * (1.0 - x) * inner(x); }))};
    }
  });
}

us_status us_function_deflate(const us_function* f, us_function** out) {
  return guarded([&] {
    require(f && out, "us_function_deflate: NULL argument");
    const useries::Polynomial* p = f->fn.polynomial();
    if (!p) throw useries::Error(useries::Errc::domain, "us_function_deflate: function is not a polynomial");
    *out = new us_function{useries::FunctionHandle(useries::deflate_by_psi(*p))};
  });
}

us_status us_corpus_load(const char* path, us_corpus** out) {
  return guarded([&] {
    require(out, "us_corpus_load: out is NULL");
    *out = new us_corpus{path ? useries::FunctionCorpus::load(path) : useries::FunctionCorpus::load_default()};
  });
}

void us_corpus_free(us_corpus* c) { delete c; }

size_t us_corpus_size(const us_corpus* c) { return c ? c->corpus.entries().size() : 0; }

const char* us_corpus_name(const us_corpus* c, size_t i) {
  if (!c || i >= c->corpus.entries().size()) return nullptr;
  return c->corpus.entries()[i].name.c_str();
}

int us_corpus_is_standard(const us_corpus* c, size_t i) {
  if (!c || i >= c->corpus.entries().size()) return 0;
  return c->corpus.entries()[i].standard ? 1 : 0;
}

us_status us_corpus_get(const us_corpus* c, const char* name, us_function** out) {
  return guarded([&] {
    require(c && name && out, "us_corpus_get: NULL argument");
    *out = new us_function{c->corpus.get(name).fn};
  });
}

us_status us_grid_fill(us_grid_kind kind, int count, double* out) {
  return guarded([&] {
    require(out, "us_grid_fill: out is NULL");
    const useries::GridSpec g = kind == US_GRID_CHEBYSHEV ? useries::GridSpec::chebyshev(count)
                                                          : useries::GridSpec::uniform(count);
    for (int i = 0; i < g.count(); ++i) out[i] = g.points()[i];
  });
}

us_status us_apply_u(int n, double rho, const us_function* f, const double* xs, size_t count, int quad_size,
                     double* out) {
  return guarded([&] {
    require(f && (xs || count == 0) && (out || count == 0), "us_apply_u: NULL argument");
    const auto v = useries::apply_U(n, rho, f->fn, std::span<const double>(xs, count),
                                    quad_size > 0 ? quad_size : useries::default_quad_size(n));
    for (size_t i = 0; i < count; ++i) out[i] = v[i];
  });
}

us_status us_bernstein(int n, const us_function* f, us_function** out) {
  return guarded([&] {
    require(f && out, "us_bernstein: NULL argument");
    *out = new us_function{useries::FunctionHandle(useries::bernstein(n, f->fn))};
  });
}

us_status us_u_norm0(int n, double rho, double* out) {
  return guarded([&] {
    require(out, "us_u_norm0: out is NULL");
    *out = useries::u_norm0(n, rho);
  });
}

us_status us_central_moment(int n, double rho, double y, int r, double* out) {
  return guarded([&] {
    require(out, "us_central_moment: out is NULL");
    *out = useries::central_moment(n, rho, y, r);
  });
}

us_status us_eigenvalue(int n, double rho, int j, double* out) {
  return guarded([&] {
    require(out, "us_eigenvalue: out is NULL");
    *out = useries::eigenvalue(n, rho, j);
  });
}

us_status us_eigensystem_create(int n, double rho, us_eigensystem** out) {
  return guarded([&] {
    require(out, "us_eigensystem_create: out is NULL");
    if (n > useries::kEigenDegreeCap)
      throw useries::Error(useries::Errc::degree_overflow, "us_eigensystem_create: n exceeds eigen degree cap");
    *out = new us_eigensystem{useries::compute_eigensystem(useries::build_u_matrix(n, rho))};
  });
}

void us_eigensystem_free(us_eigensystem* s) { delete s; }

int us_eigensystem_degree(const us_eigensystem* s) { return s ? s->sys.degree() : -1; }

us_status us_eigensystem_lambda(const us_eigensystem* s, int j, double* out) {
  return guarded([&] {
    require(s && out, "us_eigensystem_lambda: NULL argument");
    require(j >= 0 && j <= s->sys.degree(), "us_eigensystem_lambda: j out of range");
    *out = s->sys.lambda(j);
  });
}

us_status us_eigensystem_poly(const us_eigensystem* s, int j, double* coeffs, size_t cap, size_t* count) {
  us_status st = US_OK;
  const us_status g = guarded([&] {
    require(s, "us_eigensystem_poly: NULL system");
    require(j >= 0 && j <= s->sys.degree(), "us_eigensystem_poly: j out of range");
    st = copy_coeffs(s->sys.eigenpoly(j), coeffs, cap, count);
  });
  return g != US_OK ? g : st;
}

us_status us_limit_eigenvalue(double rho, int j, double* out) {
  return guarded([&] {
    require(out, "us_limit_eigenvalue: out is NULL");
    require(rho > 0.0, "us_limit_eigenvalue: rho must be positive");
    require(j >= 0, "us_limit_eigenvalue: j must be >= 0");
    *out = useries::limit_eigenvalue(rho, j);
  });
}

us_status us_asymptotic_report(double rho, int j, const int* ns, size_t count, us_asymptotic_record* out) {
  return guarded([&] {
    require((ns && out) || count == 0, "us_asymptotic_report: NULL argument");
    const auto rep = useries::asymptotic_report(rho, j, std::span<const int>(ns, count));
    for (size_t i = 0; i < count; ++i)
      out[i] = {rep[i].n, rep[i].eigenvalue_gap, rep[i].poly_distance, rep[i].dual_distance};
  });
}

namespace {

us_status series_common(int n, double rho, bool bern, const us_function* h, const us_series_config* c,
                        const double* xs, size_t count, double* values, double* cofactor, int* iterations) {
  return guarded([&] {
    require(h && (xs || count == 0), "us_series_apply: NULL argument");
    const useries::SeriesConfig cfg = config_from(c);
    const useries::C0Function f(h->fn, cfg.grid);
    const useries::SeriesResult r =
        bern ? useries::apply_series_bernstein(n, f, cfg) : useries::apply_series(n, rho, f, cfg);
    for (size_t i = 0; i < count; ++i) {
      if (values) values[i] = r.value(xs[i]);
      if (cofactor) cofactor[i] = r.value.cofactor()(xs[i]);
    }
    if (iterations) *iterations = r.iterations;
  });
}

}  // namespace

us_status us_series_apply(int n, double rho, const us_function* h, const us_series_config* cfg, const double* xs,
                          size_t count, double* values, double* cofactor, int* iterations) {
  return series_common(n, rho, false, h, cfg, xs, count, values, cofactor, iterations);
}

us_status us_series_apply_bernstein(int n, const us_function* h, const us_series_config* cfg, const double* xs,
                                    size_t count, double* values, double* cofactor, int* iterations) {
  return series_common(n, useries::kBernsteinRho, true, h, cfg, xs, count, values, cofactor, iterations);
}

us_status us_inverse_neg(double rho, const us_function* h, const double* xs, size_t count, double* out) {
  return guarded([&] {
    require(h && ((xs && out) || count == 0), "us_inverse_neg: NULL argument");
    const useries::VoronovskayaContext ctx(rho);
    if (const useries::Polynomial* p = h->fn.polynomial()) {
      const useries::Polynomial inv = useries::inverse_neg_polynomial(ctx, *p);
      for (size_t i = 0; i < count; ++i) out[i] = inv(xs[i]);
      return;
    }
    const useries::C0Function f(h->fn);
    for (size_t i = 0; i < count; ++i) out[i] = useries::inverse_neg(ctx, f, xs[i]);
  });
}

us_status us_residual_h(int n, double rho, const us_function* h, const us_series_config* c, const double* xs,
                        size_t count, double* out, int* iterations) {
  return guarded([&] {
    require(h && ((xs && out) || count == 0), "us_residual_h: NULL argument");
    const auto r = useries::residual_H(n, rho, h->fn, std::span<const double>(xs, count), config_from(c));
    for (size_t i = 0; i < count; ++i) out[i] = r.values[i];
    if (iterations) *iterations = r.iterations;
  });
}

us_status us_admissible(int n, double rho, int* out) {
  return guarded([&] {
    require(out, "us_admissible: out is NULL");
    *out = useries::admissible(n, rho) ? 1 : 0;
  });
}

us_status us_theorem52_rhs(const us_function* h, int n, double rho, const double* grid, size_t grid_count,
                           const double* xs, size_t count, double* out) {
  return guarded([&] {
    require(h && ((xs && out) || count == 0), "us_theorem52_rhs: NULL argument");
    const auto b = useries::theorem52_bound(h->fn, n, rho, grid_from(grid, grid_count));
    for (size_t i = 0; i < count; ++i) out[i] = b.at(xs[i]);
  });
}

us_status us_bernstein_limit_rhs(const us_function* h, int n, const double* grid, size_t grid_count,
                                 const double* xs, size_t count, double* out) {
  return guarded([&] {
    require(h && ((xs && out) || count == 0), "us_bernstein_limit_rhs: NULL argument");
    const auto b = useries::bernstein_limit_bound(h->fn, n, grid_from(grid, grid_count));
    for (size_t i = 0; i < count; ++i) out[i] = b.at(xs[i]);
  });
}

us_status us_bound_check(const us_function* h, int n, double rho, const double* grid, size_t grid_count,
                         double slack, const us_series_config* c, double* lhs, double* rhs,
                         us_bound_summary* summary) {
  return guarded([&] {
    require(h && grid && grid_count > 0, "us_bound_check: NULL argument");
    const std::optional<double> s = slack >= 0.0 ? std::optional<double>(slack) : std::nullopt;
    const auto rep = useries::check_bound(h->fn, n, rho, grid_from(grid, grid_count), s, config_from(c));
    for (size_t i = 0; i < grid_count; ++i) {
      if (lhs) lhs[i] = rep.lhs[i];
      if (rhs) rhs[i] = rep.rhs[i];
    }
    if (summary)
      *summary = {rep.n,      rep.rho,   rep.epsilon,         rep.omega1,    rep.omega2,
                  rep.margin, rep.slack, rep.satisfied ? 1 : 0, rep.iterations};
  });
}

us_status us_convergence_table(const us_function* h, double rho, const int* ns, size_t count, const double* grid,
                               size_t grid_count, const us_series_config* c, us_convergence_record* out) {
  return guarded([&] {
    require(h && ((ns && out) || count == 0), "us_convergence_table: NULL argument");
    const auto rows = useries::convergence_table(h->fn, rho, std::span<const int>(ns, count),
                                                 grid_from(grid, grid_count), config_from(c));
    for (size_t i = 0; i < count; ++i)
      out[i] = {rows[i].n, rows[i].rho, rows[i].sup_H, rows[i].sup_rhs, rows[i].iterations};
  });
}

}  // extern "C"
