#include "useries/series.hpp"

#include <cmath>
#include <string>

#include "useries/error.hpp"
#include "useries/operators.hpp"

namespace useries {

namespace {

void require_vanishing_endpoints(const Polynomial& p, const char* who) {
  double scale = 0.0;
  for (double c : p.coeffs()) scale += std::abs(c);
  scale = std::max(1.0, scale);
  if (std::abs(p(0.0)) > 1e-12 * scale || std::abs(p(1.0)) > 1e-12 * scale)
    throw Error(Errc::domain, std::string(who) + ": polynomial must vanish at 0 and 1");
}

SeriesResult run_series(int n, double rho, const C0Function& f, const SeriesConfig& cfg) {
  if (n < 1) throw Error(Errc::invalid_argument, "series: n must be >= 1");
  if (cfg.max_iters < 1) throw Error(Errc::invalid_argument, "series: max_iters must be >= 1");
  const Polynomial* hpoly = f.cofactor().polynomial();
  const double tol = cfg.tol.value_or(hpoly ? kPolynomialSeriesTol : kGenericSeriesTol);
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "series: tol must be positive");

  const double q = u_norm0(n, rho);
  const double scale = series_scale(n, rho);
  const double norm0 = sup_norm(f.cofactor(), cfg.grid);
  const int K = series_truncation(q, scale, norm0, tol);
  if (K > cfg.max_iters)
    throw Error(Errc::convergence, "series: tail bound needs " + std::to_string(K) +
                                       " iterations, above max_iters = " + std::to_string(cfg.max_iters));

  const bool exact = hpoly && hpoly->degree() + 2 <= std::min(n, kDegreeCap);
  if (exact) {
    const Polynomial p = Polynomial::psi() * *hpoly;
    const int m = std::max(2, p.degree());
    const UOperatorMatrix mat = build_u_block(n, rho, std::min(m, n));
    Polynomial term = p;
    Polynomial sum = p;
    for (int k = 0; k < K; ++k) {
      term = apply_U_poly(mat, term);
      sum += term;
    }
    return {C0Function(FunctionHandle(scale * deflate_by_psi(sum))), K};
  }

  // U f lies in Pi_n; iterate its Bernstein coefficients and divide by Psi
  // termwise: p_{n,k} / Psi = n(n-1) / (k(n-k)) p_{n-2,k-1}.
  const FunctionHandle fh([f](double x) { return f(x); });
  const UQuadrature uq(n, rho, default_quad_size(n));
  std::vector<double> term = uq.bernstein_coefficients(fh);
  term.front() = 0.0;
  term.back() = 0.0;
  const auto T = bernstein_transition(n, rho);
  const int d = n + 1;
  std::vector<double> sum(d, 0.0);
  std::vector<double> next(d, 0.0);
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < d; ++i) sum[i] += term[i];
    for (int r = 0; r < d; ++r) {
      double acc = 0.0;
      for (int c = 0; c < d; ++c) acc += T[r * d + c] * term[c];
      next[r] = acc;
    }
    term.swap(next);
  }
  std::vector<double> cof;
  if (n >= 2) {
    cof.resize(n - 1);
    for (int k = 1; k < n; ++k)
      cof[k - 1] = static_cast<double>(n) * (n - 1) / (static_cast<double>(k) * (n - k)) * sum[k];
  }
  const FunctionHandle h = f.cofactor();
  FunctionHandle out([h, cof = std::move(cof), scale](double x) {
    return scale * (h(x) + bernstein_basis_eval(cof, x));
  });
  return {C0Function(std::move(out)), K};
}

}  // namespace

double series_scale(int n, double rho) {
  if (n < 1) throw Error(Errc::invalid_argument, "series: n must be >= 1");
  if (rho == kBernsteinRho) return 1.0 / n;
  if (!(rho > 0.0)) throw Error(Errc::invalid_argument, "series: rho must be positive");
  return rho / (n * rho + 1.0);
}

int series_truncation(double q, double scale, double norm0, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "series_truncation: tol must be positive");
  if (q < 0.0 || q >= 1.0) throw Error(Errc::invalid_argument, "series_truncation: q must lie in [0, 1)");
  if (norm0 == 0.0 || q == 0.0) return 0;
  const auto tail = [&](int K) { return scale * std::pow(q, K + 1) / (1.0 - q) * norm0; };
  const double est = std::log(tol * (1.0 - q) / (scale * norm0)) / std::log(q) - 1.0;
  int K = std::max(0, static_cast<int>(std::ceil(std::min(est, 1e9))));
  while (tail(K) > tol) ++K;
  while (K > 0 && tail(K - 1) <= tol) --K;
  return K;
}

SeriesResult apply_series(int n, double rho, const C0Function& f, const SeriesConfig& cfg) {
  if (!(rho > 0.0) || rho == kBernsteinRho)
    throw Error(Errc::invalid_argument, "apply_series: rho must be positive and finite");
  return run_series(n, rho, f, cfg);
}

SeriesResult apply_series_bernstein(int n, const C0Function& f, const SeriesConfig& cfg) {
  return run_series(n, kBernsteinRho, f, cfg);
}

Polynomial apply_series_poly(const EigenSystem& sys, const Polynomial& p) {
  require_vanishing_endpoints(p, "apply_series_poly");
  if (p.degree() > sys.degree())
    throw Error(Errc::degree_overflow, "apply_series_poly: polynomial degree exceeds eigensystem degree");
  const auto mu = sys.dual_coefficients(p);
  const double tol = 1e-10 * std::max(1.0, p.max_abs_coeff());
  if (std::abs(mu[0]) > tol || (mu.size() > 1 && std::abs(mu[1]) > tol))
    throw Error(Errc::numerical, "apply_series_poly: C_0 polynomial has linear eigencomponents");
  Polynomial out;
  for (int j = 2; j < static_cast<int>(mu.size()); ++j) {
    const double gap = 1.0 - sys.lambda(j);
    if (std::abs(gap) < 1e-14) throw Error(Errc::numerical, "apply_series_poly: eigenvalue too close to 1");
    out += (mu[j] / gap) * sys.eigenpoly(j);
  }
  return series_scale(sys.n(), sys.rho()) * out;
}

Polynomial poly_limit(const Polynomial& p, double rho) {
  if (!(rho > 0.0)) throw Error(Errc::invalid_argument, "poly_limit: rho must be positive");
  require_vanishing_endpoints(p, "poly_limit");
  Polynomial out;
  for (int j = 2; j <= p.degree(); ++j)
    out += (2.0 / (j * (j - 1.0)) * limit_dual(j, p)) * limit_eigenpoly(j);
  const double factor = (rho == kBernsteinRho) ? 1.0 : rho / (rho + 1.0);
  return factor * out;
}

}  // namespace useries
