#ifndef USERIES_SERIES_HPP
#define USERIES_SERIES_HPP

// The operator geometric series
//
//   A_n^rho = rho / (n rho + 1) * sum_{k>=0} (U_n^rho)^k       on C_0[0,1]
//   A_n^inf = 1 / n * sum_{k>=0} (B_n)^k
//
// truncated a priori from the exact contraction factor of U_n^rho on C_0.

#include <optional>

#include "useries/eigen.hpp"
#include "useries/polyfun.hpp"

namespace useries {

inline constexpr double kPolynomialSeriesTol = 1e-9;
inline constexpr double kGenericSeriesTol = 1e-6;

struct SeriesConfig {
  /// Target for the ||.||_0 norm of the discarded tail.  When unset,
  /// kPolynomialSeriesTol for polynomial cofactors, kGenericSeriesTol otherwise.
  std::optional<double> tol;
  int max_iters = 1'000'000;
  /// Grid used to estimate ||f||_0 for the tail bound.
  GridSpec grid = default_grid();
};

struct SeriesResult {
  C0Function value;
  /// Number K of operator applications in the partial sum.
  int iterations;
};

/// rho / (n rho + 1), or 1/n for the Bernstein series.
double series_scale(int n, double rho);

/// Smallest K >= 0 with scale * q^(K+1) / (1 - q) * norm0 <= tol.
int series_truncation(double q, double scale, double norm0, double tol);

/// Partial sum of A_n^rho f.  Polynomial cofactors with deg(Psi h) <= n are
/// iterated exactly on the monomial block; everything else goes through one
/// quadrature application of U_n^rho followed by iteration in the Bernstein
/// basis.  Throws Errc::convergence when K would exceed cfg.max_iters.
SeriesResult apply_series(int n, double rho, const C0Function& f, const SeriesConfig& cfg = {});

/// A_n^inf f with contraction factor (n-1)/n.
SeriesResult apply_series_bernstein(int n, const C0Function& f, const SeriesConfig& cfg = {});

/// Closed form on Pi_m intersected with C_0:
///   A_n^rho p = rho / (n rho + 1) sum_{j=2}^m mu_j(p) / (1 - lambda_j) p_j.
Polynomial apply_series_poly(const EigenSystem& sys, const Polynomial& p);

/// lim_n A_n^rho p = rho / (rho + 1) sum_{j=2}^m 2 / (j (j-1)) mu_j^*(p) p_j^*.
Polynomial poly_limit(const Polynomial& p, double rho);

}  // namespace useries

#endif
