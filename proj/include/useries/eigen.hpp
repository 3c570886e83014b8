#ifndef USERIES_EIGEN_HPP
#define USERIES_EIGEN_HPP

// Eigenstructure of U_n^rho on Pi_n and its n -> infinity limit.

#include <span>
#include <vector>

#include "useries/operators.hpp"
#include "useries/polyfun.hpp"

namespace useries {

/// Eigen computations are done in the monomial basis and limited to this degree.
inline constexpr int kEigenDegreeCap = 30;

/// rho^j n! / ((n rho)^(rising j) (n-j)!), computed as prod_{i<j} (n-i) rho / (n rho + i).
double eigenvalue(int n, double rho, int j);

/// Eigenvalues and monic eigenpolynomials of an operator matrix (full or
/// leading block).  The eigenpolynomial basis is unit upper triangular in the
/// monomial basis, so it is its own factorization for the dual solve.
class EigenSystem {
 public:
  int n() const noexcept { return n_; }
  double rho() const noexcept { return rho_; }
  /// Highest degree j covered.
  int degree() const noexcept { return static_cast<int>(lambdas_.size()) - 1; }
  double lambda(int j) const { return lambdas_.at(j); }
  std::span<const double> lambdas() const noexcept { return lambdas_; }
  const Polynomial& eigenpoly(int j) const { return polys_.at(j); }

  /// mu_j(p) with p = sum_j mu_j(p) p_j; rejects deg p > degree().
  std::vector<double> dual_coefficients(const Polynomial& p) const;

 private:
  friend EigenSystem compute_eigensystem(const UOperatorMatrix& mat);
  int n_ = 0;
  double rho_ = 0.0;
  std::vector<double> lambdas_;
  std::vector<Polynomial> polys_;
};

/// Back-substitution on (M - lambda_j I) v = 0 with v_j = 1.  The pair
/// lambda_0 = lambda_1 = 1 is degenerate; p_0 = 1 and p_1 = x - 1/2 are pinned
/// (the latter is the eigenpolynomial antisymmetric about 1/2) after checking
/// that the matrix reproduces linear functions.  Throws Errc::numerical if
/// two eigenvalues with j >= 1 are closer than 1e-12 relative, or if the
/// diagonal disagrees with eigenvalue() beyond 1e-10.
EigenSystem compute_eigensystem(const UOperatorMatrix& mat);

std::vector<double> dual_coefficients(const EigenSystem& sys, const Polynomial& p);

/// -((rho + 1) / (2 rho)) (j - 1) j
double limit_eigenvalue(double rho, int j);

/// mu_j^*(f).  For j >= 2 the integral against P_{j-2}^(1,1)(2x-1) is taken
/// with the supplied rule, which must have alpha = beta = 0.
double limit_dual(int j, const FunctionHandle& f, const QuadratureRule& quad);
/// Exact version for polynomial arguments.
double limit_dual(int j, const Polynomial& p);

/// Limit eigensystem up to a given index.
struct LimitEigenData {
  LimitEigenData(double rho, int max_index);

  double rho;
  std::vector<double> limit_lambdas;
  std::vector<Polynomial> limit_polys;
};

struct AsymptoticRecord {
  int n;
  /// |n (lambda_j^(n) - 1) - lambda_j|
  double eigenvalue_gap;
  /// grid sup of |p_j^(n) - p_j^*|
  double poly_distance;
  /// max over test polynomials of |mu_j^(n)(p) - mu_j^*(p)|; NaN without tests.
  double dual_distance;
};

std::vector<AsymptoticRecord> asymptotic_report(double rho, int j, std::span<const int> ns,
                                                std::span<const Polynomial> tests = {},
                                                const GridSpec& grid = default_grid());

}  // namespace useries

#endif
