#ifndef USERIES_OPERATORS_HPP
#define USERIES_OPERATORS_HPP

// The Bernstein-type operators U_n^rho and the Bernstein operator B_n.
//
//   U_n^rho(f, x) = sum_{k=1}^{n-1} F_{n,k}(f) p_{n,k}(x) + f(0)(1-x)^n + f(1)x^n
//
// where F_{n,k} integrates f against the Beta(k rho, (n-k) rho) density.
// On polynomials the action is materialized exactly as a triangular matrix in
// the monomial basis; on generic functions it is evaluated with Gauss-Jacobi
// rules that carry the Beta weight.

#include <limits>
#include <span>
#include <vector>

#include "useries/polyfun.hpp"

namespace useries {

/// Accuracy to which quadrature exactness is validated.
inline constexpr double kQuadratureTolerance = 1e-10;

/// rho value that selects the Bernstein operator B_n in the shared code paths.
inline constexpr double kBernsteinRho = std::numeric_limits<double>::infinity();

/// Gauss rule for the weight t^alpha (1-t)^beta on [0,1] (alpha, beta > -1).
/// A rule of size q integrates polynomials of degree <= 2q-1 exactly.
class QuadratureRule {
 public:
  static QuadratureRule gauss_jacobi(int size, double alpha, double beta);
  static QuadratureRule gauss_legendre(int size) { return gauss_jacobi(size, 0.0, 0.0); }

  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  /// Weights summing to B(alpha+1, beta+1).  May underflow for very large
  /// exponents; normalized_weights() never does.
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> normalized_weights() const noexcept { return normalized_; }
  double log_beta() const noexcept { return log_beta_; }

  /// Integral of f against the normalized weight (a probability density).
  double mean(const FunctionHandle& f) const;
  /// Integral of f against the weight on [a, b] after the affine map; only
  /// meaningful for alpha = beta = 0.
  double integrate_on(const FunctionHandle& f, double a, double b) const;

 private:
  QuadratureRule() = default;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double log_beta_ = 0.0;
  std::vector<double> nodes_, weights_, normalized_;
};

/// m-th raw moment of the Beta(k rho, (n-k) rho) density:
/// prod_{i<m} (k rho + i) / (n rho + i).
double functional_moment(int n, int k, double rho, int m);

/// Quadrature estimate of F_{n,k}^rho(f).  The rule must carry the exponents
/// alpha = k rho - 1, beta = (n-k) rho - 1.
double apply_F(int n, int k, double rho, const FunctionHandle& f, const QuadratureRule& q);

/// max(20, n + 5)
int default_quad_size(int n);

/// U_n^rho (or B_n when rho is kBernsteinRho) restricted to Pi_d, d <= n, as an
/// upper-triangular matrix: column m holds the monomial coefficients of the
/// image of x^m.
class UOperatorMatrix {
 public:
  UOperatorMatrix(int n, double rho, int degree, std::vector<double> entries);

  int n() const noexcept { return n_; }
  double rho() const noexcept { return rho_; }
  bool is_bernstein() const noexcept { return rho_ == kBernsteinRho; }
  /// Highest degree represented (dim() - 1).
  int degree() const noexcept { return degree_; }
  int dim() const noexcept { return degree_ + 1; }
  double at(int row, int col) const noexcept { return entries_[row * dim() + col]; }
  double diagonal(int m) const noexcept { return at(m, m); }
  Polynomial column(int m) const;

 private:
  int n_;
  double rho_;
  int degree_;
  std::vector<double> entries_;  // row-major dim x dim
};

/// Full matrix on Pi_n; rejects n > kDegreeCap.
UOperatorMatrix build_u_matrix(int n, double rho);
/// Leading block acting on Pi_degree (degree <= min(n, kDegreeCap)).  Exists
/// for every n because the operator preserves degrees.
UOperatorMatrix build_u_block(int n, double rho, int degree);
UOperatorMatrix build_bernstein_block(int n, int degree);

/// Exact image of p; rejects deg p > mat.degree().
Polynomial apply_U_poly(const UOperatorMatrix& mat, const Polynomial& p);

/// The n-1 Gauss-Jacobi rules for the interior functionals of U_n^rho.
class UQuadrature {
 public:
  UQuadrature(int n, double rho, int quad_size);

  int n() const noexcept { return n_; }
  double rho() const noexcept { return rho_; }
  /// Bernstein coefficients (F_{n,0}, ..., F_{n,n}) of U_n^rho f, with
  /// F_{n,0}(f) = f(0) and F_{n,n}(f) = f(1).
  std::vector<double> bernstein_coefficients(const FunctionHandle& f) const;

 private:
  int n_;
  double rho_;
  std::vector<QuadratureRule> rules_;
};

double apply_U(int n, double rho, const FunctionHandle& f, double x, int quad_size);
std::vector<double> apply_U(int n, double rho, const FunctionHandle& f,
                            std::span<const double> xs, int quad_size);

/// Evaluates sum_k b_k p_{n,k}(x) by de Casteljau, n = b.size() - 1.
double bernstein_basis_eval(std::span<const double> b, double x);

/// Monomial coefficients of a polynomial given in the degree-n Bernstein basis.
/// The alternating sums cancel; expect absolute errors near 4^n * 1e-19 * max|b|.
Polynomial bernstein_to_monomial(std::span<const double> b);

/// B_n f in the monomial basis; rejects n > kDegreeCap.  Prefer
/// bernstein_basis_eval on the samples f(k/n) for pointwise values at large n.
Polynomial bernstein(int n, const FunctionHandle& f);

/// Matrix T (row-major, (n+1)^2) of the operator in the degree-n Bernstein
/// basis: T[k][l] = F_{n,k}(p_{n,l}).  Rows are nonnegative and sum to 1.
std::vector<double> bernstein_transition(int n, double rho);

/// U_n^rho((t - y)^r; y) for r = 0..4 from the closed forms.
double central_moment(int n, double rho, double y, int r);

/// Norm of U_n^rho on C_0 with ||.||_0: (n-1) rho / (n rho + 1).
double u_norm0(int n, double rho);

}  // namespace useries

#endif
