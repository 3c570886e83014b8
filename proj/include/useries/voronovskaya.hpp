#ifndef USERIES_VORONOVSKAYA_HPP
#define USERIES_VORONOVSKAYA_HPP

// The degenerate differential operator
//
//   A_rho y = ((rho + 1) / (2 rho)) x(1-x) y''      on {y in C^2 : y(0) = y(1) = 0}
//
// its explicit inverse through
//
//   F_inf(h; x) = (1-x) int_0^x t h(t) dt + x int_x^1 (1-t) h(t) dt,
//   -A_rho^{-1}(Psi h) = (2 rho / (rho + 1)) F_inf(h),
//
// and the residual H_n^rho = A_n^rho - (-A_rho^{-1}).

#include <span>
#include <vector>

#include "useries/operators.hpp"
#include "useries/polyfun.hpp"
#include "useries/series.hpp"

namespace useries {

class VoronovskayaContext {
 public:
  /// quad_size nodes of Gauss-Legendre on each of [0,x] and [x,1].
  explicit VoronovskayaContext(double rho, int quad_size = 32);

  double rho() const noexcept { return rho_; }
  const QuadratureRule& quad() const noexcept { return quad_; }
  /// (rho + 1) / (2 rho)
  double operator_constant() const noexcept;
  /// 2 rho / (rho + 1)
  double inverse_constant() const noexcept;

 private:
  double rho_;
  QuadratureRule quad_;
};

/// Cofactor ((rho + 1) / (2 rho)) y'' of A_rho y; y must vanish at 0 and 1.
C0Function apply_A_rho(const VoronovskayaContext& ctx, const Polynomial& y);

/// F_inf(h) as a single polynomial (degree deg h + 2).
Polynomial f_infty_polynomial(const Polynomial& h);

/// Exact for polynomial h (the split-integral form is cross-checked against
/// the global polynomial to 1e-12), two scaled Gauss-Legendre rules otherwise.
double f_infty(const VoronovskayaContext& ctx, const FunctionHandle& h, double x);

double inverse_neg(const VoronovskayaContext& ctx, const C0Function& f, double x);
/// -A_rho^{-1}(Psi h) as a polynomial for polynomial cofactors.
Polynomial inverse_neg_polynomial(const VoronovskayaContext& ctx, const Polynomial& h);

struct InverseNormCheck {
  double lhs;  // grid sup of |A_rho^{-1} f|
  double rhs;  // rho / (4 (rho + 1)) ||f||_0
  bool holds;  // lhs <= rhs + 1e-10
};
InverseNormCheck inverse_norm_check(const VoronovskayaContext& ctx, const C0Function& f,
                                    const GridSpec& grid = default_grid());

struct ResidualProfile {
  std::vector<double> values;
  int iterations;
};

double residual_H(int n, double rho, const FunctionHandle& h, double x, const SeriesConfig& cfg = {});
/// H_n^rho(h; x) at every x, reusing one series evaluation.
ResidualProfile residual_H(int n, double rho, const FunctionHandle& h, std::span<const double> xs,
                           const SeriesConfig& cfg = {});

}  // namespace useries

#endif
