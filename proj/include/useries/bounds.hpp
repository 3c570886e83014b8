#ifndef USERIES_BOUNDS_HPP
#define USERIES_BOUNDS_HPP

// Quantitative check of the modulus-of-continuity bound
//
//   |H_n^rho(h; x)| <= Psi(x) [ c1 eps w1(h; eps) + c2 w2(h; eps) ],
//   eps = sqrt((rho + 2) / (n rho + 2)),     n >= (4 rho + 6) / rho,
//   c1  = 2 rho / (3 (rho + 1)),
//   c2  = 3/4 (2 rho / (rho + 1) + c1 eps + 7 (rho + 3) / (6 (rho + 1))),
//
// and of its Bernstein limit 3 Psi(x) [ w1(h; 1/sqrt n) / sqrt n + w2(h; 1/sqrt n) ].

#include <optional>
#include <span>
#include <vector>

#include "useries/polyfun.hpp"
#include "useries/series.hpp"

namespace useries {

/// sqrt((rho + 2) / (n rho + 2))
double bound_epsilon(int n, double rho);
/// n rho >= 4 rho + 6, equivalently bound_epsilon(n, rho) <= 1/2.
bool admissible(int n, double rho);
int min_admissible_n(double rho);

/// The bound at a point, split into its parts so it can be evaluated on a
/// whole grid from one pair of moduli.
struct Theorem52Bound {
  int n;
  double rho;
  double epsilon;
  double omega1;
  double omega2;
  double c1;  // multiplies eps * omega1
  double c2;  // multiplies omega2
  /// Bracketed factor; the bound at x is psi(x) * profile().
  double profile() const noexcept { return c1 * epsilon * omega1 + c2 * omega2; }
  double at(double x) const noexcept { return x * (1.0 - x) * profile(); }
};
Theorem52Bound theorem52_bound(const FunctionHandle& h, int n, double rho, const GridSpec& grid);
double theorem52_rhs(const FunctionHandle& h, int n, double rho, double x, const GridSpec& grid);

struct BernsteinLimitBound {
  int n;
  double delta;  // 1 / sqrt(n)
  double omega1;
  double omega2;
  double profile() const noexcept { return 3.0 * (delta * omega1 + omega2); }
  double at(double x) const noexcept { return x * (1.0 - x) * profile(); }
};
BernsteinLimitBound bernstein_limit_bound(const FunctionHandle& h, int n, const GridSpec& grid);
double bernstein_limit_rhs(const FunctionHandle& h, int n, double x, const GridSpec& grid);

/// Series tolerance plus ten times the quadrature tolerance.
double default_slack(const FunctionHandle& h, const SeriesConfig& cfg);

struct BoundReport {
  int n;
  double rho;
  double epsilon;
  GridSpec grid;
  std::vector<double> lhs;
  std::vector<double> rhs;
  double margin;  // min over the grid of rhs - lhs
  double slack;
  bool satisfied;  // margin >= -slack
  int iterations;
  double omega1;
  double omega2;
};

BoundReport check_bound(const FunctionHandle& h, int n, double rho, const GridSpec& grid,
                        std::optional<double> slack = std::nullopt, const SeriesConfig& cfg = {});

struct ConvergenceRecord {
  int n;
  double rho;
  double sup_H;
  double sup_rhs;
  int iterations;
};

/// One record per n.  sup_rhs is NaN where n is not admissible for rho.
std::vector<ConvergenceRecord> convergence_table(const FunctionHandle& h, double rho, std::span<const int> ns,
                                                 const GridSpec& grid, const SeriesConfig& cfg = {});

}  // namespace useries

#endif
