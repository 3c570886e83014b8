#include "useries/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "useries/error.hpp"
#include "useries/operators.hpp"
#include "useries/voronovskaya.hpp"

namespace useries {

namespace {

void check_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw Error(Errc::invalid_argument, "rho must be positive and finite");
}

void require_admissible(int n, double rho) {
  if (!admissible(n, rho))
    throw Error(Errc::invalid_argument, "n = " + std::to_string(n) + " is not admissible for rho = " +
                                            std::to_string(rho) + " (need n >= (4 rho + 6) / rho)");
}

}  // namespace

double bound_epsilon(int n, double rho) {
  check_rho(rho);
  if (n < 1) throw Error(Errc::invalid_argument, "bound_epsilon: n must be >= 1");
  return std::sqrt((rho + 2.0) / (n * rho + 2.0));
}

bool admissible(int n, double rho) {
  check_rho(rho);
  return n * rho >= (4.0 * rho + 6.0) * (1.0 - 1e-12);
}

int min_admissible_n(double rho) {
  check_rho(rho);
  int n = std::max(1, static_cast<int>(std::floor((4.0 * rho + 6.0) / rho)) - 1);
  while (!admissible(n, rho)) ++n;
  return n;
}

Theorem52Bound theorem52_bound(const FunctionHandle& h, int n, double rho, const GridSpec& grid) {
  require_admissible(n, rho);
  Theorem52Bound b{};
  b.n = n;
  b.rho = rho;
  b.epsilon = std::min(bound_epsilon(n, rho), 0.5);
  b.omega1 = omega(h, 1, b.epsilon, grid);
  b.omega2 = omega(h, 2, b.epsilon, grid);
  b.c1 = 2.0 * rho / (3.0 * (rho + 1.0));
  b.c2 = 0.75 * (2.0 * rho / (rho + 1.0) + b.c1 * b.epsilon + 7.0 * (rho + 3.0) / (6.0 * (rho + 1.0)));
  return b;
}

double theorem52_rhs(const FunctionHandle& h, int n, double rho, double x, const GridSpec& grid) {
  return theorem52_bound(h, n, rho, grid).at(x);
}

BernsteinLimitBound bernstein_limit_bound(const FunctionHandle& h, int n, const GridSpec& grid) {
  if (n < 10) throw Error(Errc::invalid_argument, "bernstein_limit_rhs: n must be >= 10");
  BernsteinLimitBound b{};
  b.n = n;
  b.delta = 1.0 / std::sqrt(static_cast<double>(n));
  b.omega1 = omega(h, 1, b.delta, grid);
  b.omega2 = omega(h, 2, b.delta, grid);
  return b;
}

double bernstein_limit_rhs(const FunctionHandle& h, int n, double x, const GridSpec& grid) {
  return bernstein_limit_bound(h, n, grid).at(x);
}

double default_slack(const FunctionHandle& h, const SeriesConfig& cfg) {
  const double tol = cfg.tol.value_or(h.is_polynomial() ? kPolynomialSeriesTol : kGenericSeriesTol);
  return tol + 10.0 * kQuadratureTolerance;
}

BoundReport check_bound(const FunctionHandle& h, int n, double rho, const GridSpec& grid,
                        std::optional<double> slack, const SeriesConfig& cfg) {
  require_admissible(n, rho);
  const Theorem52Bound bound = theorem52_bound(h, n, rho, grid);
  const ResidualProfile res = residual_H(n, rho, h, grid.points(), cfg);

  BoundReport rep{n, rho, bound.epsilon, grid, {}, {}, std::numeric_limits<double>::infinity(),
                  slack.value_or(default_slack(h, cfg)), false, res.iterations, bound.omega1, bound.omega2};
  const auto pts = grid.points();
  rep.lhs.reserve(pts.size());
  rep.rhs.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    rep.lhs.push_back(std::abs(res.values[i]));
    rep.rhs.push_back(bound.at(pts[i]));
    rep.margin = std::min(rep.margin, rep.rhs.back() - rep.lhs.back());
  }
  rep.satisfied = rep.margin >= -rep.slack;
  return rep;
}

std::vector<ConvergenceRecord> convergence_table(const FunctionHandle& h, double rho, std::span<const int> ns,
                                                 const GridSpec& grid, const SeriesConfig& cfg) {
  std::vector<ConvergenceRecord> out;
  out.reserve(ns.size());
  for (int n : ns) {
    const ResidualProfile res = residual_H(n, rho, h, grid.points(), cfg);
    double sup_h = 0.0;
    for (double v : res.values) sup_h = std::max(sup_h, std::abs(v));
    double sup_rhs = std::numeric_limits<double>::quiet_NaN();
    if (admissible(n, rho)) {
      const Theorem52Bound bound = theorem52_bound(h, n, rho, grid);
      sup_rhs = 0.0;
      for (double x : grid.points()) sup_rhs = std::max(sup_rhs, bound.at(x));
    }
    out.push_back({n, rho, sup_h, sup_rhs, res.iterations});
  }
  return out;
}

}  // namespace useries
