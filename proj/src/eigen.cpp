#include "useries/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "useries/error.hpp"

namespace useries {

double eigenvalue(int n, double rho, int j) {
  if (n < 1) throw Error(Errc::invalid_argument, "eigenvalue: n must be >= 1");
  if (!(rho > 0.0)) throw Error(Errc::invalid_argument, "eigenvalue: rho must be positive");
  if (j < 0 || j > n) throw Error(Errc::invalid_argument, "eigenvalue: index must lie in [0, n]");
  double v = 1.0;
  if (rho == kBernsteinRho) {
    for (int i = 0; i < j; ++i) v *= (n - i) / static_cast<double>(n);
    return v;
  }
  for (int i = 0; i < j; ++i) v *= (n - i) * rho / (n * rho + i);
  return v;
}

EigenSystem compute_eigensystem(const UOperatorMatrix& mat) {
  const int d = mat.dim();
  if (mat.degree() > kEigenDegreeCap)
    throw Error(Errc::degree_overflow,
                "compute_eigensystem: degree exceeds eigen cap " + std::to_string(kEigenDegreeCap));

  EigenSystem sys;
  sys.n_ = mat.n();
  sys.rho_ = mat.rho();
  sys.lambdas_.resize(d);
  for (int j = 0; j < d; ++j) {
    sys.lambdas_[j] = mat.diagonal(j);
    const double expected = eigenvalue(mat.n(), mat.rho(), j);
    if (std::abs(sys.lambdas_[j] - expected) > 1e-10)
      throw Error(Errc::numerical, "compute_eigensystem: diagonal entry " + std::to_string(j) +
                                       " disagrees with the eigenvalue formula");
  }
  for (int i = 1; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double gap = std::abs(sys.lambdas_[i] - sys.lambdas_[j]);
      if (gap < 1e-12 * std::max(std::abs(sys.lambdas_[i]), std::abs(sys.lambdas_[j])))
        throw Error(Errc::numerical, "compute_eigensystem: near-degenerate eigenvalues at " +
                                         std::to_string(i) + ", " + std::to_string(j));
    }

  // Linear reproduction: columns 0 and 1 must be e_0 and e_1.
  for (int r = 0; r < d; ++r) {
    if (std::abs(mat.at(r, 0) - (r == 0 ? 1.0 : 0.0)) > 1e-12 ||
        (d > 1 && std::abs(mat.at(r, 1) - (r == 1 ? 1.0 : 0.0)) > 1e-12))
      throw Error(Errc::numerical, "compute_eigensystem: operator does not reproduce linear functions");
  }

  sys.polys_.reserve(d);
  sys.polys_.push_back(Polynomial::constant(1.0));
  if (d > 1) sys.polys_.push_back(Polynomial{-0.5, 1.0});
  for (int j = 2; j < d; ++j) {
    std::vector<double> v(j + 1, 0.0);
    v[j] = 1.0;
    const double lam = sys.lambdas_[j];
    for (int r = j - 1; r >= 0; --r) {
      double acc = 0.0;
      for (int c = r + 1; c <= j; ++c) acc += mat.at(r, c) * v[c];
      v[r] = -acc / (mat.at(r, r) - lam);
    }
    sys.polys_.emplace_back(std::move(v));
  }
  return sys;
}

std::vector<double> EigenSystem::dual_coefficients(const Polynomial& p) const {
  if (p.degree() > degree())
    throw Error(Errc::degree_overflow, "dual_coefficients: polynomial degree exceeds eigensystem degree");
  const int d = degree() + 1;
  std::vector<double> residual(d, 0.0);
  for (int i = 0; i <= p.degree(); ++i) residual[i] = p.coeff(i);
  std::vector<double> mu(d, 0.0);
  for (int j = d - 1; j >= 0; --j) {
    mu[j] = residual[j];
    if (mu[j] == 0.0) continue;
    const Polynomial& pj = polys_[j];
    for (int i = 0; i <= j; ++i) residual[i] -= mu[j] * pj.coeff(i);
  }
  return mu;
}

std::vector<double> dual_coefficients(const EigenSystem& sys, const Polynomial& p) {
  return sys.dual_coefficients(p);
}

double limit_eigenvalue(double rho, int j) {
  if (!(rho > 0.0)) throw Error(Errc::invalid_argument, "limit_eigenvalue: rho must be positive");
  if (j < 0) throw Error(Errc::invalid_argument, "limit_eigenvalue: negative index");
  const double factor = (rho == kBernsteinRho) ? 0.5 : (rho + 1.0) / (2.0 * rho);
  return -factor * (j - 1.0) * j;
}

namespace {

double central_binomial_half(int j) {
  // binom(2j, j) / 2
  double c = 1.0;
  for (int i = 1; i <= j; ++i) c = c * (j + i) / i;
  return 0.5 * c;
}

}  // namespace

double limit_dual(int j, const FunctionHandle& f, const QuadratureRule& quad) {
  if (j < 0) throw Error(Errc::invalid_argument, "limit_dual: negative index");
  const double f0 = f(0.0);
  const double f1 = f(1.0);
  if (j == 0) return 0.5 * (f0 + f1);
  if (j == 1) return f1 - f0;
  if (quad.alpha() != 0.0 || quad.beta() != 0.0)
    throw Error(Errc::invalid_argument, "limit_dual: quadrature must be Legendre type");
  const Polynomial jac = jacobi11(j - 2);
  const FunctionHandle integrand([&](double x) { return f(x) * jac(2.0 * x - 1.0); });
  const double integral = quad.mean(integrand);
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return central_binomial_half(j) * (sign * f0 + f1 - j * integral);
}

double limit_dual(int j, const Polynomial& p) {
  // Integrating the product in the monomial basis cancels badly; a Gauss rule
  // exact for its degree does not.
  const QuadratureRule quad = QuadratureRule::gauss_legendre(std::max(1, (p.degree() + j) / 2 + 1));
  return limit_dual(j, FunctionHandle(std::function<double(double)>([&](double x) { return p(x); })), quad);
}

LimitEigenData::LimitEigenData(double rho_, int max_index) : rho(rho_) {
  if (max_index < 0) throw Error(Errc::invalid_argument, "LimitEigenData: negative index");
  for (int j = 0; j <= max_index; ++j) {
    limit_lambdas.push_back(limit_eigenvalue(rho, j));
    limit_polys.push_back(limit_eigenpoly(j));
  }
}

std::vector<AsymptoticRecord> asymptotic_report(double rho, int j, std::span<const int> ns,
                                                std::span<const Polynomial> tests, const GridSpec& grid) {
  if (j < 0) throw Error(Errc::invalid_argument, "asymptotic_report: negative index");
  int block = j;
  for (const auto& p : tests) block = std::max(block, p.degree());
  if (block > kEigenDegreeCap)
    throw Error(Errc::degree_overflow, "asymptotic_report: degree exceeds eigen cap");

  const double lim = limit_eigenvalue(rho, j);
  const Polynomial pstar = limit_eigenpoly(j);
  std::vector<double> mustar;
  for (const auto& p : tests) mustar.push_back(limit_dual(j, p));

  std::vector<AsymptoticRecord> out;
  for (int n : ns) {
    if (n < block) throw Error(Errc::invalid_argument, "asymptotic_report: n smaller than required degree");
    AsymptoticRecord rec{n, 0.0, 0.0, std::numeric_limits<double>::quiet_NaN()};
    rec.eigenvalue_gap = std::abs(n * (eigenvalue(n, rho, j) - 1.0) - lim);
    const EigenSystem sys = compute_eigensystem(build_u_block(n, rho, block));
    const Polynomial diff = sys.eigenpoly(j) - pstar;
    rec.poly_distance = sup_norm(FunctionHandle(diff), grid);
    if (!tests.empty()) {
      double worst = 0.0;
      for (std::size_t t = 0; t < tests.size(); ++t)
        worst = std::max(worst, std::abs(sys.dual_coefficients(tests[t])[j] - mustar[t]));
      rec.dual_distance = worst;
    }
    out.push_back(rec);
  }
  return out;
}

}  // namespace useries
