#include <doctest.h>

#include <cmath>
#include <random>

#include "useries/eigen.hpp"
#include "useries/error.hpp"

using namespace useries;

namespace {

Polynomial random_poly(std::mt19937& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(degree + 1);
  for (double& x : c) x = u(rng);
  return Polynomial(c);
}

}  // namespace

TEST_CASE("eigenvalue") {
  CHECK(eigenvalue(7, 0.3, 0) == 1.0);
  for (int n : {1, 4, 30})
    for (double rho : {0.1, 1.0, 10.0}) CHECK(eigenvalue(n, rho, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eigenvalue(2, 1.0, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // Rising-factorial form rho^j n! / ((n rho)^(j) (n-j)!).
  const int n = 9;
  const double rho = 0.6;
  for (int j = 0; j <= n; ++j) {
    double num = std::pow(rho, j) * std::tgamma(n + 1.0) / std::tgamma(n - j + 1.0);
    double den = 1.0;
    for (int i = 0; i < j; ++i) den *= n * rho + i;
    CHECK(eigenvalue(n, rho, j) == doctest::Approx(num / den).epsilon(1e-12));
  }
  CHECK_THROWS_AS(eigenvalue(3, 1.0, 4), Error);
  CHECK(eigenvalue(5, kBernsteinRho, 2) == doctest::Approx(0.8));
}

TEST_CASE("eigensystem examples") {
  const EigenSystem s = compute_eigensystem(build_u_matrix(2, 1.0));
  CHECK(max_coeff_diff(s.eigenpoly(0), Polynomial::constant(1.0)) == 0.0);
  CHECK(max_coeff_diff(s.eigenpoly(1), Polynomial{-0.5, 1.0}) == 0.0);
  CHECK(max_coeff_diff(s.eigenpoly(2), Polynomial{0.0, -1.0, 1.0}) < 1e-15);
  CHECK(s.lambda(2) == doctest::Approx(1.0 / 3.0));
  for (int n : {3, 8, 17})
    for (double rho : {0.1, 2.0})
      CHECK(max_coeff_diff(compute_eigensystem(build_u_matrix(n, rho)).eigenpoly(1), Polynomial{-0.5, 1.0}) == 0.0);
}

TEST_CASE("eigensystem invariants") {
  for (double rho : {0.1, 1.0, 10.0})
    for (int n = 1; n <= 30; ++n) {
      const UOperatorMatrix m = build_u_matrix(n, rho);
      const EigenSystem s = compute_eigensystem(m);
      CHECK(s.degree() == n);
      CHECK(s.lambda(0) == 1.0);
      CHECK(s.lambda(1) == 1.0);
      for (int j = 0; j <= n; ++j) {
        const Polynomial& p = s.eigenpoly(j);
        CHECK(p.degree() == j);
        CHECK(p.leading() == 1.0);
        CHECK(max_coeff_diff(apply_U_poly(m, p), s.lambda(j) * p) <= 1e-9);
        if (j >= 2) {
          CHECK(std::abs(p(0.0)) + std::abs(p(1.0)) <= 1e-9);
          CHECK(s.lambda(j) < s.lambda(j - 1));
        }
      }
    }
}

TEST_CASE("dual coefficients") {
  const EigenSystem s = compute_eigensystem(build_u_matrix(6, 0.8));
  for (int j = 0; j <= 6; ++j) {
    const auto mu = s.dual_coefficients(s.eigenpoly(j));
    for (int i = 0; i <= 6; ++i) CHECK(std::abs(mu[i] - (i == j ? 1.0 : 0.0)) < 1e-12);
  }
  const auto e0 = s.dual_coefficients(Polynomial::constant(1.0));
  CHECK(e0[0] == 1.0);
  for (std::size_t i = 1; i < e0.size(); ++i) CHECK(e0[i] == 0.0);
  const EigenSystem s2 = compute_eigensystem(build_u_matrix(2, 1.0));
  const auto mu = dual_coefficients(s2, Polynomial::psi());
  CHECK(std::abs(mu[0]) < 1e-15);
  CHECK(std::abs(mu[1]) < 1e-15);
  CHECK(mu[2] == doctest::Approx(-1.0));
  CHECK_THROWS_AS(s2.dual_coefficients(Polynomial::monomial(3)), Error);

  std::mt19937 rng(3);
  for (double rho : {0.1, 1.0, 10.0})
    for (int n : {5, 12, 20, 30}) {
      const EigenSystem sys = compute_eigensystem(build_u_matrix(n, rho));
      const Polynomial p = random_poly(rng, n);
      const auto c = sys.dual_coefficients(p);
      Polynomial back;
      for (int j = 0; j <= n; ++j) back += c[j] * sys.eigenpoly(j);
      CHECK(max_coeff_diff(back, p) <= 1e-9);
    }
}

TEST_CASE("limit eigenvalues") {
  CHECK(limit_eigenvalue(1.3, 0) == 0.0);
  CHECK(limit_eigenvalue(1.3, 1) == 0.0);
  CHECK(limit_eigenvalue(1.0, 2) == doctest::Approx(-2.0));
  CHECK(limit_eigenvalue(2.0, 3) == doctest::Approx(-4.5));
  const LimitEigenData d(0.5, 8);
  for (int j = 2; j <= 8; ++j) CHECK(d.limit_lambdas[j] < 0.0);
  CHECK(d.limit_polys.size() == 9);
}

TEST_CASE("limit dual functionals") {
  const auto q = QuadratureRule::gauss_legendre(12);
  CHECK(limit_dual(0, Polynomial::constant(1.0), q) == doctest::Approx(1.0));
  CHECK(limit_dual(1, Polynomial::monomial(1), q) == doctest::Approx(1.0));
  CHECK(limit_dual(2, Polynomial{0.0, -1.0, 1.0}, q) == doctest::Approx(1.0));
  CHECK(limit_dual(2, Polynomial{0.0, -1.0, 1.0}) == doctest::Approx(1.0));
  // Generic argument against the exact polynomial path.
  const Polynomial p{0.3, -1.0, 2.0, 0.5, -0.7};
  const FunctionHandle generic([&](double x) { return p(x); });
  for (int j = 0; j <= 6; ++j) CHECK(std::abs(limit_dual(j, generic, q) - limit_dual(j, p)) <= 1e-10);
  // Biorthogonality with the limit eigenpolynomials.
  for (int j = 0; j <= 8; ++j)
    for (int i = 0; i <= 8; ++i) CHECK(std::abs(limit_dual(j, limit_eigenpoly(i)) - (i == j ? 1.0 : 0.0)) < 1e-9);
}

TEST_CASE("limit reconstruction on C_0 polynomials") {
  std::mt19937 rng(17);
  for (int m = 2; m <= 10; ++m) {
    const Polynomial p = Polynomial::psi() * random_poly(rng, m - 2);
    Polynomial back;
    for (int j = 2; j <= m; ++j) back += limit_dual(j, p) * limit_eigenpoly(j);
    CHECK(max_coeff_diff(back, p) <= 1e-8);
  }
}

TEST_CASE("asymptotic report") {
  const int ns[] = {10, 20, 40, 80};
  for (int j : {0, 1}) {
    for (const auto& r : asymptotic_report(1.0, j, ns)) {
      CHECK(r.eigenvalue_gap == 0.0);
      CHECK(std::isnan(r.dual_distance));
    }
  }
  const int big[] = {20, 40, 80, 160, 320};
  const auto r2 = asymptotic_report(1.0, 2, big);
  for (std::size_t i = 1; i < r2.size(); ++i) {
    CHECK(r2[i].eigenvalue_gap < r2[i - 1].eigenvalue_gap);
    CHECK(std::abs(r2[i].eigenvalue_gap / r2[i - 1].eigenvalue_gap - 0.5) <= 0.075);
  }
  // p_2 = -Psi and p_3 are fixed by symmetry, and at rho = 1 every p_j is
  // independent of n; elsewhere the distance to the limit decreases.
  for (double rho : {0.3, 1.0, 3.0})
    for (int j = 2; j <= 6; ++j) {
      const auto r = asymptotic_report(rho, j, ns);
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (j <= 3 || rho == 1.0)
          CHECK(r[i].poly_distance <= 1e-13);
        else if (i > 0)
          CHECK(r[i].poly_distance < r[i - 1].poly_distance);
      }
    }
  const Polynomial tests[] = {Polynomial::psi() * Polynomial::monomial(4),
                              Polynomial::psi() * Polynomial{1.0, 3.0, -2.0, 0.5}};
  const auto rd = asymptotic_report(2.0, 4, ns, tests);
  for (std::size_t i = 1; i < rd.size(); ++i) CHECK(rd[i].dual_distance < rd[i - 1].dual_distance);
  const int small[] = {2};
  CHECK_THROWS_AS(asymptotic_report(1.0, 3, small), Error);
}
