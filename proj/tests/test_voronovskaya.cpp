#include <doctest.h>

#include <cmath>
#include <random>

#include "useries/error.hpp"
#include "useries/voronovskaya.hpp"

using namespace useries;

namespace {

// Direct double integral by composite Simpson on [0,x] and [x,1].
double f_infty_simpson(const std::function<double(double)>& h, double x) {
  auto simpson = [](const std::function<double(double)>& g, double a, double b) {
    const int m = 2000;
    const double step = (b - a) / m;
    double s = g(a) + g(b);
    for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * g(a + i * step);
    return s * step / 3.0;
  };
  return (1 - x) * simpson([&](double t) { return t * h(t); }, 0.0, x) +
         x * simpson([&](double t) { return (1 - t) * h(t); }, x, 1.0);
}

}  // namespace

TEST_CASE("constants") {
  const VoronovskayaContext ctx(3.0);
  CHECK(ctx.operator_constant() == doctest::Approx(4.0 / 6.0));
  CHECK(ctx.inverse_constant() == doctest::Approx(1.5));
  CHECK_THROWS_AS(VoronovskayaContext(0.0), Error);
}

TEST_CASE("F_inf examples") {
  const VoronovskayaContext ctx(1.0);
  CHECK(max_coeff_diff(f_infty_polynomial(Polynomial::constant(1.0)), 0.5 * Polynomial::psi()) < 1e-15);
  CHECK(f_infty(ctx, Polynomial::monomial(1), 0.5) == doctest::Approx(1.0 / 16.0));
  CHECK(f_infty(ctx, Polynomial{}, 0.3) == 0.0);
  for (double x : {0.0, 1.0}) CHECK(f_infty(ctx, Polynomial{1.0, 2.0, -3.0}, x) == 0.0);
}

TEST_CASE("F_inf against direct integration") {
  const VoronovskayaContext ctx(0.7);
  const std::function<double(double)> fs[] = {[](double t) { return std::exp(t); },
                                              [](double t) { return std::sin(2 * M_PI * t); },
                                              [](double t) { return std::abs(t - 0.5); }};
  for (const auto& f : fs)
    for (double x : {0.1, 0.37, 0.5, 0.81}) {
      // The corner of |t - 1/2| limits the Gauss rule to a few digits.
      const double tol = &f == &fs[2] ? 1e-4 : 1e-12;
      CHECK(std::abs(f_infty(ctx, FunctionHandle(f), x) - f_infty_simpson(f, x)) <= tol);
    }
}

TEST_CASE("operator and inverse") {
  const VoronovskayaContext ctx(2.0);
  const C0Function a = apply_A_rho(ctx, Polynomial::psi());
  CHECK(a.cofactor()(0.4) == doctest::Approx(-1.5));
  CHECK(a(0.4) == doctest::Approx(-1.5 * 0.24));
  CHECK_THROWS_AS(apply_A_rho(ctx, Polynomial{1.0, 1.0}), Error);

  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  for (double rho : {0.3, 1.0, 5.0}) {
    const VoronovskayaContext c(rho);
    for (int d = 0; d <= 6; ++d) {
      std::vector<double> co(d + 1);
      for (double& v : co) v = u(rng);
      const Polynomial h(co);
      const Polynomial y = inverse_neg_polynomial(c, h);
      CHECK(std::abs(y(0.0)) + std::abs(y(1.0)) < 1e-14);
      // A_rho(-A_rho^{-1}(Psi h)) = -Psi h
      const C0Function back = apply_A_rho(c, y);
      for (double x : {0.2, 0.5, 0.9}) CHECK(std::abs(back.cofactor()(x) + h(x)) < 1e-10);
      const C0Function f(h);
      for (double x : {0.15, 0.5, 0.7}) CHECK(inverse_neg(c, f, x) == doctest::Approx(y(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("eigen action") {
  for (double rho : {0.5, 2.0}) {
    const VoronovskayaContext ctx(rho);
    for (int j = 2; j <= 10; ++j) {
      const Polynomial p = limit_eigenpoly(j);
      const C0Function a = apply_A_rho(ctx, p);
      for (double x : {0.1, 0.45, 0.8}) CHECK(std::abs(a(x) - limit_eigenvalue(rho, j) * p(x)) < 1e-10);
    }
  }
}

TEST_CASE("inverse norm check") {
  for (double rho : {0.5, 1.0, 4.0}) {
    const VoronovskayaContext ctx(rho);
    for (const FunctionHandle& h : {FunctionHandle(Polynomial::constant(1.0)), FunctionHandle(Polynomial{1.0, -2.0}),
                                    FunctionHandle([](double x) { return std::exp(x); })}) {
      const InverseNormCheck c = inverse_norm_check(ctx, C0Function(h));
      CHECK(c.holds);
      CHECK(c.lhs <= c.rhs + 1e-10);
    }
  }
  // h = 1 is the extremal case: sup of (rho/(rho+1)) x(1-x) is rho / (4 (rho + 1)).
  const VoronovskayaContext ctx(1.0);
  const InverseNormCheck c = inverse_norm_check(ctx, C0Function(Polynomial::constant(1.0)));
  CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-12));
}

TEST_CASE("residual H") {
  const GridSpec g = GridSpec::uniform(129);
  // A_n^rho Psi = (rho / (rho + 1)) Psi = -A_rho^{-1} Psi.
  for (double rho : {0.5, 1.0, 2.0})
    for (int n : {4, 16}) {
      SeriesConfig cfg;
      cfg.tol = 1e-13;
      const ResidualProfile r = residual_H(n, rho, Polynomial::constant(1.0), g.points(), cfg);
      for (double v : r.values) CHECK(std::abs(v) <= 1e-11);
    }
  CHECK(std::abs(residual_H(8, 1.0, Polynomial{1.0, -2.0}, 0.5)) <= 1e-12);

  for (double rho : {0.5, 1.0, 2.0}) {
    double prev = 0.0;
    for (int n : {16, 32, 64}) {
      SeriesConfig cfg;
      cfg.tol = 1e-13;
      const ResidualProfile r = residual_H(n, rho, Polynomial::monomial(2), g.points(), cfg);
      double sup = 0.0;
      for (double v : r.values) sup = std::max(sup, std::abs(v));
      if (prev > 0.0) {
        const double ratio = sup / prev;
        CHECK(ratio >= 0.3);
        CHECK(ratio <= 0.8);
      }
      prev = sup;
    }
  }
}

TEST_CASE("residual pointwise and vector forms agree") {
  const FunctionHandle h([](double x) { return std::exp(x); });
  const double xs[] = {0.0, 0.25, 0.5, 0.9, 1.0};
  const ResidualProfile r = residual_H(10, 1.5, h, xs);
  for (std::size_t i = 0; i < 5; ++i) CHECK(r.values[i] == doctest::Approx(residual_H(10, 1.5, h, xs[i])).epsilon(1e-12));
  CHECK(r.values.front() == 0.0);
  CHECK(r.values.back() == 0.0);
}
