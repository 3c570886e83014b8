// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "useries/bounds.hpp"
#include "useries/corpus.hpp"
#include "useries/eigen.hpp"
#include "useries/error.hpp"
#include "useries/operators.hpp"
#include "useries/polyfun.hpp"
#include "useries/series.hpp"
#include "useries/voronovskaya.hpp"

using namespace useries;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void run(const char* id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out{false, ""};
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool ok = out.pass && in_time;
  if (!ok) ++failures;
  std::printf("%s [%s] %s: %s (%.3fs of %.0fs%s)\n", ok ? "PASS" : "FAIL", id, title, out.detail.c_str(), secs,
              budget_s, in_time ? "" : ", over budget");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Polynomial random_poly(std::mt19937& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(degree + 1);
  for (double& x : c) x = u(rng);
  return Polynomial(c);
}

double grid_sup(const std::function<double(double)>& f, const GridSpec& g) {
  double m = 0.0;
  for (double x : g.points()) m = std::max(m, std::abs(f(x)));
  return m;
}

}  // namespace

int main() {
  const GridSpec grid129 = GridSpec::uniform(129);
  const FunctionCorpus corpus = FunctionCorpus::load_default();

  run("1", "operator norm on C_0", 1.0, [] {
    double worst = 0.0;
    for (double rho : {0.1, 0.5, 1.0, 2.0, 10.0})
      for (int n = 2; n <= 30; ++n) {
        const UOperatorMatrix mat = build_u_matrix(n, rho);
        const Polynomial cof = deflate_by_psi(apply_U_poly(mat, Polynomial::psi()));
        const double target = (n - 1) * rho / (n * rho + 1.0);
        worst = std::max(worst, max_coeff_diff(cof, Polynomial::constant(target)));
      }
    return Outcome{worst <= 1e-10, fmt("max coefficient error %.3g", worst)};
  });

  run("2", "eigenstructure", 5.0, [] {
    double rel = 0.0, ends = 0.0, diag = 0.0;
    for (double rho : {0.1, 1.0, 10.0})
      for (int n = 1; n <= 30; ++n) {
        const UOperatorMatrix mat = build_u_matrix(n, rho);
        const EigenSystem sys = compute_eigensystem(mat);
        for (int j = 0; j <= n; ++j) {
          diag = std::max(diag, std::abs(mat.diagonal(j) - eigenvalue(n, rho, j)));
          const Polynomial& p = sys.eigenpoly(j);
          rel = std::max(rel, max_coeff_diff(apply_U_poly(mat, p), sys.lambda(j) * p));
          if (j >= 2) ends = std::max(ends, std::abs(p(0.0)) + std::abs(p(1.0)));
        }
      }
    const bool ok = rel <= 1e-9 && ends <= 1e-9 && diag <= 1e-10;
    char buf[160];
    std::snprintf(buf, sizeof buf, "eigen residual %.3g, endpoints %.3g, diagonal %.3g", rel, ends, diag);
    return Outcome{ok, buf};
  });

  run("3", "eigenvalue asymptotics", 1.0, [] {
    const int ns[] = {20, 40, 80, 160};
    double worst = 0.0;
    for (int j : {2, 3, 4}) {
      const auto rep = asymptotic_report(1.0, j, ns);
      for (std::size_t i = 1; i < rep.size(); ++i)
        worst = std::max(worst, std::abs(rep[i].eigenvalue_gap / rep[i - 1].eigenvalue_gap - 0.5) / 0.5);
    }
    return Outcome{worst <= 0.15, fmt("worst deviation of gap ratio from 1/2: %.2f%%", 100.0 * worst)};
  });

  run("4", "iterative series vs closed form", 10.0, [&] {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> pick_n(2, 12);
    const double rhos[] = {0.5, 1.0, 2.0};
    double worst_excess = -1.0;
    for (int trial = 0; trial < 50; ++trial) {
      const int n = pick_n(rng);
      const double rho = rhos[trial % 3];
      const Polynomial h = random_poly(rng, n - 2);
      const Polynomial p = Polynomial::psi() * h;
      SeriesConfig cfg;
      cfg.grid = grid129;
      const SeriesResult it = apply_series(n, rho, C0Function(h, grid129), cfg);
      const EigenSystem sys = compute_eigensystem(build_u_matrix(n, rho));
      const Polynomial closed = deflate_by_psi(apply_series_poly(sys, p), 1e-9);
      const double err = grid_sup([&](double x) { return it.value.cofactor()(x) - closed(x); }, grid129);
      worst_excess = std::max(worst_excess, err - (kPolynomialSeriesTol + 1e-9));
    }
    return Outcome{worst_excess <= 0.0, fmt("worst error minus (tol + 1e-9): %.3g", worst_excess)};
  });

  run("5", "series norm", 1.0, [] {
    double worst = 0.0;
    for (double rho : {0.5, 1.0, 2.0})
      for (int n : {2, 8, 32}) {
        const double target = rho / (rho + 1.0);
        const EigenSystem sys = compute_eigensystem(build_u_block(n, rho, 2));
        const Polynomial closed = deflate_by_psi(apply_series_poly(sys, Polynomial::psi()));
        worst = std::max(worst, max_coeff_diff(closed, Polynomial::constant(target)));
        SeriesConfig cfg;
        cfg.tol = 1e-12;
        const SeriesResult it = apply_series(n, rho, C0Function(Polynomial::constant(1.0)), cfg);
        const Polynomial* cof = it.value.cofactor().polynomial();
        worst = std::max(worst, max_coeff_diff(*cof, Polynomial::constant(target)));
      }
    return Outcome{worst <= 1e-10, fmt("max cofactor error %.3g (closed form and iteration)", worst)};
  });

  run("6", "inverse Voronovskaya operator", 2.0, [&] {
    std::mt19937 rng(77);
    double trip = 0.0;
    for (double rho : {0.5, 1.0, 2.0})
      for (int trial = 0; trial < 10; ++trial) {
        const VoronovskayaContext ctx(rho);
        // y in Pi_12 with y(0) = y(1) = 0, f = A y, then -A^{-1} f = -y.
        const Polynomial y = Polynomial::psi() * random_poly(rng, 10);
        const C0Function f = apply_A_rho(ctx, y);
        const Polynomial back = inverse_neg_polynomial(ctx, *f.cofactor().polynomial());
        trip = std::max(trip, max_coeff_diff(back, -y));
        // h of degree 10, A(-A^{-1}(Psi h)) = -Psi h.
        const Polynomial h = random_poly(rng, 10);
        const C0Function g = apply_A_rho(ctx, inverse_neg_polynomial(ctx, h));
        trip = std::max(trip, max_coeff_diff(*g.cofactor().polynomial(), -h));
      }
    double eq = 0.0;
    bool holds = true;
    for (double rho : {0.1, 1.0, 10.0}) {
      const VoronovskayaContext ctx(rho);
      const C0Function psi(Polynomial::constant(1.0));
      const auto chk = inverse_norm_check(ctx, psi, grid129);
      holds = holds && chk.holds;
      eq = std::max(eq, std::abs(inverse_neg(ctx, psi, 0.5) - chk.rhs));
    }
    const bool ok = trip <= 1e-9 && eq <= 1e-10 && holds;
    return Outcome{ok, fmt("round trip %.3g, equality gap at x = 1/2 %.3g", trip, eq)};
  });

  run("7", "Jacobi differential identity", 1.0, [] {
    double worst = 0.0;
    for (int j = 2; j <= 10; ++j) {
      const Polynomial p = limit_eigenpoly(j);
      const Polynomial lhs = Polynomial::psi() * p.derivative().derivative();
      worst = std::max(worst, max_coeff_diff(lhs, -(j * (j - 1.0)) * p));
    }
    return Outcome{worst <= 1e-10, fmt("max coefficient error %.3g", worst)};
  });

  run("8", "limit of the series", 2.0, [&] {
    std::mt19937 rng(4242);
    double worst = 0.0;
    for (double rho : {0.5, 1.0, 2.0, 10.0})
      for (int trial = 0; trial < 10; ++trial) {
        const Polynomial p = Polynomial::psi() * random_poly(rng, 8);
        const Polynomial lim = poly_limit(p, rho);
        const VoronovskayaContext ctx(rho);
        const C0Function f = C0Function::from_polynomial(p);
        worst = std::max(worst, grid_sup([&](double x) { return lim(x) - inverse_neg(ctx, f, x); }, grid129));
      }
    return Outcome{worst <= 1e-8, fmt("max grid error %.3g", worst)};
  });

  run("9", "residual convergence", 30.0, [&] {
    // Residuals below this are rounding noise: H vanishes identically.
    constexpr double kNoise = 1e-10;
    const int ns[] = {8, 16, 32, 64};
    std::string bad;
    double worst_ratio = 0.0;
    for (const CorpusEntry* e : corpus.standard())
      for (double rho : {0.5, 1.0, 2.0}) {
        SeriesConfig cfg;
        cfg.grid = grid129;
        cfg.tol = 1e-13;
        std::vector<double> sup;
        for (int n : ns) {
          const auto res = residual_H(n, rho, e->fn, grid129.points(), cfg);
          double s = 0.0;
          for (double v : res.values) s = std::max(s, std::abs(v));
          sup.push_back(s);
        }
        if (sup.front() <= kNoise && sup.back() <= kNoise) continue;
        bool ok = true;
        for (std::size_t i = 1; i < sup.size(); ++i) ok = ok && sup[i] < sup[i - 1];
        const double ratio = sup.back() / sup.front();
        worst_ratio = std::max(worst_ratio, ratio);
        if (!ok || ratio >= 0.25) bad += " " + e->name + "@" + fmt("%g", rho);
      }
    return Outcome{bad.empty(), bad.empty() ? fmt("worst sup|H_64| / sup|H_8| = %.3f", worst_ratio)
                                            : "not decreasing for" + bad};
  });

  run("10", "quantitative residual bound", 60.0, [&] {
    double worst = 1e300;
    std::string bad;
    int checks = 0;
    for (const CorpusEntry* e : corpus.standard())
      for (double rho : {0.5, 1.0, 2.0, 5.0})
        for (int n : {16, 32, 64}) {
          SeriesConfig cfg;
          cfg.grid = grid129;
          const BoundReport rep = check_bound(e->fn, n, rho, grid129, std::nullopt, cfg);
          ++checks;
          worst = std::min(worst, rep.margin + rep.slack);
          if (!rep.satisfied) bad += " " + e->name + "@(" + std::to_string(n) + "," + fmt("%g", rho) + ")";
        }
    const std::string detail = std::to_string(checks) + " checks, min margin + slack " + fmt("%.3g", worst);
    return Outcome{bad.empty(), bad.empty() ? detail : detail + "; violated for" + bad};
  });

  // Fixed n for the limiting cases, every corpus function.
  constexpr int kLimitN = 16;

  run("11a", "large rho reproduces Bernstein", 5.0, [&] {
    const double rho = 1e4;
    double worst = 0.0;
    std::string where;
    for (const CorpusEntry& e : corpus.entries()) {
      std::vector<double> samples(kLimitN + 1);
      for (int k = 0; k <= kLimitN; ++k) samples[k] = e.fn(static_cast<double>(k) / kLimitN);
      const auto u = apply_U(kLimitN, rho, e.fn, grid129.points(), default_quad_size(kLimitN));
      for (int i = 0; i < grid129.count(); ++i) {
        const double err = std::abs(u[i] - bernstein_basis_eval(samples, grid129.points()[i]));
        if (err > worst) worst = err, where = e.name;
      }
    }
    return Outcome{worst <= 1e-3, fmt("max |U f - B_n f| = %.3g", worst) + " (" + where + ")"};
  });

  run("11b", "small rho reproduces the chord", 5.0, [&] {
    const double rho = 1e-4;
    double worst = 0.0;
    std::string bad;
    for (const CorpusEntry& e : corpus.entries()) {
      const double f0 = e.fn(0.0), f1 = e.fn(1.0);
      const auto u = apply_U(kLimitN, rho, e.fn, grid129.points(), default_quad_size(kLimitN));
      double err = 0.0;
      for (int i = 0; i < grid129.count(); ++i) {
        const double x = grid129.points()[i];
        err = std::max(err, std::abs(u[i] - (f0 * (1.0 - x) + f1 * x)));
      }
      worst = std::max(worst, err);
      if (err > 1e-3) bad += " " + e.name + fmt("=%.3g", err);
    }
    return Outcome{bad.empty(), fmt("max |U f - chord| = %.3g", worst) + (bad.empty() ? "" : ";" + bad)};
  });

  run("11c", "large-rho bound vs Bernstein-limit bound", 5.0, [&] {
    const FunctionHandle e1(Polynomial::monomial(1));
    const Theorem52Bound thm = theorem52_bound(e1, 16, 1e4, grid129);
    const BernsteinLimitBound lim = bernstein_limit_bound(e1, 16, grid129);
    const double rel = std::abs(thm.profile() - lim.profile()) / lim.profile();
    return Outcome{rel <= 0.10, fmt("rhs/Psi %.6g vs %.6g", thm.profile(), lim.profile()) +
                                    fmt(", relative difference %.1f%%", 100.0 * rel)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
