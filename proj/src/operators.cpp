#include "useries/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "useries/error.hpp"

namespace useries {

namespace {

void check_n_rho(int n, double rho) {
  if (n < 1) throw Error(Errc::invalid_argument, "operator degree n must be >= 1");
  if (!(rho > 0.0)) throw Error(Errc::invalid_argument, "rho must be positive");
}

// Pascal rows up to kDegreeCap; binom(n, k) is exact in double for n <= 60.
const std::vector<std::vector<double>>& pascal() {
  static const auto rows = [] {
    std::vector<std::vector<double>> r(kDegreeCap + 1);
    for (int n = 0; n <= kDegreeCap; ++n) {
      r[n].assign(n + 1, 1.0);
      for (int k = 1; k < n; ++k) r[n][k] = r[n - 1][k - 1] + r[n - 1][k];
    }
    return r;
  }();
  return rows;
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n <= kDegreeCap) return pascal()[n][k];
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

// The polynomial g_m(t) with g_m(k/n) = F_{n,k}(e_m) for every k = 0..n.
// For U_n^rho it is prod_{i<m} (n rho t + i) / (n rho + i); for B_n it is t^m.
// All coefficients are nonnegative.
std::vector<double> moment_profile(int n, double rho, int m) {
  std::vector<double> g{1.0};
  if (rho == kBernsteinRho) {
    g.assign(m + 1, 0.0);
    g[m] = 1.0;
    return g;
  }
  const double nr = n * rho;
  for (int i = 0; i < m; ++i) {
    const double slope = nr / (nr + i);
    const double shift = i / (nr + i);
    std::vector<double> next(g.size() + 1, 0.0);
    for (std::size_t j = 0; j < g.size(); ++j) {
      next[j] += shift * g[j];
      next[j + 1] += slope * g[j];
    }
    g = std::move(next);
  }
  return g;
}

}  // namespace

double functional_moment(int n, int k, double rho, int m) {
  check_n_rho(n, rho);
  if (k < 1 || k > n - 1)
    throw Error(Errc::invalid_argument, "functional_moment: k must lie in [1, n-1]");
  if (m < 0) throw Error(Errc::invalid_argument, "functional_moment: negative order");
  double v = 1.0;
  for (int i = 0; i < m; ++i) v *= (k * rho + i) / (n * rho + i);
  return v;
}

double apply_F(int n, int k, double rho, const FunctionHandle& f, const QuadratureRule& q) {
  check_n_rho(n, rho);
  if (k < 1 || k > n - 1) throw Error(Errc::invalid_argument, "apply_F: k must lie in [1, n-1]");
  const double a = k * rho - 1.0;
  const double b = (n - k) * rho - 1.0;
  if (std::abs(q.alpha() - a) > 1e-12 * std::max(1.0, std::abs(a)) ||
      std::abs(q.beta() - b) > 1e-12 * std::max(1.0, std::abs(b)))
    throw Error(Errc::invalid_argument, "apply_F: quadrature exponents do not match (k rho - 1, (n-k) rho - 1)");
  return q.mean(f);
}

int default_quad_size(int n) { return std::max(20, n + 5); }

UOperatorMatrix::UOperatorMatrix(int n, double rho, int degree, std::vector<double> entries)
    : n_(n), rho_(rho), degree_(degree), entries_(std::move(entries)) {
  if (entries_.size() != static_cast<std::size_t>(dim() * dim()))
    throw Error(Errc::invalid_argument, "UOperatorMatrix: entry count mismatch");
}

Polynomial UOperatorMatrix::column(int m) const {
  std::vector<double> c(dim());
  for (int r = 0; r < dim(); ++r) c[r] = at(r, m);
  return Polynomial(std::move(c));
}

UOperatorMatrix build_u_block(int n, double rho, int degree) {
  check_n_rho(n, rho);
  if (degree < 0 || degree > n)
    throw Error(Errc::invalid_argument, "build_u_block: degree must lie in [0, n]");
  if (degree > kDegreeCap)
    throw Error(Errc::degree_overflow, "build_u_block: degree exceeds cap " + std::to_string(kDegreeCap));

  const int d = degree + 1;
  // Stirling numbers of the second kind, S(j, l) for j, l <= degree.
  std::vector<std::vector<double>> stirling(d, std::vector<double>(d, 0.0));
  stirling[0][0] = 1.0;
  for (int j = 1; j < d; ++j)
    for (int l = 1; l <= j; ++l) stirling[j][l] = l * stirling[j - 1][l] + stirling[j - 1][l - 1];
  // falling[l] = n(n-1)...(n-l+1) / n^l
  std::vector<double> falling(d, 1.0);
  for (int l = 1; l < d; ++l) falling[l] = falling[l - 1] * (1.0 - static_cast<double>(l - 1) / n);

  // B_n(t^j) = sum_l S(j, l) n^{falling l} / n^j x^l, and U_n^rho e_m = B_n g_m.
  std::vector<double> entries(static_cast<std::size_t>(d) * d, 0.0);
  for (int m = 0; m < d; ++m) {
    const auto g = moment_profile(n, rho, m);
    for (int j = 0; j <= m; ++j) {
      if (g[j] == 0.0) continue;
      for (int l = 0; l <= j; ++l) {
        if (stirling[j][l] == 0.0) continue;
        entries[l * d + m] += g[j] * stirling[j][l] * falling[l] * std::pow(static_cast<double>(n), l - j);
      }
    }
  }
  return UOperatorMatrix(n, rho, degree, std::move(entries));
}

UOperatorMatrix build_u_matrix(int n, double rho) {
  check_n_rho(n, rho);
  if (n > kDegreeCap)
    throw Error(Errc::degree_overflow, "build_u_matrix: n exceeds degree cap " + std::to_string(kDegreeCap));
  return build_u_block(n, rho, n);
}

UOperatorMatrix build_bernstein_block(int n, int degree) { return build_u_block(n, kBernsteinRho, degree); }

Polynomial apply_U_poly(const UOperatorMatrix& mat, const Polynomial& p) {
  if (p.degree() > mat.degree())
    throw Error(Errc::degree_overflow, "apply_U_poly: polynomial degree exceeds matrix degree");
  std::vector<double> out(mat.dim(), 0.0);
  for (int c = 0; c <= p.degree(); ++c) {
    const double pc = p.coeff(c);
    if (pc == 0.0) continue;
    for (int r = 0; r <= c; ++r) out[r] += mat.at(r, c) * pc;
  }
  return Polynomial(std::move(out));
}

UQuadrature::UQuadrature(int n, double rho, int quad_size) : n_(n), rho_(rho) {
  check_n_rho(n, rho);
  if (quad_size < 2) throw Error(Errc::invalid_argument, "quadrature size must be >= 2");
  if (rho == kBernsteinRho) return;
  rules_.reserve(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k)
    rules_.push_back(QuadratureRule::gauss_jacobi(quad_size, k * rho - 1.0, (n - k) * rho - 1.0));
}

std::vector<double> UQuadrature::bernstein_coefficients(const FunctionHandle& f) const {
  std::vector<double> b(n_ + 1);
  b[0] = f(0.0);
  b[n_] = f(1.0);
  for (int k = 1; k < n_; ++k)
    b[k] = (rho_ == kBernsteinRho) ? f(static_cast<double>(k) / n_) : apply_F(n_, k, rho_, f, rules_[k - 1]);
  return b;
}

double bernstein_basis_eval(std::span<const double> b, double x) {
  if (b.empty()) return 0.0;
  std::vector<double> w(b.begin(), b.end());
  const double y = 1.0 - x;
  for (std::size_t r = 1; r < w.size(); ++r)
    for (std::size_t i = 0; i + r < w.size(); ++i) w[i] = y * w[i] + x * w[i + 1];
  return w[0];
}

double apply_U(int n, double rho, const FunctionHandle& f, double x, int quad_size) {
  const UQuadrature uq(n, rho, quad_size);
  const auto b = uq.bernstein_coefficients(f);
  return bernstein_basis_eval(b, x);
}

std::vector<double> apply_U(int n, double rho, const FunctionHandle& f, std::span<const double> xs,
                            int quad_size) {
  const UQuadrature uq(n, rho, quad_size);
  const auto b = uq.bernstein_coefficients(f);
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(bernstein_basis_eval(b, x));
  return out;
}

Polynomial bernstein_to_monomial(std::span<const double> b) {
  if (b.empty()) return {};
  const int n = static_cast<int>(b.size()) - 1;
  if (n > kDegreeCap) throw Error(Errc::degree_overflow, "bernstein_to_monomial: degree exceeds cap");
  // c_i = binom(n, i) sum_{k<=i} (-1)^(i-k) binom(i, k) b_k
  std::vector<double> c(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    long double acc = 0.0L;
    for (int k = 0; k <= i; ++k) acc += (((i - k) % 2) ? -1.0L : 1.0L) * binom(i, k) * static_cast<long double>(b[k]);
    c[i] = static_cast<double>(binom(n, i) * acc);
  }
  return Polynomial(std::move(c));
}

Polynomial bernstein(int n, const FunctionHandle& f) {
  if (n < 1) throw Error(Errc::invalid_argument, "bernstein: n must be >= 1");
  if (n > kDegreeCap) throw Error(Errc::degree_overflow, "bernstein: n exceeds degree cap");
  std::vector<double> b(n + 1);
  for (int k = 0; k <= n; ++k) b[k] = f(static_cast<double>(k) / n);
  b[n] = f(1.0);
  return bernstein_to_monomial(b);
}

std::vector<double> bernstein_transition(int n, double rho) {
  check_n_rho(n, rho);
  const int d = n + 1;
  std::vector<double> t(static_cast<std::size_t>(d) * d, 0.0);
  t[0] = 1.0;
  t[static_cast<std::size_t>(n) * d + n] = 1.0;
  for (int k = 1; k < n; ++k) {
    if (rho == kBernsteinRho) {
      const double x = static_cast<double>(k) / n;
      for (int l = 0; l <= n; ++l)
        t[k * d + l] = binom(n, l) * std::pow(x, l) * std::pow(1.0 - x, n - l);
      continue;
    }
    // F_{n,k}(p_{n,l}) = binom(n,l) B(a+l, b+n-l) / B(a, b) with a = k rho, b = (n-k) rho,
    // accumulated as a product of ratios below one.
    const double a = k * rho;
    const double b = (n - k) * rho;
    for (int l = 0; l <= n; ++l) {
      double v = binom(n, l);
      for (int i = 0; i < l; ++i) v *= (a + i) / (a + b + i);
      for (int i = 0; i < n - l; ++i) v *= (b + i) / (a + b + l + i);
      t[k * d + l] = v;
    }
  }
  return t;
}

double central_moment(int n, double rho, double y, int r) {
  check_n_rho(n, rho);
  if (r < 0 || r > 4) throw Error(Errc::invalid_argument, "central_moment: order must lie in [0, 4]");
  const double psi = y * (1.0 - y);
  const double dpsi = 1.0 - 2.0 * y;
  const double nr = n * rho;
  switch (r) {
    case 0:
      return 1.0;
    case 1:
      return 0.0;
    case 2:
      return (rho + 1.0) * psi / (nr + 1.0);
    case 3:
      return (rho + 1.0) * (rho + 2.0) * psi * dpsi / ((nr + 1.0) * (nr + 2.0));
    default: {
      const double den = (nr + 1.0) * (nr + 2.0) * (nr + 3.0);
      const double num = 3.0 * rho * (rho + 1.0) * (rho + 1.0) * psi * psi * n -
                         6.0 * (rho + 1.0) * (rho * rho + 3.0 * rho + 3.0) * psi * psi +
                         (rho + 1.0) * (rho + 2.0) * (rho + 3.0) * psi;
      return num / den;
    }
  }
}

double u_norm0(int n, double rho) {
  check_n_rho(n, rho);
  if (rho == kBernsteinRho) return (n - 1.0) / n;
  return (n - 1.0) * rho / (n * rho + 1.0);
}

}  // namespace useries
