#include "useries/polyfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "useries/error.hpp"

namespace useries {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (degree() > kDegreeCap)
    throw Error(Errc::degree_overflow,
                "polynomial degree " + std::to_string(degree()) + " exceeds cap " +
                    std::to_string(kDegreeCap));
}

Polynomial Polynomial::constant(double c) { return Polynomial(std::vector<double>{c}); }

Polynomial Polynomial::monomial(int m) {
  if (m < 0) throw Error(Errc::invalid_argument, "negative monomial degree");
  std::vector<double> c(static_cast<std::size_t>(m) + 1, 0.0);
  c.back() = 1.0;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::psi() { return Polynomial{0.0, 1.0, -1.0}; }

int Polynomial::degree() const noexcept {
  return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1;
}

double Polynomial::coeff(int i) const noexcept {
  return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : 0.0;
}

double Polynomial::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  if (coeffs_.empty()) return {};
  std::vector<double> a(coeffs_.size() + 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) a[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
  return Polynomial(std::move(a));
}

Polynomial Polynomial::compose_affine(double scale, double offset) const {
  const Polynomial inner{offset, scale};
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + constant(*it);
  return acc;
}

double Polynomial::integrate(double a, double b) const {
  const Polynomial F = antiderivative();
  return F(b) - F(a);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

double max_coeff_diff(const Polynomial& a, const Polynomial& b) {
  const int d = std::max(a.degree(), b.degree());
  double m = 0.0;
  for (int i = 0; i <= d; ++i) m = std::max(m, std::abs(a.coeff(i) - b.coeff(i)));
  return m;
}

double poly_eval(const Polynomial& p, double x) { return p(x); }

Calculus poly_calculus(const Polynomial& p) { return {p.derivative(), p.antiderivative()}; }

Polynomial deflate_by_psi(const Polynomial& p, double tol) {
  if (p.is_zero()) return {};
  double scale = 0.0;
  for (double c : p.coeffs()) scale += std::abs(c);
  scale = std::max(1.0, scale);
  if (std::abs(p(0.0)) > tol * scale || std::abs(p(1.0)) > tol * scale)
    throw Error(Errc::domain, "deflate_by_psi: polynomial does not vanish at 0 and 1");
  const auto c = p.coeffs();
  const int d = p.degree();
  if (d < 2) return {};
  // r = p / x, dropping the (vanishing) constant term.
  std::vector<double> r(c.begin() + 1, c.end());
  // q = r / (x - 1) by synthetic division at the root 1, then negate.
  std::vector<double> q(r.size() - 1, 0.0);
  q.back() = r.back();
  for (int i = static_cast<int>(q.size()) - 1; i > 0; --i) q[i - 1] = r[i] + q[i];
  for (double& v : q) v = -v;
  return Polynomial(std::move(q));
}

JacobiRecurrence jacobi11_recurrence(int k) {
  if (k < 1) throw Error(Errc::invalid_argument, "jacobi11_recurrence: k must be >= 1");
  if (k == 1) return {2.0, 0.0};
  const double n = k;
  return {(n + 1.0) * (2.0 * n + 1.0) / (n * (n + 2.0)), (n + 1.0) / (n + 2.0)};
}

Polynomial jacobi11(int k) {
  if (k < 0) throw Error(Errc::invalid_argument, "jacobi11: negative degree");
  Polynomial prev;
  Polynomial cur = Polynomial::constant(1.0);
  const Polynomial x = Polynomial::monomial(1);
  for (int i = 1; i <= k; ++i) {
    const auto [a, c] = jacobi11_recurrence(i);
    Polynomial next = a * (x * cur) - c * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  // P_k^(1,1)(1) = k + 1 and P_k^(1,1)(-1) = (-1)^k (k + 1).
  const double end = k + 1.0;
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  if (std::abs(cur(1.0) - end) > 1e-10 * end || std::abs(cur(-1.0) - sign * end) > 1e-10 * end)
    throw Error(Errc::numerical, "jacobi11: recurrence failed endpoint validation");
  return cur;
}

Polynomial limit_eigenpoly(int j) {
  if (j < 0) throw Error(Errc::invalid_argument, "limit_eigenpoly: negative index");
  if (j == 0) return Polynomial::constant(1.0);
  if (j == 1) return Polynomial{-0.5, 1.0};
  Polynomial p = Polynomial{0.0, -1.0, 1.0} * jacobi11(j - 2).compose_affine(2.0, -1.0);
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  const double lead = c.back();
  for (double& v : c) v /= lead;
  c.back() = 1.0;
  return Polynomial(std::move(c));
}

FunctionHandle::FunctionHandle(Polynomial p) : poly_(std::move(p)) {}

FunctionHandle::FunctionHandle(std::function<double(double)> f) : eval_(std::move(f)) {
  if (!eval_) throw Error(Errc::invalid_argument, "FunctionHandle: empty callable");
}

double FunctionHandle::operator()(double x) const { return poly_ ? (*poly_)(x) : eval_(x); }

GridSpec::GridSpec(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw Error(Errc::invalid_argument, "GridSpec: need at least 2 points");
  if (points_.front() != 0.0 || points_.back() != 1.0)
    throw Error(Errc::invalid_argument, "GridSpec: grid must start at 0 and end at 1");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i] > points_[i - 1]))
      throw Error(Errc::invalid_argument, "GridSpec: points must be strictly increasing");
}

GridSpec GridSpec::uniform(int count) {
  if (count < 2) throw Error(Errc::invalid_argument, "GridSpec: need at least 2 points");
  std::vector<double> p(count);
  for (int i = 0; i < count; ++i) p[i] = static_cast<double>(i) / (count - 1);
  p.back() = 1.0;
  return GridSpec(std::move(p));
}

GridSpec GridSpec::chebyshev(int count) {
  if (count < 2) throw Error(Errc::invalid_argument, "GridSpec: need at least 2 points");
  std::vector<double> p(count);
  const int last = count - 1;
  for (int i = 0; 2 * i <= last; ++i) {
    const double x = 0.5 - 0.5 * std::cos(std::numbers::pi * i / last);
    p[i] = x;
    p[last - i] = 1.0 - x;
  }
  if (last % 2 == 0) p[last / 2] = 0.5;
  p.front() = 0.0;
  p.back() = 1.0;
  return GridSpec(std::move(p));
}

const GridSpec& default_grid() {
  static const GridSpec grid = GridSpec::chebyshev(257);
  return grid;
}

double sup_norm(const FunctionHandle& f, const GridSpec& grid) {
  const auto pts = grid.points();
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double v = std::abs(f(pts[i]));
    if (v > best) {
      best = v;
      arg = i;
    }
  }
  // Golden-section pass on the bracket around the grid maximizer.
  double lo = pts[arg == 0 ? 0 : arg - 1];
  double hi = pts[std::min(arg + 1, pts.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = std::abs(f(a));
  double fb = std::abs(f(b));
  for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
    if (fa > fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = std::abs(f(a));
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = std::abs(f(b));
    }
    best = std::max({best, fa, fb});
  }
  return best;
}

namespace {

constexpr double kModulusStep = 1.0 / 1024.0;

std::vector<double> modulus_steps(double delta) {
  std::vector<double> steps;
  for (int k = 1; k * kModulusStep < delta; ++k) steps.push_back(k * kModulusStep);
  steps.push_back(delta);
  return steps;
}

}  // namespace

double omega(const FunctionHandle& h, int order, double delta, const GridSpec& grid) {
  if (!(delta > 0.0)) throw Error(Errc::invalid_argument, "omega: delta must be positive");
  if (order != 1 && order != 2) throw Error(Errc::invalid_argument, "omega: order must be 1 or 2");
  if (order == 1 && delta > 1.0) throw Error(Errc::invalid_argument, "omega: order 1 needs delta <= 1");
  if (order == 2 && delta > 0.5) throw Error(Errc::invalid_argument, "omega: order 2 needs delta <= 1/2");

  const auto pts = grid.points();
  std::vector<double> hv(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) hv[i] = h(pts[i]);
  const auto steps = modulus_steps(delta);
  constexpr double slop = 1e-15;
  double best = 0.0;

  if (order == 1) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size() && pts[j] - pts[i] <= delta; ++j)
        best = std::max(best, std::abs(hv[j] - hv[i]));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double x = pts[i];
      for (double t : steps) {
        if (x + t <= 1.0 + slop) best = std::max(best, std::abs(h(std::min(x + t, 1.0)) - hv[i]));
        if (x - t >= -slop) best = std::max(best, std::abs(h(std::max(x - t, 0.0)) - hv[i]));
      }
    }
    return best;
  }

  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = pts[i];
    for (double t : steps) {
      if (x + t > 1.0 + slop || x - t < -slop) break;
      const double d = h(std::min(x + t, 1.0)) - 2.0 * hv[i] + h(std::max(x - t, 0.0));
      best = std::max(best, std::abs(d));
    }
  }
  return best;
}

C0Function::C0Function(FunctionHandle cofactor, const GridSpec& grid)
    : h_(std::move(cofactor)), norm0_(sup_norm(h_, grid)) {}

C0Function C0Function::from_polynomial(const Polynomial& f) { return C0Function(deflate_by_psi(f)); }

std::optional<Polynomial> C0Function::polynomial() const {
  if (const Polynomial* h = h_.polynomial()) return Polynomial::psi() * *h;
  return std::nullopt;
}

}  // namespace useries
