#include "useries/voronovskaya.hpp"

#include <cmath>

#include "useries/error.hpp"

namespace useries {

namespace {

void require_vanishing_endpoints(const Polynomial& p) {
  double scale = 0.0;
  for (double c : p.coeffs()) scale += std::abs(c);
  scale = std::max(1.0, scale);
  if (std::abs(p(0.0)) > 1e-12 * scale || std::abs(p(1.0)) > 1e-12 * scale)
    throw Error(Errc::domain, "apply_A_rho: y must vanish at 0 and 1");
}

struct FInfPieces {
  Polynomial left;   // antiderivative of t h(t)
  Polynomial right;  // antiderivative of (1-t) h(t)
};

FInfPieces f_infty_pieces(const Polynomial& h) {
  return {(Polynomial::monomial(1) * h).antiderivative(), (Polynomial{1.0, -1.0} * h).antiderivative()};
}

}  // namespace

VoronovskayaContext::VoronovskayaContext(double rho, int quad_size)
    : rho_(rho), quad_(QuadratureRule::gauss_legendre(quad_size)) {
  if (!(rho > 0.0)) throw Error(Errc::invalid_argument, "VoronovskayaContext: rho must be positive");
}

double VoronovskayaContext::operator_constant() const noexcept {
  return rho_ == kBernsteinRho ? 0.5 : (rho_ + 1.0) / (2.0 * rho_);
}

double VoronovskayaContext::inverse_constant() const noexcept {
  return rho_ == kBernsteinRho ? 2.0 : 2.0 * rho_ / (rho_ + 1.0);
}

C0Function apply_A_rho(const VoronovskayaContext& ctx, const Polynomial& y) {
  require_vanishing_endpoints(y);
  return C0Function(FunctionHandle(ctx.operator_constant() * y.derivative().derivative()));
}

Polynomial f_infty_polynomial(const Polynomial& h) {
  const auto [left, right] = f_infty_pieces(h);
  const Polynomial x = Polynomial::monomial(1);
  return Polynomial{1.0, -1.0} * left + x * (Polynomial::constant(right(1.0)) - right);
}

double f_infty(const VoronovskayaContext& ctx, const FunctionHandle& h, double x) {
  if (x < 0.0 || x > 1.0) throw Error(Errc::invalid_argument, "f_infty: x must lie in [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  if (const Polynomial* hp = h.polynomial()) {
    const auto [left, right] = f_infty_pieces(*hp);
    const double split = (1.0 - x) * left(x) + x * (right(1.0) - right(x));
    const double global = f_infty_polynomial(*hp)(x);
    if (std::abs(split - global) > 1e-12 * std::max(1.0, hp->max_abs_coeff()))
      throw Error(Errc::numerical, "f_infty: split and global forms disagree");
    return split;
  }
  const FunctionHandle left([&](double t) { return t * h(t); });
  const FunctionHandle right([&](double t) { return (1.0 - t) * h(t); });
  return (1.0 - x) * ctx.quad().integrate_on(left, 0.0, x) + x * ctx.quad().integrate_on(right, x, 1.0);
}

double inverse_neg(const VoronovskayaContext& ctx, const C0Function& f, double x) {
  return ctx.inverse_constant() * f_infty(ctx, f.cofactor(), x);
}

Polynomial inverse_neg_polynomial(const VoronovskayaContext& ctx, const Polynomial& h) {
  return ctx.inverse_constant() * f_infty_polynomial(h);
}

InverseNormCheck inverse_norm_check(const VoronovskayaContext& ctx, const C0Function& f, const GridSpec& grid) {
  const FunctionHandle g([&](double x) { return inverse_neg(ctx, f, x); });
  const double lhs = sup_norm(g, grid);
  const double rhs = ctx.rho() == kBernsteinRho ? 0.25 * f.norm0() : ctx.rho() / (4.0 * (ctx.rho() + 1.0)) * f.norm0();
  return {lhs, rhs, lhs <= rhs + 1e-10};
}

ResidualProfile residual_H(int n, double rho, const FunctionHandle& h, std::span<const double> xs,
                           const SeriesConfig& cfg) {
  const C0Function f(h, cfg.grid);
  const SeriesResult series = apply_series(n, rho, f, cfg);
  const VoronovskayaContext ctx(rho);
  ResidualProfile out{{}, series.iterations};
  out.values.reserve(xs.size());
  if (const Polynomial* hp = h.polynomial()) {
    const Polynomial inv = inverse_neg_polynomial(ctx, *hp);
    for (double x : xs) out.values.push_back(series.value(x) - inv(x));
  } else {
    for (double x : xs) out.values.push_back(series.value(x) - inverse_neg(ctx, f, x));
  }
  return out;
}

double residual_H(int n, double rho, const FunctionHandle& h, double x, const SeriesConfig& cfg) {
  const double xs[] = {x};
  return residual_H(n, rho, h, xs, cfg).values.front();
}

}  // namespace useries
