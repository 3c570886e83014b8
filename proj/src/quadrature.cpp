#include <Eigen/Eigenvalues>
#include <cmath>

#include "useries/error.hpp"
#include "useries/operators.hpp"

namespace useries {

// Golub-Welsch on the Jacobi matrix of the monic polynomials orthogonal for
// t^alpha (1-t)^beta on [0,1].  Recurrence coefficients are written in terms
// of A = beta + 1 and B = alpha + 1 so that the small-exponent limit
// (alpha, beta -> -1) does not cancel.
QuadratureRule QuadratureRule::gauss_jacobi(int size, double alpha, double beta) {
  if (size < 1) throw Error(Errc::invalid_argument, "quadrature size must be >= 1");
  if (!(alpha > -1.0) || !(beta > -1.0) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw Error(Errc::invalid_argument, "quadrature exponents must be finite and > -1");

  const double A = beta + 1.0;
  const double B = alpha + 1.0;
  const double S = A + B;

  Eigen::VectorXd diag(size);
  Eigen::VectorXd sub(size > 1 ? size - 1 : 0);
  for (int k = 0; k < size; ++k) {
    // Recurrence on [-1,1] for (1-s)^(A-1) (1+s)^(B-1), mapped by t = (1+s)/2.
    double ds;
    if (k == 0) {
      ds = (B - A) / S;
    } else {
      ds = (B - A) * (S - 2.0) / ((2.0 * k - 2.0 + S) * (2.0 * k + S));
    }
    diag[k] = 0.5 * (1.0 + ds);
    if (k >= 1) {
      double os2;
      if (k == 1) {
        os2 = 4.0 * A * B / ((S) * (S) * (S + 1.0));
      } else {
        const double kk = k;
        const double c = 2.0 * kk + S - 2.0;
        os2 = 4.0 * kk * (kk + A - 1.0) * (kk + B - 1.0) * (kk + S - 2.0) /
              (c * c * (c + 1.0) * (c - 1.0));
      }
      sub[k - 1] = 0.5 * std::sqrt(os2);
    }
  }

  QuadratureRule rule;
  rule.alpha_ = alpha;
  rule.beta_ = beta;
  rule.log_beta_ = std::lgamma(B) + std::lgamma(A) - std::lgamma(S);
  rule.nodes_.resize(size);
  rule.weights_.resize(size);
  rule.normalized_.resize(size);

  if (size == 1) {
    rule.nodes_[0] = diag[0];
    rule.normalized_[0] = 1.0;
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
      throw Error(Errc::numerical, "Gauss-Jacobi: tridiagonal eigensolver failed");
    double total = 0.0;
    for (int i = 0; i < size; ++i) {
      rule.nodes_[i] = solver.eigenvalues()[i];
      const double v = solver.eigenvectors()(0, i);
      rule.normalized_[i] = v * v;
      total += v * v;
    }
    for (double& w : rule.normalized_) w /= total;
  }
  const double scale = std::exp(rule.log_beta_);
  for (int i = 0; i < size; ++i) rule.weights_[i] = scale * rule.normalized_[i];

  // Mean of the Beta(alpha+1, beta+1) density.
  double mean = 0.0;
  for (int i = 0; i < size; ++i) mean += rule.normalized_[i] * rule.nodes_[i];
  if (std::abs(mean - B / S) > kQuadratureTolerance)
    throw Error(Errc::numerical, "Gauss-Jacobi: first moment validation failed");
  return rule;
}

double QuadratureRule::mean(const FunctionHandle& f) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) acc += normalized_[i] * f(nodes_[i]);
  return acc;
}

double QuadratureRule::integrate_on(const FunctionHandle& f, double a, double b) const {
  const double len = b - a;
  if (len == 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) acc += normalized_[i] * f(a + len * nodes_[i]);
  return len * acc;
}

}  // namespace useries
