#ifndef USERIES_POLYFUN_HPP
#define USERIES_POLYFUN_HPP

// Polynomial arithmetic in the monomial basis on [0,1], the Jacobi family
// P^(1,1), grid sup-norms and moduli of continuity.

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace useries {

/// Largest polynomial degree accepted anywhere in the library.  The monomial
/// basis loses accuracy quickly beyond this.
inline constexpr int kDegreeCap = 60;

class Polynomial {
 public:
  /// The zero polynomial.
  Polynomial() = default;
  /// Coefficient of x^i at index i.  Trailing exact zeros are trimmed;
  /// throws Errc::degree_overflow above kDegreeCap.
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs);

  static Polynomial constant(double c);
  static Polynomial monomial(int m);
  /// x(1-x)
  static Polynomial psi();

  /// Degree of the stored representation; 0 for the zero polynomial.
  int degree() const noexcept;
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  /// Coefficient of x^i, zero past the degree.
  double coeff(int i) const noexcept;
  double leading() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  double max_abs_coeff() const noexcept;

  double operator()(double x) const noexcept;

  Polynomial derivative() const;
  /// Antiderivative with zero constant term.
  Polynomial antiderivative() const;
  /// p(scale*x + offset)
  Polynomial compose_affine(double scale, double offset) const;
  double integrate(double a, double b) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= -1.0; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<double> coeffs_;
};

/// Largest coefficientwise difference.
double max_coeff_diff(const Polynomial& a, const Polynomial& b);

double poly_eval(const Polynomial& p, double x);

struct Calculus {
  Polynomial derivative;
  Polynomial antiderivative;
};
Calculus poly_calculus(const Polynomial& p);

/// Returns q with p = x(1-x) q.  The boundary values p(0), p(1) must vanish to
/// within tol (scaled by max(1, sum |c_i|)); otherwise Errc::domain.
Polynomial deflate_by_psi(const Polynomial& p, double tol = 1e-12);

/// Coefficients of the recurrence
///   P_k(x) = (a x P_{k-1}(x) - c P_{k-2}(x)),  k >= 2
/// for the Jacobi polynomials P_k^(1,1) in the standard normalization
/// P_k(1) = k + 1.
struct JacobiRecurrence {
  double a;
  double c;
};
JacobiRecurrence jacobi11_recurrence(int k);

/// P_k^(1,1) as a polynomial in its native variable on [-1,1].
Polynomial jacobi11(int k);

/// Monic limit eigenpolynomials: 1, x - 1/2 and, for j >= 2, the monic
/// multiple of x(x-1) P_{j-2}^(1,1)(2x-1).
Polynomial limit_eigenpoly(int j);

/// Evaluation oracle on [0,1], optionally backed by an exact polynomial.
class FunctionHandle {
 public:
  FunctionHandle(Polynomial p);  // NOLINT(google-explicit-constructor)
  explicit FunctionHandle(std::function<double(double)> f);

  double operator()(double x) const;
  bool is_polynomial() const noexcept { return poly_.has_value(); }
  /// nullptr for generic handles.
  const Polynomial* polynomial() const noexcept { return poly_ ? &*poly_ : nullptr; }

 private:
  std::optional<Polynomial> poly_;
  std::function<double(double)> eval_;
};

/// Strictly increasing points in [0,1] with first = 0 and last = 1.
class GridSpec {
 public:
  explicit GridSpec(std::vector<double> points);

  static GridSpec uniform(int count);
  /// Chebyshev-Lobatto points mapped to [0,1], symmetric about 1/2.
  static GridSpec chebyshev(int count);

  std::span<const double> points() const noexcept { return points_; }
  int count() const noexcept { return static_cast<int>(points_.size()); }

 private:
  std::vector<double> points_;
};

/// Chebyshev grid with 257 points.
const GridSpec& default_grid();

/// Max of |f| over the grid, refined by one golden-section pass around the
/// grid maximizer.  A lower estimate of the true sup.
double sup_norm(const FunctionHandle& f, const GridSpec& grid = default_grid());

/// Grid estimate of the modulus of smoothness of the given order (1 or 2).
///
/// Order 1 takes the sup of |h(x) - h(y)| over grid pairs with |x - y| <= delta
/// and over x in the grid with y = x +- t; order 2 takes the sup of
/// |h(x+t) - 2h(x) + h(x-t)| over grid x with x +- t in [0,1].  The step set
/// is {k / 1024 : k / 1024 < delta} together with delta itself, so the
/// estimate is monotone in delta whenever delta lies on that lattice.  Both
/// are lower estimates of the true moduli.
double omega(const FunctionHandle& h, int order, double delta,
             const GridSpec& grid = default_grid());

/// f = x(1-x) h stored through its cofactor h; norm0 = sup |h|.
class C0Function {
 public:
  explicit C0Function(FunctionHandle cofactor, const GridSpec& grid = default_grid());
  /// Deflates a polynomial vanishing at 0 and 1.
  static C0Function from_polynomial(const Polynomial& f);

  const FunctionHandle& cofactor() const noexcept { return h_; }
  double norm0() const noexcept { return norm0_; }
  double operator()(double x) const { return x * (1.0 - x) * h_(x); }
  /// Psi * h when the cofactor is polynomial.
  std::optional<Polynomial> polynomial() const;

 private:
  FunctionHandle h_;
  double norm0_;
};

}  // namespace useries

#endif
