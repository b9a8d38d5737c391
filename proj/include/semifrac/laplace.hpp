#pragma once

// Forward Laplace transform by quadrature and numerical inversion on a
// hyperbolic Bromwich contour.

#include <functional>
#include <vector>

#include "semifrac/quadrature.hpp"
#include "semifrac/special_functions.hpp"

namespace semifrac {

using ComplexFunction = std::function<cplx(cplx)>;

/// ∫₀^∞ e^{-xt} f(t) dt, computed as x⁻¹∫₀^∞ e^{-u} f(u/x) du.
/// spec.singularity_exponent declares the order of f at 0.
double laplace_transform_numeric(const RealFunction& f, double x, const QuadratureSpec& spec);

/// Node table for z(u) = μ(1 - sin(a)cosh(u) + i cos(a) sinh(u)), μ = L/t.
/// The contour stays inside |arg z| < π/2 + beta; F must be analytic there.
/// Parameters (a, h, L) minimize the predicted discretization, truncation
/// and rounding error for the given node count.
class HyperbolicContour {
public:
  static constexpr double kDefaultBeta = kPi / 2 - 0.05;

  explicit HyperbolicContour(int n_nodes = 48, double beta = kDefaultBeta);

  /// f(t) ≈ (h/π) Im Σ' e^{z_k t} F(z_k) z'_k.
  /// Throws NumericalError if F returns a non-finite value on the contour.
  double invert(const ComplexFunction& F, double t) const;

  int n_nodes() const { return n_; }
  double beta() const { return beta_; }
  double predicted_error() const { return predicted_error_; }

private:
  int n_;
  double beta_;
  double a_ = 0.0, h_ = 0.0, L_ = 0.0;
  double predicted_error_ = 0.0;
  std::vector<cplx> w_;       // z_k / μ
  std::vector<cplx> weight_;  // e^{L w_k} w'_k, with the half weight at k = 0
};

/// One-shot inversion with the default opening angle. t > 0.
double inverse_laplace_numeric(const ComplexFunction& F, double t, int n_nodes = 48);

}  // namespace semifrac
