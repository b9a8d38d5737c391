#pragma once

// Density p(x,t) of the spectrally negative process with E e^{λX_t} = e^{tζ(λ)},
// by tilted Fourier inversion along Re s = λ:
//   p(x,t) = (1/π) Re ∫₀^∞ e^{-sx + tζ(s)} dξ,  s = λ + iξ,
// discretised by the trapezoidal rule. The tilt λ and the spacing Δξ are
// chosen per point so that the periodisation error stays below ~e^{-35}.
// Also the residual checks for the space equation and the time-fractional
// dual equation.

#include <functional>
#include <vector>

#include "semifrac/duality.hpp"

namespace semifrac {

/// Exponent ζ on Re s > 0 together with real derivatives (n = 1, 2).
struct LaplaceExponent {
  double alpha = 0.0;
  std::function<cplx(cplx)> value;
  std::function<double(int, double)> deriv;
};

LaplaceExponent exponent_of(const DualitySystem& S);
/// ζ(s) = scale · s^α in closed form.
LaplaceExponent stable_exponent(double alpha, double scale = 1.0);

struct DensitySpec {
  double alias_exponent = 35.0;  // λL ≥ this
  double truncation = 1e-17;     // relative size of the last summed node
  int refine = 1;                // Δξ is divided by this
  long max_nodes = 1L << 22;
  double chernoff_cut = -69.0;   // p is set to 0 where min_λ(-λx + tζ(λ)) is below this
};

/// Trapezoidal nodes for one (x, t): node_j = w_j e^{-s_j x + tζ(s_j)}.
struct Spectrum {
  double x = 0.0, t = 0.0;
  double lambda = 0.0, dxi = 0.0;
  bool zero = false;  // beyond the Chernoff cut
  std::vector<cplx> s, node;

  double p() const;
  double dpdx() const;
  /// p(x+y) - p(x) - y ∂_x p(x) from the same nodes.
  double increment(double y) const;
};

class DensityEvaluator {
public:
  explicit DensityEvaluator(LaplaceExponent zeta, DensitySpec spec = {});

  const LaplaceExponent& exponent() const { return zeta_; }
  const DensitySpec& spec() const { return spec_; }

  /// Tilt and spacing used at (x, t).
  Spectrum spectrum(double x, double t) const;
  /// Nodes at time t with a prescribed tilt and spacing.
  Spectrum spectrum(double x, double t, double lambda, double dxi) const;

  double p(double x, double t) const;
  double dpdx(double x, double t) const;
  /// Central difference with step 1e-4 t, sharing tilt and spacing.
  double dpdt(double x, double t) const;
  /// Point beyond which p(·,t) < e^{chernoff_cut}: the z with
  /// min_λ(-λz + tζ(λ)) = chernoff_cut.
  double right_bound(double t) const;
  /// λ* with tζ'(λ*) = x, x > 0.
  double saddle(double x, double t) const;

private:
  LaplaceExponent zeta_;
  DensitySpec spec_;
};

std::vector<double> density_grid(const DensityEvaluator& E, double t, const std::vector<double>& xs);

struct NormalizationReport {
  double bulk = 0.0;        // ∫_{-X0}^{R} p dx
  double left_tail = 0.0;   // t T(X0)
  double right_bound = 0.0;
  double total = 0.0;
  double min_p = 0.0;       // smallest value on a check grid
};

/// ∫ p(x,t) dx with the left tail P(X_t < -X0) approximated by t T(X0).
NormalizationReport density_normalization(const DualitySystem& S, const DensityEvaluator& E, double t,
                                          double X0 = 1000.0);

struct SelfConvergenceReport {
  double total_variation = 0.0;  // Σ|p_1 - p_2| Δx
  double max_abs_diff = 0.0;
  double min_p = 0.0;
};

/// Densities from spacing Δξ and Δξ/2 on xs (uniform grid).
SelfConvergenceReport density_self_convergence(const LaplaceExponent& zeta, double t, const std::vector<double>& xs);

struct SpaceResidual {
  double residual = 0.0;  // generator term minus ∂_t p
  double generator = 0.0; // ∫₀^∞ (p(x+y) - p(x) - y p_x(x)) w(y) dy
  double dpdt = 0.0;
};

/// Space equation ∂_t p = ∫₀^∞ (p(x+y) - p(x) - y ∂_x p(x)) w(y) dy with the
/// jump density w of jump_theta. The integral runs over [0, Y] with
/// Y = max(1, R - x), and beyond Y the shifted density is taken as 0.
SpaceResidual space_equation_residual(const DensityEvaluator& E, const AdmissableTheta& jump_theta, double x, double t,
                                      const QuadratureSpec& spec = QuadratureSpec{}.with_tolerances(1e-11, 1e-9));

struct DualityResidual {
  double residual = 0.0;       // d/dt C(t) + α ∂_x p
  double time_derivative = 0.0;
  double space_term = 0.0;     // α ∂_x p
};

/// Time-fractional dual equation for x > 0:
///   d/dt ∫₀^t α p(x, t-s) s^{-1/α} τ(log s) ds + α ∂_x p(x,t) = 0,
/// with the convolution split at t/2, fixed tanh-sinh rules and a central
/// difference in t.
DualityResidual duality_residual(const DensityEvaluator& E, const DualTau& tau, double x, double t, int level = 6);

}  // namespace semifrac
