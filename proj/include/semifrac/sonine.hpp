#pragma once

// Sonine pair (k, ρ): kernel k(y) = y^{-α}θ(log y), conjugate density ρ with
// Laplace transform 1/ψ̃, and the operators built from them.

#include <vector>

#include "semifrac/bernstein.hpp"
#include "semifrac/laplace.hpp"
#include "semifrac/test_functions.hpp"

namespace semifrac {

class SonineSystem {
public:
  /// n_nodes = 0 picks the smallest node count whose predicted inversion
  /// error is below 1e-12 for the admissible contour angle.
  /// ρ(y) = y^{α-1} P(log y) with P periodic of period log q; P is sampled
  /// at table_size points per period by inversion and evaluated as a
  /// trigonometric interpolant. table_size = 0 disables the table.
  explicit SonineSystem(SelfSimilarBernstein B, int n_nodes = 0, int table_size = 128);

  const SelfSimilarBernstein& bernstein() const { return B_; }
  double alpha() const { return B_.alpha(); }
  const HyperbolicContour& contour() const { return contour_; }
  /// Largest |arg s| for which 1/ψ̃ is certified zero-free by the weight bound.
  double analytic_sector() const { return sector_; }

  double kernel(double y) const;
  /// ψ̃(x)/x
  double G(double x) const;
  /// 1/ψ̃(x)
  double G_star(double x) const;
  /// Density of ρ by inversion of 1/ψ̃. Arguments outside [1e-4, 1e4] are
  /// mapped inside by ρ(q s) = (c/q) ρ(s), q = c^{1/α}.
  double rho_density(double y) const;
  /// Contour inversion at every call (no table).
  double rho_density_direct(double y) const;
  /// Largest table harmonic in the upper half of the spectrum, relative to
  /// the mean; a bound on the interpolation error. 0 without a table.
  double rho_table_error() const { return table_error_; }

private:
  SelfSimilarBernstein B_;
  double sector_;
  HyperbolicContour contour_;
  std::vector<cplx> table_;  // Fourier coefficients of P, k = 0..M/2
  double table_error_ = 0.0;
  bool nyquist_ = false;
};

double kernel_eval(const SonineSystem& S, double y);

/// (k * f')(x)
double caputo_derivative(const SonineSystem& S, const TestFunction& f, double x, const QuadratureSpec& spec);
/// d/dx (k * f)(x), central difference with step 1e-4 max(1, x). The
/// convolution uses fixed tanh-sinh nodes (level 8) so that it is smooth in x.
double rl_derivative(const SonineSystem& S, const RealFunction& f, double x);
/// (ρ * f)(x)
double semifrac_integral(const SonineSystem& S, const RealFunction& f, double x, const QuadratureSpec& spec);
/// d/dx (ρ * f)(x) = f(0)ρ(x) + (ρ * f')(x)
double semifrac_integral_derivative(const SonineSystem& S, const TestFunction& f, double x,
                                    const QuadratureSpec& spec);
/// D_(k) I_(k) f (x), expected to equal f(x).
double derivative_of_integral(const SonineSystem& S, const TestFunction& f, double x, const QuadratureSpec& spec);
/// I_(k) D_(k) f (x), expected to equal f(x) - f(0).
double integral_of_derivative(const SonineSystem& S, const TestFunction& f, double x, const QuadratureSpec& spec);

/// (k * ρ)(t) - 1
double sonine_residual(const SonineSystem& S, double t, const QuadratureSpec& spec);
/// ∫₀^∞ e^{-xt} ρ(t) dt
double rho_laplace(const SonineSystem& S, double x, const QuadratureSpec& spec);
/// ∫₀^∞ e^{-xt} k(t) dt
double kernel_laplace(const SonineSystem& S, double x, const QuadratureSpec& spec);

/// G_I*(x) = ∫₀^x 1/ψ̃(y) dy
double g_i_star(const SonineSystem& S, double x, const QuadratureSpec& spec);

struct DualSelfSimilarityReport {
  double dual_alpha = 0.0;  // 1 - α
  double d = 0.0;           // c^{(1-α)/α}
  double max_rel_deviation = 0.0;
  bool increasing = false;
  bool concave = false;
  bool pass = false;        // deviation ≤ 1e-6 and shape checks
};

/// Checks G_I*(d^{1/(1-α)} x) = d G_I*(x) on the grid, plus monotonicity
/// and concavity of G_I* along the sorted grid.
DualSelfSimilarityReport check_dual_selfsimilarity(const SonineSystem& S, const std::vector<double>& grid,
                                                   const QuadratureSpec& spec);

/// ∫_t^∞ s^{-1} ρ(s) ds, summed geometrically over scale periods.
double mu_tail(const SonineSystem& S, double t, const QuadratureSpec& spec);
/// σ(log t) = t^{1-α} μ(t, ∞)
double sigma_eval(const SonineSystem& S, double t, const QuadratureSpec& spec);
/// k*(t) = t^{α-1}((1-α)σ(log t) - σ'(log t)), σ' by central differences
/// with step period/512 in log t.
double kstar_eval(const SonineSystem& S, double t, const QuadratureSpec& spec);

}  // namespace semifrac
