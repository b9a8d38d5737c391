#pragma once

// Self-similar Bernstein function ψ̃(x) = Σ ω_k x^{α - ik c̃} with
// ω_k = c_k Γ(ik c̃ - α + 1), its derivatives, sign scans and products.

#include <functional>
#include <vector>

#include "semifrac/admissable.hpp"
#include "semifrac/log_periodic_series.hpp"
#include "semifrac/quadrature.hpp"

namespace semifrac {

class SelfSimilarBernstein {
public:
  /// Requires θ.alpha() ∈ (0,1).
  explicit SelfSimilarBernstein(AdmissableTheta theta);

  const AdmissableTheta& theta() const { return theta_; }
  double alpha() const { return theta_.alpha(); }
  double c() const { return theta_.c(); }
  /// c^{1/α}
  double scale() const { return theta_.scale(); }
  /// ω_k, k = 0..K
  const std::vector<cplx>& weights() const { return series_.coeffs(); }
  const LogPeriodicSeries& series() const { return series_; }

private:
  AdmissableTheta theta_;
  LogPeriodicSeries series_;
};

/// ψ̃(x), x > 0.
double eval_psi_tilde(const SelfSimilarBernstein& B, double x);
/// Analytic continuation on the principal branch.
cplx eval_psi_tilde(const SelfSimilarBernstein& B, cplx s);
/// γ(x) = Σ ω_k e^{ik c̃ x} = e^{αx} ψ̃(e^{-x}).
double eval_gamma_fn(const SelfSimilarBernstein& B, double x);
/// ψ̃^{(j)}(x), j ≥ 1 (j = 0 gives ψ̃).
double psi_tilde_deriv(const SelfSimilarBernstein& B, int j, double x);
/// ∫₀^∞ (1 - e^{-xt}) levy_density(t) dt by quadrature.
double psi_tilde_quadrature(const SelfSimilarBernstein& B, double x, const QuadratureSpec& spec);

/// deriv(n, x) returns the n-th derivative (n = 0 is the function itself).
using DerivativeTable = std::function<double(int, double)>;

struct SignReport {
  int n_max = 0;
  /// worst_margin[n-1] = min over the grid of (-1)^{n-1} F^{(n)}(x) x^n / F(x).
  std::vector<double> worst_margin;
  double worst_violation = 0.0;  // min(0, min of worst_margin)
  int first_failing_order = 0;   // 0 when all orders pass
  bool pass = false;
};

/// 256 log-spaced points on [1e-2, 1e2].
std::vector<double> default_sign_grid();

/// Checks (-1)^{n-1} F^{(n)} ≥ 0 for n = 1..n_max ≤ 12 on the grid.
SignReport check_bernstein_signs(const DerivativeTable& deriv, int n_max,
                                 const std::vector<double>& grid);
SignReport check_bernstein_signs(const SelfSimilarBernstein& B, int n_max,
                                 const std::vector<double>& grid);

struct CompositionResult {
  std::vector<cplx> d_coeffs;  // d_m, m = 0..K1+K2 (d_{-m} = conj(d_m))
  double candidate_alpha = 0.0;
  double candidate_c = 0.0;
  bool is_bernstein = false;
  double worst_violation = 0.0;
  SignReport signs;
  /// Product ψ̃1·ψ̃2 as a series with exponent α1+α2.
  LogPeriodicSeries product;
};

/// Requires α1+α2 ∈ (0,1) and c1^{1/α1} = c2^{1/α2} to 1e-12 relative.
/// The verdict is a sign scan of the product up to order 8.
CompositionResult compose_product(const SelfSimilarBernstein& B1, const SelfSimilarBernstein& B2);

}  // namespace semifrac
