#pragma once

// Spectrally negative semistable exponent ζ for α ∈ (1,2), its inverse ξ,
// the periodic factor g of ξ with Fourier coefficients d_n, and the dual
// admissable function τ.

#include <vector>

#include "semifrac/admissable.hpp"
#include "semifrac/log_periodic_series.hpp"
#include "semifrac/quadrature.hpp"

namespace semifrac {

class DualitySystem {
public:
  /// Requires θ.alpha() ∈ (1,2).
  explicit DualitySystem(AdmissableTheta theta);

  const AdmissableTheta& theta() const { return theta_; }
  double alpha() const { return theta_.alpha(); }
  double c() const { return theta_.c(); }
  /// ζ(z) = Σ_k a_k z^{α - ik c̃}, a_k = -c_k Γ(1 - α + ik c̃).
  const LogPeriodicSeries& zeta_series() const { return series_; }

private:
  AdmissableTheta theta_;
  LogPeriodicSeries series_;
};

/// ζ(z) for Re z ≥ 0, z ≠ 0, principal branch; ζ(0) = 0.
cplx zeta(const DualitySystem& S, cplx z);
double zeta(const DualitySystem& S, double x);
/// ∫₀^∞ (e^{-zt} - 1 + zt) w(t) dt by quadrature (oracle for the series).
cplx zeta_quadrature(const AdmissableTheta& theta, cplx z, const QuadratureSpec& spec);
/// ζ^{(n)}(x), n ≥ 0, x > 0.
double zeta_deriv(const DualitySystem& S, int n, double x);
/// Quadrature oracle: ζ' = ∫(1-e^{-xt}) t w dt; ζ^{(n)} = (-1)^n ∫ t^n e^{-xt} w dt, n ≥ 2.
double zeta_deriv_quadrature(const AdmissableTheta& theta, int n, double x, const QuadratureSpec& spec);

/// ξ(s) = ζ^{-1}(s), s > 0. With reduce, s is first mapped into [1, c)
/// by ξ(c s) = c^{1/α} ξ(s). Safeguarded Newton in log variables, relative
/// tolerance 1e-14. Throws NumericalError on bracket failure.
double xi(const DualitySystem& S, double s, bool reduce = true);

/// Inverse-function derivatives. f_derivs[j-1] = f^{(j)}(g(x)), j = 1..n,
/// n ≤ 6. Returns g^{(1..n)}(x) for g = f^{-1} via the partition recursion
/// g^{(n)} = -(1/f') Σ n!/(k_1!…k_{n-1}!) f^{(k_1+…+k_{n-1})} Π (g^{(j)}/j!)^{k_j},
/// the sum running over k_1 + 2k_2 + … + (n-1)k_{n-1} = n.
std::vector<double> inverse_derivatives(const std::vector<double>& f_derivs);

/// ξ^{(n)}(x), 1 ≤ n ≤ 6.
double xi_deriv(const DualitySystem& S, int n, double x);

/// g(x) = e^{-x/α} ξ(e^x), log(c)-periodic.
double g_eval(const DualitySystem& S, double x, bool reduce = true);

struct DecayReport {
  double noise_floor = 0.0;
  int significant = 0;          // d_1..d_significant above the noise floor
  std::vector<double> ratios;   // |d_n| e^{π n Ď/2} n^{3/2+1/α}, n = 1..significant
  double log_slope = 0.0;       // least-squares slope of log ratio vs log n
  bool pass = false;
};

struct GFourier {
  int N = 0;
  int samples = 0;
  double tilde_d = 0.0;          // 2π / log c
  std::vector<cplx> d;           // d_n, n = 0..N; g = Σ d_n e^{-inĎx}
  double aliasing = 0.0;         // max |d_n| for N < n ≤ samples/2
  double periodicity_error = 0.0;
  double mean_g2 = 0.0;          // sample mean of g²
  double parseval_sum = 0.0;     // Σ_{|n|≤N} |d_n|²
  DecayReport decay;
};

/// DFT over one period; samples a power of two ≥ 8N. Throws NumericalError
/// if g fails periodicity by more than 1e-6.
GFourier g_fourier(const DualitySystem& S, int N = 16, int samples = 256);

/// τ(x) = Σ_n d_n/Γ(inĎ - 1/α + 1) e^{inĎx}, stored as an admissable θ for
/// (1/α, c^{1/α}) so that its Bernstein function is ξ. Coefficients below
/// the decay-check noise floor are dropped.
class DualTau {
public:
  /// Throws NumericalError when the decay check failed.
  DualTau(const DualitySystem& S, const GFourier& g);
  /// Constant τ ≡ value (for stable cases and negative controls).
  DualTau(double alpha, double c, double value);

  const AdmissableTheta& theta() const { return theta_; }
  double mean() const { return theta_.coeffs()[0].real(); }

private:
  AdmissableTheta theta_;
};

double tau_eval(const DualTau& tau, double x);
/// ϱ(x) = -α τ'(x)
double varrho_eval(const DualTau& tau, double x);
/// m(log x) = ζ(x) / x^α
double m_periodic(const DualitySystem& S, double x);

}  // namespace semifrac
