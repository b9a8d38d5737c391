#pragma once

// Batch commands behind the semifrac executable. Each returns its report
// (CSV or JSON text), a one-line summary and the check verdict; the
// executable maps the verdict to exit code 0/1 and argument or config
// errors (std::invalid_argument) to exit code 2.

#include <cstdint>
#include <string>
#include <vector>

#include "semifrac/admissable.hpp"
#include "semifrac/cli/csv.hpp"

namespace semifrac::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct CommandOutput {
  std::string text;     // CSV or JSON
  std::string summary;  // one line for stderr
  bool pass = true;
};

/// JSON validity report.
CommandOutput cmd_check_theta(const AdmissableTheta& theta, int grid_points = 4096);

/// CSV x, psi_tilde, oracle, rel_err, scaling_ratio (= ψ̃(c^{1/α}x)/ψ̃(x), ideally c).
/// Passes when rel_err ≤ tol and the scaling ratio matches c to 1e-12.
CommandOutput cmd_bernstein(const AdmissableTheta& theta, const std::vector<double>& xs, double tol = 1e-6);

/// CSV j, p_j. J = 0 selects the adaptive truncation (tail mass < 1e-3),
/// which is also the pass criterion in that case.
CommandOutput cmd_sibuya_pmf(const AdmissableTheta& theta, int J = 0);
/// CSV i, sample.
CommandOutput cmd_sibuya_sample(const AdmissableTheta& theta, int n, std::uint64_t seed);

/// CSV m, h_m, J, approx, oracle, abs_err for m in [m_min, m_max].
/// Passes when the error at m_max is below the error at m_min.
CommandOutput cmd_glderiv(const AdmissableTheta& theta, const std::string& function, double x, int m_min, int m_max);

/// CSV check, arg, value, expected, abs_err with rows
///   sonine        t     (k*ρ)(t)              1
///   laplace       x     ∫e^{-xt}ρ             1/ψ̃(x)
///   dual_selfsim  x     G_I*(d^{1/(1-α)}x)/d  G_I*(x)
///   d_of_i        x     D I f                 f
///   i_of_d        x     I D f                 f - f(0)
/// tol bounds the Sonine residual (0 = 1e-6 for constant θ, 1e-3 otherwise);
/// Laplace and dual self-similarity rows use relative 1e-6, identities 1e-3.
CommandOutput cmd_sonine(const AdmissableTheta& theta, const std::vector<double>& ts, double tol = 0.0,
                         const std::string& function = "xexp");

/// JSON verdict and d_m table for the product of two Bernstein functions.
CommandOutput cmd_compose(const AdmissableTheta& a, const AdmissableTheta& b);

/// CSV x, p at time t. Passes when ∫p = 1 within 1e-6 and p ≥ -1e-8.
CommandOutput cmd_density(const AdmissableTheta& theta, double t, const std::vector<double>& xs);

enum class Equation { space, time };

/// CSV x, t, residual, scale, control_residual.
///  space: generator of θ applied to p minus ∂_t p; the control uses jumps of
///         order α + 0.1. Bound 1e-3·scale, control must reach 10× the bound.
///  time:  RL derivative of order 1/α with kernel τ plus α ∂_x p; the control
///         replaces τ by its mean. Bound 1e-2·scale, control 5× the bound
///         (only required when θ is not constant).
/// scale is the largest |∂_t p| (space) or |α ∂_x p| (time) on the grid.
/// tol = 0 keeps the default bound factor.
CommandOutput cmd_duality(const AdmissableTheta& theta, Equation eq, const std::vector<double>& xs,
                          const std::vector<double>& ts, double tol = 0.0);

}  // namespace semifrac::cli
