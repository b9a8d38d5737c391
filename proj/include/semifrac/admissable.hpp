#pragma once

// Log-periodic perturbation θ of a power law, its Lévy tail and density,
// and a grid checker for the admissability conditions.

#include <string>
#include <vector>

#include "semifrac/special_functions.hpp"

namespace semifrac {

inline constexpr int kMaxFourierOrder = 64;

/// θ(x) = Σ_{|k|≤K} c_k e^{ik c̃ x}, c̃ = 2πα/log c, c_{-k} = conj(c_k).
/// Only k ≥ 0 is stored. Immutable after construction.
class AdmissableTheta {
public:
  /// coeffs[k] = c_k for k = 0..K. Throws std::invalid_argument on
  /// α ∉ (0,1)∪(1,2), c ≤ 1, K > 64, or c_0 not real (|Im| > 0) or c_0 <= 0.
  AdmissableTheta(double alpha, double c, std::vector<cplx> coeffs);

  /// θ ≡ c0.
  static AdmissableTheta constant(double alpha, double c, double c0);
  /// c_0 = c0, c_1 = eps·c0 (so θ(0) = (1 + 2 eps) c0).
  static AdmissableTheta perturbed(double alpha, double c, double c0, double eps);
  /// Classical normalisation: θ ≡ 1/Γ(1-α) for α < 1, θ ≡ -1/Γ(1-α) for α > 1.
  static AdmissableTheta stable(double alpha, double c = 2.0);

  /// {"alpha": a, "c": c, "coeffs": [{"k": 0, "re": .., "im": ..}, ...]}
  static AdmissableTheta from_json_text(const std::string& text);
  static AdmissableTheta load(const std::string& path);
  std::string to_json_text() const;

  double alpha() const { return alpha_; }
  double c() const { return c_; }
  /// log(c^{1/α})
  double period() const { return period_; }
  /// 2πα / log c
  double tilde_c() const { return tilde_c_; }
  /// c^{1/α}
  double scale() const { return scale_; }
  int max_order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  bool is_constant() const;

private:
  double alpha_, c_, period_, tilde_c_, scale_;
  std::vector<cplx> coeffs_;
};

double eval_theta(const AdmissableTheta& theta, double x);
double eval_theta_prime(const AdmissableTheta& theta, double x);
/// max of θ over a grid of one period.
double theta_max(const AdmissableTheta& theta, int grid_points = 4096);

struct ValidityReport {
  int grid_points = 0;
  bool positive = false;      // θ > 0 on the grid
  bool monotone = false;      // αθ - θ' > 0 on the grid
  bool periodic = false;      // θ(x + period) = θ(x)
  double min_theta = 0.0;
  double min_margin = 0.0;    // min of αθ - θ'
  double periodicity_error = 0.0;
  bool ok() const { return positive && monotone && periodic; }
};

/// Grid scan over one period. grid_points ≥ 64.
ValidityReport check_admissable(const AdmissableTheta& theta, int grid_points = 4096);

/// t^{-α} θ(log t), t > 0.
double levy_tail(const AdmissableTheta& theta, double t);
/// t^{-α-1}(αθ(log t) - θ'(log t)), t > 0.
double levy_density(const AdmissableTheta& theta, double t);

}  // namespace semifrac
