#pragma once

// Semi-fractional Sibuya law on {1, 2, ...}, its pgf and sampler, and the
// Grünwald-Letnikov type approximation of the semi-fractional derivative.

#include <cstdint>
#include <vector>

#include "semifrac/bernstein.hpp"
#include "semifrac/test_functions.hpp"

namespace semifrac {

struct SemiFracSibuya {
  double alpha = 0.0;
  double c = 0.0;
  double psi_one = 0.0;           // ψ̃(1)
  std::vector<double> probs;      // probs[j-1] = p_j, j = 1..J
  int J = 0;
  double tail_mass = 0.0;         // 1 - Σ p_j
  double worst_raw = 0.0;         // most negative raw p_j before clipping (0 if none)
  int clipped = 0;                // number of p_j clipped to 0
  double p(int j) const { return probs.at(static_cast<std::size_t>(j - 1)); }
};

inline constexpr int kDefaultMaxJ = 1 << 24;

/// p_j = (-1)^{j-1} Σ_k ω_k binom(α - ik c̃, j) / ψ̃(1) for j = 1..J.
/// Values in [-1e-12, 0) are clipped to 0; a raw value below -1e-8 throws
/// NumericalError (θ does not produce a Bernstein function).
SemiFracSibuya sibuya_pmf(const SelfSimilarBernstein& B, int J);

/// Smallest J (≤ J_max) with tail_mass < target. Throws NumericalError if
/// J_max is reached first.
SemiFracSibuya sibuya_pmf_adaptive(const SelfSimilarBernstein& B, double target = 1e-3,
                                   int J_max = kDefaultMaxJ);

/// G(z) = 1 - ψ̃(1-z)/ψ̃(1), z ∈ [-1, 1].
double sibuya_pgf(const SelfSimilarBernstein& B, double z);
/// Σ_{j≤J} p_j z^j
double sibuya_pgf_truncated(const SemiFracSibuya& dist, double z);

/// Inverse-CDF sampling with std::mt19937_64(seed). Requires tail_mass < 0.05.
/// Uniforms falling into the tail are redrawn.
std::vector<int> sibuya_sample(const SemiFracSibuya& dist, std::uint64_t seed, int n);

struct GLApproximation {
  int m = 0;
  double h_m = 0.0;           // c^{-m/α}
  double weight_scale = 0.0;  // ψ̃(1/h_m)
  int J = 0;
};

GLApproximation make_gl(const SelfSimilarBernstein& B, int m, int J);

/// ψ̃(1/h_m) (f(x) - Σ_{j≤J} p_j f(x - j h_m)), J = dist.J.
double gl_apply(const SemiFracSibuya& dist, const GLApproximation& gl, const RealFunction& f, double x);

/// Convenience: chooses J so that x - J h_m passes below f.lower_support
/// (and at least the adaptive tail truncation), then applies the sum.
double gl_apply(const SelfSimilarBernstein& B, const TestFunction& f, double x, int m);

/// Truncation used by the convenience overload.
int gl_truncation(const SelfSimilarBernstein& B, const TestFunction& f, double x, int m);

/// ∫₀^∞ (f(x) - f(x-y)) levy_density(y) dy, evaluated as ∫₀^∞ f'(x-y) levy_tail(y) dy.
double generator_oracle(const AdmissableTheta& theta, const TestFunction& f, double x, const QuadratureSpec& spec);

}  // namespace semifrac
