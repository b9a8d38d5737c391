#pragma once

#include <functional>
#include <limits>

namespace semifrac {

using RealFunction = std::function<double(double)>;

/// Tolerances for integrate(). singularity_exponent declares the power-law
/// order s of the integrand at the LOWER endpoint (f ~ (t-a)^s); values
/// s < 0 switch to a singularity-removing substitution plus tanh-sinh.
struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_refinements = 12;
  double singularity_exponent = 0.0;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;

  QuadratureSpec with_singularity(double s) const {
    QuadratureSpec out = *this;
    out.singularity_exponent = s;
    return out;
  }
  QuadratureSpec with_tolerances(double abs, double rel) const {
    QuadratureSpec out = *this;
    out.abs_tol = abs;
    out.rel_tol = rel;
    return out;
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// ∫_a^b f(t) dt. b may be +infinity, in which case [a+1, ∞) is mapped by
/// t = a + e^u and integrated panel by panel until the panel mass falls below
/// 1e-3 of the effective tolerance. Never throws on non-convergence.
QuadratureResult integrate_detailed(const RealFunction& f, double a, double b,
                                    const QuadratureSpec& spec);

/// As integrate_detailed but throws NumericalError when the tolerances are
/// not met within max_refinements or when f produces NaN.
double integrate(const RealFunction& f, double a, double b, const QuadratureSpec& spec);

/// Fixed-level tanh-sinh rule on [0, b] for an integrand singular at 0.
/// The integrand receives the exact distance to 0. Level l uses step 2^-l.
/// Used where a quadrature error that varies smoothly with b matters more
/// than adaptivity (finite differences of convolutions).
double tanh_sinh_fixed(const RealFunction& f, double b, int level, double singularity_exponent);

}  // namespace semifrac
