#pragma once

// F(z) = Σ_{|k|≤K} a_k z^{β - ik·step}, a_{-k} = conj(a_k), with
// step·log q = 2π so that F(q z) = q^β F(z) exactly. Shared by the
// Laplace exponent ψ̃ (β = α < 1) and the exponent ζ (β = α ∈ (1,2)).

#include <vector>

#include "semifrac/special_functions.hpp"

namespace semifrac {

class LogPeriodicSeries {
public:
  /// a[k] for k = 0..K; a[0] must be real. value_factor = q^β.
  LogPeriodicSeries(double beta, double step, double q, double value_factor, std::vector<cplx> a);

  double beta() const { return beta_; }
  double step() const { return step_; }
  double q() const { return q_; }
  double value_factor() const { return value_factor_; }
  const std::vector<cplx>& coeffs() const { return a_; }

  /// Real x > 0. Outside [1e-8, 1e8] x is first reduced into [1, q).
  double eval(double x) const;
  /// Principal branch, z off the non-positive real axis.
  cplx eval(cplx z) const;
  /// j-th derivative at real x > 0, j ≥ 0.
  double deriv(int j, double x) const;
  /// Σ a_k e^{ik·step·u}, the periodic factor F(e^{-u}) e^{βu}.
  double periodic_part(double u) const;

private:
  double beta_, step_, q_, value_factor_, log_q_;
  std::vector<cplx> a_;
};

}  // namespace semifrac
