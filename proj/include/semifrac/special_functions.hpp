#pragma once

// Scalar analytic building blocks: complex gamma, generalized binomial
// coefficients and complex powers of positive reals.

#include <complex>
#include <stdexcept>
#include <vector>

namespace semifrac {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Raised when a numerical routine cannot deliver its contract
/// (non-convergence, pole proximity, overflow).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// log Γ(z) for complex z away from the poles {0, -1, -2, ...}.
/// Imaginary part is only defined modulo 2π; use exp() of the result.
cplx log_gamma_complex(cplx z);

/// Γ(z) via a 9-term Lanczos approximation (g = 7) with reflection for
/// Re z < 0.5. Validated to 1e-13 relative on |Im z| <= 50, 0.1 <= |Re z| <= 50.
/// Throws std::domain_error within 1e-12 of a pole.
cplx gamma_complex(cplx z);

/// z(z-1)...(z-j+1)/j! computed by the forward product recursion.
cplx gen_binomial(cplx z, int j);

/// All coefficients binom(z, 0..j_max) from the same recursion.
std::vector<cplx> gen_binomial_table(cplx z, int j_max);

/// x^w = exp(w log x) on the real branch of log. Requires x > 0.
cplx complex_power(double x, cplx w);

/// Principal-branch z^w for z off the non-positive real axis.
cplx principal_power(cplx z, cplx w);

}  // namespace semifrac
