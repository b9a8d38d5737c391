#include "semifrac/laplace.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace semifrac {

double laplace_transform_numeric(const RealFunction& f, double x, const QuadratureSpec& spec) {
  if (!(x > 0.0)) throw std::invalid_argument("laplace_transform_numeric: x must be positive");
  const RealFunction g = [&](double u) { return std::exp(-u) * f(u / x); };
  return integrate(g, 0.0, kInfinity, spec) / x;
}

HyperbolicContour::HyperbolicContour(int n_nodes, double beta) : n_(n_nodes), beta_(beta) {
  if (n_nodes < 8) throw std::invalid_argument("HyperbolicContour: need at least 8 nodes");
  if (!(beta > 0.0) || beta >= kPi / 2) {
    throw std::invalid_argument("HyperbolicContour: beta must lie in (0, pi/2)");
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double best = std::numeric_limits<double>::infinity();
  // Grid search over the opening a, the lower strip half-width d- = fr·a and
  // the truncation point H = (n-1)h.
  for (int ia = 1; ia <= 49; ++ia) {
    const double a = (0.02 + 0.96 * (ia - 1) / 48.0) * beta;
    const double d_plus = beta - a;
    for (int ifr = 1; ifr <= 49; ++ifr) {
      const double d_minus = (0.02 + 0.96 * (ifr - 1) / 48.0) * a;
      for (int iH = 0; iH < 120; ++iH) {
        const double H = 0.3 + 7.7 * iH / 119.0;
        const double h = H / (n_nodes - 1);
        const double g = std::sin(a) * std::cosh(H);
        if (g <= 1.0) continue;
        const double L = (2 * kPi * d_minus / h) / (g - std::sin(a - d_minus));
        const double E = std::exp(-2 * kPi * d_plus / h) + std::exp(-L * (g - 1.0)) +
                         eps * std::exp(L * (1.0 - std::sin(a)));
        if (E < best) {
          best = E;
          a_ = a;
          h_ = h;
          L_ = L;
        }
      }
    }
  }
  predicted_error_ = best;
  w_.resize(n_nodes);
  weight_.resize(n_nodes);
  for (int k = 0; k < n_nodes; ++k) {
    const double u = k * h_;
    const cplx w(1.0 - std::sin(a_) * std::cosh(u), std::cos(a_) * std::sinh(u));
    const cplx dw(-std::sin(a_) * std::sinh(u), std::cos(a_) * std::cosh(u));
    w_[k] = w;
    weight_[k] = std::exp(L_ * w) * dw * (k == 0 ? 0.5 : 1.0);
  }
}

double HyperbolicContour::invert(const ComplexFunction& F, double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("inverse_laplace_numeric: t must be positive");
  const double mu = L_ / t;
  if (!std::isfinite(mu)) throw NumericalError("inverse_laplace_numeric: overflow at tiny t");
  double sum = 0.0;
  for (int k = 0; k < n_; ++k) {
    const cplx Fz = F(mu * w_[k]);
    if (!std::isfinite(Fz.real()) || !std::isfinite(Fz.imag())) {
      throw NumericalError("inverse_laplace_numeric: F is not finite on the contour");
    }
    sum += (weight_[k] * Fz).imag();
  }
  return h_ / kPi * mu * sum;
}

double inverse_laplace_numeric(const ComplexFunction& F, double t, int n_nodes) {
  return HyperbolicContour(n_nodes).invert(F, t);
}

}  // namespace semifrac
