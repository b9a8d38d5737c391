#include "semifrac/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace semifrac {

namespace {

LogPeriodicSeries make_psi_series(const AdmissableTheta& theta) {
  if (!(theta.alpha() < 1.0)) {
    throw std::invalid_argument("SelfSimilarBernstein: alpha must lie in (0,1)");
  }
  std::vector<cplx> w(theta.coeffs().size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const cplx arg(1.0 - theta.alpha(), theta.tilde_c() * static_cast<double>(k));
    w[k] = theta.coeffs()[k] * gamma_complex(arg);
  }
  w[0] = cplx(w[0].real(), 0.0);
  return LogPeriodicSeries(theta.alpha(), theta.tilde_c(), theta.scale(), theta.c(), std::move(w));
}

}  // namespace

SelfSimilarBernstein::SelfSimilarBernstein(AdmissableTheta theta)
    : theta_(std::move(theta)), series_(make_psi_series(theta_)) {}

double eval_psi_tilde(const SelfSimilarBernstein& B, double x) {
  if (!(x > 0.0)) throw std::domain_error("eval_psi_tilde: x must be positive");
  return B.series().eval(x);
}

cplx eval_psi_tilde(const SelfSimilarBernstein& B, cplx s) { return B.series().eval(s); }

double eval_gamma_fn(const SelfSimilarBernstein& B, double x) { return B.series().periodic_part(x); }

double psi_tilde_deriv(const SelfSimilarBernstein& B, int j, double x) {
  if (!(x > 0.0)) throw std::domain_error("psi_tilde_deriv: x must be positive");
  return B.series().deriv(j, x);
}

double psi_tilde_quadrature(const SelfSimilarBernstein& B, double x, const QuadratureSpec& spec) {
  if (!(x > 0.0)) throw std::domain_error("psi_tilde_quadrature: x must be positive");
  const AdmissableTheta& th = B.theta();
  // Integrate in u = x t; the integrand behaves like u^{-α} at 0.
  const RealFunction f = [&](double u) {
    return -std::expm1(-u) * levy_density(th, u / x) / x;
  };
  const double head = integrate(f, 0.0, 1.0, spec.with_singularity(-B.alpha()));
  // On [1, ∞) split off the pure tail part ∫ w = tail(1/x).
  const RealFunction g = [&](double u) { return std::exp(-u) * levy_density(th, u / x) / x; };
  const double tail = levy_tail(th, 1.0 / x) - integrate(g, 1.0, kInfinity, spec.with_singularity(0.0));
  return head + tail;
}

std::vector<double> default_sign_grid() {
  std::vector<double> grid(256);
  for (int i = 0; i < 256; ++i) grid[i] = std::pow(10.0, -2.0 + 4.0 * i / 255.0);
  return grid;
}

SignReport check_bernstein_signs(const DerivativeTable& deriv, int n_max,
                                 const std::vector<double>& grid) {
  if (n_max < 1 || n_max > 12) throw std::invalid_argument("check_bernstein_signs: n_max must lie in 1..12");
  if (grid.empty()) throw std::invalid_argument("check_bernstein_signs: empty grid");
  SignReport r;
  r.n_max = n_max;
  r.worst_margin.assign(n_max, std::numeric_limits<double>::infinity());
  for (double x : grid) {
    const double f0 = deriv(0, x);
    double xn = 1.0;
    for (int n = 1; n <= n_max; ++n) {
      xn *= x;
      const double sign = (n % 2 == 1) ? 1.0 : -1.0;
      const double margin = sign * deriv(n, x) * xn / std::abs(f0);
      r.worst_margin[n - 1] = std::min(r.worst_margin[n - 1], margin);
    }
  }
  for (int n = 1; n <= n_max; ++n) {
    const double m = r.worst_margin[n - 1];
    r.worst_violation = std::min(r.worst_violation, m);
    if (!(m >= 0.0) && r.first_failing_order == 0) r.first_failing_order = n;
  }
  r.pass = r.first_failing_order == 0;
  return r;
}

SignReport check_bernstein_signs(const SelfSimilarBernstein& B, int n_max,
                                 const std::vector<double>& grid) {
  return check_bernstein_signs([&](int n, double x) { return psi_tilde_deriv(B, n, x); }, n_max, grid);
}

CompositionResult compose_product(const SelfSimilarBernstein& B1, const SelfSimilarBernstein& B2) {
  const double a1 = B1.alpha(), a2 = B2.alpha();
  const double alpha = a1 + a2;
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("compose_product: alpha1 + alpha2 must lie in (0,1)");
  }
  const double q1 = B1.scale(), q2 = B2.scale();
  if (std::abs(q1 - q2) > 1e-12 * std::max(q1, q2)) {
    throw std::invalid_argument("compose_product: periods c1^(1/alpha1) and c2^(1/alpha2) differ");
  }
  const double c = std::pow(B1.c(), alpha / a1);
  const double step = B1.theta().tilde_c();
  const auto& w1 = B1.weights();
  const auto& w2 = B2.weights();
  const int K1 = static_cast<int>(w1.size()) - 1, K2 = static_cast<int>(w2.size()) - 1;
  auto omega = [](const std::vector<cplx>& w, int k) {
    const int K = static_cast<int>(w.size()) - 1;
    if (std::abs(k) > K) return cplx(0.0, 0.0);
    return k >= 0 ? w[k] : std::conj(w[-k]);
  };
  const int K = K1 + K2;
  std::vector<cplx> prod(K + 1), d(K + 1);
  for (int m = 0; m <= K; ++m) {
    cplx s = 0.0;
    for (int l = -K2; l <= K2; ++l) s += omega(w1, m - l) * omega(w2, l);
    prod[m] = s;
    d[m] = s / gamma_complex(cplx(1.0 - alpha, step * m));
  }
  prod[0] = cplx(prod[0].real(), 0.0);
  d[0] = cplx(d[0].real(), 0.0);
  CompositionResult r{d, alpha, c, false, 0.0, {}, LogPeriodicSeries(alpha, step, q1, c, prod)};
  const LogPeriodicSeries& P = r.product;
  r.signs = check_bernstein_signs([&](int n, double x) { return P.deriv(n, x); }, 8, default_sign_grid());
  r.is_bernstein = r.signs.pass;
  r.worst_violation = r.signs.worst_violation;
  return r;
}

}  // namespace semifrac
