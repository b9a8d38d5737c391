#include "semifrac/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "semifrac/summation.hpp"

namespace semifrac {

LaplaceExponent exponent_of(const DualitySystem& S) {
  LaplaceExponent e;
  e.alpha = S.alpha();
  // Copies keep the exponent valid independently of S.
  const LogPeriodicSeries series = S.zeta_series();
  e.value = [series](cplx z) { return series.eval(z); };
  e.deriv = [series](int n, double x) { return series.deriv(n, x); };
  return e;
}

LaplaceExponent stable_exponent(double alpha, double scale) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw std::invalid_argument("stable_exponent: alpha must lie in (1,2)");
  LaplaceExponent e;
  e.alpha = alpha;
  e.value = [alpha, scale](cplx z) { return scale * std::exp(alpha * std::log(z)); };
  e.deriv = [alpha, scale](int n, double x) {
    double f = scale;
    for (int k = 0; k < n; ++k) f *= alpha - k;
    return f * std::pow(x, alpha - n);
  };
  return e;
}

namespace {

cplx exp_remainder(cplx w) {
  if (std::abs(w) < 0.1) {
    cplx term = w * w / 2.0;
    cplx sum = term;
    for (int n = 3; n < 20; ++n) {
      term *= -w / static_cast<double>(n);
      sum += term;
    }
    return sum;
  }
  return std::exp(-w) - 1.0 + w;
}

double real_sum(const Spectrum& sp, const std::function<cplx(std::size_t)>& mult) {
  if (sp.zero) return 0.0;
  NeumaierSum acc;
  for (std::size_t j = 0; j < sp.node.size(); ++j) acc.add((sp.node[j] * mult(j)).real());
  return sp.dxi / kPi * acc.value();
}

}  // namespace

double Spectrum::p() const {
  return real_sum(*this, [](std::size_t) { return cplx(1.0, 0.0); });
}

double Spectrum::dpdx() const {
  return real_sum(*this, [this](std::size_t j) { return -s[j]; });
}

double Spectrum::increment(double y) const {
  return real_sum(*this, [this, y](std::size_t j) { return exp_remainder(s[j] * y); });
}

DensityEvaluator::DensityEvaluator(LaplaceExponent zeta, DensitySpec spec) : zeta_(std::move(zeta)), spec_(spec) {
  if (!(zeta_.alpha > 1.0 && zeta_.alpha < 2.0)) throw std::invalid_argument("DensityEvaluator: alpha must lie in (1,2)");
  if (spec_.refine < 1) throw std::invalid_argument("DensityEvaluator: refine must be >= 1");
}

double DensityEvaluator::saddle(double x, double t) const {
  if (!(x > 0.0 && t > 0.0)) throw std::domain_error("saddle: x and t must be positive");
  auto h = [&](double u) { return std::log(t * zeta_.deriv(1, std::exp(u))) - std::log(x); };
  double lo = 0.0, hi = 0.0;
  int guard = 0;
  while (h(lo) > 0.0) {
    lo -= 4.0;
    if (++guard > 100) throw NumericalError("saddle: bracket failure");
  }
  while (h(hi) < 0.0) {
    hi += 4.0;
    if (++guard > 200) throw NumericalError("saddle: bracket failure");
  }
  for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? hi : lo) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

Spectrum DensityEvaluator::spectrum(double x, double t) const {
  if (!(t > 0.0)) throw std::domain_error("density: t must be positive");
  double lambda = 1.0;
  if (x > 0.0) {
    const double ls = saddle(x, t);
    if (-ls * x + t * std::real(zeta_.value(cplx(ls, 0.0))) < spec_.chernoff_cut) {
      Spectrum sp;
      sp.x = x;
      sp.t = t;
      sp.lambda = ls;
      sp.zero = true;
      return sp;
    }
    lambda = std::max(1.0, ls);
  } else if (x < -5.0) {
    lambda = 5.0 / -x;
  }
  const double sigma = 1.0 / std::sqrt(t * zeta_.deriv(2, lambda));
  const double L = spec_.alias_exponent / lambda + 30.0 * sigma + 10.0;
  return spectrum(x, t, lambda, 2.0 * kPi / (L * spec_.refine));
}

Spectrum DensityEvaluator::spectrum(double x, double t, double lambda, double dxi) const {
  Spectrum sp;
  sp.x = x;
  sp.t = t;
  sp.lambda = lambda;
  sp.dxi = dxi;
  double first = 0.0;
  int quiet = 0;
  for (long j = 0;; ++j) {
    if (j >= spec_.max_nodes) {
      throw NumericalError("density: exp(t zeta) has not decayed after " + std::to_string(j) + " nodes");
    }
    const cplx s(lambda, dxi * static_cast<double>(j));
    const cplx e = std::exp(-s * x + t * zeta_.value(s)) * (j == 0 ? 0.5 : 1.0);
    sp.s.push_back(s);
    sp.node.push_back(e);
    const double size = std::abs(e) * (1.0 + std::abs(s)) * (1.0 + std::abs(s));
    if (j == 0) first = size;
    quiet = size < spec_.truncation * first ? quiet + 1 : 0;
    if (quiet >= 5) break;
  }
  return sp;
}

double DensityEvaluator::p(double x, double t) const { return spectrum(x, t).p(); }

double DensityEvaluator::dpdx(double x, double t) const { return spectrum(x, t).dpdx(); }

double DensityEvaluator::dpdt(double x, double t) const {
  const Spectrum base = spectrum(x, t);
  if (base.zero) return 0.0;
  const double h = 1e-4 * t;
  const double up = spectrum(x, t + h, base.lambda, base.dxi).p();
  const double dn = spectrum(x, t - h, base.lambda, base.dxi).p();
  return (up - dn) / (2.0 * h);
}

double DensityEvaluator::right_bound(double t) const {
  auto exponent = [&](double z) {
    const double ls = saddle(z, t);
    return -ls * z + t * std::real(zeta_.value(cplx(ls, 0.0)));
  };
  double lo = 1e-6, hi = 1.0;
  while (exponent(hi) > spec_.chernoff_cut) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw NumericalError("right_bound: no Chernoff crossing");
  }
  for (int it = 0; it < 100 && hi - lo > 1e-10 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (exponent(mid) > spec_.chernoff_cut ? lo : hi) = mid;
  }
  return hi;
}

std::vector<double> density_grid(const DensityEvaluator& E, double t, const std::vector<double>& xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(E.p(x, t));
  return out;
}

NormalizationReport density_normalization(const DualitySystem& S, const DensityEvaluator& E, double t, double X0) {
  NormalizationReport r;
  r.right_bound = E.right_bound(t);
  const QuadratureSpec spec = QuadratureSpec{}.with_tolerances(1e-11, 1e-10);
  const RealFunction f = [&](double x) { return E.p(x, t); };
  const double split = -20.0;
  r.bulk = integrate(f, split, r.right_bound, spec) + integrate(f, -X0, split, spec);
  r.left_tail = t * levy_tail(S.theta(), X0);
  r.total = r.bulk + r.left_tail;
  r.min_p = 0.0;
  for (int i = 0; i <= 300; ++i) {
    const double x = split + (r.right_bound - split) * i / 300.0;
    r.min_p = std::min(r.min_p, E.p(x, t));
  }
  return r;
}

SelfConvergenceReport density_self_convergence(const LaplaceExponent& zeta, double t, const std::vector<double>& xs) {
  if (xs.size() < 2) throw std::invalid_argument("density_self_convergence: need at least two grid points");
  DensitySpec fine;
  fine.refine = 2;
  const DensityEvaluator coarse_eval(zeta), fine_eval(zeta, fine);
  SelfConvergenceReport r;
  const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (double x : xs) {
    const double a = coarse_eval.p(x, t), b = fine_eval.p(x, t);
    r.total_variation += std::abs(a - b) * dx;
    r.max_abs_diff = std::max(r.max_abs_diff, std::abs(a - b));
    r.min_p = std::min({r.min_p, a, b});
  }
  return r;
}

SpaceResidual space_equation_residual(const DensityEvaluator& E, const AdmissableTheta& jump_theta, double x, double t,
                                      const QuadratureSpec& spec) {
  if (!(jump_theta.alpha() > 1.0 && jump_theta.alpha() < 2.0)) {
    throw std::invalid_argument("space_equation_residual: jump alpha must lie in (1,2)");
  }
  const Spectrum sp = E.spectrum(x, t);
  const double Y = std::max(1.0, E.right_bound(t) - x);
  const RealFunction f = [&](double y) { return sp.increment(y) * levy_density(jump_theta, y); };
  const double head = integrate(f, 0.0, std::min(1.0, Y), spec.with_singularity(1.0 - jump_theta.alpha()));
  const double body = Y > 1.0 ? integrate(f, 1.0, Y, spec.with_singularity(0.0)) : 0.0;
  // Beyond Y: p(x+y) = 0, so the integrand is -(p + y p_x) w.
  const double a = jump_theta.alpha();
  double tail_int = 0.0;  // ∫_Y^∞ T
  const auto& ck = jump_theta.coeffs();
  for (std::size_t k = 0; k < ck.size(); ++k) {
    const double sk = jump_theta.tilde_c() * static_cast<double>(k);
    const cplx term = ck[k] * std::exp(cplx(1.0 - a, sk) * std::log(Y)) / cplx(a - 1.0, -sk);
    tail_int += (k == 0 ? 1.0 : 2.0) * term.real();
  }
  const double TY = levy_tail(jump_theta, Y);
  const double tail = -sp.p() * TY - sp.dpdx() * (Y * TY + tail_int);
  SpaceResidual r;
  r.generator = head + body + tail;
  r.dpdt = E.dpdt(x, t);
  r.residual = r.generator - r.dpdt;
  return r;
}

namespace {

// C(t) = ∫₀^t α p(x, t-s) K(s) ds with K(s) = s^{-1/α} τ(log s), split at t/2.
double dual_convolution(const DensityEvaluator& E, const DualTau& tau, double x, double t, int level) {
  const double a = E.exponent().alpha;
  const AdmissableTheta& th = tau.theta();
  // s ∈ [0, t/2]: singular kernel at s = 0.
  const double near = tanh_sinh_fixed([&](double s) { return a * E.p(x, t - s) * levy_tail(th, s); }, 0.5 * t, level,
                                      -th.alpha());
  // u = t - s ∈ [0, t/2]: p(x, u) vanishes rapidly as u → 0 for x > 0.
  const double far = tanh_sinh_fixed([&](double u) { return a * E.p(x, u) * levy_tail(th, t - u); }, 0.5 * t, level,
                                     0.0);
  return near + far;
}

}  // namespace

DualityResidual duality_residual(const DensityEvaluator& E, const DualTau& tau, double x, double t, int level) {
  if (!(x > 0.0)) throw std::domain_error("duality_residual: x must be positive");
  if (!(t > 0.0)) throw std::domain_error("duality_residual: t must be positive");
  if (std::abs(tau.theta().alpha() - 1.0 / E.exponent().alpha) > 1e-12) {
    throw std::invalid_argument("duality_residual: tau must have order 1/alpha");
  }
  const double h = 1e-4 * t;
  DualityResidual r;
  r.time_derivative =
      (dual_convolution(E, tau, x, t + h, level) - dual_convolution(E, tau, x, t - h, level)) / (2.0 * h);
  r.space_term = E.exponent().alpha * E.dpdx(x, t);
  r.residual = r.time_derivative + r.space_term;
  return r;
}

}  // namespace semifrac
