#include "semifrac/duality.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace semifrac {

namespace {

LogPeriodicSeries make_zeta_series(const AdmissableTheta& theta) {
  if (!(theta.alpha() > 1.0)) throw std::invalid_argument("DualitySystem: alpha must lie in (1,2)");
  std::vector<cplx> a(theta.coeffs().size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    a[k] = -theta.coeffs()[k] * gamma_complex(cplx(1.0 - theta.alpha(), theta.tilde_c() * static_cast<double>(k)));
  }
  a[0] = cplx(a[0].real(), 0.0);
  return LogPeriodicSeries(theta.alpha(), theta.tilde_c(), theta.scale(), theta.c(), std::move(a));
}

// e^{-w} - 1 + w without cancellation for small |w|.
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

// ∫_Y^∞ t^{-α}θ(log t) dt = Σ c_k Y^{1-α+ik c̃}/(α - 1 - ik c̃), α > 1.
double tail_integral(const AdmissableTheta& theta, double Y) {
  const auto& ck = theta.coeffs();
  const double a = theta.alpha();
  const double ly = std::log(Y);
  double sum = 0.0;
  for (std::size_t k = 0; k < ck.size(); ++k) {
    const double s = theta.tilde_c() * static_cast<double>(k);
    const cplx term = ck[k] * std::exp(cplx(1.0 - a, s) * ly) / cplx(a - 1.0, -s);
    sum += (k == 0 ? 1.0 : 2.0) * term.real();
  }
  return sum;
}

void enumerate_partitions(int n, int j, int remaining, std::vector<int>& k,
                          const std::function<void(const std::vector<int>&)>& visit) {
  if (remaining == 0) {
    visit(k);
    return;
  }
  if (j > n - 1) return;
  for (int m = 0; m * j <= remaining; ++m) {
    k[j] = m;
    enumerate_partitions(n, j + 1, remaining - m * j, k, visit);
  }
  k[j] = 0;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

DualitySystem::DualitySystem(AdmissableTheta theta)
    : theta_(std::move(theta)), series_(make_zeta_series(theta_)) {}

cplx zeta(const DualitySystem& S, cplx z) {
  if (z.real() < 0.0) throw std::domain_error("zeta: requires Re z >= 0");
  if (z == cplx(0.0, 0.0)) return 0.0;
  return S.zeta_series().eval(z);
}

double zeta(const DualitySystem& S, double x) {
  if (x < 0.0) throw std::domain_error("zeta: requires x >= 0");
  if (x == 0.0) return 0.0;
  return S.zeta_series().eval(x);
}

cplx zeta_quadrature(const AdmissableTheta& theta, cplx z, const QuadratureSpec& spec) {
  if (!(theta.alpha() > 1.0)) throw std::invalid_argument("zeta_quadrature: alpha must lie in (1,2)");
  if (z.real() < 0.0) throw std::domain_error("zeta_quadrature: requires Re z >= 0");
  if (std::abs(z) > 1e6) throw NumericalError("zeta_quadrature: |z| > 1e6 is outside the quadrature range");
  if (z == cplx(0.0, 0.0)) return 0.0;
  const QuadratureSpec near = spec.with_singularity(1.0 - theta.alpha());
  const QuadratureSpec far = spec.with_singularity(0.0);
  // On [0,1] the integrand behaves like t^{1-α}.
  const double head_re = integrate([&](double t) { return exp_remainder(z * t).real() * levy_density(theta, t); },
                                   0.0, 1.0, near);
  const double head_im = integrate([&](double t) { return exp_remainder(z * t).imag() * levy_density(theta, t); },
                                   0.0, 1.0, near);
  // On [1,∞): ∫e^{-zt}w - T(1) + z(T(1) + ∫_1^∞ T).
  const double e_re = integrate([&](double t) { return std::exp(-z * t).real() * levy_density(theta, t); },
                                1.0, kInfinity, far);
  const double e_im = integrate([&](double t) { return std::exp(-z * t).imag() * levy_density(theta, t); },
                                1.0, kInfinity, far);
  const double T1 = levy_tail(theta, 1.0);
  return cplx(head_re, head_im) + cplx(e_re, e_im) - T1 + z * (T1 + tail_integral(theta, 1.0));
}

double zeta_deriv(const DualitySystem& S, int n, double x) {
  if (!(x > 0.0)) throw std::domain_error("zeta_deriv: x must be positive");
  return S.zeta_series().deriv(n, x);
}

double zeta_deriv_quadrature(const AdmissableTheta& theta, int n, double x, const QuadratureSpec& spec) {
  if (n < 1) throw std::invalid_argument("zeta_deriv_quadrature: n must be >= 1");
  if (!(x > 0.0)) throw std::domain_error("zeta_deriv_quadrature: x must be positive");
  if (n == 1) {
    // ∫(1 - e^{-xt}) t w dt; near 0 the integrand is ~ t^{1-α}.
    const double head = integrate([&](double t) { return -std::expm1(-x * t) * t * levy_density(theta, t); },
                                  0.0, 1.0, spec.with_singularity(1.0 - theta.alpha()));
    const double e = integrate([&](double t) { return std::exp(-x * t) * t * levy_density(theta, t); }, 1.0,
                               kInfinity, spec.with_singularity(0.0));
    const double T1 = levy_tail(theta, 1.0);
    return head + T1 + tail_integral(theta, 1.0) - e;
  }
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const RealFunction f = [&](double t) { return std::pow(t, n) * std::exp(-x * t) * levy_density(theta, t); };
  const double s0 = std::min(0.0, n - theta.alpha() - 1.0);
  return sign * (integrate(f, 0.0, 1.0, spec.with_singularity(s0)) +
                 integrate(f, 1.0, kInfinity, spec.with_singularity(0.0)));
}

double xi(const DualitySystem& S, double s, bool reduce) {
  if (!(s > 0.0)) throw std::domain_error("xi: s must be positive");
  const double a = S.alpha();
  const double c = S.c();
  int n = 0;
  if (reduce) {
    n = static_cast<int>(std::floor(std::log(s) / std::log(c)));
    s /= std::pow(c, n);
    if (s < 1.0) {
      s *= c;
      --n;
    } else if (s >= c) {
      s /= c;
      ++n;
    }
  }
  const double target = std::log(s);
  // h(u) = log ζ(e^u) - log s is increasing in u.
  auto h = [&](double u) { return std::log(zeta(S, std::exp(u))) - target; };
  const double a0 = S.zeta_series().coeffs()[0].real();
  double u = (target - std::log(a0)) / a;
  double lo = u - 1.0, hi = u + 1.0;
  int expand = 0;
  while (h(lo) > 0.0) {
    lo -= 2.0;
    if (++expand > 200) throw NumericalError("xi: bracket failure below");
  }
  while (h(hi) < 0.0) {
    hi += 2.0;
    if (++expand > 400) throw NumericalError("xi: bracket failure above");
  }
  for (int it = 0; it < 200; ++it) {
    const double x = std::exp(u);
    const double z = zeta(S, x);
    const double hv = std::log(z) - target;
    if (hv > 0.0) {
      hi = std::min(hi, u);
    } else {
      lo = std::max(lo, u);
    }
    const double slope = x * zeta_deriv(S, 1, x) / z;
    double next = u - hv / slope;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - u);
    u = next;
    if (step < 1e-15 || hi - lo < 1e-15) break;
  }
  const double root = std::exp(u);
  return n == 0 ? root : root * std::pow(S.theta().scale(), n);
}

std::vector<double> inverse_derivatives(const std::vector<double>& f_derivs) {
  const int n_max = static_cast<int>(f_derivs.size());
  if (n_max < 1 || n_max > 6) throw std::invalid_argument("inverse_derivatives: order must lie in 1..6");
  if (f_derivs[0] == 0.0) throw NumericalError("inverse_derivatives: f' vanishes");
  std::vector<double> g(n_max);
  g[0] = 1.0 / f_derivs[0];
  for (int n = 2; n <= n_max; ++n) {
    double sum = 0.0;
    std::vector<int> k(n, 0);  // k[1..n-1]
    enumerate_partitions(n, 1, n, k, [&](const std::vector<int>& part) {
      int K = 0;
      double coeff = factorial(n);
      double prod = 1.0;
      for (int j = 1; j <= n - 1; ++j) {
        if (part[j] == 0) continue;
        K += part[j];
        coeff /= factorial(part[j]);
        prod *= std::pow(g[j - 1] / factorial(j), part[j]);
      }
      sum += coeff * f_derivs[K - 1] * prod;
    });
    g[n - 1] = -sum / f_derivs[0];
  }
  return g;
}

double xi_deriv(const DualitySystem& S, int n, double x) {
  if (n < 1 || n > 6) throw std::invalid_argument("xi_deriv: order must lie in 1..6");
  const double y = xi(S, x);
  std::vector<double> fd(n);
  for (int j = 1; j <= n; ++j) fd[j - 1] = zeta_deriv(S, j, y);
  return inverse_derivatives(fd)[n - 1];
}

double g_eval(const DualitySystem& S, double x, bool reduce) {
  return std::exp(-x / S.alpha()) * xi(S, std::exp(x), reduce);
}

GFourier g_fourier(const DualitySystem& S, int N, int samples) {
  if (N < 1) throw std::invalid_argument("g_fourier: N must be >= 1");
  if (samples < 8 * N || (samples & (samples - 1)) != 0) {
    throw std::invalid_argument("g_fourier: samples must be a power of two >= 8N");
  }
  GFourier r;
  r.N = N;
  r.samples = samples;
  const double P = std::log(S.c());
  r.tilde_d = 2.0 * kPi / P;
  std::vector<double> g(samples);
  for (int j = 0; j < samples; ++j) g[j] = g_eval(S, P * j / samples);
  // Periodicity is checked without the scaling reduction inside ξ.
  for (double x : {0.1 * P, 0.37 * P, 0.8 * P}) {
    const double g0 = g_eval(S, x, false);
    const double g1 = g_eval(S, x + P, false);
    r.periodicity_error = std::max(r.periodicity_error, std::abs(g1 - g0) / std::abs(g0));
  }
  if (r.periodicity_error > 1e-6) {
    throw NumericalError("g_fourier: g is not log(c)-periodic (deviation " + std::to_string(r.periodicity_error) + ")");
  }
  std::vector<cplx> full(samples / 2 + 1);
  for (int n = 0; n <= samples / 2; ++n) {
    cplx s = 0.0;
    for (int j = 0; j < samples; ++j) {
      s += g[j] * std::polar(1.0, 2.0 * kPi * static_cast<double>(n) * j / samples);
    }
    full[n] = s / static_cast<double>(samples);
  }
  full[0] = cplx(full[0].real(), 0.0);
  r.d.assign(full.begin(), full.begin() + N + 1);
  for (int n = N + 1; n <= samples / 2; ++n) r.aliasing = std::max(r.aliasing, std::abs(full[n]));
  for (double v : g) r.mean_g2 += v * v;
  r.mean_g2 /= samples;
  r.parseval_sum = std::norm(r.d[0]);
  for (int n = 1; n <= N; ++n) r.parseval_sum += 2.0 * std::norm(r.d[n]);

  DecayReport& dr = r.decay;
  dr.noise_floor = 1e-13 * std::abs(r.d[0]);
  const double expo = 1.5 + 1.0 / S.alpha();
  while (dr.significant < N && std::abs(r.d[dr.significant + 1]) > dr.noise_floor) {
    const int n = ++dr.significant;
    dr.ratios.push_back(std::abs(r.d[n]) * std::exp(kPi * n * r.tilde_d / 2.0) * std::pow(n, expo));
  }
  if (dr.significant >= 3) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = dr.significant;
    for (int n = 1; n <= m; ++n) {
      const double lx = std::log(static_cast<double>(n)), ly = std::log(dr.ratios[n - 1]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    dr.log_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    dr.pass = dr.log_slope <= 0.0;
  } else {
    dr.pass = true;
  }
  return r;
}

namespace {

AdmissableTheta tau_theta(const DualitySystem& S, const GFourier& g) {
  if (!g.decay.pass) {
    throw NumericalError("DualTau: Fourier coefficients of g fail the decay check (log slope " +
                         std::to_string(g.decay.log_slope) + " > 0); tau is not constructed");
  }
  const double inv_a = 1.0 / S.alpha();
  std::vector<cplx> ck(g.decay.significant + 1);
  for (int n = 0; n <= g.decay.significant; ++n) {
    ck[n] = g.d[n] / gamma_complex(cplx(1.0 - inv_a, n * g.tilde_d));
  }
  ck[0] = cplx(ck[0].real(), 0.0);
  return AdmissableTheta(inv_a, S.theta().scale(), std::move(ck));
}

}  // namespace

DualTau::DualTau(const DualitySystem& S, const GFourier& g) : theta_(tau_theta(S, g)) {}

DualTau::DualTau(double alpha, double c, double value)
    : theta_(AdmissableTheta::constant(1.0 / alpha, std::pow(c, 1.0 / alpha), value)) {}

double tau_eval(const DualTau& tau, double x) { return eval_theta(tau.theta(), x); }

double varrho_eval(const DualTau& tau, double x) {
  return -(1.0 / tau.theta().alpha()) * eval_theta_prime(tau.theta(), x);
}

double m_periodic(const DualitySystem& S, double x) {
  if (!(x > 0.0)) throw std::domain_error("m_periodic: x must be positive");
  return zeta(S, x) / std::pow(x, S.alpha());
}

}  // namespace semifrac
