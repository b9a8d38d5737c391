#include "semifrac/sonine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semifrac {

namespace {

constexpr double kRhoLow = 1e-4;
constexpr double kRhoHigh = 1e4;
constexpr int kFixedLevel = 8;

// Largest φ ≤ π with Σ_{k≥1} |ω_k| (e^{k c̃ φ} + 1) ≤ ω_0 / 2, so that ψ̃ has
// no zeros in |arg s| ≤ φ.
double zero_free_sector(const SelfSimilarBernstein& B) {
  const auto& w = B.weights();
  const double step = B.theta().tilde_c();
  auto excess = [&](double phi) {
    double s = 0.0;
    for (std::size_t k = 1; k < w.size(); ++k) s += std::abs(w[k]) * (std::exp(k * step * phi) + 1.0);
    return s - 0.5 * w[0].real();
  };
  if (excess(kPi) <= 0.0) return kPi;
  if (excess(0.0) > 0.0) return 0.0;
  double lo = 0.0, hi = kPi;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) <= 0.0 ? lo : hi) = mid;
  }
  return lo;
}

HyperbolicContour make_contour(double sector, int n_nodes) {
  const double beta = std::min(HyperbolicContour::kDefaultBeta, sector - kPi / 2 - 0.1);
  if (!(beta >= 0.05)) {
    throw NumericalError("SonineSystem: perturbation too large for a certified inversion contour");
  }
  if (n_nodes > 0) return HyperbolicContour(n_nodes, beta);
  for (int n : {48, 64, 96, 128, 192, 256}) {
    HyperbolicContour c(n, beta);
    if (c.predicted_error() < 1e-12 || n == 256) return c;
  }
  return HyperbolicContour(256, beta);
}

// ∫₀^x a(x-v) b(v) dv split at x/2; a and b have power orders sa, sb at 0.
double convolve(const RealFunction& a, double sa, const RealFunction& b, double sb, double x,
                const QuadratureSpec& spec) {
  if (!(x > 0.0)) throw std::domain_error("convolution: x must be positive");
  const RealFunction left = [&](double v) { return a(x - v) * b(v); };
  const RealFunction right = [&](double u) { return a(u) * b(x - u); };
  return integrate(left, 0.0, 0.5 * x, spec.with_singularity(std::min(sb, 0.0))) +
         integrate(right, 0.0, 0.5 * x, spec.with_singularity(std::min(sa, 0.0)));
}

QuadratureSpec inner_spec(const QuadratureSpec& spec) {
  return spec.with_tolerances(spec.abs_tol * 0.1, spec.rel_tol * 0.1);
}

}  // namespace

SonineSystem::SonineSystem(SelfSimilarBernstein B, int n_nodes, int table_size)
    : B_(std::move(B)), sector_(zero_free_sector(B_)), contour_(make_contour(sector_, n_nodes)) {
  if (table_size == 0) return;
  if (table_size < 8 || table_size % 2 != 0) {
    throw std::invalid_argument("SonineSystem: table_size must be an even number >= 8");
  }
  const int M = table_size;
  const double P = B_.theta().period();
  std::vector<double> samples(M);
  for (int j = 0; j < M; ++j) {
    const double u = P * j / M;
    samples[j] = rho_density_direct(std::exp(u)) * std::exp((1.0 - alpha()) * u);
  }
  table_.assign(M / 2 + 1, cplx(0.0, 0.0));
  for (int k = 0; k <= M / 2; ++k) {
    cplx s = 0.0;
    for (int j = 0; j < M; ++j) s += samples[j] * std::polar(1.0, -2.0 * kPi * static_cast<double>(j) * k / M);
    table_[k] = s / static_cast<double>(M);
  }
  table_[0] = cplx(table_[0].real(), 0.0);
  for (int k = M / 4; k <= M / 2; ++k) {
    table_error_ = std::max(table_error_, std::abs(table_[k]) / std::abs(table_[0]));
  }
  // Harmonics below rounding level are dropped; the Nyquist term goes with them.
  std::size_t keep = table_.size();
  while (keep > 1 && std::abs(table_[keep - 1]) < 1e-17 * std::abs(table_[0])) --keep;
  nyquist_ = keep == table_.size();
  table_.resize(keep);
}

double SonineSystem::kernel(double y) const {
  if (!(y > 0.0)) throw std::domain_error("kernel_eval: y must be positive");
  return std::pow(y, -alpha()) * eval_theta(B_.theta(), std::log(y));
}

double SonineSystem::G(double x) const { return eval_psi_tilde(B_, x) / x; }

double SonineSystem::G_star(double x) const { return 1.0 / eval_psi_tilde(B_, x); }

double SonineSystem::rho_density(double y) const {
  if (table_.empty()) return rho_density_direct(y);
  if (!(y > 0.0)) throw std::domain_error("rho_density: y must be positive");
  const double u = std::log(y);
  const double P = B_.theta().period();
  const double phase = 2.0 * kPi * (u / P - std::floor(u / P));
  const int last = static_cast<int>(table_.size()) - 1;
  double sum = table_[0].real();
  for (int k = 1; k <= last; ++k) {
    const double weight = (nyquist_ && k == last) ? 1.0 : 2.0;
    sum += weight * (table_[k] * std::polar(1.0, phase * k)).real();
  }
  return std::exp((alpha() - 1.0) * u) * sum;
}

double SonineSystem::rho_density_direct(double y) const {
  if (!(y > 0.0)) throw std::domain_error("rho_density: y must be positive");
  const double q = B_.scale();
  const double ratio = B_.c() / q;  // ρ(q s) = ratio · ρ(s)
  int n = 0;
  if (y < kRhoLow || y > kRhoHigh) {
    n = static_cast<int>(std::floor(std::log(y) / std::log(q)));
    y /= std::pow(q, n);
  }
  const double v = contour_.invert([this](cplx s) { return 1.0 / eval_psi_tilde(B_, s); }, y);
  return n == 0 ? v : v * std::pow(ratio, n);
}

double kernel_eval(const SonineSystem& S, double y) { return S.kernel(y); }

double caputo_derivative(const SonineSystem& S, const TestFunction& f, double x, const QuadratureSpec& spec) {
  const RealFunction k = [&](double y) { return S.kernel(y); };
  return convolve(k, -S.alpha(), f.derivative, 0.0, x, spec);
}

double rl_derivative(const SonineSystem& S, const RealFunction& f, double x) {
  if (!(x > 0.0)) throw std::domain_error("rl_derivative: x must be positive");
  auto conv = [&](double X) {
    const RealFunction left = [&](double v) { return S.kernel(X - v) * f(v); };
    const RealFunction right = [&](double u) { return S.kernel(u) * f(X - u); };
    return tanh_sinh_fixed(left, 0.5 * X, kFixedLevel, 0.0) +
           tanh_sinh_fixed(right, 0.5 * X, kFixedLevel, -S.alpha());
  };
  const double h = 1e-4 * std::max(1.0, x);
  if (!(x - h > 0.0)) throw std::domain_error("rl_derivative: x too close to 0 for the difference step");
  return (conv(x + h) - conv(x - h)) / (2.0 * h);
}

double semifrac_integral(const SonineSystem& S, const RealFunction& f, double x, const QuadratureSpec& spec) {
  const RealFunction rho = [&](double y) { return S.rho_density(y); };
  return convolve(f, 0.0, rho, S.alpha() - 1.0, x, spec);
}

double semifrac_integral_derivative(const SonineSystem& S, const TestFunction& f, double x,
                                    const QuadratureSpec& spec) {
  const double f0 = f.value(0.0);
  const RealFunction rho = [&](double y) { return S.rho_density(y); };
  const double body = convolve(f.derivative, 0.0, rho, S.alpha() - 1.0, x, spec);
  return (f0 == 0.0 ? 0.0 : f0 * S.rho_density(x)) + body;
}

double derivative_of_integral(const SonineSystem& S, const TestFunction& f, double x, const QuadratureSpec& spec) {
  const QuadratureSpec inner = inner_spec(spec);
  const RealFunction k = [&](double y) { return S.kernel(y); };
  const RealFunction dI = [&](double v) { return semifrac_integral_derivative(S, f, v, inner); };
  return convolve(k, -S.alpha(), dI, S.alpha() - 1.0, x, spec);
}

double integral_of_derivative(const SonineSystem& S, const TestFunction& f, double x, const QuadratureSpec& spec) {
  const QuadratureSpec inner = inner_spec(spec);
  const RealFunction rho = [&](double y) { return S.rho_density(y); };
  const RealFunction D = [&](double v) { return caputo_derivative(S, f, v, inner); };
  return convolve(rho, S.alpha() - 1.0, D, 0.0, x, spec);
}

double sonine_residual(const SonineSystem& S, double t, const QuadratureSpec& spec) {
  const RealFunction k = [&](double y) { return S.kernel(y); };
  const RealFunction rho = [&](double y) { return S.rho_density(y); };
  return convolve(k, -S.alpha(), rho, S.alpha() - 1.0, t, spec) - 1.0;
}

double rho_laplace(const SonineSystem& S, double x, const QuadratureSpec& spec) {
  const RealFunction rho = [&](double y) { return S.rho_density(y); };
  return laplace_transform_numeric(rho, x, spec.with_singularity(S.alpha() - 1.0));
}

double kernel_laplace(const SonineSystem& S, double x, const QuadratureSpec& spec) {
  const RealFunction k = [&](double y) { return S.kernel(y); };
  return laplace_transform_numeric(k, x, spec.with_singularity(-S.alpha()));
}

double g_i_star(const SonineSystem& S, double x, const QuadratureSpec& spec) {
  if (!(x > 0.0)) throw std::domain_error("g_i_star: x must be positive");
  const RealFunction g = [&](double y) { return S.G_star(y); };
  return integrate(g, 0.0, x, spec.with_singularity(-S.alpha()));
}

DualSelfSimilarityReport check_dual_selfsimilarity(const SonineSystem& S, const std::vector<double>& grid,
                                                   const QuadratureSpec& spec) {
  if (grid.size() < 3) throw std::invalid_argument("check_dual_selfsimilarity: need at least 3 grid points");
  DualSelfSimilarityReport r;
  const double a = S.alpha();
  r.dual_alpha = 1.0 - a;
  r.d = std::pow(S.bernstein().c(), (1.0 - a) / a);
  const double stretch = std::pow(r.d, 1.0 / (1.0 - a));
  std::vector<double> xs(grid);
  std::sort(xs.begin(), xs.end());
  std::vector<double> vals;
  for (double x : xs) {
    const double g = g_i_star(S, x, spec);
    const double gs = g_i_star(S, stretch * x, spec);
    r.max_rel_deviation = std::max(r.max_rel_deviation, std::abs(gs - r.d * g) / (r.d * g));
    vals.push_back(g);
  }
  r.increasing = true;
  r.concave = true;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(vals[i] > vals[i - 1])) r.increasing = false;
    if (i + 1 < xs.size()) {
      const double s1 = (vals[i] - vals[i - 1]) / (xs[i] - xs[i - 1]);
      const double s2 = (vals[i + 1] - vals[i]) / (xs[i + 1] - xs[i]);
      if (s2 > s1 * (1.0 + 1e-9)) r.concave = false;
    }
  }
  r.pass = r.max_rel_deviation <= 1e-6 && r.increasing && r.concave;
  return r;
}

double mu_tail(const SonineSystem& S, double t, const QuadratureSpec& spec) {
  if (!(t > 0.0)) throw std::domain_error("mu_tail: t must be positive");
  const double q = S.bernstein().scale();
  const double ratio = S.bernstein().c() / q;
  const RealFunction g = [&](double s) { return S.rho_density(s) / s; };
  const double one_period = integrate(g, t, q * t, spec.with_singularity(0.0));
  return one_period / (1.0 - ratio);
}

double sigma_eval(const SonineSystem& S, double t, const QuadratureSpec& spec) {
  return std::pow(t, 1.0 - S.alpha()) * mu_tail(S, t, spec);
}

double kstar_eval(const SonineSystem& S, double t, const QuadratureSpec& spec) {
  if (!(t > 0.0)) throw std::domain_error("kstar_eval: t must be positive");
  const double a = S.alpha();
  const double u = std::log(t);
  const double h = S.bernstein().theta().period() / 512.0;
  const double sp = sigma_eval(S, std::exp(u + h), spec);
  const double sm = sigma_eval(S, std::exp(u - h), spec);
  const double s0 = sigma_eval(S, t, spec);
  return std::pow(t, a - 1.0) * ((1.0 - a) * s0 - (sp - sm) / (2.0 * h));
}

}  // namespace semifrac
