#include "semifrac/sibuya.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "semifrac/summation.hpp"

namespace semifrac {

namespace {

constexpr double kClip = -1e-12;
constexpr double kReject = -1e-8;

// Streams p_1, p_2, ... from the signed binomial recursion
// s_j = (-1)^{j-1} binom(z, j), s_1 = z, s_j = s_{j-1} (j-1-z)/j.
class PmfStream {
public:
  explicit PmfStream(const SelfSimilarBernstein& B)
      : w_(B.weights()), psi1_(eval_psi_tilde(B, 1.0)) {
    const double step = B.theta().tilde_c();
    for (std::size_t k = 0; k < w_.size(); ++k) {
      z_.emplace_back(B.alpha(), -step * static_cast<double>(k));
      s_.emplace_back(1.0, 0.0);
    }
  }

  double next() {
    ++j_;
    double sum = 0.0;
    for (std::size_t k = 0; k < z_.size(); ++k) {
      if (j_ == 1) {
        s_[k] = z_[k];
      } else {
        s_[k] *= (static_cast<double>(j_ - 1) - z_[k]) / static_cast<double>(j_);
      }
      sum += (k == 0 ? 1.0 : 2.0) * (w_[k] * s_[k]).real();
    }
    return sum / psi1_;
  }

  double psi1() const { return psi1_; }

private:
  std::vector<cplx> w_, z_, s_;
  double psi1_;
  int j_ = 0;
};

void push_prob(SemiFracSibuya& d, double raw, NeumaierSum& total) {
  if (raw < 0.0) {
    d.worst_raw = std::min(d.worst_raw, raw);
    if (raw < kReject) {
      throw NumericalError("sibuya_pmf: p_" + std::to_string(d.probs.size() + 1) + " = " +
                           std::to_string(raw) + " is negative; theta does not yield a Bernstein function");
    }
    if (raw >= kClip) {
      ++d.clipped;
      raw = 0.0;
    }
  }
  d.probs.push_back(raw);
  total.add(raw);
}

SemiFracSibuya start(const SelfSimilarBernstein& B, double psi1) {
  SemiFracSibuya d;
  d.alpha = B.alpha();
  d.c = B.c();
  d.psi_one = psi1;
  return d;
}

}  // namespace

SemiFracSibuya sibuya_pmf(const SelfSimilarBernstein& B, int J) {
  if (J < 1) throw std::invalid_argument("sibuya_pmf: J must be >= 1");
  PmfStream stream(B);
  SemiFracSibuya d = start(B, stream.psi1());
  d.probs.reserve(J);
  NeumaierSum total;
  for (int j = 1; j <= J; ++j) push_prob(d, stream.next(), total);
  d.J = J;
  d.tail_mass = 1.0 - total.value();
  return d;
}

SemiFracSibuya sibuya_pmf_adaptive(const SelfSimilarBernstein& B, double target, int J_max) {
  if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("sibuya_pmf_adaptive: target must lie in (0,1)");
  PmfStream stream(B);
  SemiFracSibuya d = start(B, stream.psi1());
  NeumaierSum total;
  for (int j = 1; j <= J_max; ++j) {
    push_prob(d, stream.next(), total);
    if (1.0 - total.value() < target) {
      d.J = j;
      d.tail_mass = 1.0 - total.value();
      return d;
    }
  }
  throw NumericalError("sibuya_pmf_adaptive: tail mass above target at J_max = " + std::to_string(J_max));
}

double sibuya_pgf(const SelfSimilarBernstein& B, double z) {
  if (!(z >= -1.0 && z <= 1.0)) throw std::domain_error("sibuya_pgf: z must lie in [-1, 1]");
  if (z == 1.0) return 1.0;
  return 1.0 - eval_psi_tilde(B, 1.0 - z) / eval_psi_tilde(B, 1.0);
}

double sibuya_pgf_truncated(const SemiFracSibuya& dist, double z) {
  NeumaierSum s;
  double zj = 1.0;
  for (double p : dist.probs) {
    zj *= z;
    s.add(p * zj);
  }
  return s.value();
}

std::vector<int> sibuya_sample(const SemiFracSibuya& dist, std::uint64_t seed, int n) {
  if (n < 0) throw std::invalid_argument("sibuya_sample: n must be non-negative");
  if (!(dist.tail_mass < 0.05)) {
    throw std::invalid_argument("sibuya_sample: tail mass " + std::to_string(dist.tail_mass) +
                                " too large (need < 0.05); increase J");
  }
  std::vector<double> cdf(dist.probs.size());
  NeumaierSum acc;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    acc.add(dist.probs[i]);
    cdf[i] = acc.value();
  }
  const double covered = cdf.empty() ? 0.0 : cdf.back();
  std::mt19937_64 gen(seed);
  std::vector<int> out;
  out.reserve(n);
  while (static_cast<int>(out.size()) < n) {
    // 53-bit uniform in [0, 1), independent of the standard library's distributions.
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    if (u >= covered) continue;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    out.push_back(static_cast<int>(it - cdf.begin()) + 1);
  }
  return out;
}

GLApproximation make_gl(const SelfSimilarBernstein& B, int m, int J) {
  GLApproximation gl;
  gl.m = m;
  gl.h_m = std::pow(B.c(), -static_cast<double>(m) / B.alpha());
  gl.weight_scale = eval_psi_tilde(B, 1.0 / gl.h_m);
  gl.J = J;
  return gl;
}

double gl_apply(const SemiFracSibuya& dist, const GLApproximation& gl, const RealFunction& f, double x) {
  const int J = std::min(gl.J, dist.J);
  NeumaierSum s;
  s.add(f(x));
  for (int j = 1; j <= J; ++j) s.add(-dist.probs[j - 1] * f(x - j * gl.h_m));
  return gl.weight_scale * s.value();
}

int gl_truncation(const SelfSimilarBernstein& B, const TestFunction& f, double x, int m) {
  const double h = std::pow(B.c(), -static_cast<double>(m) / B.alpha());
  double J = 1.0;
  if (std::isfinite(f.lower_support)) J = std::ceil((x - f.lower_support) / h);
  if (J > kDefaultMaxJ) {
    throw NumericalError("gl_apply: support window needs J = " + std::to_string(J) + " > 2^24 terms");
  }
  return std::max(1, static_cast<int>(J));
}

double gl_apply(const SelfSimilarBernstein& B, const TestFunction& f, double x, int m) {
  const int J_support = gl_truncation(B, f, x, m);
  SemiFracSibuya dist = sibuya_pmf_adaptive(B);
  if (dist.J < J_support) dist = sibuya_pmf(B, J_support);
  return gl_apply(dist, make_gl(B, m, dist.J), f.value, x);
}

double generator_oracle(const AdmissableTheta& theta, const TestFunction& f, double x, const QuadratureSpec& spec) {
  if (!(theta.alpha() < 1.0)) throw std::invalid_argument("generator_oracle: alpha must lie in (0,1)");
  // integrated by parts: no cancellation in f(x) - f(x-y) near y = 0
  const RealFunction g = [&](double y) { return f.derivative(x - y) * levy_tail(theta, y); };
  const double head = integrate(g, 0.0, 1.0, spec.with_singularity(-theta.alpha()));
  const double rest = integrate(g, 1.0, kInfinity, spec.with_singularity(0.0));
  return head + rest;
}

}  // namespace semifrac
