#include "semifrac/log_periodic_series.hpp"

#include <cmath>
#include <stdexcept>

namespace semifrac {

namespace {

constexpr double kReduceLow = 1e-8;
constexpr double kReduceHigh = 1e8;

}  // namespace

LogPeriodicSeries::LogPeriodicSeries(double beta, double step, double q, double value_factor,
                                     std::vector<cplx> a)
    : beta_(beta), step_(step), q_(q), value_factor_(value_factor), log_q_(std::log(q)), a_(std::move(a)) {
  if (a_.empty()) throw std::invalid_argument("LogPeriodicSeries: empty coefficient list");
  if (!(q > 1.0)) throw std::invalid_argument("LogPeriodicSeries: scale must exceed 1");
}

double LogPeriodicSeries::periodic_part(double u) const {
  // Reduce u modulo the period 2π/step before forming phases.
  const double period = 2.0 * kPi / step_;
  const double frac = u / period - std::floor(u / period);
  const double phase = 2.0 * kPi * frac;
  double sum = 0.0;
  for (std::size_t k = a_.size() - 1; k >= 1; --k) {
    sum += (a_[k] * std::polar(1.0, phase * static_cast<double>(k))).real();
  }
  return a_[0].real() + 2.0 * sum;
}

double LogPeriodicSeries::eval(double x) const { return deriv(0, x); }

double LogPeriodicSeries::deriv(int j, double x) const {
  if (!(x > 0.0)) throw std::domain_error("LogPeriodicSeries: argument must be positive");
  if (j < 0) throw std::invalid_argument("LogPeriodicSeries: negative derivative order");
  // F^{(j)}(q^n x) = (q^{β-j})^n F^{(j)}(x)
  double lx = std::log(x);
  double factor = 1.0;
  if (x < kReduceLow || x > kReduceHigh) {
    const int n = static_cast<int>(std::floor(lx / log_q_));
    lx -= n * log_q_;
    factor = std::pow(value_factor_ * std::pow(q_, -j), n);
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < a_.size(); ++k) {
    const cplx w(beta_, -step_ * static_cast<double>(k));
    cplx falling = 1.0;
    for (int m = 0; m < j; ++m) falling *= (w - static_cast<double>(m));
    const cplx term = a_[k] * falling * std::exp((w - static_cast<double>(j)) * lx);
    sum += (k == 0 ? 1.0 : 2.0) * term.real();
  }
  return factor * sum;
}

cplx LogPeriodicSeries::eval(cplx z) const {
  const double r = std::abs(z);
  if (!(r > 0.0)) throw std::domain_error("LogPeriodicSeries: zero argument");
  const double arg = std::arg(z);
  double lr = std::log(r);
  double factor = 1.0;
  if (r < kReduceLow || r > kReduceHigh) {
    const int n = static_cast<int>(std::floor(lr / log_q_));
    lr -= n * log_q_;
    factor = std::pow(value_factor_, n);
  }
  const cplx logz(lr, arg);
  cplx sum = a_[0] * std::exp(beta_ * logz);
  for (std::size_t k = 1; k < a_.size(); ++k) {
    const double s = step_ * static_cast<double>(k);
    sum += a_[k] * std::exp(cplx(beta_, -s) * logz);
    sum += std::conj(a_[k]) * std::exp(cplx(beta_, s) * logz);
  }
  return factor * sum;
}

}  // namespace semifrac
