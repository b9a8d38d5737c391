#include "semifrac/special_functions.hpp"

#include <array>
#include <cmath>
#include <string>

namespace semifrac {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

// Lanczos log Γ, valid for Re z >= 0.5.
cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx series = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    series += kLanczosCoeffs[i] / (z + static_cast<double>(i));
  }
  const cplx t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

// log sin(πz) without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
  const double y = z.imag();
  if (std::abs(y) < 10.0) return std::log(std::sin(kPi * z));
  const cplx i(0.0, 1.0);
  if (y > 0.0) {
    // sin(πz) = e^{-iπz} (1 - e^{2iπz}) / (-2i)
    return -i * kPi * z + std::log(1.0 - std::exp(2.0 * i * kPi * z)) - std::log(cplx(0.0, -2.0));
  }
  // sin(πz) = e^{iπz} (1 - e^{-2iπz}) / (2i)
  return i * kPi * z + std::log(1.0 - std::exp(-2.0 * i * kPi * z)) - std::log(cplx(0.0, 2.0));
}

void check_pole(cplx z) {
  if (z.real() > 0.5) return;
  const double nearest = std::round(z.real());
  if (nearest <= 0.0 && std::abs(z - cplx(nearest, 0.0)) <= 1e-12) {
    throw std::domain_error("gamma_complex: argument within 1e-12 of the pole at " +
                            std::to_string(static_cast<long>(nearest)));
  }
}

}  // namespace

cplx log_gamma_complex(cplx z) {
  check_pole(z);
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  // Γ(z) Γ(1-z) = π / sin(πz)
  return std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

cplx gamma_complex(cplx z) {
  check_pole(z);
  if (z.imag() == 0.0 && z.real() >= 0.5 && z.real() < 171.0) {
    return {std::tgamma(z.real()), 0.0};
  }
  return std::exp(log_gamma_complex(z));
}

cplx gen_binomial(cplx z, int j) {
  if (j < 0) throw std::invalid_argument("gen_binomial: negative order");
  cplx b = 1.0;
  for (int m = 1; m <= j; ++m) b *= (z - static_cast<double>(m - 1)) / static_cast<double>(m);
  return b;
}

std::vector<cplx> gen_binomial_table(cplx z, int j_max) {
  if (j_max < 0) throw std::invalid_argument("gen_binomial_table: negative order");
  std::vector<cplx> out(static_cast<std::size_t>(j_max) + 1);
  out[0] = 1.0;
  for (int m = 1; m <= j_max; ++m) {
    out[m] = out[m - 1] * (z - static_cast<double>(m - 1)) / static_cast<double>(m);
  }
  return out;
}

cplx complex_power(double x, cplx w) {
  if (!(x > 0.0)) throw std::domain_error("complex_power: base must be positive");
  if (x == 1.0) return 1.0;
  return std::exp(w * std::log(x));
}

cplx principal_power(cplx z, cplx w) {
  if (z.imag() == 0.0 && z.real() > 0.0) return complex_power(z.real(), w);
  if (z == cplx(0.0, 0.0)) throw std::domain_error("principal_power: zero base");
  return std::exp(w * std::log(z));
}

}  // namespace semifrac
