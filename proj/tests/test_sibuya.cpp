#include <doctest.h>

#include <cmath>

#include "semifrac/sibuya.hpp"

using namespace semifrac;

namespace {
const double kC0 = 1.0 / std::tgamma(0.25);
SelfSimilarBernstein default_B() { return SelfSimilarBernstein(AdmissableTheta::perturbed(0.75, 2.0, kC0, 0.05)); }
}  // namespace

TEST_CASE("classical Sibuya reduction") {
  const SelfSimilarBernstein B(AdmissableTheta::stable(0.5));
  const SemiFracSibuya d = sibuya_pmf(B, 50);
  CHECK(d.p(1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d.p(2) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(d.p(3) == doctest::Approx(0.0625).epsilon(1e-14));
  double binom = 0.5;  // (-1)^{j+1} binom(α, j)
  for (int j = 1; j <= 50; ++j) {
    CHECK(std::abs(d.p(j) - binom) <= 1e-12 * binom);
    binom *= (j - 0.5) / (j + 1);
  }
  CHECK_THROWS_AS(sibuya_pmf(B, 0), std::invalid_argument);
}

TEST_CASE("perturbed pmf against Taylor coefficients of the pgf") {
  const SemiFracSibuya d = sibuya_pmf(default_B(), 10);
  // tests/oracle/generate.py: p_j = ∫ t^j/j! e^{-t} w(t) dt / ψ̃(1)
  CHECK(d.p(1) == doctest::Approx(0.74999713273292315274).epsilon(1e-12));
  CHECK(d.p(2) == doctest::Approx(0.093771308866610908415).epsilon(1e-12));
  CHECK(d.p(3) == doctest::Approx(0.039090123869045465087).epsilon(1e-12));
  const SelfSimilarBernstein B = default_B();
  double fact = 1.0;
  for (int j = 1; j <= 6; ++j) {
    fact *= j;
    const double taylor = (j % 2 ? 1.0 : -1.0) * psi_tilde_deriv(B, j, 1.0) / (fact * eval_psi_tilde(B, 1.0));
    CHECK(d.p(j) == doctest::Approx(taylor).epsilon(1e-12));
  }
}

TEST_CASE("normalization and pgf") {
  const SelfSimilarBernstein B = default_B();
  const SemiFracSibuya d = sibuya_pmf(B, 10000);
  double sum = 0.0;
  for (double p : d.probs) sum += p;
  CHECK(sum + d.tail_mass == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d.tail_mass >= 0.0);
  CHECK(d.tail_mass < 2.0 * std::pow(1e4, -0.75) * theta_max(B.theta()) / eval_psi_tilde(B, 1.0));
  CHECK(sibuya_pmf(B, 1000).tail_mass > d.tail_mass);
  for (double z : {0.0, 0.25, 0.5, 0.75}) {
    CHECK(std::abs(sibuya_pgf_truncated(d, z) - sibuya_pgf(B, z)) <= d.tail_mass * z + 1e-10);
  }
  CHECK(sibuya_pgf(B, 1.0) == 1.0);
  CHECK(sibuya_pgf(B, 0.0) == doctest::Approx(0.0));
  CHECK(sibuya_pgf(SelfSimilarBernstein(AdmissableTheta::stable(0.5)), 0.75) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(sibuya_pgf(B, 1.5), std::domain_error);

  const SemiFracSibuya a = sibuya_pmf_adaptive(B);
  CHECK(a.tail_mass < 1e-3);
  CHECK(a.clipped == 0);
}

TEST_CASE("inadmissable theta is rejected by the pmf") {
  const SelfSimilarBernstein bad(AdmissableTheta::perturbed(0.75, 2.0, kC0, 0.5));
  CHECK_THROWS_AS(sibuya_pmf(bad, 2000), NumericalError);
}

TEST_CASE("sampler") {
  const SelfSimilarBernstein B(AdmissableTheta::stable(0.5));
  const SemiFracSibuya d = sibuya_pmf(B, 400000);
  const std::vector<int> xs = sibuya_sample(d, 42, 100000);
  double ones = 0.0, pgf = 0.0, pgf2 = 0.0;
  for (int x : xs) {
    ones += x == 1;
    const double v = std::pow(0.5, x);
    pgf += v;
    pgf2 += v * v;
  }
  const double n = static_cast<double>(xs.size());
  CHECK(std::abs(ones / n - 0.5) < 0.01);
  const double mean = pgf / n, sd = std::sqrt((pgf2 / n - mean * mean) / n);
  CHECK(std::abs(mean - sibuya_pgf(B, 0.5)) < 3 * sd + d.tail_mass);
  CHECK(sibuya_sample(d, 42, 1000) == sibuya_sample(d, 42, 1000));
  CHECK(sibuya_sample(d, 42, 1000) != sibuya_sample(d, 43, 1000));
  CHECK_THROWS_AS(sibuya_sample(sibuya_pmf(B, 10), 1, 10), std::invalid_argument);
}

TEST_CASE("Grunwald-Letnikov approximation") {
  const SelfSimilarBernstein S(AdmissableTheta::stable(0.5));
  // Classical weights ψ̃(1/h) p_j = h^{-α} (-1)^{j+1} binom(α, j).
  const SemiFracSibuya d = sibuya_pmf(S, 20);
  const GLApproximation gl = make_gl(S, 3, 20);
  double binom = 0.5;
  for (int j = 1; j <= 20; ++j) {
    CHECK(gl.weight_scale * d.p(j) == doctest::Approx(std::pow(gl.h_m, -0.5) * binom).epsilon(1e-12));
    binom *= (j - 0.5) / (j + 1);
  }
  const SelfSimilarBernstein B = default_B();
  for (int m : {1, 5, 12}) {
    CHECK(make_gl(B, m, 1).weight_scale == doctest::Approx(std::pow(2.0, m) * eval_psi_tilde(B, 1.0)).epsilon(1e-12));
  }

  const TestFunction g = gaussian_bump();
  const QuadratureSpec spec;
  const double oracle = generator_oracle(B.theta(), g, 1.0, spec);
  // tests/oracle/generate.py
  CHECK(oracle == doctest::Approx(0.39588235990343120759).epsilon(1e-9));
  double prev = std::abs(gl_apply(B, g, 1.0, 4) - oracle);
  for (int m = 5; m <= 12; ++m) {
    const double err = std::abs(gl_apply(B, g, 1.0, m) - oracle);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev / std::abs(oracle) < 1e-2);

  // Stable comparison at α = 0.75 (θ ≡ 1/Γ(0.25)).
  const SelfSimilarBernstein S75(AdmissableTheta::stable(0.75));
  const double o75 = generator_oracle(S75.theta(), g, 1.0, spec);
  CHECK(std::abs(gl_apply(S75, g, 1.0, 12) - o75) < std::abs(gl_apply(S75, g, 1.0, 6) - o75));

  // Eigenfunction e^{x}: generator gives ψ̃(1) e^{x}.
  CHECK(generator_oracle(S.theta(), exp_function(1.0), 0.0, spec) == doctest::Approx(1.0).epsilon(1e-9));
  {
    const SemiFracSibuya long_tail = sibuya_pmf(S, 200000);
    const GLApproximation g6 = make_gl(S, 6, long_tail.J);
    const double h = g6.h_m;
    const double exact = std::sqrt(-std::expm1(-h) / h);  // ψ̃(1/h)(1 - G(e^{-h})) for α = 0.5
    CHECK(gl_apply(long_tail, g6, [](double x) { return std::exp(x); }, 0.0) == doctest::Approx(exact).epsilon(1e-9));
    CHECK(exact == doctest::Approx(1.0).epsilon(1e-3));
  }
  const TestFunction constant{"three", [](double) { return 3.0; }, [](double) { return 0.0; }, -INFINITY};
  CHECK(generator_oracle(S.theta(), constant, 0.4, spec) == 0.0);
  const TestFunction e = exp_function(0.5);
  const TestFunction sum{"sum", [&](double x) { return g.value(x) + e.value(x); },
                         [&](double x) { return g.derivative(x) + e.derivative(x); }, -INFINITY};
  const double lin = generator_oracle(B.theta(), sum, 1.0, spec);
  CHECK(lin == doctest::Approx(oracle + generator_oracle(B.theta(), e, 1.0, spec)).epsilon(1e-9));
  // ψ̃(a) e^{ax} for the exponential
  CHECK(generator_oracle(B.theta(), e, 1.0, spec) == doctest::Approx(eval_psi_tilde(B, 0.5) * std::exp(0.5)).epsilon(1e-9));
}
