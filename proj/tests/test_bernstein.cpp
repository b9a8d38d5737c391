#include <doctest.h>

#include <cmath>
#include <random>

#include "semifrac/bernstein.hpp"

using namespace semifrac;

namespace {
const double kC0 = 1.0 / std::tgamma(0.25);
SelfSimilarBernstein default_B() { return SelfSimilarBernstein(AdmissableTheta::perturbed(0.75, 2.0, kC0, 0.05)); }
}  // namespace

TEST_CASE("stable case") {
  const SelfSimilarBernstein B(AdmissableTheta::stable(0.5));
  CHECK(eval_psi_tilde(B, 4.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(psi_tilde_deriv(B, 1, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(psi_tilde_deriv(B, 2, 1.0) == doctest::Approx(-0.25).epsilon(1e-14));
  for (double x : {-1.0, 0.0, 2.0}) CHECK(eval_gamma_fn(B, x) == doctest::Approx(1.0).epsilon(1e-14));
  const SignReport r = check_bernstein_signs(B, 12, default_sign_grid());
  CHECK(r.pass);
  CHECK(r.first_failing_order == 0);
  CHECK_THROWS_AS(eval_psi_tilde(B, 0.0), std::domain_error);
  CHECK_THROWS_AS(SelfSimilarBernstein(AdmissableTheta::stable(1.5)), std::invalid_argument);
}

TEST_CASE("perturbed psi against quadrature of the Levy integral") {
  const SelfSimilarBernstein B = default_B();
  const double xs[] = {0.01, 1.0, 10.0, 100.0};
  // tests/oracle/generate.py (mpmath quadrature, good to about 1e-12 on this oscillating integrand)
  const double ref[] = {0.031622803185439766687, 1.0000008910406165665, 5.6234081210074813008, 31.622806046916604151};
  for (int i = 0; i < 4; ++i) CHECK(eval_psi_tilde(B, xs[i]) == doctest::Approx(ref[i]).epsilon(1e-11));
  const QuadratureSpec spec;
  for (double x : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const double q = psi_tilde_quadrature(B, x, spec);
    CHECK(std::abs(eval_psi_tilde(B, x) - q) <= std::max(1e-8, 1e-6 * q));
  }
}

TEST_CASE("self-similarity, gamma function and reduction") {
  const SelfSimilarBernstein B = default_B();
  const double q = B.scale(), c = B.c();
  for (double x : {1e-9, 1e-3, 0.4, 1.0, 17.0, 1e5, 1e9}) {
    CHECK(std::abs(eval_psi_tilde(B, q * x) - c * eval_psi_tilde(B, x)) <= 1e-12 * c * eval_psi_tilde(B, x));
  }
  const double P = B.theta().period();
  for (double x : {-1.0, 0.0, 2.0}) {
    CHECK(eval_gamma_fn(B, x) == doctest::Approx(std::exp(0.75 * x) * eval_psi_tilde(B, std::exp(-x))).epsilon(1e-12));
    CHECK(eval_gamma_fn(B, x + P) == doctest::Approx(eval_gamma_fn(B, x)).epsilon(1e-14));
  }
}

TEST_CASE("derivatives against finite differences") {
  const SelfSimilarBernstein B = default_B();
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(std::log(0.05), std::log(50.0));
  for (int i = 0; i < 30; ++i) {
    const double x = std::exp(u(gen));
    const double h = 1e-5 * x;
    const double fd = (eval_psi_tilde(B, x + h) - eval_psi_tilde(B, x - h)) / (2 * h);
    CHECK(psi_tilde_deriv(B, 1, x) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("Bernstein sign scans") {
  std::vector<double> grid;
  for (int i = 0; i < 256; ++i) grid.push_back(0.1 * std::pow(100.0, i / 255.0));
  CHECK(check_bernstein_signs(default_B(), 8, grid).pass);
  CHECK(check_bernstein_signs(default_B(), 8, default_sign_grid()).pass);
  // ε = 0.5 breaks admissability; the scan finds it at order 11.
  const SelfSimilarBernstein bad(AdmissableTheta::perturbed(0.75, 2.0, kC0, 0.5));
  const SignReport r = check_bernstein_signs(bad, 12, default_sign_grid());
  CHECK_FALSE(r.pass);
  CHECK(r.first_failing_order == 11);
  CHECK(r.worst_violation < 0.0);
  CHECK_THROWS_AS(check_bernstein_signs(bad, 13, default_sign_grid()), std::invalid_argument);
}

TEST_CASE("products") {
  const double c0 = 1.0 / std::tgamma(0.75);
  const SelfSimilarBernstein s(AdmissableTheta::constant(0.25, 2.0, c0));
  const CompositionResult r = compose_product(s, s);
  CHECK(r.is_bernstein);
  CHECK(r.candidate_alpha == doctest::Approx(0.5));
  CHECK(r.d_coeffs[0].real() == doctest::Approx(c0 * c0 * std::pow(std::tgamma(0.75), 2) / std::tgamma(0.5)).epsilon(1e-13));
  CHECK(r.product.eval(9.0) == doctest::Approx(3.0).epsilon(1e-13));

  // Perturbed pair with a shared period c^{1/α} = 2^4.
  const SelfSimilarBernstein p1(AdmissableTheta::perturbed(0.25, 2.0, c0, 0.02));
  const SelfSimilarBernstein p2(AdmissableTheta::perturbed(0.5, 4.0, 1.0 / std::tgamma(0.5), 0.02));
  const CompositionResult pr = compose_product(p1, p2);
  CHECK(pr.candidate_c == doctest::Approx(std::pow(2.0, 3.0)));
  for (double x : {0.3, 2.0, 40.0}) {
    CHECK(pr.product.eval(x) == doctest::Approx(eval_psi_tilde(p1, x) * eval_psi_tilde(p2, x)).epsilon(1e-13));
    CHECK(std::abs(pr.product.eval(16.0 * x) - pr.candidate_c * pr.product.eval(x)) <=
          1e-12 * pr.candidate_c * pr.product.eval(x));
  }
  CHECK(pr.signs.worst_margin.size() == 8);

  CHECK_THROWS_AS(compose_product(s, SelfSimilarBernstein(AdmissableTheta::constant(0.25, 3.0, c0))),
                  std::invalid_argument);
  CHECK_THROWS_AS(compose_product(default_B(), default_B()), std::invalid_argument);
}
