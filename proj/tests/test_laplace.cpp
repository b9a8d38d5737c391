#include <doctest.h>

#include <cmath>

#include "semifrac/bernstein.hpp"
#include "semifrac/laplace.hpp"

using namespace semifrac;

TEST_CASE("forward transform") {
  const QuadratureSpec s;
  CHECK(laplace_transform_numeric([](double) { return 1.0; }, 2.0, s) == doctest::Approx(0.5).epsilon(1e-12));
  const RealFunction f = [](double t) { return std::pow(t, -0.5) / std::tgamma(0.5); };
  CHECK(laplace_transform_numeric(f, 1.0, s.with_singularity(-0.5)) == doctest::Approx(1.0).epsilon(1e-10));
  // k(t) = t^{-α}θ(log t) transforms to ψ̃(x)/x.
  const AdmissableTheta th = AdmissableTheta::perturbed(0.75, 2.0, 1.0 / std::tgamma(0.25), 0.05);
  const SelfSimilarBernstein B(th);
  for (double x : {0.5, 2.0, 10.0}) {
    const double lt = laplace_transform_numeric([&](double t) { return levy_tail(th, t); }, x, s.with_singularity(-0.75));
    CHECK(lt == doctest::Approx(eval_psi_tilde(B, x) / x).epsilon(1e-8));
  }
}

TEST_CASE("inverse transform closed forms") {
  CHECK(inverse_laplace_numeric([](cplx s) { return 1.0 / s; }, 3.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(inverse_laplace_numeric([](cplx s) { return std::pow(s, -0.5); }, 1.0) ==
        doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-10));
  const HyperbolicContour c(48);
  CHECK(c.predicted_error() < 1e-10);
  CHECK(c.n_nodes() == 48);
}

TEST_CASE("inverse of forward transform round-trips smooth functions") {
  for (double t : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    CHECK(inverse_laplace_numeric([](cplx s) { return 1.0 / (s + 1.0); }, t) ==
          doctest::Approx(std::exp(-t)).epsilon(1e-6).scale(1e-3));
    CHECK(std::abs(inverse_laplace_numeric([](cplx s) { return 1.0 / ((s + 1.0) * (s + 1.0)); }, t) -
                   t * std::exp(-t)) < 1e-8);
  }
}

TEST_CASE("perturbed 1/psi inversion round-trips through the forward transform") {
  const AdmissableTheta th = AdmissableTheta::perturbed(0.75, 2.0, 1.0 / std::tgamma(0.25), 0.05);
  const SelfSimilarBernstein B(th);
  const HyperbolicContour contour(96, 0.3);
  const ComplexFunction F = [&](cplx s) { return 1.0 / eval_psi_tilde(B, s); };
  // tests/oracle/generate.py: Talbot inversion in mpmath
  CHECK(contour.invert(F, 1.0) == doctest::Approx(0.80849168704294657084).epsilon(1e-8));
  CHECK(contour.invert(F, 0.3) == doctest::Approx(1.1154270547190623681).epsilon(1e-8));
  const RealFunction rho = [&](double t) { return contour.invert(F, t); };
  const double x = 2.0;
  const double back = laplace_transform_numeric(rho, x, QuadratureSpec{}.with_tolerances(1e-9, 1e-7).with_singularity(-0.25));
  CHECK(back == doctest::Approx(1.0 / eval_psi_tilde(B, x)).epsilon(1e-4));
}

TEST_CASE("contour rejects non-finite transforms") {
  CHECK_THROWS_AS(inverse_laplace_numeric([](cplx) { return cplx(NAN, 0.0); }, 1.0), NumericalError);
}
