// Prints one PASS/FAIL line per acceptance criterion; exit code 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "semifrac/cli/commands.hpp"
#include "semifrac/density.hpp"
#include "semifrac/sibuya.hpp"
#include "semifrac/sonine.hpp"
#include "semifrac/test_functions.hpp"

using namespace semifrac;
using namespace semifrac::cli;

namespace {

const std::string kConfigs = SEMIFRAC_CONFIG_DIR;
const QuadratureSpec kSpec;
const QuadratureSpec kLoose = QuadratureSpec{}.with_tolerances(1e-9, 1e-8);

AdmissableTheta config(const std::string& name) { return AdmissableTheta::load(kConfigs + "/" + name); }

std::vector<double> log_grid(double a, double b, int n) { return parse_grid("log:" + std::to_string(a) + ":" + std::to_string(b) + ":" + std::to_string(n)).points(); }

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Criterion = Verdict (*)();

Verdict ac1() {
  Verdict v;
  const SelfSimilarBernstein B(AdmissableTheta::stable(0.5));
  const SemiFracSibuya d = sibuya_pmf(B, 50);
  double binom = 0.5, worst = 0.0;
  for (int j = 1; j <= 50; ++j) {
    worst = std::max(worst, std::abs(d.p(j) - binom) / binom);
    binom *= (j - 0.5) / (j + 1);
  }
  double worst_w = 0.0;
  for (int m : {2, 5}) {
    const GLApproximation gl = make_gl(B, m, 50);
    binom = 0.5;
    for (int j = 1; j <= 50; ++j) {
      const double w = std::pow(gl.h_m, -0.5) * binom;
      worst_w = std::max(worst_w, std::abs(gl.weight_scale * d.p(j) - w) / w);
      binom *= (j - 0.5) / (j + 1);
    }
  }
  v.detail << "max rel pmf error " << worst << ", max rel GL weight error " << worst_w;
  v.require(worst <= 1e-12, "pmf");
  v.require(worst_w <= 1e-12, "weights");
  return v;
}

Verdict ac2() {
  Verdict v;
  const AdmissableTheta th = config("default.json");
  const SelfSimilarBernstein B(th);
  const int J = 10000;
  const SemiFracSibuya d = sibuya_pmf(B, J);
  double sum = 0.0;
  for (double p : d.probs) sum += p;
  const double bound = 2.0 * std::pow(J, -th.alpha()) * theta_max(th) / d.psi_one;
  double worst = 0.0;
  bool pgf_ok = true;
  for (double z : {0.0, 0.25, 0.5, 0.75}) {
    const double err = std::abs(sibuya_pgf_truncated(d, z) - sibuya_pgf(B, z));
    worst = std::max(worst, err);
    pgf_ok = pgf_ok && err <= d.tail_mass * z + 1e-10;
  }
  v.detail << "sum + tail - 1 = " << (sum + d.tail_mass - 1.0) << ", deficit " << d.tail_mass << " (bound " << bound
           << "), max pgf error " << worst;
  v.require(std::abs(sum + d.tail_mass - 1.0) < 1e-12, "normalization");
  v.require(d.tail_mass > 0.0 && d.tail_mass < bound, "deficit");
  v.require(pgf_ok, "pgf");
  return v;
}

Verdict ac3() {
  Verdict v;
  const SelfSimilarBernstein B(config("default.json"));
  double worst = 0.0, worst_scale = 0.0;
  for (double x : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const double s = eval_psi_tilde(B, x);
    worst = std::max(worst, std::abs(s - psi_tilde_quadrature(B, x, kSpec)) / s);
    worst_scale = std::max(worst_scale, std::abs(eval_psi_tilde(B, B.scale() * x) / (B.c() * s) - 1.0));
  }
  v.detail << "max rel series/quadrature " << worst << ", max rel scale invariance " << worst_scale;
  v.require(worst <= 1e-6, "oracle");
  v.require(worst_scale <= 1e-12, "scaling");
  return v;
}

Verdict ac4() {
  Verdict v;
  const AdmissableTheta th = config("default.json");
  const SelfSimilarBernstein B(th);
  const TestFunction f = gaussian_bump();
  const double x = 1.0;
  const double oracle = generator_oracle(th, f, x, kSpec);
  const double e6 = std::abs(gl_apply(B, f, x, 6) - oracle);
  const double e12 = std::abs(gl_apply(B, f, x, 12) - oracle);
  v.detail << "oracle " << oracle << ", |err| m=6 " << e6 << ", m=12 " << e12 << ", rel m=12 " << e12 / std::abs(oracle);
  v.require(e12 < e6, "monotone");
  v.require(e12 / std::abs(oracle) < 1e-2, "relative");
  return v;
}

Verdict ac5() {
  Verdict v;
  const SonineSystem stable{SelfSimilarBernstein(AdmissableTheta::stable(0.75))};
  const SonineSystem pert{SelfSimilarBernstein(config("default.json"))};
  const std::vector<double> ts = log_grid(0.01, 100.0, 20);
  double son_s = 0.0, son_p = 0.0;
  for (double t : ts) {
    son_s = std::max(son_s, std::abs(sonine_residual(stable, t, kSpec)));
    son_p = std::max(son_p, std::abs(sonine_residual(pert, t, kSpec)));
  }
  double lap = 0.0;
  for (double x : {0.5, 2.0, 20.0}) {
    lap = std::max(lap, std::abs(kernel_laplace(pert, x, kSpec) / pert.G(x) - 1.0));
    lap = std::max(lap, std::abs(rho_laplace(pert, x, kSpec) / pert.G_star(x) - 1.0));
  }
  const DualSelfSimilarityReport dual = check_dual_selfsimilarity(pert, {0.5, 1.0, 2.0, 4.0}, kSpec);
  const double c = pert.bernstein().c(), a = pert.alpha();
  const bool dual_params = std::abs(dual.dual_alpha - (1.0 - a)) < 1e-15 &&
                           std::abs(dual.d / std::pow(c, (1.0 - a) / a) - 1.0) < 1e-14;
  double ident = 0.0;
  for (const TestFunction& f : {x_exp_minus_x(), one_plus_x_squared()}) {
    for (double x : {0.5, 1.0, 2.0}) {
      ident = std::max(ident, std::abs(derivative_of_integral(pert, f, x, kLoose) - f.value(x)));
      ident = std::max(ident, std::abs(integral_of_derivative(pert, f, x, kLoose) - (f.value(x) - f.value(0.0))));
    }
  }
  v.detail << "Laplace rel " << lap << ", Sonine stable " << son_s << ", perturbed " << son_p << ", dual self-sim rel "
           << dual.max_rel_deviation << ", identity sup-error " << ident;
  v.require(lap <= 1e-6, "Laplace");
  v.require(son_s <= 1e-6, "Sonine stable");
  v.require(son_p <= 1e-3, "Sonine perturbed");
  v.require(dual.pass && dual.max_rel_deviation <= 1e-6 && dual_params, "dual self-similarity");
  v.require(ident <= 1e-3, "identities");
  return v;
}

Verdict ac6() {
  Verdict v;
  const std::vector<double> sq = inverse_derivatives({2.0, 2.0, 0.0, 0.0, 0.0, 0.0});
  double coef = 0.5, fdb = 0.0;
  for (int n = 1; n <= 6; ++n) {
    fdb = std::max(fdb, std::abs(sq[n - 1] - coef));
    coef *= 0.5 - n;
  }
  const DualitySystem S(config("alpha1.5.json"));
  bool signs = true;
  for (double x : {0.5, 1.0, 2.0, 5.0}) {
    for (int n = 1; n <= 6; ++n) signs = signs && (n % 2 ? 1.0 : -1.0) * xi_deriv(S, n, x) > 0.0;
  }
  double self = 0.0;
  for (double s : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    self = std::max(self, std::abs(xi(S, S.c() * s) / (S.theta().scale() * xi(S, s)) - 1.0));
  }
  v.detail << "Faa di Bruno max abs error " << fdb << ", signs " << (signs ? "alternate" : "WRONG")
           << ", xi self-similarity rel " << self;
  v.require(fdb <= 1e-10, "Faa di Bruno");
  v.require(signs, "signs");
  v.require(self <= 1e-8, "self-similarity");
  return v;
}

Verdict ac7() {
  Verdict v;
  const std::vector<double> xs = parse_grid("0.5:3:6").points(), ts = parse_grid("0.5:2:4").points();
  const CommandOutput space_p = cmd_duality(config("alpha1.5.json"), Equation::space, parse_grid("-2:3:6").points(), {0.5, 2.0});
  const CommandOutput space_s = cmd_duality(config("alpha1.5_stable.json"), Equation::space, parse_grid("-2:3:6").points(), {1.0});
  const CommandOutput time_p = cmd_duality(config("alpha1.5.json"), Equation::time, xs, ts);
  const CommandOutput time_s = cmd_duality(config("alpha1.5_stable.json"), Equation::time, xs, ts);

  const DualitySystem S(config("alpha1.5_stable.json"));
  const DualTau tau(S, g_fourier(S));
  const bool stable_tau = tau.theta().is_constant() && std::abs(tau.mean() * std::tgamma(1.0 - 1.0 / 1.5) - 1.0) < 1e-12 &&
                          varrho_eval(tau, 0.3) == 0.0;
  v.detail << space_p.summary << "; stable " << space_s.summary << "; " << time_p.summary << "; stable " << time_s.summary
           << "; stable tau = 1/Gamma(1-1/alpha): " << (stable_tau ? "yes" : "no");
  v.require(space_p.pass && space_s.pass, "space equation");
  v.require(time_p.pass && time_s.pass, "duality");
  v.require(stable_tau, "stable tau");
  return v;
}

Verdict ac8() {
  Verdict v;
  for (const char* name : {"alpha1.5.json", "alpha1.5_stable.json"}) {
    const DualitySystem S(config(name));
    const DensityEvaluator E(exponent_of(S));
    const NormalizationReport n = density_normalization(S, E, 1.0);
    std::vector<double> xs = parse_grid("-15:10:251").points();
    const SelfConvergenceReport sc = density_self_convergence(exponent_of(S), 1.0, xs);
    v.detail << name << ": total - 1 = " << n.total - 1.0 << ", TV " << sc.total_variation << "; ";
    v.require(std::abs(n.total - 1.0) <= 1e-6, std::string(name) + " normalization");
    v.require(sc.total_variation < 1e-6, std::string(name) + " self-convergence");
  }
  return v;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Verdict ac9() {
  Verdict v;
  const auto dir = std::filesystem::temp_directory_path() / ("semifrac_ac9_" + std::to_string(std::rand()));
  std::filesystem::create_directories(dir);
  const std::string cli = SEMIFRAC_CLI;
  const std::string def = " --config " + kConfigs + "/default.json";
  const std::string a15 = " --config " + kConfigs + "/alpha1.5.json";
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"check", "check-theta" + def},
      {"bernstein", "bernstein" + def},
      {"pmf", "sibuya --J 200" + def},
      {"sample42", "sibuya --n 2000 --seed 42" + def},
      {"sample43", "sibuya --n 2000 --seed 43" + def},
      {"glderiv", "glderiv --function gaussian --m 2:8" + def},
      {"sonine", "sonine --t log:0.1:10:3" + def},
      {"density", "density --grid -5:5:21" + a15},
      {"duality", "duality --equation space --grid -1:1:3" + a15},
  };
  int compared = 0;
  for (const auto& [name, args] : runs) {
    std::string out[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto path = dir / (name + "_" + std::to_string(rep) + ".out");
      const std::string cmd = cli + " " + args + " --out " + path.string() + " 2>/dev/null";
      const int rc = std::system(cmd.c_str());
      if (rc != 0) v.require(false, name + " exit status");
      out[rep] = slurp(path);
    }
    v.require(!out[0].empty() && out[0] == out[1], name + " differs between runs");
    ++compared;
  }
  const std::string s42 = slurp(dir / "sample42_0.out"), s43 = slurp(dir / "sample43_0.out");
  v.require(s42 != s43, "seeds 42 and 43 gave the same samples");
  v.detail << compared << " outputs byte-identical across two runs; distinct seeds differ: " << (s42 != s43 ? "yes" : "no");
  std::filesystem::remove_all(dir);
  return v;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "AC" << i + 1 << " " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail.str() << " (" << secs << " s)"
              << std::endl;
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
