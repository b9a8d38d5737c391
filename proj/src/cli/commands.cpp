#include "semifrac/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "semifrac/bernstein.hpp"
#include "semifrac/density.hpp"
#include "semifrac/duality.hpp"
#include "semifrac/parallel.hpp"
#include "semifrac/sibuya.hpp"
#include "semifrac/sonine.hpp"
#include "semifrac/test_functions.hpp"

namespace semifrac::cli {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double v) { return format_double(v); }

void require_alpha_below_one(const AdmissableTheta& theta, const char* cmd) {
  if (!(theta.alpha() < 1.0)) throw std::invalid_argument(std::string(cmd) + ": config alpha must lie in (0,1)");
}

void require_alpha_above_one(const AdmissableTheta& theta, const char* cmd) {
  if (!(theta.alpha() > 1.0)) throw std::invalid_argument(std::string(cmd) + ": config alpha must lie in (1,2)");
}

// Quadrature tolerances for the nested Sonine identities.
QuadratureSpec identity_spec() { return QuadratureSpec{}.with_tolerances(1e-9, 1e-8); }

}  // namespace

CommandOutput cmd_check_theta(const AdmissableTheta& theta, int grid_points) {
  const ValidityReport r = check_admissable(theta, grid_points);
  json j;
  j["alpha"] = theta.alpha();
  j["c"] = theta.c();
  j["grid_points"] = r.grid_points;
  j["positive"] = r.positive;
  j["monotone"] = r.monotone;
  j["periodic"] = r.periodic;
  j["min_theta"] = r.min_theta;
  j["min_margin"] = r.min_margin;
  j["periodicity_error"] = r.periodicity_error;
  j["ok"] = r.ok();
  CommandOutput out;
  out.text = j.dump(2) + "\n";
  out.pass = r.ok();
  out.summary = std::string("check-theta: ") + (r.ok() ? "admissable" : "NOT admissable") +
                " (min theta " + fmt(r.min_theta) + ", min alpha*theta - theta' " + fmt(r.min_margin) + ")";
  return out;
}

CommandOutput cmd_bernstein(const AdmissableTheta& theta, const std::vector<double>& xs, double tol) {
  require_alpha_below_one(theta, "bernstein");
  if (!(tol > 0.0)) throw std::invalid_argument("bernstein: tol must be positive");
  const SelfSimilarBernstein B(theta);
  const QuadratureSpec spec;
  struct Row {
    double psi, oracle, ratio;
  };
  const auto rows = parallel_map<Row>(xs.size(), [&](std::size_t i) {
    const double x = xs[i];
    const double psi = eval_psi_tilde(B, x);
    return Row{psi, psi_tilde_quadrature(B, x, spec), eval_psi_tilde(B, B.scale() * x) / psi};
  });
  CsvTable csv({"x", "psi_tilde", "oracle", "rel_err", "scaling_ratio"});
  double worst = 0.0, worst_scale = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double rel = std::abs(rows[i].psi - rows[i].oracle) / std::abs(rows[i].oracle);
    worst = std::max(worst, rel);
    worst_scale = std::max(worst_scale, std::abs(rows[i].ratio / theta.c() - 1.0));
    csv.add_row({xs[i], rows[i].psi, rows[i].oracle, rel, rows[i].ratio});
  }
  CommandOutput out;
  out.text = csv.str();
  out.pass = worst <= tol && worst_scale <= 1e-12;
  out.summary = "bernstein: max rel_err " + fmt(worst) + " (tol " + fmt(tol) + "), max scaling deviation " +
                fmt(worst_scale);
  return out;
}

CommandOutput cmd_sibuya_pmf(const AdmissableTheta& theta, int J) {
  require_alpha_below_one(theta, "sibuya");
  if (J < 0) throw std::invalid_argument("sibuya: J must be non-negative");
  const SelfSimilarBernstein B(theta);
  const SemiFracSibuya d = J == 0 ? sibuya_pmf_adaptive(B) : sibuya_pmf(B, J);
  CsvTable csv({"j", "p_j"});
  for (int j = 1; j <= d.J; ++j) csv.add_row({std::to_string(j), fmt(d.p(j))});
  CommandOutput out;
  out.text = csv.str();
  out.pass = J != 0 || d.tail_mass < 1e-3;
  out.summary = "sibuya: J " + std::to_string(d.J) + ", tail mass " + fmt(d.tail_mass) + ", clipped " +
                std::to_string(d.clipped) + ", worst raw " + fmt(d.worst_raw);
  return out;
}

CommandOutput cmd_sibuya_sample(const AdmissableTheta& theta, int n, std::uint64_t seed) {
  require_alpha_below_one(theta, "sibuya");
  if (n < 1) throw std::invalid_argument("sibuya: sample count must be positive");
  const SelfSimilarBernstein B(theta);
  const SemiFracSibuya d = sibuya_pmf_adaptive(B);
  const std::vector<int> xs = sibuya_sample(d, seed, n);
  CsvTable csv({"i", "sample"});
  for (std::size_t i = 0; i < xs.size(); ++i) csv.add_row({std::to_string(i + 1), std::to_string(xs[i])});
  CommandOutput out;
  out.text = csv.str();
  out.summary = "sibuya: " + std::to_string(n) + " samples, seed " + std::to_string(seed) + ", J " +
                std::to_string(d.J);
  return out;
}

CommandOutput cmd_glderiv(const AdmissableTheta& theta, const std::string& function, double x, int m_min,
                          int m_max) {
  require_alpha_below_one(theta, "glderiv");
  if (m_min < 0 || m_min > m_max) throw std::invalid_argument("glderiv: need 0 <= m_min <= m_max");
  const TestFunction f = test_function_by_name(function);
  const SelfSimilarBernstein B(theta);
  const double oracle = generator_oracle(theta, f, x, QuadratureSpec{});
  const int count = m_max - m_min + 1;
  struct Row {
    double h, J, approx;
  };
  const auto rows = parallel_map<Row>(static_cast<std::size_t>(count), [&](std::size_t i) {
    const int m = m_min + static_cast<int>(i);
    const int J_support = gl_truncation(B, f, x, m);
    SemiFracSibuya dist = sibuya_pmf_adaptive(B);
    if (dist.J < J_support) dist = sibuya_pmf(B, J_support);
    const GLApproximation gl = make_gl(B, m, dist.J);
    return Row{gl.h_m, static_cast<double>(gl.J), gl_apply(dist, gl, f.value, x)};
  });
  CsvTable csv({"m", "h_m", "J", "approx", "oracle", "abs_err"});
  std::vector<double> errs;
  for (int i = 0; i < count; ++i) {
    const double err = std::abs(rows[i].approx - oracle);
    errs.push_back(err);
    csv.add_row({std::to_string(m_min + i), fmt(rows[i].h), fmt(rows[i].J), fmt(rows[i].approx), fmt(oracle),
                 fmt(err)});
  }
  CommandOutput out;
  out.text = csv.str();
  out.pass = count == 1 || errs.back() < errs.front();
  out.summary = "glderiv: " + f.name + " at x=" + fmt(x) + ", error " + fmt(errs.front()) + " at m=" +
                std::to_string(m_min) + " -> " + fmt(errs.back()) + " at m=" + std::to_string(m_max);
  return out;
}

CommandOutput cmd_sonine(const AdmissableTheta& theta, const std::vector<double>& ts, double tol,
                         const std::string& function) {
  require_alpha_below_one(theta, "sonine");
  if (tol < 0.0) throw std::invalid_argument("sonine: tol must be non-negative");
  if (tol == 0.0) tol = theta.is_constant() ? 1e-6 : 1e-3;
  const TestFunction f = test_function_by_name(function);
  const SonineSystem S{SelfSimilarBernstein(theta)};
  const QuadratureSpec spec;
  const QuadratureSpec loose = identity_spec();

  struct Task {
    std::string check;
    double arg;
  };
  std::vector<Task> tasks;
  for (double t : ts) tasks.push_back({"sonine", t});
  for (double x : {0.5, 2.0, 20.0}) tasks.push_back({"laplace", x});
  for (double x : {0.5, 1.0, 2.0, 4.0}) tasks.push_back({"dual_selfsim", x});
  for (double x : {0.5, 1.0, 2.0}) tasks.push_back({"d_of_i", x});
  for (double x : {0.5, 1.0, 2.0}) tasks.push_back({"i_of_d", x});

  const double d = std::pow(theta.c(), (1.0 - theta.alpha()) / theta.alpha());
  struct Row {
    double value, expected;
  };
  const auto rows = parallel_map<Row>(tasks.size(), [&](std::size_t i) {
    const Task& k = tasks[i];
    if (k.check == "sonine") return Row{sonine_residual(S, k.arg, spec) + 1.0, 1.0};
    if (k.check == "laplace") return Row{rho_laplace(S, k.arg, spec), S.G_star(k.arg)};
    if (k.check == "dual_selfsim") {
      return Row{g_i_star(S, theta.scale() * k.arg, spec) / d, g_i_star(S, k.arg, spec)};
    }
    if (k.check == "d_of_i") return Row{derivative_of_integral(S, f, k.arg, loose), f.value(k.arg)};
    return Row{integral_of_derivative(S, f, k.arg, loose), f.value(k.arg) - f.value(0.0)};
  });

  CsvTable csv({"check", "arg", "value", "expected", "abs_err"});
  double sonine_worst = 0.0, rel_worst = 0.0, identity_worst = 0.0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const double err = std::abs(rows[i].value - rows[i].expected);
    if (tasks[i].check == "sonine") {
      sonine_worst = std::max(sonine_worst, err);
    } else if (tasks[i].check == "laplace" || tasks[i].check == "dual_selfsim") {
      rel_worst = std::max(rel_worst, err / std::abs(rows[i].expected));
    } else {
      identity_worst = std::max(identity_worst, err);
    }
    csv.add_row({tasks[i].check, fmt(tasks[i].arg), fmt(rows[i].value), fmt(rows[i].expected), fmt(err)});
  }
  CommandOutput out;
  out.text = csv.str();
  out.pass = sonine_worst <= tol && rel_worst <= 1e-6 && identity_worst <= 1e-3;
  out.summary = "sonine: max |k*rho - 1| " + fmt(sonine_worst) + " (tol " + fmt(tol) + "), max rel Laplace/self-sim " +
                fmt(rel_worst) + ", max identity error " + fmt(identity_worst);
  return out;
}

CommandOutput cmd_compose(const AdmissableTheta& a, const AdmissableTheta& b) {
  require_alpha_below_one(a, "compose");
  require_alpha_below_one(b, "compose");
  const CompositionResult r = compose_product(SelfSimilarBernstein(a), SelfSimilarBernstein(b));
  json j;
  j["candidate_alpha"] = r.candidate_alpha;
  j["candidate_c"] = r.candidate_c;
  j["is_bernstein"] = r.is_bernstein;
  j["worst_violation"] = r.worst_violation;
  j["first_failing_order"] = r.signs.first_failing_order;
  j["worst_margin"] = r.signs.worst_margin;
  json d = json::array();
  for (std::size_t m = 0; m < r.d_coeffs.size(); ++m) {
    d.push_back({{"m", m}, {"re", r.d_coeffs[m].real()}, {"im", r.d_coeffs[m].imag()}});
  }
  j["d"] = d;
  CommandOutput out;
  out.text = j.dump(2) + "\n";
  out.pass = r.is_bernstein;
  out.summary = std::string("compose: product ") + (r.is_bernstein ? "is" : "is NOT") +
                " a Bernstein function on the scan (alpha " + fmt(r.candidate_alpha) + ", worst violation " +
                fmt(r.worst_violation) + ")";
  return out;
}

CommandOutput cmd_density(const AdmissableTheta& theta, double t, const std::vector<double>& xs) {
  require_alpha_above_one(theta, "density");
  if (!(t > 0.0)) throw std::invalid_argument("density: t must be positive");
  const DualitySystem S(theta);
  const DensityEvaluator E(exponent_of(S));
  const std::vector<double> ps = parallel_map<double>(xs.size(), [&](std::size_t i) { return E.p(xs[i], t); });
  const NormalizationReport nr = density_normalization(S, E, t);
  CsvTable csv({"x", "p"});
  double min_p = nr.min_p;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    csv.add_row({xs[i], ps[i]});
    min_p = std::min(min_p, ps[i]);
  }
  CommandOutput out;
  out.text = csv.str();
  out.pass = std::abs(nr.total - 1.0) <= 1e-6 && min_p >= -1e-8;
  out.summary = "density: integral of p = " + fmt(nr.total) + " (bulk " + fmt(nr.bulk) + " + left tail " +
                fmt(nr.left_tail) + "), min p " + fmt(min_p);
  return out;
}

CommandOutput cmd_duality(const AdmissableTheta& theta, Equation eq, const std::vector<double>& xs,
                          const std::vector<double>& ts, double tol) {
  require_alpha_above_one(theta, "duality");
  if (tol < 0.0) throw std::invalid_argument("duality: tol must be non-negative");
  const DualitySystem S(theta);
  const DensityEvaluator E(exponent_of(S));
  const bool space = eq == Equation::space;
  const double bound = tol > 0.0 ? tol : (space ? 1e-3 : 1e-2);
  const double factor = space ? 10.0 : 5.0;
  if (!space) {
    for (double x : xs) {
      if (!(x > 0.0)) throw std::invalid_argument("duality: the time equation needs x > 0");
    }
  }

  std::vector<std::pair<double, double>> pts;
  for (double t : ts) {
    if (!(t > 0.0)) throw std::invalid_argument("duality: t must be positive");
    for (double x : xs) pts.emplace_back(x, t);
  }

  struct Row {
    double residual, term, control;
  };
  std::vector<Row> rows;
  bool control_required = true;
  if (space) {
    const double shifted = theta.alpha() + 0.1 < 2.0 ? theta.alpha() + 0.1 : theta.alpha() - 0.1;
    const AdmissableTheta wrong(shifted, theta.c(), theta.coeffs());
    rows = parallel_map<Row>(pts.size(), [&](std::size_t i) {
      const SpaceResidual r = space_equation_residual(E, theta, pts[i].first, pts[i].second);
      const SpaceResidual w = space_equation_residual(E, wrong, pts[i].first, pts[i].second);
      return Row{r.residual, r.dpdt, w.residual};
    });
  } else {
    const DualTau tau(S, g_fourier(S));
    const DualTau flat(theta.alpha(), theta.c(), tau.mean());
    control_required = !theta.is_constant();
    rows = parallel_map<Row>(pts.size(), [&](std::size_t i) {
      const DualityResidual r = duality_residual(E, tau, pts[i].first, pts[i].second);
      const DualityResidual w = duality_residual(E, flat, pts[i].first, pts[i].second);
      return Row{r.residual, r.space_term, w.residual};
    });
  }

  double scale = 0.0, worst = 0.0, worst_control = 0.0;
  for (const Row& r : rows) {
    scale = std::max(scale, std::abs(r.term));
    worst = std::max(worst, std::abs(r.residual));
    worst_control = std::max(worst_control, std::abs(r.control));
  }
  CsvTable csv({"x", "t", "residual", "scale", "control_residual"});
  for (std::size_t i = 0; i < pts.size(); ++i) {
    csv.add_row({pts[i].first, pts[i].second, rows[i].residual, scale, rows[i].control});
  }
  const bool residual_ok = worst <= bound * scale;
  const bool control_ok = !control_required || worst_control >= factor * bound * scale;
  CommandOutput out;
  out.text = csv.str();
  out.pass = residual_ok && control_ok;
  std::ostringstream s;
  s << "duality (" << (space ? "space" : "time") << "): max residual/scale " << fmt(worst / scale) << " (bound "
    << fmt(bound) << "), control/scale " << fmt(worst_control / scale);
  if (control_required) {
    s << " (needs >= " << fmt(factor * bound) << ", " << (control_ok ? "separated" : "NOT separated") << ")";
  } else {
    s << " (control not applicable: tau is constant)";
  }
  out.summary = s.str();
  return out;
}

}  // namespace semifrac::cli
