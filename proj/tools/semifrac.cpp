// semifrac <command> --config PATH [options] [--out PATH]

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "semifrac/cli/commands.hpp"
#include "semifrac/special_functions.hpp"

using namespace semifrac;
using namespace semifrac::cli;

namespace {

struct Options {
  std::string config, config_b, out;
  std::string grid, t, m = "2:12", function, equation = "time";
  int J = 0, n = 0, grid_points = 4096;
  std::uint64_t seed = 1;
  double tol = 0.0, x = 1.0;
};

std::vector<double> grid_or(const std::string& text, const std::string& fallback) {
  return parse_grid(text.empty() ? fallback : text).points();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-fractional calculus toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "theta config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output file (default stdout)");
  };

  auto* check = app.add_subcommand("check-theta", "admissability report (JSON)");
  add_common(check);
  check->add_option("--grid-points", o.grid_points, "grid points per period");

  auto* bern = app.add_subcommand("bernstein", "series vs quadrature table (CSV)");
  add_common(bern);
  bern->add_option("--grid", o.grid, "x grid [log:]MIN:MAX:N (default log:0.01:100:9)");
  bern->add_option("--tol", o.tol, "relative tolerance against the oracle (default 1e-6)");

  auto* sib = app.add_subcommand("sibuya", "probability mass function or samples (CSV)");
  add_common(sib);
  sib->add_option("--J", o.J, "truncation (0: adaptive)");
  sib->add_option("--n", o.n, "draw this many samples instead of printing the pmf");
  sib->add_option("--seed", o.seed, "sampler seed");

  auto* gl = app.add_subcommand("glderiv", "Grunwald-Letnikov convergence table (CSV)");
  add_common(gl);
  gl->add_option("--function", o.function, "exp, exp:<a>, gaussian, xexp, polycutoff, ...")->required();
  gl->add_option("--x", o.x, "evaluation point");
  gl->add_option("--m", o.m, "level range A:B (default 2:12)");

  auto* son = app.add_subcommand("sonine", "Sonine residuals and identity checks (CSV)");
  add_common(son);
  son->add_option("--t", o.t, "t grid (default log:0.01:100:20)");
  son->add_option("--tol", o.tol, "bound on |k*rho - 1| (default 1e-6 constant theta, 1e-3 otherwise)");
  son->add_option("--function", o.function, "test function for the identities (default xexp)");

  auto* comp = app.add_subcommand("compose", "product of two Bernstein functions (JSON)");
  add_common(comp);
  comp->add_option("--config-b", o.config_b, "second theta config")->required()->check(CLI::ExistingFile);

  auto* dens = app.add_subcommand("density", "density grid (CSV)");
  add_common(dens);
  dens->add_option("--t", o.t, "time (default 1)");
  dens->add_option("--grid", o.grid, "x grid (default -10:10:201)");

  auto* dual = app.add_subcommand("duality", "PDE residual grid (CSV)");
  add_common(dual);
  dual->add_option("--equation", o.equation, "time (dual equation, default) or space")
      ->check(CLI::IsMember({"time", "space"}));
  dual->add_option("--grid", o.grid, "x grid (default 0.5:3:6 for time, -2:2:9 for space)");
  dual->add_option("--t", o.t, "t grid (default 0.5:2:4 for time, 1 for space)");
  dual->add_option("--tol", o.tol, "bound factor relative to scale (default 1e-2 time, 1e-3 space)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const AdmissableTheta theta = AdmissableTheta::load(o.config);
    CommandOutput res;
    if (*check) {
      res = cmd_check_theta(theta, o.grid_points);
    } else if (*bern) {
      res = cmd_bernstein(theta, grid_or(o.grid, "log:0.01:100:9"), o.tol > 0.0 ? o.tol : 1e-6);
    } else if (*sib) {
      res = o.n > 0 ? cmd_sibuya_sample(theta, o.n, o.seed) : cmd_sibuya_pmf(theta, o.J);
    } else if (*gl) {
      const auto [a, b] = parse_int_range(o.m);
      res = cmd_glderiv(theta, o.function, o.x, a, b);
    } else if (*son) {
      res = cmd_sonine(theta, grid_or(o.t, "log:0.01:100:20"), o.tol, o.function.empty() ? "xexp" : o.function);
    } else if (*comp) {
      res = cmd_compose(theta, AdmissableTheta::load(o.config_b));
    } else if (*dens) {
      const Grid t = parse_grid(o.t.empty() ? "1" : o.t);
      if (t.n != 1) throw std::invalid_argument("density: --t takes a single time");
      res = cmd_density(theta, t.min, grid_or(o.grid, "-10:10:201"));
    } else {
      const bool space = o.equation == "space";
      res = cmd_duality(theta, space ? Equation::space : Equation::time,
                        grid_or(o.grid, space ? "-2:2:9" : "0.5:3:6"), grid_or(o.t, space ? "1" : "0.5:2:4"), o.tol);
    }
    write_output(res.text, o.out);
    std::cerr << res.summary << (res.pass ? "" : " [FAIL]") << "\n";
    return res.pass ? kExitPass : kExitCheckFailed;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}
