#include "semifrac/admissable.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace semifrac {

AdmissableTheta::AdmissableTheta(double alpha, double c, std::vector<cplx> coeffs)
    : alpha_(alpha), c_(c), coeffs_(std::move(coeffs)) {
  if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0) {
    throw std::invalid_argument("AdmissableTheta: alpha must lie in (0,1) or (1,2)");
  }
  if (!(c > 1.0) || !std::isfinite(c)) throw std::invalid_argument("AdmissableTheta: c must exceed 1");
  if (coeffs_.empty()) throw std::invalid_argument("AdmissableTheta: missing coefficient c_0");
  if (max_order() > kMaxFourierOrder) {
    throw std::invalid_argument("AdmissableTheta: Fourier order exceeds 64");
  }
  if (coeffs_[0].imag() != 0.0 || !(coeffs_[0].real() > 0.0)) {
    throw std::invalid_argument("AdmissableTheta: c_0 must be real and positive");
  }
  for (const cplx& v : coeffs_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("AdmissableTheta: non-finite coefficient");
    }
  }
  // Trailing zero coefficients carry no information.
  while (coeffs_.size() > 1 && coeffs_.back() == cplx(0.0, 0.0)) coeffs_.pop_back();
  const double log_c = std::log(c);
  period_ = log_c / alpha;
  tilde_c_ = 2.0 * kPi * alpha / log_c;
  scale_ = std::pow(c, 1.0 / alpha);
}

AdmissableTheta AdmissableTheta::constant(double alpha, double c, double c0) {
  return AdmissableTheta(alpha, c, {cplx(c0, 0.0)});
}

AdmissableTheta AdmissableTheta::perturbed(double alpha, double c, double c0, double eps) {
  return AdmissableTheta(alpha, c, {cplx(c0, 0.0), cplx(eps * c0, 0.0)});
}

AdmissableTheta AdmissableTheta::stable(double alpha, double c) {
  const double g = std::tgamma(1.0 - alpha);
  return constant(alpha, c, alpha < 1.0 ? 1.0 / g : -1.0 / g);
}

bool AdmissableTheta::is_constant() const { return coeffs_.size() == 1; }

AdmissableTheta AdmissableTheta::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
  }
  auto number = [](const nlohmann::json& obj, const char* field) {
    if (!obj.contains(field)) throw std::invalid_argument(std::string("config: missing field '") + field + "'");
    if (!obj[field].is_number()) {
      throw std::invalid_argument(std::string("config: field '") + field + "' must be a number");
    }
    return obj[field].get<double>();
  };
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  const double alpha = number(j, "alpha");
  const double c = number(j, "c");
  if (!j.contains("coeffs") || !j["coeffs"].is_array()) {
    throw std::invalid_argument("config: field 'coeffs' must be an array");
  }
  std::vector<cplx> coeffs;
  std::vector<bool> seen;
  for (const auto& entry : j["coeffs"]) {
    if (!entry.is_object() || !entry.contains("k") || !entry["k"].is_number_integer()) {
      throw std::invalid_argument("config: field 'coeffs[].k' must be an integer");
    }
    const long k = entry["k"].get<long>();
    if (k < 0) throw std::invalid_argument("config: field 'coeffs[].k' must be non-negative (conjugates are implied)");
    if (k > kMaxFourierOrder) throw std::invalid_argument("config: field 'coeffs[].k' exceeds 64");
    const double re = number(entry, "re");
    const double im = entry.contains("im") ? number(entry, "im") : 0.0;
    if (coeffs.size() <= static_cast<std::size_t>(k)) {
      coeffs.resize(k + 1, cplx(0.0, 0.0));
      seen.resize(k + 1, false);
    }
    if (seen[k]) throw std::invalid_argument("config: duplicate coefficient k=" + std::to_string(k));
    seen[k] = true;
    coeffs[k] = cplx(re, im);
  }
  if (coeffs.empty() || !seen[0]) throw std::invalid_argument("config: field 'coeffs' lacks k=0");
  return AdmissableTheta(alpha, c, std::move(coeffs));
}

AdmissableTheta AdmissableTheta::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::string AdmissableTheta::to_json_text() const {
  nlohmann::json j;
  j["alpha"] = alpha_;
  j["c"] = c_;
  j["coeffs"] = nlohmann::json::array();
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    j["coeffs"].push_back({{"k", k}, {"re", coeffs_[k].real()}, {"im", coeffs_[k].imag()}});
  }
  return j.dump(2);
}

namespace {

// Fractional position of x within its period, in [0, 1).
double period_fraction(const AdmissableTheta& theta, double x) {
  const double u = x / theta.period();
  return u - std::floor(u);
}

}  // namespace

double eval_theta(const AdmissableTheta& theta, double x) {
  const auto& ck = theta.coeffs();
  if (ck.size() == 1) return ck[0].real();
  const double phase = 2.0 * kPi * period_fraction(theta, x);
  double sum = 0.0;
  for (std::size_t k = ck.size() - 1; k >= 1; --k) {
    sum += (ck[k] * std::polar(1.0, phase * static_cast<double>(k))).real();
  }
  return ck[0].real() + 2.0 * sum;
}

double eval_theta_prime(const AdmissableTheta& theta, double x) {
  const auto& ck = theta.coeffs();
  if (ck.size() == 1) return 0.0;
  const double phase = 2.0 * kPi * period_fraction(theta, x);
  double sum = 0.0;
  for (std::size_t k = ck.size() - 1; k >= 1; --k) {
    const cplx factor(0.0, theta.tilde_c() * static_cast<double>(k));
    sum += (factor * ck[k] * std::polar(1.0, phase * static_cast<double>(k))).real();
  }
  return 2.0 * sum;
}

double theta_max(const AdmissableTheta& theta, int grid_points) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    best = std::max(best, eval_theta(theta, theta.period() * i / grid_points));
  }
  return best;
}

ValidityReport check_admissable(const AdmissableTheta& theta, int grid_points) {
  if (grid_points < 64) throw std::invalid_argument("check_admissable: grid_points must be >= 64");
  ValidityReport r;
  r.grid_points = grid_points;
  r.min_theta = std::numeric_limits<double>::infinity();
  r.min_margin = std::numeric_limits<double>::infinity();
  const double P = theta.period();
  const double a = theta.alpha();
  for (int i = 0; i < grid_points; ++i) {
    const double x = P * i / grid_points;
    const double th = eval_theta(theta, x);
    r.min_theta = std::min(r.min_theta, th);
    r.min_margin = std::min(r.min_margin, a * th - eval_theta_prime(theta, x));
    // Periodicity is checked on the raw series, without period reduction.
    cplx raw = theta.coeffs()[0];
    cplx shifted = raw;
    for (std::size_t k = 1; k < theta.coeffs().size(); ++k) {
      const double w = theta.tilde_c() * static_cast<double>(k);
      raw += 2.0 * (theta.coeffs()[k] * std::polar(1.0, w * x)).real();
      shifted += 2.0 * (theta.coeffs()[k] * std::polar(1.0, w * (x + P))).real();
    }
    r.periodicity_error =
        std::max(r.periodicity_error, std::abs(raw - shifted) / (1.0 + std::abs(raw)));
  }
  r.positive = r.min_theta > 0.0;
  r.monotone = r.min_margin > 0.0;
  r.periodic = r.periodicity_error < 1e-12;
  return r;
}

double levy_tail(const AdmissableTheta& theta, double t) {
  if (!(t > 0.0)) throw std::domain_error("levy_tail: t must be positive");
  return std::pow(t, -theta.alpha()) * eval_theta(theta, std::log(t));
}

double levy_density(const AdmissableTheta& theta, double t) {
  if (!(t > 0.0)) throw std::domain_error("levy_density: t must be positive");
  const double x = std::log(t);
  const double a = theta.alpha();
  return std::pow(t, -a - 1.0) * (a * eval_theta(theta, x) - eval_theta_prime(theta, x));
}

}  // namespace semifrac
