#include "semifrac/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "semifrac/special_functions.hpp"

namespace semifrac {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  }
  if (max_refinements < 1) throw std::invalid_argument("QuadratureSpec: max_refinements must be >= 1");
  if (!(singularity_exponent > -1.0)) {
    throw std::invalid_argument("QuadratureSpec: singularity_exponent must exceed -1");
  }
}

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error, l1;
  bool operator<(const Segment& other) const { return error < other.error; }
};

struct Counter {
  long evaluations = 0;
  bool saw_nan = false;
};

Segment gk15(const RealFunction& f, double a, double b, Counter& counter) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  double l1 = kWgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    l1 += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  counter.evaluations += 15;
  Segment s{a, b, kronrod * half, std::abs((kronrod - gauss) * half), l1 * std::abs(half)};
  if (std::isnan(s.value)) counter.saw_nan = true;
  return s;
}

QuadratureResult adaptive_gk(const RealFunction& f, double a, double b, double abs_tol,
                             double rel_tol, int max_depth, Counter& counter) {
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b, counter);
  double total = first.value;
  double total_err = first.error;
  double total_l1 = first.l1;
  heap.push(first);
  const long max_segments = 1L << std::min(max_depth, 20);
  long segments = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) && segments < max_segments &&
         !counter.saw_nan) {
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push(worst);
      break;
    }
    Segment left = gk15(f, worst.a, mid, counter);
    Segment right = gk15(f, mid, worst.b, counter);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    ++segments;
  }
  // Re-sum to shed accumulated cancellation in the running totals.
  double value = 0.0, err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  QuadratureResult out;
  out.value = value;
  out.error_estimate = err;
  out.converged = !counter.saw_nan && err <= std::max(abs_tol, rel_tol * std::abs(value));
  (void)total_l1;
  return out;
}

// Tanh-sinh on [0, 1]; g receives v and the complement 1 - v, both accurate.
template <typename G>
double tanh_sinh_level_sum(const G& g, double h, bool odd_only, double u_max, Counter& counter) {
  double sum = 0.0;
  const long kmax = static_cast<long>(std::ceil(u_max / h));
  for (long k = -kmax; k <= kmax; ++k) {
    if (odd_only && (k % 2 == 0)) continue;
    const double u = k * h;
    const double s = 0.5 * kPi * std::sinh(u);
    const double cs = std::cosh(s);
    const double w = 0.5 * kPi * std::cosh(u) / (cs * cs) * 0.5;
    if (w == 0.0 || !std::isfinite(w)) continue;
    // v = 1 / (1 + e^{-2s}), 1 - v = 1 / (1 + e^{2s})
    const double v = 1.0 / (1.0 + std::exp(-2.0 * s));
    const double vc = 1.0 / (1.0 + std::exp(2.0 * s));
    if (v <= 0.0 || vc <= 0.0) continue;
    const double val = g(v, vc);
    ++counter.evaluations;
    if (std::isnan(val)) counter.saw_nan = true;
    sum += w * val;
  }
  return sum;
}

// Integrand on [0,1] after removing a lower-endpoint power singularity of
// order s by t = a + (b-a) v^p, p = 1/(1+s).
struct SingularMap {
  const RealFunction& f;
  double a, width, p;
  double operator()(double v, double /*vc*/) const {
    const double vp = std::pow(v, p);
    const double dist = width * vp;
    if (dist <= 0.0) return 0.0;
    return f(a + dist) * width * p * vp / v;
  }
};

QuadratureResult tanh_sinh_adaptive(const RealFunction& f, double a, double b, double s,
                                    double abs_tol, double rel_tol, int max_level,
                                    Counter& counter) {
  const double p = 1.0 / (1.0 + s);
  SingularMap g{f, a, b - a, p};
  const double u_max = 4.0;
  double h = 1.0;
  double sum = tanh_sinh_level_sum(g, h, false, u_max, counter);
  double estimate = h * sum;
  double previous = estimate;
  QuadratureResult out;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    sum += tanh_sinh_level_sum(g, h, true, u_max, counter);
    estimate = h * sum;
    const double diff = std::abs(estimate - previous);
    out.value = estimate;
    out.error_estimate = diff;
    if (counter.saw_nan) break;
    if (level >= 3 && diff <= std::max(abs_tol, rel_tol * std::abs(estimate))) {
      out.converged = true;
      return out;
    }
    previous = estimate;
  }
  out.value = estimate;
  out.converged = false;
  return out;
}

QuadratureResult finite_segment(const RealFunction& f, double a, double b, const QuadratureSpec& spec,
                                double abs_tol, Counter& counter) {
  if (b == a) return {0.0, 0.0, 0, true};
  if (spec.singularity_exponent < 0.0) {
    return tanh_sinh_adaptive(f, a, b, spec.singularity_exponent, abs_tol, spec.rel_tol,
                              spec.max_refinements, counter);
  }
  return adaptive_gk(f, a, b, abs_tol, spec.rel_tol, spec.max_refinements, counter);
}

}  // namespace

QuadratureResult integrate_detailed(const RealFunction& f, double a, double b,
                                    const QuadratureSpec& spec) {
  spec.validate();
  Counter counter;
  if (!(b > a) && b != a) throw std::invalid_argument("integrate: requires b >= a");
  if (std::isfinite(b)) {
    QuadratureResult r = finite_segment(f, a, b, spec, spec.abs_tol, counter);
    r.evaluations = counter.evaluations;
    if (counter.saw_nan) r.converged = false;
    return r;
  }

  QuadratureResult head = finite_segment(f, a, a + 1.0, spec, 0.5 * spec.abs_tol, counter);
  double total = head.value;
  double err = head.error_estimate;
  bool ok = head.converged;

  const RealFunction mapped = [&](double u) {
    const double eu = std::exp(u);
    return f(a + eu) * eu;
  };
  int quiet_panels = 0;
  constexpr double kMaxU = 700.0;
  for (double u = 0.0; u < kMaxU; u += 1.0) {
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    Counter panel_counter;
    QuadratureResult panel = adaptive_gk(mapped, u, u + 1.0, 0.1 * tol, 0.1 * spec.rel_tol,
                                         spec.max_refinements, panel_counter);
    counter.evaluations += panel_counter.evaluations;
    if (panel_counter.saw_nan) counter.saw_nan = true;
    // L1 mass of the panel is bounded by |value| + error for these smooth panels.
    const double mass = std::abs(panel.value) + panel.error_estimate;
    total += panel.value;
    err += panel.error_estimate;
    ok = ok && panel.converged;
    if (counter.saw_nan) break;
    if (u >= 3.0 && mass <= 1e-3 * std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
      if (++quiet_panels >= 2) break;
    } else {
      quiet_panels = 0;
    }
    if (u + 1.0 >= kMaxU) ok = false;
  }
  QuadratureResult out;
  out.value = total;
  out.error_estimate = err;
  out.evaluations = counter.evaluations;
  out.converged = ok && !counter.saw_nan;
  return out;
}

double integrate(const RealFunction& f, double a, double b, const QuadratureSpec& spec) {
  const QuadratureResult r = integrate_detailed(f, a, b, spec);
  if (std::isnan(r.value)) throw NumericalError("integrate: integrand produced NaN");
  if (!r.converged) {
    throw NumericalError("integrate: no convergence within max_refinements (estimate " +
                         std::to_string(r.value) + ", error " + std::to_string(r.error_estimate) +
                         ")");
  }
  return r.value;
}

double tanh_sinh_fixed(const RealFunction& f, double b, int level, double singularity_exponent) {
  if (!(b > 0.0)) return 0.0;
  if (!(singularity_exponent > -1.0)) {
    throw std::invalid_argument("tanh_sinh_fixed: singularity_exponent must exceed -1");
  }
  Counter counter;
  const double s = std::min(singularity_exponent, 0.0);
  SingularMap g{f, 0.0, b, 1.0 / (1.0 + s)};
  double h = 1.0;
  double sum = tanh_sinh_level_sum(g, h, false, 4.0, counter);
  for (int l = 1; l <= level; ++l) {
    h *= 0.5;
    sum += tanh_sinh_level_sum(g, h, true, 4.0, counter);
  }
  return h * sum;
}

}  // namespace semifrac
