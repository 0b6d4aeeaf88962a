#include "spdecay_tools/oracles.hpp"

#include <cmath>
#include <numbers>

namespace spdecay::oracle {

namespace {

constexpr double kReach = 80.0;  // integrate |V|^2 over [0, kReach * cutoff]

}  // namespace

double simpson(const std::function<double(double)>& f, double a, double b, long intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / static_cast<double>(intervals);
  double odd = 0.0;
  double even = 0.0;
  for (long i = 1; i < intervals; ++i) {
    const double v = f(a + h * static_cast<double>(i));
    (i % 2 != 0 ? odd : even) += v;
  }
  return h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

double k_below_edge(const ModelParams& params, double gap, long intervals) {
  const CouplingModel& model = params.coupling;
  const double reach = kReach * model.cutoff;
  if (gap == 0.0) {
    // Only meaningful when |V(0)| = 0; the integrand extends continuously to x = 0.
    auto f = [&](double x) {
      return x == 0.0 ? (coupling_sq(model, 1e-300) / 1e-300) : coupling_sq(model, x) / x;
    };
    return simpson(f, 0.0, reach, intervals);
  }
  auto f = [&](double s) { return coupling_sq(model, gap * std::expm1(s)); };
  return simpson(f, 0.0, std::log1p(reach / gap), intervals);
}

double principal_value(const std::function<double(double)>& f, double c, double upper,
                       double spacing) {
  const double radius = std::min(c, upper - c);
  const auto pairs = static_cast<long>(std::floor(radius / spacing));
  double sum = 0.0;
  for (long k = 0; k < pairs; ++k) {
    const double s = (static_cast<double>(k) + 0.5) * spacing;
    sum += (f(c + s) - f(c - s)) / s;
  }
  sum *= spacing;
  const double covered = static_cast<double>(pairs) * spacing;
  auto pole = [&](double x) { return f(x) / (x - c); };
  const long intervals = 400000;
  if (c - covered > 0.0) sum += simpson(pole, 0.0, c - covered, intervals / 10);
  if (c + covered < upper) sum += simpson(pole, c + covered, upper, intervals);
  return sum;
}

double spectral_density(const ModelParams& params, double t) {
  if (!(t > params.e1)) return 0.0;
  const CouplingModel& model = params.coupling;
  const double mu = t - params.e1;
  const double v = coupling_sq(model, mu);
  if (v == 0.0) return 0.0;
  const double pv = principal_value([&](double x) { return coupling_sq(model, x); }, mu,
                                    mu + kReach * model.cutoff);
  const double re = params.e2 - t - pv;
  return v / (re * re + std::numbers::pi * std::numbers::pi * v * v);
}

double eigenvalue_by_bisection(const ModelParams& params, long intervals) {
  const double level_gap = params.level_gap();
  auto f = [&](double gap) { return level_gap + gap - k_below_edge(params, gap, intervals); };
  double near = 0.0;  // gap where F < 0 (or the edge)
  double far = level_gap;
  while (f(far) <= 0.0) {
    near = far;
    far *= 2.0;
  }
  // Tighten `near` away from the edge when |V(0)| != 0 so F stays finite.
  if (near == 0.0) {
    near = far;
    while (f(near) > 0.0) near *= 0.5;
  }
  while (far - near > 1e-13 * level_gap) {
    const double mid = 0.5 * (near + far);
    (f(mid) > 0.0 ? far : near) = mid;
  }
  return params.e1 - 0.5 * (near + far);
}

double eigen_weight(const ModelParams& params, double gap, long intervals) {
  const CouplingModel& model = params.coupling;
  const double reach = kReach * model.cutoff;
  auto f = [&](double s) { return coupling_sq(model, gap * std::expm1(s)) * std::exp(-s) / gap; };
  return 1.0 / (1.0 + simpson(f, 0.0, std::log1p(reach / gap), intervals));
}

}  // namespace spdecay::oracle
