#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "spdecay/error.hpp"
#include "spdecay/model.hpp"

namespace spdecay {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 4000;
  // Half-width of the window around a principal-value singularity.
  double pv_window = 0.5;
  // Model integrals are carried out on [0, tail_cut * cutoff] (extended if
  // needed); the remainder is bounded in closed form.
  double tail_cut = 60.0;
};

void validate(const QuadratureConfig& cfg);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;

  QuadResult& operator+=(const QuadResult& other) {
    value += other.value;
    error += other.error;
    evaluations += other.evaluations;
    return *this;
  }
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule. Abscissae are listed
// from the outermost inwards; odd indices are shared with the Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

inline bool operator<(const Segment& lhs, const Segment& rhs) {
  return lhs.error < rhs.error;
}

inline void check_finite(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::NonConvergence, "integrand returned a non-finite value");
  }
}

template <class F>
Segment gauss_kronrod15(F& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  std::array<double, 7> lower{};
  std::array<double, 7> upper{};
  const double fc = f(center);
  check_finite(fc);
  double res_gauss = fc * kGaussWeights[3];
  double res_kronrod = fc * kKronrodWeights[7];
  double res_abs = std::abs(res_kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    check_finite(f1);
    check_finite(f2);
    lower[j] = f1;
    upper[j] = f2;
    res_kronrod += kKronrodWeights[j] * (f1 + f2);
    res_abs += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) res_gauss += kGaussWeights[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * res_kronrod;
  double res_asc = kKronrodWeights[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    res_asc += kKronrodWeights[j] * (std::abs(lower[j] - mean) + std::abs(upper[j] - mean));
  }
  res_abs *= abs_half;
  res_asc *= abs_half;
  double err = std::abs((res_kronrod - res_gauss) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  if (res_abs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
  return {a, b, res_kronrod * half, err};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over the finite
/// interval [a, b]. The worst segment is bisected until the summed error
/// estimate is below max(abs_tol, rel_tol * |value|). Segments too narrow to
/// split in floating point are frozen; exhausting max_subdivisions throws
/// NonConvergence.
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureConfig& cfg) {
  if (a == b) return {};
  std::vector<detail::Segment> heap;
  heap.reserve(64);
  heap.push_back(detail::gauss_kronrod15(f, a, b));
  int evaluations = 15;
  double value = heap.front().value;
  double error = heap.front().error;
  double frozen_value = 0.0;
  double frozen_error = 0.0;
  int splits = 0;

  auto tolerance = [&] {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value + frozen_value));
  };
  while (error + frozen_error > tolerance() && !heap.empty()) {
    if (splits >= cfg.max_subdivisions) {
      throw Error(ErrorCode::NonConvergence,
                  "subdivision budget exhausted on [" + std::to_string(a) + ", " +
                      std::to_string(b) + "], error estimate " +
                      std::to_string(error + frozen_error));
    }
    std::pop_heap(heap.begin(), heap.end());
    const detail::Segment worst = heap.back();
    heap.pop_back();
    value -= worst.value;
    error -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b)) ||
        std::abs(worst.b - worst.a) <=
            64.0 * std::numeric_limits<double>::epsilon() * std::abs(mid)) {
      frozen_value += worst.value;
      frozen_error += worst.error;
      continue;
    }
    for (const auto& piece : {detail::gauss_kronrod15(f, worst.a, mid),
                              detail::gauss_kronrod15(f, mid, worst.b)}) {
      value += piece.value;
      error += piece.error;
      heap.push_back(piece);
      std::push_heap(heap.begin(), heap.end());
    }
    evaluations += 30;
    ++splits;
  }
  // Re-sum to shed the drift of the running updates.
  double sum = frozen_value;
  double err = frozen_error;
  for (const auto& s : heap) {
    sum += s.value;
    err += s.error;
  }
  return {sum, err, evaluations};
}

/// Integral of f over [lower, inf), mapped onto (0, 1] by x = lower + (1-s)/s.
template <class F>
QuadResult integrate_semiinf(F&& f, const QuadratureConfig& cfg, double lower = 0.0) {
  auto mapped = [&](double s) {
    const double x = lower + (1.0 - s) / s;
    return f(x) / (s * s);
  };
  return integrate(mapped, 0.0, 1.0, cfg);
}

/// Cauchy principal value of the integral of f(x) / (x - c) over
/// [lower, upper], lower < c < upper; upper may be +infinity.
///
/// On the window [max(lower, c - w), min(upper, c + w)] the pole is removed
/// by subtracting f(c); the symmetric core of the window is folded onto
/// (f(c+s) - f(c-s)) / s, and the subtracted part contributes the analytic
/// term f(c) ln((b - c) / (c - a)). Outside the window the integrand is
/// regular.
template <class F>
QuadResult principal_value(F&& f, double c, double lower, double upper,
                           const QuadratureConfig& cfg) {
  if (!(c > lower) || !(c < upper)) {
    throw Error(ErrorCode::InvalidSingularity,
                "principal-value singularity must be interior to the interval");
  }
  const double lo = std::max(lower, c - cfg.pv_window);
  const double hi = std::min(upper, c + cfg.pv_window);
  const double radius = std::min(c - lo, hi - c);
  const double fc = f(c);
  detail::check_finite(fc);

  QuadResult total = integrate(
      [&](double s) { return (f(c + s) - f(c - s)) / s; }, 0.0, radius, cfg);
  auto subtracted = [&](double x) { return (f(x) - fc) / (x - c); };
  if (hi > c + radius) total += integrate(subtracted, c + radius, hi, cfg);
  if (lo < c - radius) total += integrate(subtracted, lo, c - radius, cfg);
  total.value += fc * std::log((hi - c) / (c - lo));

  auto pole = [&](double x) { return f(x) / (x - c); };
  if (lo > lower) total += integrate(pole, lower, lo, cfg);
  if (hi < upper) {
    if (std::isinf(upper)) {
      total += integrate_semiinf(pole, cfg, hi);
    } else {
      total += integrate(pole, hi, upper, cfg);
    }
  }
  return total;
}

/// Principal value over [0, inf).
template <class F>
QuadResult principal_value(F&& f, double c, const QuadratureConfig& cfg) {
  if (!(c > 0.0)) {
    throw Error(ErrorCode::InvalidSingularity,
                "principal-value singularity must lie in (0, inf)");
  }
  return principal_value(std::forward<F>(f), c, 0.0,
                         std::numeric_limits<double>::infinity(), cfg);
}

/// Smallest point B >= offset + tail_cut * cutoff (grown in steps of the same
/// size) at which tail_mass(B) / (B - offset) <= abs_tol. The returned bound
/// dominates the integral of |V|^2 / (x - offset) over [B, inf).
struct Truncation {
  double point;
  double remainder_bound;
};
Truncation truncate_tail(const CouplingModel& model, double offset,
                         const QuadratureConfig& cfg);

/// k(lambda) = integral of |V(x)|^2 / (x + E1 - lambda), lambda <= E1.
/// lambda == E1 is admitted only when |V(0)| = 0.
double k_regular(const ModelParams& params, double lambda, const QuadratureConfig& cfg);

/// k at distance E1 - lambda = exp(log_gap) below the edge. The gap enters
/// only through its logarithm near the edge, so gaps far below the smallest
/// double are still resolved. log_gap = -inf means lambda = E1.
QuadResult k_below_edge(const ModelParams& params, double log_gap,
                        const QuadratureConfig& cfg);

/// Principal value of k on the continuum, t > E1.
double k_pv(const ModelParams& params, double t, const QuadratureConfig& cfg);

}  // namespace spdecay
