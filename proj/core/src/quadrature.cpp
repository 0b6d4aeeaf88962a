#include "spdecay/quadrature.hpp"

#include <cmath>
#include <limits>

namespace spdecay {

void validate(const QuadratureConfig& cfg) {
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "quadrature tolerances must be positive");
  }
  if (cfg.max_subdivisions <= 0) {
    throw Error(ErrorCode::InvalidArgument, "max_subdivisions must be positive");
  }
  if (!(cfg.pv_window > 0.0) || !std::isfinite(cfg.pv_window)) {
    throw Error(ErrorCode::InvalidArgument, "pv_window must be finite and positive");
  }
  if (!(cfg.tail_cut > 0.0) || !std::isfinite(cfg.tail_cut)) {
    throw Error(ErrorCode::InvalidArgument, "tail_cut must be finite and positive");
  }
}

Truncation truncate_tail(const CouplingModel& model, double offset,
                         const QuadratureConfig& cfg) {
  const double step = cfg.tail_cut * model.cutoff;
  double point = std::max(offset, 0.0) + step;
  double bound = tail_mass(model, point) / (point - offset);
  while (bound > cfg.abs_tol) {
    point += 0.5 * step;
    bound = tail_mass(model, point) / (point - offset);
  }
  return {point, bound};
}

namespace {

void require_coupled_edge_limit(const ModelParams& params, double log_gap) {
  if (std::isinf(log_gap) && log_gap < 0.0 &&
      edge_expansion(params.coupling).value > 0.0) {
    throw Error(ErrorCode::DivergentAtEdge,
                "k(E1) diverges when |V(0)| != 0 (two-dimensional coupling)");
  }
}

}  // namespace

QuadResult k_below_edge(const ModelParams& params, double log_gap,
                        const QuadratureConfig& cfg) {
  const CouplingModel& model = params.coupling;
  if (is_decoupled(model)) return {};
  require_coupled_edge_limit(params, log_gap);

  const double gap = std::exp(log_gap);
  const double split = model.cutoff;
  const Truncation trunc = truncate_tail(model, 0.0, cfg);
  auto f = [&](double x) { return coupling_sq(model, x); };

  // Near the edge subtract |V(0)|^2, whose contribution is integrated in
  // closed form using log_gap directly.
  const double edge_value = edge_expansion(model).value;
  QuadResult total;
  if (edge_value > 0.0) {
    total = integrate([&](double x) { return (f(x) - edge_value) / (x + gap); }, 0.0,
                      split, cfg);
    total.value += edge_value * (std::log(split + gap) - log_gap);
  } else {
    total = integrate([&](double x) { return f(x) / (x + gap); }, 0.0, split, cfg);
  }
  total += integrate([&](double x) { return f(x) / (x + gap); }, split, trunc.point, cfg);
  total.error += trunc.remainder_bound;
  return total;
}

double k_regular(const ModelParams& params, double lambda, const QuadratureConfig& cfg) {
  if (lambda > params.e1) {
    throw Error(ErrorCode::InvalidArgument,
                "k_regular requires lambda <= E1; use k_pv on the continuum");
  }
  const double log_gap = lambda == params.e1 ? -std::numeric_limits<double>::infinity()
                                             : std::log(params.e1 - lambda);
  return k_below_edge(params, log_gap, cfg).value;
}

double k_pv(const ModelParams& params, double t, const QuadratureConfig& cfg) {
  if (!(t > params.e1)) {
    throw Error(ErrorCode::InvalidSingularity, "k_pv requires t > E1");
  }
  const CouplingModel& model = params.coupling;
  if (is_decoupled(model)) return 0.0;
  const double c = t - params.e1;
  const Truncation trunc = truncate_tail(model, c + cfg.pv_window, cfg);
  const QuadResult pv = principal_value(
      [&](double x) { return coupling_sq(model, x); }, c, 0.0, trunc.point, cfg);
  return pv.value;
}

}  // namespace spdecay
