#include "spdecay/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "spdecay/roots.hpp"

namespace spdecay {

ThresholdReport threshold_check(const ModelParams& params) {
  validate(params);
  ThresholdReport report;
  report.lhs = params.level_gap();
  report.rhs = sq_over_x_integral(params.coupling);
  if (is_decoupled(params.coupling)) {
    report.decoupled = true;
    return report;
  }
  if (std::isinf(report.rhs)) {
    report.exists = true;
    return report;
  }
  if (std::abs(report.lhs - report.rhs) < kMarginalBand) {
    report.marginal = true;
    return report;
  }
  report.exists = report.lhs < report.rhs;
  return report;
}

Eigenvalue find_eigenvalue(const ModelParams& params, const QuadratureConfig& cfg,
                           const EigenSearch& search) {
  validate(params);
  validate(cfg);
  if (is_decoupled(params.coupling)) {
    throw Error(ErrorCode::NoEigenvalue, "zero coupling: no eigenvalue below E1");
  }
  const double level_gap = params.level_gap();
  auto residual = [&](double u) {
    return level_gap + std::exp(u) - k_below_edge(params, u, cfg).value;
  };

  if (edge_expansion(params.coupling).value == 0.0) {
    const double at_edge = residual(-std::numeric_limits<double>::infinity());
    if (std::abs(at_edge) < kMarginalBand) {
      throw Error(ErrorCode::MarginalThreshold,
                  "E2 - E1 - k(E1) = " + std::to_string(at_edge) +
                      " is inside the marginal band");
    }
    if (at_edge > 0.0) {
      throw Error(ErrorCode::NoEigenvalue,
                  "E2 - E1 exceeds k(E1): no eigenvalue below the continuum");
    }
  }

  const double start = search.initial_gap > 0.0 ? search.initial_gap : level_gap;
  double u_hi = std::log(start);
  double f_hi = residual(u_hi);
  double u_lo = -std::numeric_limits<double>::infinity();
  double f_lo = 0.0;
  bool have_lo = false;
  int doublings = 0;
  while (f_hi < 0.0) {
    u_lo = u_hi;
    f_lo = f_hi;
    have_lo = true;
    u_hi += std::numbers::ln2;
    if (++doublings > 1100 || !std::isfinite(std::exp(u_hi))) {
      throw Error(ErrorCode::BracketFailure,
                  "lower bracket expansion did not reach F > 0");
    }
    f_hi = residual(u_hi);
  }
  if (f_hi == 0.0) {
    return {params.e1 - std::exp(u_hi), u_hi, 0.0, 0.0};
  }
  if (!have_lo) {
    double step = 1.0;
    for (;;) {
      u_lo = u_hi - step;
      f_lo = residual(u_lo);
      if (f_lo <= 0.0) break;
      step *= 2.0;
      if (step > 1e12) {
        throw Error(ErrorCode::BracketFailure,
                    "no sign change of F found approaching E1");
      }
    }
  }
  if (f_lo == 0.0) {
    return {params.e1 - std::exp(u_lo), u_lo, 0.0, 0.0};
  }

  const BracketedRoot root = brent_root(residual, u_lo, u_hi, f_lo, f_hi, 1e-15);
  Eigenvalue eigen;
  eigen.log_gap = root.root;
  eigen.value = params.e1 - std::exp(root.root);
  eigen.residual = root.value;
  eigen.bracket_width = std::abs(std::exp(root.root) - std::exp(root.partner));
  return eigen;
}

double eigen_weight(const ModelParams& params, const Eigenvalue& eigen,
                    const QuadratureConfig& cfg) {
  const CouplingModel& model = params.coupling;
  if (is_decoupled(model)) return 1.0;
  const double u = eigen.log_gap;
  const double gap = std::exp(u);
  const double split = model.cutoff;
  const EdgeExpansion edge = edge_expansion(model);
  auto f = [&](double x) { return coupling_sq(model, x); };

  // On [0, split] the first two Taylor terms of |V|^2 at the edge are
  // integrated against (x + gap)^-2 in closed form.
  const double closed =
      edge.value * (std::exp(-u) - 1.0 / (split + gap)) +
      edge.slope * (std::log(split + gap) - u - split / (split + gap));
  if (std::isinf(closed)) return 0.0;

  QuadratureConfig local = cfg;
  local.abs_tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(closed));
  const Truncation trunc = truncate_tail(model, 0.0, local);
  QuadResult rest = integrate(
      [&](double x) {
        const double denom = (x + gap) * (x + gap);
        return (f(x) - edge.value - edge.slope * x) / denom;
      },
      0.0, split, local);
  rest += integrate([&](double x) { return f(x) / ((x + gap) * (x + gap)); }, split,
                    trunc.point, local);
  return 1.0 / (1.0 + closed + rest.value);
}

double eigen_weight(const ModelParams& params, double e0, const QuadratureConfig& cfg) {
  if (!(e0 < params.e1)) {
    throw Error(ErrorCode::InvalidArgument, "eigen_weight requires E0 < E1");
  }
  Eigenvalue eigen;
  eigen.value = e0;
  eigen.log_gap = std::log(params.e1 - e0);
  return eigen_weight(params, eigen, cfg);
}

double spectral_density(const ModelParams& params, double t, const QuadratureConfig& cfg) {
  if (!(t > params.e1) || is_decoupled(params.coupling)) return 0.0;
  const double coupling = coupling_sq(params.coupling, t - params.e1);
  if (!(coupling > 0.0)) return 0.0;
  const double real_part = params.e2 - t - k_pv(params, t, cfg);
  const double imag_part = std::numbers::pi * coupling;
  return coupling / (real_part * real_part + imag_part * imag_part);
}

std::vector<DensitySample> SpectralData::density_table() const {
  std::vector<DensitySample> table;
  if (panels.empty()) return table;
  table.reserve(panels.size() * kPanelOrder + 1);
  table.push_back({params.e1, 0.0});
  const GaussLegendreRule& rule = panel_rule();
  for (const DensityPanel& panel : panels) {
    const double mid = 0.5 * (panel.lo + panel.hi);
    const double half = 0.5 * (panel.hi - panel.lo);
    for (int j = 0; j < kPanelOrder; ++j) {
      table.push_back({params.e1 + mid + half * rule.nodes[j], panel.values[j]});
    }
  }
  return table;
}

namespace {

DensityPanel sample_panel(const ModelParams& params, double lo, double hi,
                          const QuadratureConfig& cfg) {
  DensityPanel panel;
  panel.lo = lo;
  panel.hi = hi;
  const GaussLegendreRule& rule = panel_rule();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int j = 0; j < kPanelOrder; ++j) {
    panel.values[j] = spectral_density(params, params.e1 + mid + half * rule.nodes[j], cfg);
  }
  panel.coefficients = legendre_coefficients(panel.values);
  return panel;
}

bool panel_resolved(const DensityPanel& panel, const DensityGridSpec& grid) {
  const auto& c = panel.coefficients;
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  const double tail = std::abs(c[kPanelOrder - 1]) + std::abs(c[kPanelOrder - 2]);
  return tail <= grid.rel_tol * scale || (panel.hi - panel.lo) * tail <= grid.abs_tol;
}

std::vector<double> initial_breakpoints(const ModelParams& params, double upper,
                                        const QuadratureConfig& cfg,
                                        const DensityGridSpec& grid) {
  const double cut = params.coupling.cutoff;
  std::vector<double> points{0.0};
  for (int k = grid.edge_depth; k >= 1; --k) points.push_back(std::ldexp(cut, -k));
  const double spacing = grid.base_spacing * cut;
  const auto uniform = static_cast<int>(std::ceil(upper / spacing));
  for (int k = 1; k <= uniform; ++k) points.push_back(std::min(upper, k * spacing));

  // Cluster points around the unperturbed level and its first-order shifted
  // position, on the scale of the golden-rule width.
  const double level_gap = params.level_gap();
  const double width =
      std::max(2.0 * std::numbers::pi * coupling_sq(params.coupling, level_gap), 1e-8 * cut);
  const double shifted = level_gap - k_pv(params, params.e2, cfg);
  for (double centre : {level_gap, shifted}) {
    if (!(centre > 0.0 && centre < upper)) continue;
    points.push_back(centre);
    for (int j = -2; j <= 12; ++j) {
      const double offset = std::ldexp(width, j);
      for (double p : {centre - offset, centre + offset}) {
        if (p > 0.0 && p < upper) points.push_back(p);
      }
    }
  }

  std::sort(points.begin(), points.end());
  std::vector<double> unique{points.front()};
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] - unique.back() > 1e-9 * points[i]) unique.push_back(points[i]);
  }
  return unique;
}

std::vector<DensityPanel> build_density_panels(const ModelParams& params, double upper,
                                               const DensityGridSpec& grid,
                                               const QuadratureConfig& cfg) {
  const double min_width = 1e-13 * params.coupling.cutoff;
  const std::vector<double> breaks = initial_breakpoints(params, upper, cfg, grid);

  std::vector<std::pair<double, double>> pending;
  for (std::size_t i = breaks.size() - 1; i >= 1; --i) {
    pending.emplace_back(breaks[i - 1], breaks[i]);
  }
  std::vector<DensityPanel> accepted;
  while (!pending.empty()) {
    const auto [lo, hi] = pending.back();
    pending.pop_back();
    DensityPanel panel = sample_panel(params, lo, hi, cfg);
    if (hi - lo <= min_width || panel_resolved(panel, grid)) {
      accepted.push_back(std::move(panel));
      if (static_cast<int>(accepted.size()) > grid.max_panels) {
        throw Error(ErrorCode::NonConvergence, "density panel budget exhausted");
      }
      continue;
    }
    const double mid = 0.5 * (lo + hi);
    pending.emplace_back(mid, hi);
    pending.emplace_back(lo, mid);
  }

  if (grid.resolution > 1) {
    std::vector<DensityPanel> refined;
    refined.reserve(accepted.size() * grid.resolution);
    for (const DensityPanel& panel : accepted) {
      const double step = (panel.hi - panel.lo) / grid.resolution;
      for (int i = 0; i < grid.resolution; ++i) {
        const double lo = panel.lo + i * step;
        const double hi = i + 1 == grid.resolution ? panel.hi : lo + step;
        refined.push_back(sample_panel(params, lo, hi, cfg));
      }
    }
    accepted = std::move(refined);
  }
  return accepted;
}

}  // namespace

SpectralData build_spectral_data(const ModelParams& params, const DensityGridSpec& grid,
                                 const QuadratureConfig& cfg) {
  validate(params);
  validate(cfg);
  if (grid.resolution < 1 || grid.edge_depth < 0 || !(grid.base_spacing > 0.0) ||
      !(grid.rel_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "invalid density grid specification");
  }

  SpectralData data;
  data.params = params;
  data.threshold = threshold_check(params);
  if (data.threshold.decoupled) {
    data.decoupled = true;
    data.weight = 1.0;
    return data;
  }
  if (data.threshold.marginal) {
    throw Error(ErrorCode::MarginalThreshold,
                "E2 - E1 lies within the marginal band of the bound-state threshold");
  }
  if (data.threshold.exists) {
    data.eigenvalue = find_eigenvalue(params, cfg);
    data.weight = eigen_weight(params, *data.eigenvalue, cfg);
  }

  const double cut = params.coupling.cutoff;
  const double level_gap = params.level_gap();
  const double upper = cfg.tail_cut * cut + 2.0 * level_gap;
  data.panels = build_density_panels(params, upper, grid, cfg);

  for (const DensityPanel& panel : data.panels) {
    data.density_mass += (panel.hi - panel.lo) * panel.coefficients[0];
  }
  // Beyond the grid rho ~ |V|^2 / (t - E2)^2.
  const double beyond = upper - level_gap;
  data.density_tail_mass = tail_mass(params.coupling, upper) / (beyond * beyond);
  data.normalization_defect =
      std::abs(data.weight + data.density_mass + data.density_tail_mass - 1.0);
  if (!(data.normalization_defect <= kNormalizationLimit)) {
    throw Error(ErrorCode::NormalizationFailure,
                "spectral measure normalization defect " +
                    std::to_string(data.normalization_defect) + " exceeds limit");
  }
  return data;
}

}  // namespace spdecay
