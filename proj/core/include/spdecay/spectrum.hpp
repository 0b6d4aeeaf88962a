#pragma once

#include <optional>
#include <vector>

#include "spdecay/legendre.hpp"
#include "spdecay/model.hpp"
#include "spdecay/quadrature.hpp"

namespace spdecay {

/// Inputs within this distance of the bound-state threshold are rejected.
inline constexpr double kMarginalBand = 1e-8;

/// Largest tolerated |w + density mass + tail - 1|.
inline constexpr double kNormalizationLimit = 1e-4;

struct ThresholdReport {
  bool exists = false;
  double lhs = 0.0;  // E2 - E1
  double rhs = 0.0;  // integral of |V|^2 / x; +inf when divergent
  bool decoupled = false;
  bool marginal = false;
};

/// Bound-state criterion. Two-dimensional couplings always bind; the
/// three-dimensional family binds iff E2 - E1 < integral of |V|^2 / x.
ThresholdReport threshold_check(const ModelParams& params);

/// Discrete eigenvalue below the continuum edge. log_gap = ln(E1 - E0) keeps
/// the distance to the edge even when it is far below double resolution of E1.
struct Eigenvalue {
  double value = 0.0;
  double log_gap = 0.0;
  double residual = 0.0;       // E2 - E0 - k(E0)
  double bracket_width = 0.0;  // final bracket width in energy
};

struct EigenSearch {
  // Distance below E1 where the bracket search starts; <= 0 means E2 - E1.
  double initial_gap = 0.0;
};

/// Root of F(lambda) = E2 - lambda - k(lambda) on (-inf, E1).
///
/// F is strictly decreasing, so the root is unique. The search runs in the
/// variable u = ln(E1 - lambda): the upper end of the bracket is found by
/// doubling E1 - lambda until F > 0, the lower end by stepping u down until
/// F < 0. In the three-dimensional case F(E1) is evaluated first and decides
/// existence.
///
/// Throws NoEigenvalue when F(E1) >= 0 or the coupling vanishes,
/// MarginalThreshold when |F(E1)| < kMarginalBand, BracketFailure if the
/// bracket search runs away.
Eigenvalue find_eigenvalue(const ModelParams& params, const QuadratureConfig& cfg,
                           const EigenSearch& search = {});

/// Mass of the eigenvalue in the spectral measure of the initial state:
/// w = 1 / (1 + integral of |V(x)|^2 / (x + E1 - E0)^2).
double eigen_weight(const ModelParams& params, const Eigenvalue& eigen,
                    const QuadratureConfig& cfg);
double eigen_weight(const ModelParams& params, double e0, const QuadratureConfig& cfg);

/// Absolutely continuous spectral density rho(t); zero for t <= E1.
double spectral_density(const ModelParams& params, double t, const QuadratureConfig& cfg);

struct DensityGridSpec {
  // A panel is accepted when its two highest Legendre coefficients are below
  // rel_tol times its largest one, or below abs_tol after scaling by width.
  double rel_tol = 1e-10;
  double abs_tol = 1e-15;
  // Geometric breakpoints E1 + L 2^-k, k = 1..edge_depth.
  int edge_depth = 46;
  // Spacing of the uniform breakpoints, in units of the cutoff L.
  double base_spacing = 0.5;
  int max_panels = 50000;
  // Every accepted panel is split into this many equal panels.
  int resolution = 1;
};

/// One panel of the piecewise density representation. Bounds are offsets
/// mu = lambda - E1; values are rho at the panel's Gauss-Legendre nodes.
struct DensityPanel {
  double lo = 0.0;
  double hi = 0.0;
  PanelArray values{};
  PanelArray coefficients{};
};

struct DensitySample {
  double lambda;
  double rho;
};

struct SpectralData {
  ModelParams params;
  ThresholdReport threshold;
  // Zero coupling: the spectrum is the unperturbed point mass at E2.
  bool decoupled = false;
  std::optional<Eigenvalue> eigenvalue;
  double weight = 0.0;
  std::vector<DensityPanel> panels;
  double density_mass = 0.0;
  double density_tail_mass = 0.0;
  double normalization_defect = 0.0;

  double lambda_max() const {
    return panels.empty() ? params.e1 : params.e1 + panels.back().hi;
  }
  /// (lambda, rho) table: the edge followed by every panel node in order.
  std::vector<DensitySample> density_table() const;
};

/// Eigenvalue, weight and an adaptively refined density representation on
/// [E1, E1 + tail_cut L + 2 (E2 - E1)], plus the normalization defect.
/// Throws NormalizationFailure when the defect exceeds kNormalizationLimit and
/// MarginalThreshold for inputs inside the marginal band.
SpectralData build_spectral_data(const ModelParams& params, const DensityGridSpec& grid,
                                 const QuadratureConfig& cfg);

}  // namespace spdecay
