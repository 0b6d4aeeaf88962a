#pragma once

#include <optional>
#include <string_view>

namespace spdecay {

/// Structural class of |V(x)|^2 near the continuum edge x = 0.
///
/// TwoDimExp:   |V(x)|^2 = g^2 exp(-x/L),     V(0) != 0.
/// ThreeDimExp: |V(x)|^2 = g^2 x exp(-x/L),   |V(x)|^2 = x V1(x), V1(0) != 0.
enum class CouplingFamily { TwoDimExp, ThreeDimExp };

struct CouplingModel {
  CouplingFamily family = CouplingFamily::ThreeDimExp;
  double strength_sq = 0.0;  // g^2
  double cutoff = 1.0;       // L
};

/// Value and first derivative of |V(x)|^2 at x = 0.
struct EdgeExpansion {
  double value;
  double slope;
};

void validate(const CouplingModel& model);

/// |V(x)|^2 for x >= 0.
double coupling_sq(const CouplingModel& model, double x);

/// Integral of |V(x)|^2 over [0, inf).
double l2_norm_sq(const CouplingModel& model);

/// Integral of |V(x)|^2 / x over [0, inf); +infinity when it diverges at the edge.
double sq_over_x_integral(const CouplingModel& model);

/// Integral of |V(x)|^2 over [x0, inf), x0 >= 0. Used to bound truncated tails.
double tail_mass(const CouplingModel& model, double x0);

EdgeExpansion edge_expansion(const CouplingModel& model);

inline bool is_decoupled(const CouplingModel& model) noexcept {
  return model.strength_sq == 0.0;
}

std::string_view family_name(CouplingFamily family) noexcept;
std::optional<CouplingFamily> parse_family(std::string_view name) noexcept;

}  // namespace spdecay
