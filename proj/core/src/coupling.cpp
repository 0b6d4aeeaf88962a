#include "spdecay/coupling.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "spdecay/error.hpp"

namespace spdecay {

void validate(const CouplingModel& model) {
  if (!(model.strength_sq >= 0.0) || !std::isfinite(model.strength_sq)) {
    throw Error(ErrorCode::InvalidArgument,
                "coupling strength g^2 must be finite and nonnegative");
  }
  if (!(model.cutoff > 0.0) || !std::isfinite(model.cutoff)) {
    throw Error(ErrorCode::InvalidArgument,
                "coupling cutoff must be finite and positive");
  }
}

double coupling_sq(const CouplingModel& model, double x) {
  const double decay = std::exp(-x / model.cutoff);
  switch (model.family) {
    case CouplingFamily::TwoDimExp:
      return model.strength_sq * decay;
    case CouplingFamily::ThreeDimExp:
      return model.strength_sq * x * decay;
  }
  return 0.0;
}

double l2_norm_sq(const CouplingModel& model) {
  const double cut = model.cutoff;
  switch (model.family) {
    case CouplingFamily::TwoDimExp:
      return model.strength_sq * cut;
    case CouplingFamily::ThreeDimExp:
      return model.strength_sq * cut * cut;
  }
  return 0.0;
}

double sq_over_x_integral(const CouplingModel& model) {
  if (is_decoupled(model)) return 0.0;
  switch (model.family) {
    case CouplingFamily::TwoDimExp:
      return std::numeric_limits<double>::infinity();
    case CouplingFamily::ThreeDimExp:
      return model.strength_sq * model.cutoff;
  }
  return 0.0;
}

double tail_mass(const CouplingModel& model, double x0) {
  const double cut = model.cutoff;
  const double decay = std::exp(-x0 / cut);
  switch (model.family) {
    case CouplingFamily::TwoDimExp:
      return model.strength_sq * cut * decay;
    case CouplingFamily::ThreeDimExp:
      return model.strength_sq * cut * (x0 + cut) * decay;
  }
  return 0.0;
}

EdgeExpansion edge_expansion(const CouplingModel& model) {
  switch (model.family) {
    case CouplingFamily::TwoDimExp:
      return {model.strength_sq, -model.strength_sq / model.cutoff};
    case CouplingFamily::ThreeDimExp:
      return {0.0, model.strength_sq};
  }
  return {0.0, 0.0};
}

std::string_view family_name(CouplingFamily family) noexcept {
  return family == CouplingFamily::TwoDimExp ? "2d-exp" : "3d-exp";
}

std::optional<CouplingFamily> parse_family(std::string_view name) noexcept {
  if (name == "2d-exp") return CouplingFamily::TwoDimExp;
  if (name == "3d-exp") return CouplingFamily::ThreeDimExp;
  return std::nullopt;
}

}  // namespace spdecay
