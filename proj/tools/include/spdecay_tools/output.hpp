#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "spdecay/evolution.hpp"
#include "spdecay/spectrum.hpp"

namespace spdecay::tools {

/// 17 significant digits, lowercase scientific ("1.0000000000000000e+00").
/// Non-finite values print as "inf", "-inf" or "nan".
std::string format_double(double value);

/// A flat JSON object with keys kept in insertion order.
class FlatJson {
 public:
  using Value = std::variant<std::nullptr_t, bool, long long, double, std::string>;

  FlatJson& set(std::string key, Value value);
  FlatJson& set_number(std::string key, std::optional<double> value);
  std::string dump() const;

 private:
  std::vector<std::pair<std::string, Value>> entries_;
};

/// Writes content to path, replacing any existing file.
void write_text_file(const std::filesystem::path& path, std::string_view content);

std::string density_csv(const SpectralData& spec);
std::string amplitude_csv(const AmplitudeSeries& series);

/// e0 (nullable), weight, threshold lhs/rhs, normalization defect and grid facts.
FlatJson spectral_summary(const SpectralData& spec);

}  // namespace spdecay::tools
