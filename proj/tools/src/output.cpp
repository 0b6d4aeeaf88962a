#include "spdecay_tools/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "spdecay/error.hpp"

namespace spdecay::tools {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.16e", value == 0.0 ? 0.0 : value);
  return buffer;
}

FlatJson& FlatJson::set(std::string key, Value value) {
  entries_.emplace_back(std::move(key), std::move(value));
  return *this;
}

FlatJson& FlatJson::set_number(std::string key, std::optional<double> value) {
  if (value && std::isfinite(*value)) return set(std::move(key), *value);
  return set(std::move(key), nullptr);
}

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
  out += '"';
  return out;
}

}  // namespace

std::string FlatJson::dump() const {
  std::string out = "{\n";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& [key, value] = entries_[i];
    out += "  " + quote(key) + ": ";
    if (std::holds_alternative<std::nullptr_t>(value)) {
      out += "null";
    } else if (const bool* b = std::get_if<bool>(&value)) {
      out += *b ? "true" : "false";
    } else if (const long long* n = std::get_if<long long>(&value)) {
      out += std::to_string(*n);
    } else if (const double* d = std::get_if<double>(&value)) {
      out += format_double(*d);
    } else {
      out += quote(std::get<std::string>(value));
    }
    out += i + 1 < entries_.size() ? ",\n" : "\n";
  }
  out += "}\n";
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Config, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::Config, "failed writing '" + path.string() + "'");
}

std::string density_csv(const SpectralData& spec) {
  std::string out = "lambda,rho\n";
  for (const DensitySample& s : spec.density_table()) {
    out += format_double(s.lambda) + "," + format_double(s.rho) + "\n";
  }
  return out;
}

std::string amplitude_csv(const AmplitudeSeries& series) {
  std::string out = "t,re_c,im_c,p\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out += format_double(series.times[i]) + "," + format_double(series.amplitude[i].real()) +
           "," + format_double(series.amplitude[i].imag()) + "," +
           format_double(series.probability[i]) + "\n";
  }
  return out;
}

FlatJson spectral_summary(const SpectralData& spec) {
  FlatJson json;
  json.set_number("e0", spec.eigenvalue ? std::optional(spec.eigenvalue->value) : std::nullopt);
  json.set_number("e0_log_gap",
                  spec.eigenvalue ? std::optional(spec.eigenvalue->log_gap) : std::nullopt);
  json.set("weight", spec.weight);
  json.set("threshold_lhs", spec.threshold.lhs);
  json.set_number("threshold_rhs", spec.threshold.rhs);
  json.set("threshold_rhs_divergent", std::isinf(spec.threshold.rhs));
  json.set("eigenvalue_exists", spec.eigenvalue.has_value());
  json.set("decoupled", spec.decoupled);
  json.set("density_mass", spec.density_mass);
  json.set("density_tail_mass", spec.density_tail_mass);
  json.set("normalization_defect", spec.normalization_defect);
  json.set("lambda_max", spec.lambda_max());
  json.set("density_panels", static_cast<long long>(spec.panels.size()));
  return json;
}

}  // namespace spdecay::tools
