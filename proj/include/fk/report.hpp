#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "fk/estimator.hpp"
#include "fk/kinematics.hpp"
#include "fk/measures.hpp"

namespace fk {

struct ReportInputs {
  std::optional<std::vector<ScaleRow>> scales;
  std::optional<MeasurementResult> measurement;
  std::optional<BoundsReport> bounds;

  bool empty() const { return !scales && !measurement && !bounds; }
};

/// {"scales": [...], "measurement": {...}, "bounds": {...}} with absent
/// inputs omitted.
nlohmann::json bundle_json(const ReportInputs& in);

/// Writes <stem>.json (the bundle), plus <stem>.scales.csv and
/// <stem>.measurement.csv for the inputs that have a CSV form. Existing
/// files are overwritten. Returns the paths written, in that order.
/// Throws std::invalid_argument on empty inputs and std::runtime_error
/// when a file cannot be written.
std::vector<std::filesystem::path> write_report(const ReportInputs& in, const std::filesystem::path& stem);

}  // namespace fk
