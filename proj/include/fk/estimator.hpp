#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fk/geometry.hpp"

namespace fk {

enum class Method { grid, divider };

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

struct MeasurementRow {
  int k = 0;
  double dx = 0.0;
  double count = 0.0;
  double length = 0.0;  // count * dx

  friend bool operator==(const MeasurementRow&, const MeasurementRow&) = default;
};

struct DimensionFit {
  double ds_hat = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int k_first = 0;
  int k_last = 0;

  friend bool operator==(const DimensionFit&, const DimensionFit&) = default;
};

struct MeasurementResult {
  Method method = Method::grid;
  std::vector<MeasurementRow> rows;
  std::optional<DimensionFit> fit;

  friend bool operator==(const MeasurementResult&, const MeasurementResult&) = default;
};

/// Number of distinct square cells of side `cell` met by the polyline.
///
/// The grid is anchored at the origin and a point (x, y) lies in cell
/// (floor(x/cell), floor(y/cell)), so a point on a grid line belongs to the
/// cell whose lower edge that line is. Every cell containing some point of
/// some segment is counted; a segment through a grid corner therefore also
/// counts the cell owning the corner point.
std::int64_t grid_count(const Polyline& poly, double cell);

/// Compass walk: from the current anchor, step to the first point further
/// along the curve at chord distance exactly `step`. Returns the number of
/// full steps plus the final partial chord divided by `step`.
double divider_count(const Polyline& poly, double step);

struct FitOptions {
  bool exclude_saturated = true;
  double saturation_ratio = 1.05;
};

/// OLS of ln(count) on ln(1/dx). Rows are ordered from coarse to fine; with
/// exclude_saturated, the first row whose count is below saturation_ratio
/// times its predecessor's, and every finer row, are dropped. Rows with
/// count < 1 are never used. Throws std::domain_error if fewer than three
/// scales remain.
DimensionFit estimate_dimension(std::span<const MeasurementRow> rows, const FitOptions& opts = {});

struct MeasureOptions {
  Method method = Method::grid;
  double L0 = 1.0;
  double rho = 3.0;
  int k_first = 1;
  int k_last = 6;
  bool fit = false;
  FitOptions fit_options;
};

/// Measures the polyline on the ladder dx_k = L0 / rho^k, k in
/// [k_first, k_last]. Scales are evaluated concurrently.
MeasurementResult measure(const Polyline& poly, const MeasureOptions& opts);

inline constexpr std::string_view kBrownianPrng = "mt19937_64/splitmix64-chunk8192/box-muller";

struct BrownianPath {
  Polyline path;
  std::uint64_t seed = 0;
  int n = 0;
  double step_std = 1.0;
  std::string prng{kBrownianPrng};

  friend bool operator==(const BrownianPath&, const BrownianPath&) = default;
};

/// n-vertex planar random walk from the origin with independent N(0, step_std^2)
/// increments per axis.
///
/// Increments come in chunks of 8192; chunk c draws from an mt19937_64
/// seeded with the (c+1)-th SplitMix64 output for `seed`, and each
/// increment is one Box-Muller pair built from two 53-bit uniforms. Chunks
/// are generated concurrently and the output does not depend on the thread
/// count.
BrownianPath brownian_path(int n, std::uint64_t seed, double step_std = 1.0);

}  // namespace fk
