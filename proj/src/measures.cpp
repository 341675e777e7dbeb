#include "fk/measures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fk/parallel.hpp"

namespace fk {

namespace {

void check_k(int k) {
  if (k < 0) throw std::invalid_argument("scale index k must be >= 0");
}

void check_length(double L0) {
  if (!(L0 > 0.0) || !std::isfinite(L0)) {
    throw std::invalid_argument("base length L0 must be a positive finite number");
  }
}

double ratio(const GeneratorSpec& spec) {
  return static_cast<double>(spec.segment_count()) / spec.rho();
}

}  // namespace

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::classical:
      return "classical";
    case Regime::sub:
      return "sub";
    case Regime::critical:
      return "critical";
    case Regime::super:
      return "super";
  }
  return "unknown";
}

Regime regime_from_string(std::string_view s) {
  if (s == "classical") return Regime::classical;
  if (s == "sub") return Regime::sub;
  if (s == "critical") return Regime::critical;
  if (s == "super") return Regime::super;
  throw std::invalid_argument("unknown regime '" + std::string(s) + "'");
}

Regime classify_dimension(double ds) {
  if (!std::isfinite(ds) || ds < 1.0 - kDimensionTolerance) {
    throw std::invalid_argument("similarity dimension must be >= 1");
  }
  if (std::abs(ds - 1.0) <= kDimensionTolerance) return Regime::classical;
  if (std::abs(ds - 2.0) <= kDimensionTolerance) return Regime::critical;
  return ds < 2.0 ? Regime::sub : Regime::super;
}

double resolution(int k, double dx0, double rho) {
  check_k(k);
  if (!(dx0 > 0.0)) throw std::invalid_argument("dx0 must be > 0");
  if (!(rho > 1.0)) throw std::invalid_argument("rho must be > 1");
  return dx0 / std::pow(rho, k);
}

double length_at_scale(int k, const GeneratorSpec& spec, double L0) {
  check_k(k);
  check_length(L0);
  return L0 * std::pow(ratio(spec), k);
}

double velocity_at_scale(int k, const GeneratorSpec& spec, double L0, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("traversal time dt must be > 0");
  return length_at_scale(k, spec, L0) / dt;
}

double area_at_scale(int k, const GeneratorSpec& spec, double L0) {
  check_k(k);
  check_length(L0);
  const double rho = spec.rho();
  return L0 * L0 * std::pow(static_cast<double>(spec.segment_count()) / (rho * rho), k);
}

namespace detail {
void check_gamma_args(int k, double rho, double ds) {
  check_k(k);
  if (!(rho > 1.0)) throw std::invalid_argument("rho must be > 1");
  if (!(ds >= 1.0 - kDimensionTolerance)) throw std::invalid_argument("ds must be >= 1");
}
}  // namespace detail

double spec_gamma(int k, const GeneratorSpec& spec) {
  check_k(k);
  return spec_gamma_t<double>(k, spec);
}

double delta_area(int k, const GeneratorSpec& spec, double L0) {
  check_length(L0);
  return L0 * L0 * spec_gamma(k, spec);
}

RegimeBound regime_bounds(double ds, double L0) {
  check_length(L0);
  const double sq = L0 * L0;
  const double inf = std::numeric_limits<double>::infinity();
  switch (classify_dimension(ds)) {
    case Regime::super:
      return {Regime::super, sq / 2.0, inf, true, true};
    case Regime::critical:
      return {Regime::critical, sq / 2.0, sq, false, true};
    case Regime::sub:
      return {Regime::sub, 0.0, sq, true, true};
    case Regime::classical:
      break;
  }
  return {Regime::classical, 0.0, 0.0, false, false};
}

std::vector<ScaleRow> scale_table(const GeneratorSpec& spec, double L0, double dt, int k_max) {
  check_k(k_max);
  check_length(L0);
  if (!(dt > 0.0)) throw std::invalid_argument("traversal time dt must be > 0");

  std::vector<ScaleRow> rows(static_cast<std::size_t>(k_max) + 1);
  parallel_for(rows.size(), [&](std::size_t i) {
    const int k = static_cast<int>(i);
    ScaleRow row;
    row.k = k;
    row.dx_k = resolution(k, L0, spec.rho());
    row.N_k = std::pow(static_cast<double>(spec.segment_count()), k);
    row.L_k = length_at_scale(k, spec, L0);
    row.A_k = area_at_scale(k, spec, L0);
    row.v_k = row.L_k / dt;
    row.gamma = spec_gamma(k, spec);
    row.dA_k0 = L0 * L0 * row.gamma;
    row.dL_k = row.L_k - L0;
    rows[i] = row;
  });
  return rows;
}

boost::multiprecision::cpp_int exact_cell_count(const GeneratorSpec& spec, int k) {
  if (k < 0 || k > 30) throw std::out_of_range("exact cell counts are available for 0 <= k <= 30");
  return boost::multiprecision::pow(boost::multiprecision::cpp_int(spec.segment_count()),
                                    static_cast<unsigned>(k));
}

}  // namespace fk
