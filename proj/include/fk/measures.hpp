#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "fk/geometry.hpp"

namespace fk {

/// Wide float used wherever a strict inequality has to survive k = 50:
/// 1 - 10^-50 is not representable in binary64.
using Precise = boost::multiprecision::cpp_bin_float_100;

inline constexpr double kDimensionTolerance = 1e-12;

enum class Regime {
  classical,  // D_s = 1
  sub,        // 1 < D_s < 2
  critical,   // D_s = 2
  super,      // D_s > 2
};

std::string_view to_string(Regime r);
Regime regime_from_string(std::string_view s);

/// Throws std::invalid_argument for ds < 1 - tolerance.
Regime classify_dimension(double ds);

/// An interval with per-side strictness. `upper` may be +infinity. The
/// classical regime is the closed degenerate interval [0, 0].
struct RegimeBound {
  Regime regime = Regime::classical;
  double lower = 0.0;
  double upper = 0.0;
  bool lower_strict = false;
  bool upper_strict = false;

  template <class Real>
  bool contains(const Real& v) const {
    const bool above = lower_strict ? (v > Real(lower)) : (v >= Real(lower));
    if (!above) return false;
    if (std::isinf(upper)) return true;
    return upper_strict ? (v < Real(upper)) : (v <= Real(upper));
  }

  friend bool operator==(const RegimeBound&, const RegimeBound&) = default;
};

struct ScaleRow {
  int k = 0;
  double dx_k = 0.0;
  double N_k = 0.0;
  double L_k = 0.0;
  double A_k = 0.0;
  double v_k = 0.0;
  double gamma = 0.0;
  double dA_k0 = 0.0;
  double dL_k = 0.0;

  friend bool operator==(const ScaleRow&, const ScaleRow&) = default;
};

/// dx0 / rho^k.
double resolution(int k, double dx0, double rho);

/// N_k * dx_k = L0 (N/rho)^k.
double length_at_scale(int k, const GeneratorSpec& spec, double L0);

double velocity_at_scale(int k, const GeneratorSpec& spec, double L0, double dt);

/// N_k dx_k^2 = L0^2 rho^{k(D_s - 2)}.
double area_at_scale(int k, const GeneratorSpec& spec, double L0);

namespace detail {
void check_gamma_args(int k, double rho, double ds);
}

/// rho^{k(ds-2)} - rho^{-k}. Instantiable with Precise.
template <class Real>
Real gamma_t(int k, const Real& rho, const Real& ds) {
  using std::pow;
  using boost::multiprecision::pow;
  return Real(pow(rho, Real(k) * (ds - 2))) - Real(pow(rho, Real(-k)));
}

inline double gamma(int k, double rho, double ds) {
  detail::check_gamma_args(k, rho, ds);
  return gamma_t<double>(k, rho, ds);
}

/// gamma for a concrete generator with N = rho^{D_s} substituted, arranged
/// as rho^{-k} ((N/rho)^k - 1) so that N/rho = 1 yields exactly zero.
template <class Real>
Real spec_gamma_t(int k, const GeneratorSpec& spec) {
  using std::pow;
  using boost::multiprecision::pow;
  const Real rho(spec.rho());
  const Real ratio = Real(static_cast<double>(spec.segment_count())) / rho;
  return Real(pow(rho, -k)) * (Real(pow(ratio, k)) - 1);
}

double spec_gamma(int k, const GeneratorSpec& spec);

/// gamma(1..k_max) for fixed rho, ds by repeated multiplication: one real
/// power per call instead of one per k. For ds = 1 both factors are the same
/// number, so every entry is exactly zero.
template <class Real>
std::vector<Real> gamma_series(int k_max, const Real& rho, const Real& ds) {
  using std::pow;
  using boost::multiprecision::pow;
  const Real grow(pow(rho, ds - 2));
  const Real shrink(pow(rho, Real(-1)));
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(k_max));
  Real a(1);
  Real b(1);
  for (int k = 1; k <= k_max; ++k) {
    a *= grow;
    b *= shrink;
    out.push_back(a - b);
  }
  return out;
}

/// L0^2 gamma(k); equals resolution(k) * (length_at_scale(k) - L0).
double delta_area(int k, const GeneratorSpec& spec, double L0);

/// Bounds on dx_k * dL_k for k >= 1 (the lower bound L0^2/2 additionally
/// needs rho >= 2).
RegimeBound regime_bounds(double ds, double L0);

std::vector<ScaleRow> scale_table(const GeneratorSpec& spec, double L0, double dt, int k_max);

/// N^k as an exact integer, for 0 <= k <= 30.
boost::multiprecision::cpp_int exact_cell_count(const GeneratorSpec& spec, int k);

}  // namespace fk
