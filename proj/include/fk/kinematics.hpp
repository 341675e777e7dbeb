#pragma once

#include <string>
#include <vector>

#include "fk/geometry.hpp"
#include "fk/measures.hpp"

namespace fk {

/// Mass, traversal time and base length of the particle, plus the derived
/// V0 = L0/dt, E0 = m V0^2 / 2 and the action scale eta0 = E0 dt.
/// Units are whatever the caller uses; only positivity is checked.
class ParticleContext {
 public:
  ParticleContext(double mass, double dt, double L0);

  double mass() const { return mass_; }
  double dt() const { return dt_; }
  double L0() const { return L0_; }
  double V0() const { return L0_ / dt_; }
  double E0() const { return 0.5 * mass_ * V0() * V0(); }
  double eta0() const { return E0() * dt_; }

 private:
  double mass_;
  double dt_;
  double L0_;
};

struct UncertaintyRow {
  int k = 0;
  double dV_k = 0.0;  // dx_k * dv_k
  double dP_k = 0.0;  // dx_k * dp_k = m * dV_k
  Regime regime = Regime::classical;
};

/// delta_area(k) / dt.
double areolar_velocity_change(int k, const GeneratorSpec& spec, const ParticleContext& ctx);

/// m * dx_k * dL_k / dt, from the closed-form length.
double uncertainty_product(int k, const GeneratorSpec& spec, const ParticleContext& ctx);

/// 2 eta0 gamma(k, rho, D_s), with D_s taken from the generator.
double uncertainty_product_via_gamma(int k, const GeneratorSpec& spec, const ParticleContext& ctx);

/// Action-unit bounds: (eta0, inf), [eta0, 2 eta0), (0, 2 eta0) or {0}.
RegimeBound classify_regime(double ds, const ParticleContext& ctx);

std::vector<UncertaintyRow> uncertainty_table(const GeneratorSpec& spec, const ParticleContext& ctx,
                                              int k_max);

struct BoundsRow {
  int k = 0;
  double product = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool pass = false;

  friend bool operator==(const BoundsRow&, const BoundsRow&) = default;
};

struct BoundsReport {
  std::string spec;
  double ds = 0.0;
  double eta0 = 0.0;
  std::vector<BoundsRow> rows;
  int k_min = 1;
  bool rho_ge_2 = false;

  std::vector<int> violations() const;

  friend bool operator==(const BoundsReport&, const BoundsReport&) = default;
};

/// Checks every k in [k_first, k_last] (k_first >= 1) against the regime
/// interval. Products are evaluated in Precise arithmetic for the pass
/// flag; the reported `product` is that value rounded to double.
BoundsReport verify_bounds(const GeneratorSpec& spec, const ParticleContext& ctx, int k_first,
                           int k_last);

}  // namespace fk
