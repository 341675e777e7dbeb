#include "fk/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace fk {

ParticleContext::ParticleContext(double mass, double dt, double L0) : mass_(mass), dt_(dt), L0_(L0) {
  for (const double v : {mass, dt, L0}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("mass, dt and L0 must be positive finite numbers");
    }
  }
}

double areolar_velocity_change(int k, const GeneratorSpec& spec, const ParticleContext& ctx) {
  return delta_area(k, spec, ctx.L0()) / ctx.dt();
}

double uncertainty_product(int k, const GeneratorSpec& spec, const ParticleContext& ctx) {
  const double dx = resolution(k, ctx.L0(), spec.rho());
  const double dL = length_at_scale(k, spec, ctx.L0()) - ctx.L0();
  return ctx.mass() * dx * dL / ctx.dt();
}

double uncertainty_product_via_gamma(int k, const GeneratorSpec& spec, const ParticleContext& ctx) {
  return 2.0 * ctx.eta0() * gamma(k, spec.rho(), similarity_dimension(spec));
}

RegimeBound classify_regime(double ds, const ParticleContext& ctx) {
  // Geometric bounds on dx_k dL_k scale by m / dt into action units.
  RegimeBound b = regime_bounds(ds, ctx.L0());
  const double scale = ctx.mass() / ctx.dt();
  b.lower *= scale;
  if (!std::isinf(b.upper)) b.upper *= scale;
  return b;
}

std::vector<UncertaintyRow> uncertainty_table(const GeneratorSpec& spec, const ParticleContext& ctx,
                                              int k_max) {
  if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  const Regime regime = classify_dimension(similarity_dimension(spec));
  std::vector<UncertaintyRow> rows;
  rows.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    const double dv = areolar_velocity_change(k, spec, ctx);
    rows.push_back({k, dv, ctx.mass() * dv, regime});
  }
  return rows;
}

std::vector<int> BoundsReport::violations() const {
  std::vector<int> out;
  for (const auto& row : rows) {
    if (!row.pass) out.push_back(row.k);
  }
  return out;
}

BoundsReport verify_bounds(const GeneratorSpec& spec, const ParticleContext& ctx, int k_first, int k_last) {
  if (k_first < 1) throw std::invalid_argument("bounds hold for k >= 1 only");
  if (k_last < k_first) throw std::invalid_argument("empty k range");

  BoundsReport report;
  report.spec = spec.name();
  report.ds = similarity_dimension(spec);
  report.eta0 = ctx.eta0();
  report.rho_ge_2 = spec.rho() >= 2.0;

  // Pass/fail is decided on gamma against the unit-length geometric bounds,
  // where the interval ends (0, 1/2, 1) are exact.
  const RegimeBound bound = classify_regime(report.ds, ctx);
  const RegimeBound unit = regime_bounds(report.ds, 1.0);
  const Precise scale = Precise(ctx.mass()) * Precise(ctx.L0()) * Precise(ctx.L0()) / Precise(ctx.dt());
  for (int k = k_first; k <= k_last; ++k) {
    const Precise g = spec_gamma_t<Precise>(k, spec);
    report.rows.push_back(
        {k, static_cast<double>(scale * g), bound.lower, bound.upper, unit.contains(g)});
  }
  return report;
}

}  // namespace fk
