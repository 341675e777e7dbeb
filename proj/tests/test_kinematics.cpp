#include <gtest/gtest.h>

#include <cmath>

#include "fk/geometry.hpp"
#include "fk/kinematics.hpp"
#include "oracles.hpp"

using namespace fk;

namespace {
const ParticleContext kUnit(1.0, 1.0, 1.0);
}

TEST(ParticleContext, DerivedQuantities) {
  const ParticleContext ctx(2.5, 0.4, 3.0);
  EXPECT_LT(oracle::rel_err(ctx.V0(), 7.5), 1e-12);
  EXPECT_LT(oracle::rel_err(ctx.E0(), 0.5 * 2.5 * 7.5 * 7.5), 1e-12);
  EXPECT_LT(oracle::rel_err(ctx.eta0(), 2.5 * 9.0 / (2.0 * 0.4)), 1e-12);
  EXPECT_EQ(kUnit.eta0(), 0.5);
  EXPECT_THROW(ParticleContext(0.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(ParticleContext(1.0, -1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(ParticleContext(1.0, 1.0, NAN), std::invalid_argument);
}

TEST(AreolarVelocity, Examples) {
  for (int k = 0; k <= 20; ++k) EXPECT_EQ(areolar_velocity_change(k, line_generator(), kUnit), 0.0);
  EXPECT_NEAR(areolar_velocity_change(1, koch_generator(), kUnit), 1.0 / 9.0, 1e-16);
  EXPECT_NEAR(areolar_velocity_change(1, koch_generator(), ParticleContext(1.0, 3.0, 1.0)), 1.0 / 27.0, 1e-16);
}

TEST(UncertaintyTable, MomentumIsMassTimesVelocity) {
  const ParticleContext ctx(3.7, 0.9, 1.4);
  for (auto which : {Builtin::koch, Builtin::peano, Builtin::cesaro}) {
    const auto rows = uncertainty_table(builtin(which, 40.0), ctx, 30);
    ASSERT_EQ(rows.size(), 31u);
    for (const auto& r : rows) EXPECT_LT(oracle::rel_err(r.dP_k, 3.7 * r.dV_k), 1e-12);
  }
  EXPECT_EQ(uncertainty_table(peano_generator(), ctx, 3)[2].regime, Regime::critical);
}

TEST(UncertaintyProduct, Examples) {
  const ParticleContext wide(5.0, 0.1, 2.0);
  for (int k = 0; k <= 30; ++k) {
    EXPECT_EQ(uncertainty_product(k, line_generator(), wide), 0.0);
    EXPECT_EQ(uncertainty_product_via_gamma(k, line_generator(), wide), 0.0);
  }
  const double peano = uncertainty_product(1, peano_generator(), kUnit);
  EXPECT_NEAR(peano, 2.0 / 3.0, 1e-15);
  EXPECT_GE(peano, kUnit.eta0());
  EXPECT_LT(peano, 2.0 * kUnit.eta0());

  // m * dx_1 * (L_1 - L_0) / dt from the refined Koch polyline.
  const double l1 = oracle::polyline_length(refine(unit_segment(), koch_generator(), 1).vertices);
  EXPECT_NEAR(uncertainty_product(1, koch_generator(), kUnit), (l1 - 1.0) / 3.0, 1e-15);
  EXPECT_NEAR(uncertainty_product(1, koch_generator(), kUnit), 1.0 / 9.0, 1e-15);
}

TEST(UncertaintyProduct, TwoRoutesAgree) {
  const ParticleContext ctx(0.3, 1.7, 2.2);
  for (auto which : {Builtin::line, Builtin::koch, Builtin::peano, Builtin::cesaro}) {
    const auto spec = builtin(which, 65.0);
    for (int k = 0; k <= 40; ++k) {
      const double a = uncertainty_product(k, spec, ctx);
      const double b = uncertainty_product_via_gamma(k, spec, ctx);
      EXPECT_LT(oracle::rel_err(a, b), 1e-12) << spec.name() << " k=" << k << " " << a << " " << b;
    }
  }
}

TEST(UncertaintyProduct, ScaleInvarianceAtFixedAction) {
  // m L0^2 / (2 dt) = 1/2 in every context below.
  const ParticleContext contexts[] = {
      {1.0, 1.0, 1.0}, {4.0, 1.0, 0.5}, {0.25, 4.0, 4.0}, {9.0, 1.0, 1.0 / 3.0}, {2.0, 8.0, 2.0}};
  for (auto which : {Builtin::koch, Builtin::peano, Builtin::cesaro}) {
    const auto spec = builtin(which, 50.0);
    for (int k = 0; k <= 30; ++k) {
      const double ref = uncertainty_product(k, spec, contexts[0]);
      for (const auto& ctx : contexts) {
        EXPECT_NEAR(ctx.eta0(), 0.5, 1e-15);
        EXPECT_LT(oracle::rel_err(uncertainty_product(k, spec, ctx), ref), 1e-12);
      }
    }
  }
}

TEST(UncertaintyProduct, ShrinksAsCesaroFlattens) {
  double prev = INFINITY;
  for (double theta : {89.0, 80.0, 70.0, 61.0, 30.0, 5.0, 0.5}) {
    const double p = uncertainty_product(5, cesaro_generator(theta), kUnit);
    EXPECT_LT(p, prev) << "theta " << theta;
    EXPECT_GT(p, 0.0);
    prev = p;
  }
  EXPECT_LT(uncertainty_product(5, cesaro_generator(0.01), kUnit), 1e-8);
}

TEST(UncertaintyProduct, CriticalApproachesTwiceActionFromBelow) {
  const auto peano = peano_generator();
  Precise prev(0);
  for (int k = 1; k <= 50; ++k) {
    const Precise p = 2 * Precise(kUnit.eta0()) * spec_gamma_t<Precise>(k, peano);
    EXPECT_GT(p, prev);
    EXPECT_LT(p, 2 * Precise(kUnit.eta0()));
    prev = p;
  }
}

TEST(ClassifyRegime, Examples) {
  const auto crit = classify_regime(2.0, kUnit);
  EXPECT_EQ(crit, (RegimeBound{Regime::critical, 0.5, 1.0, false, true}));

  const auto cls = classify_regime(1.0, ParticleContext(7.0, 2.0, 3.0));
  EXPECT_EQ(cls, (RegimeBound{Regime::classical, 0.0, 0.0, false, false}));

  const ParticleContext eta_one(2.0, 1.0, 1.0);
  const auto sup = classify_regime(2.5, eta_one);
  EXPECT_EQ(sup.regime, Regime::super);
  EXPECT_EQ(sup.lower, 1.0);
  EXPECT_TRUE(sup.lower_strict);
  EXPECT_TRUE(std::isinf(sup.upper));

  const auto sub = classify_regime(1.5, eta_one);
  EXPECT_EQ(sub, (RegimeBound{Regime::sub, 0.0, 2.0, true, true}));

  EXPECT_THROW(classify_regime(0.5, kUnit), std::invalid_argument);
}

TEST(VerifyBounds, BuiltinsHaveNoViolations) {
  const ParticleContext ctx(1.3, 0.7, 2.1);
  for (auto which : {Builtin::line, Builtin::koch, Builtin::peano}) {
    const auto report = verify_bounds(builtin(which), ctx, 1, 30);
    ASSERT_EQ(report.rows.size(), 30u);
    EXPECT_TRUE(report.violations().empty()) << report.spec;
    EXPECT_TRUE(report.rho_ge_2);
    EXPECT_EQ(report.k_min, 1);
    EXPECT_LT(oracle::rel_err(report.eta0, ctx.eta0()), 1e-15);
  }
  for (const auto& r : verify_bounds(line_generator(), ctx, 1, 30).rows) EXPECT_EQ(r.product, 0.0);
  for (const auto& r : verify_bounds(koch_generator(), kUnit, 1, 30).rows) {
    EXPECT_GT(r.product, 0.0);
    EXPECT_LT(r.product, 1.0);
  }
  for (const auto& r : verify_bounds(peano_generator(), kUnit, 1, 30).rows) {
    EXPECT_GE(r.product, 0.5);
    EXPECT_LE(r.product, 1.0);
  }
}

TEST(VerifyBounds, CesaroFamily) {
  for (double theta = 2.0; theta < 90.0; theta += 4.0) {
    EXPECT_TRUE(verify_bounds(cesaro_generator(theta), kUnit, 1, 50).violations().empty()) << theta;
  }
}

TEST(VerifyBounds, RejectsKZero) {
  EXPECT_THROW(verify_bounds(koch_generator(), kUnit, 0, 3), std::invalid_argument);
  EXPECT_THROW(verify_bounds(koch_generator(), kUnit, 4, 3), std::invalid_argument);
}

TEST(VerifyBounds, LowerBoundAttainedAtRhoTwo) {
  // N = 4, rho = 2: D_s = 2 and gamma(1) = 1/2 exactly.
  const GeneratorSpec square("square-cap", 2.0, {{1, 0}, {0, 1}, {0, -1}, {1, 0}});
  EXPECT_EQ(similarity_dimension(square), 2.0);
  const auto report = verify_bounds(square, kUnit, 1, 20);
  EXPECT_EQ(report.rows[0].product, kUnit.eta0());
  EXPECT_TRUE(report.rows[0].pass);
  EXPECT_TRUE(report.violations().empty());
}

TEST(VerifyBounds, FlagsSmallRho) {
  const GeneratorSpec narrow("narrow", 1.5, {{0.75, std::sqrt(1 - 0.5625)}, {0.75, -std::sqrt(1 - 0.5625)}});
  EXPECT_FALSE(verify_bounds(narrow, kUnit, 1, 5).rho_ge_2);
}
