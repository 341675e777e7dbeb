#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fk/geometry.hpp"
#include "fk/measures.hpp"
#include "oracles.hpp"

using namespace fk;

namespace {
const double kLog34 = std::log(4.0) / std::log(3.0);
}

TEST(Resolution, Examples) {
  EXPECT_EQ(resolution(0, 2.5, 3.0), 2.5);
  EXPECT_EQ(resolution(1, 2.5, 3.0), 2.5 / 3.0);
  EXPECT_EQ(resolution(5, 1.0, 3.0), 1.0 / 243.0);
  EXPECT_THROW(resolution(-1, 1.0, 3.0), std::invalid_argument);
  EXPECT_THROW(resolution(1, 0.0, 3.0), std::invalid_argument);
  EXPECT_THROW(resolution(1, 1.0, 1.0), std::invalid_argument);
}

TEST(LengthAtScale, Examples) {
  for (int k = 0; k <= 30; ++k) EXPECT_EQ(length_at_scale(k, line_generator(), 1.7), 1.7);
  EXPECT_NEAR(length_at_scale(3, koch_generator(), 1.0), 64.0 / 27.0, 1e-15);
  // Peano k = 2 against the summed segment lengths of the refined curve.
  const double measured = oracle::polyline_length(refine(unit_segment(), peano_generator(), 2).vertices);
  EXPECT_NEAR(measured, 9.0, 1e-12);
  EXPECT_NEAR(length_at_scale(2, peano_generator(), 1.0), measured, 1e-12);
}

TEST(VelocityAtScale, Examples) {
  for (int k = 0; k <= 20; ++k) EXPECT_EQ(velocity_at_scale(k, line_generator(), 1.0, 1.0), 1.0);
  EXPECT_NEAR(velocity_at_scale(1, koch_generator(), 1.0, 1.0), 4.0 / 3.0, 1e-15);
  const double expect = oracle::power(4.0 / 3.0, 10) / 2.0;
  EXPECT_NEAR(expect, 8.87886, 1e-5);
  EXPECT_LT(oracle::rel_err(velocity_at_scale(10, koch_generator(), 1.0, 2.0), expect), 1e-14);
  EXPECT_THROW(velocity_at_scale(1, koch_generator(), 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(velocity_at_scale(1, koch_generator(), 1.0, -1.0), std::invalid_argument);
}

TEST(AreaAtScale, Examples) {
  EXPECT_NEAR(area_at_scale(1, koch_generator(), 1.0), 4.0 / 9.0, 1e-16);
  for (int k = 0; k <= 40; ++k) EXPECT_NEAR(area_at_scale(k, peano_generator(), 1.0), 1.0, 1e-15);
  // N^k (dx_k)^2 = 3^4 (3^-4)^2.
  const double dx = 1.0 / oracle::power(3.0, 4);
  EXPECT_NEAR(area_at_scale(4, line_generator(), 1.0), oracle::power(3.0, 4) * dx * dx, 1e-17);
  EXPECT_NEAR(area_at_scale(4, line_generator(), 1.0), 1.0 / 81.0, 1e-17);
}

TEST(AreaAtScale, MatchesCellCountTimesCellArea) {
  for (auto which : {Builtin::line, Builtin::koch, Builtin::peano, Builtin::cesaro}) {
    const auto spec = builtin(which, 33.0);
    for (int k = 0; k <= 40; ++k) {
      const double dx = resolution(k, 1.3, spec.rho());
      const double nk = std::pow(static_cast<double>(spec.segment_count()), k);
      EXPECT_LT(oracle::rel_err(area_at_scale(k, spec, 1.3), nk * dx * dx), 1e-12) << spec.name() << " " << k;
    }
  }
}

TEST(Gamma, Examples) {
  for (int k = 0; k <= 60; ++k) {
    for (double rho : {1.5, 2.0, 3.0, 7.25}) EXPECT_EQ(gamma(k, rho, 1.0), 0.0);
  }
  EXPECT_NEAR(gamma(1, 3.0, 2.0), 2.0 / 3.0, 4e-16);
  EXPECT_NEAR(gamma(1, 3.0, kLog34), 1.0 / 9.0, 1e-15);
  // Same value from the level-1 Koch polyline: dx_1 * (L_1 - L_0).
  const double l1 = oracle::polyline_length(refine(unit_segment(), koch_generator(), 1).vertices);
  EXPECT_NEAR((1.0 / 3.0) * (l1 - 1.0), gamma(1, 3.0, kLog34), 1e-15);
  EXPECT_EQ(gamma(0, 3.0, 2.7), 0.0);
  EXPECT_THROW(gamma(1, 3.0, 0.5), std::invalid_argument);
  EXPECT_THROW(gamma(1, 1.0, 1.5), std::invalid_argument);
  EXPECT_THROW(gamma(-2, 3.0, 1.5), std::invalid_argument);
}

TEST(Gamma, SeriesMatchesPointwise) {
  for (double rho : {2.0, 3.0, 9.5}) {
    for (double ds : {1.0, 1.37, 2.0, 2.6}) {
      const auto series = gamma_series<double>(40, rho, ds);
      for (int k = 1; k <= 40; ++k) {
        EXPECT_NEAR(series[k - 1], gamma(k, rho, ds), 1e-13 * std::max(1.0, std::abs(gamma(k, rho, ds))));
      }
    }
  }
  for (const auto& g : gamma_series<Precise>(50, Precise(7), Precise(1))) EXPECT_EQ(g, 0);
}

TEST(DeltaArea, Examples) {
  for (int k = 0; k <= 20; ++k) EXPECT_EQ(delta_area(k, line_generator(), 1.0), 0.0);
  EXPECT_NEAR(delta_area(1, koch_generator(), 1.0), (1.0 / 3.0) * (4.0 / 3.0 - 1.0), 1e-16);
  EXPECT_NEAR(delta_area(2, koch_generator(), 1.0), (1.0 / 9.0) * (16.0 / 9.0 - 1.0), 1e-16);
  EXPECT_NEAR(delta_area(2, koch_generator(), 1.0), 7.0 / 81.0, 1e-16);
}

TEST(DeltaArea, EqualsResolutionTimesLengthGain) {
  for (auto which : {Builtin::line, Builtin::koch, Builtin::peano, Builtin::cesaro}) {
    const auto spec = builtin(which, 70.0);
    for (int k = 0; k <= 40; ++k) {
      const double alt = resolution(k, 2.0, spec.rho()) * (length_at_scale(k, spec, 2.0) - 2.0);
      EXPECT_LT(oracle::rel_err(delta_area(k, spec, 2.0), alt), 1e-12) << spec.name() << " " << k;
    }
  }
}

TEST(RegimeBounds, Examples) {
  const auto crit = regime_bounds(2.0, 1.0);
  EXPECT_EQ(crit.regime, Regime::critical);
  EXPECT_EQ(crit.lower, 0.5);
  EXPECT_FALSE(crit.lower_strict);
  EXPECT_EQ(crit.upper, 1.0);
  EXPECT_TRUE(crit.upper_strict);
  EXPECT_TRUE(crit.contains(0.5));
  EXPECT_FALSE(crit.contains(1.0));

  const auto cls = regime_bounds(1.0, 3.0);
  EXPECT_EQ(cls.regime, Regime::classical);
  EXPECT_TRUE(cls.contains(0.0));
  EXPECT_FALSE(cls.contains(1e-300));

  const auto sub = regime_bounds(kLog34, 1.0);
  EXPECT_EQ(sub, (RegimeBound{Regime::sub, 0.0, 1.0, true, true}));
  EXPECT_FALSE(sub.contains(0.0));

  const auto sup = regime_bounds(2.5, 2.0);
  EXPECT_EQ(sup.regime, Regime::super);
  EXPECT_EQ(sup.lower, 2.0);
  EXPECT_TRUE(std::isinf(sup.upper));
  EXPECT_TRUE(sup.contains(1e300));
  EXPECT_FALSE(sup.contains(2.0));

  EXPECT_THROW(regime_bounds(0.9, 1.0), std::invalid_argument);
}

TEST(RegimeBounds, DimensionTolerance) {
  EXPECT_EQ(classify_dimension(2.0 + 5e-13), Regime::critical);
  EXPECT_EQ(classify_dimension(2.0 + 5e-12), Regime::super);
  EXPECT_EQ(classify_dimension(1.0 - 5e-13), Regime::classical);
  EXPECT_EQ(classify_dimension(1.0 + 5e-12), Regime::sub);
}

TEST(ScaleTable, Examples) {
  const auto k0 = scale_table(koch_generator(), 1.0, 1.0, 0);
  ASSERT_EQ(k0.size(), 1u);
  EXPECT_EQ(k0[0].L_k, 1.0);
  EXPECT_EQ(k0[0].A_k, 1.0);
  EXPECT_EQ(k0[0].gamma, 0.0);

  const auto k3 = scale_table(koch_generator(), 1.0, 1.0, 3);
  ASSERT_EQ(k3.size(), 4u);
  EXPECT_NEAR(k3[3].L_k, 64.0 / 27.0, 1e-15);
  EXPECT_NEAR(k3[3].A_k, oracle::power(4.0 / 9.0, 3), 1e-16);
  EXPECT_EQ(k3[3].N_k, 64.0);

  for (const auto& row : scale_table(line_generator(), 1.0, 1.0, 5)) {
    EXPECT_EQ(row.L_k, 1.0);
    EXPECT_EQ(row.dA_k0, 0.0);
  }
  EXPECT_THROW(scale_table(koch_generator(), 1.0, 0.0, 3), std::invalid_argument);
  EXPECT_THROW(scale_table(koch_generator(), 1.0, 1.0, -1), std::invalid_argument);
}

TEST(ScaleTable, RowInvariants) {
  for (auto which : {Builtin::line, Builtin::koch, Builtin::peano, Builtin::cesaro}) {
    const auto spec = builtin(which, 50.0);
    const auto rows = scale_table(spec, 0.7, 2.0, 40);
    for (const auto& r : rows) {
      EXPECT_EQ(r.dx_k, 0.7 / std::pow(spec.rho(), r.k));
      EXPECT_LT(oracle::rel_err(r.A_k, r.dx_k * r.L_k), 1e-12);
      EXPECT_NEAR(r.dA_k0, r.A_k - r.dx_k * 0.7, 1e-12 * r.A_k) << spec.name() << " " << r.k;
      EXPECT_LT(oracle::rel_err(r.dA_k0, r.dx_k * r.dL_k), 1e-12);
      EXPECT_EQ(r.v_k, r.L_k / 2.0);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].k, static_cast<int>(i));
  }
}

// Regime properties of gamma over the ranges the bounds are claimed for,
// evaluated in Precise so that strict inequalities survive large k.
TEST(GammaProperty, CriticalDimension) {
  for (int rho = 2; rho <= 10; ++rho) {
    const auto g = gamma_series<Precise>(50, Precise(rho), Precise(2));
    const Precise floor = 1 - Precise(1) / rho;
    for (int k = 1; k <= 50; ++k) {
      EXPECT_GE(g[k - 1], floor);
      EXPECT_GE(g[k - 1], Precise(0.5));
      EXPECT_LT(g[k - 1], Precise(1));
      if (k > 1) {
        EXPECT_GT(g[k - 1], g[k - 2]);
      }
    }
  }
}

TEST(GammaProperty, SuperDimension) {
  for (int rho = 2; rho <= 10; ++rho) {
    for (int i = 1; i <= 10; ++i) {
      const Precise ds = 2 + Precise(i) / 10;
      const auto g = gamma_series<Precise>(50, Precise(rho), ds);
      for (const auto& v : g) EXPECT_GT(v, Precise(0.5));
      // Unbounded: grows without limit in k.
      EXPECT_GT(g[49], g[9] * 2);
    }
  }
}

TEST(GammaProperty, SubDimension) {
  for (double rho : {1.2, 1.5, 2.0, 3.0, 5.5, 10.0}) {
    for (int i = 1; i <= 9; ++i) {
      const Precise ds = 1 + Precise(i) / 10;
      const auto g = gamma_series<Precise>(50, Precise(rho), ds);
      for (const auto& v : g) {
        EXPECT_GT(v, Precise(0));
        EXPECT_LT(v, Precise(1));
      }
      // Tends to zero, slowly when rho^(ds-2) is close to 1.
      EXPECT_LT(gamma_t<Precise>(5000, Precise(rho), ds), Precise(1e-6));
    }
  }
}

TEST(GammaProperty, ClassicalDimensionIsZero) {
  for (double rho : {1.1, 2.0, 3.0, 10.0}) {
    for (int k = 0; k <= 50; ++k) EXPECT_LT(std::abs(gamma(k, rho, 1.0)), 1e-15);
  }
}

TEST(GammaProperty, IncreasingInDimension) {
  for (double rho : {1.5, 2.0, 3.0, 10.0}) {
    for (int k = 1; k <= 50; k += 7) {
      double prev = gamma(k, rho, 1.0);
      for (double ds = 1.05; ds <= 3.0; ds += 0.05) {
        const double g = gamma(k, rho, ds);
        EXPECT_GT(g, prev) << "rho " << rho << " k " << k << " ds " << ds;
        prev = g;
      }
    }
  }
}

TEST(ClosedForm, AgreesWithRefinedPolyline) {
  for (auto which : {Builtin::line, Builtin::koch, Builtin::peano, Builtin::cesaro}) {
    const auto spec = builtin(which, 80.0);
    const int k_max = which == Builtin::peano ? 6 : 8;
    for (int k = 0; k <= k_max; ++k) {
      const auto poly = refine(unit_segment(), spec, k);
      const double measured = oracle::polyline_length(poly.vertices);
      const double dx = 1.0 / std::pow(spec.rho(), k);
      const double cells = static_cast<double>(poly.vertices.size() - 1);
      EXPECT_LT(oracle::rel_err(length_at_scale(k, spec, 1.0), measured), 1e-9);
      EXPECT_LT(oracle::rel_err(area_at_scale(k, spec, 1.0), cells * dx * dx), 1e-9);
    }
  }
}

TEST(ExactCellCount, WideIntegers) {
  EXPECT_EQ(exact_cell_count(koch_generator(), 0), 1);
  EXPECT_EQ(exact_cell_count(peano_generator(), 30), boost::multiprecision::cpp_int("42391158275216203514294433201"));
  EXPECT_EQ(exact_cell_count(koch_generator(), 30), boost::multiprecision::cpp_int(1) << 60);
  EXPECT_THROW(exact_cell_count(koch_generator(), 31), std::out_of_range);
}
