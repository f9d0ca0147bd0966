#include <gtest/gtest.h>

#include <cmath>

#include "stefan3/solver.hpp"
#include "support.hpp"

using namespace stefan3;
using namespace stefan3::testing;

namespace {

void expect_consistent(const ThreePhaseSolution& s) {
  EXPECT_EQ(s.regime, Regime::three_phase);
  EXPECT_GT(s.coef2, 0.0);
  EXPECT_LT(s.coef2, s.coef1);
  EXPECT_GT(s.coef1, s.ctx.z0());
  EXPECT_NEAR(s.coef2, inner_coefficient(s.coef1, s.ctx), 1e-12);
  EXPECT_LE(std::abs(s.front_residual), 1e-12);
}

}  // namespace

TEST(Thresholds, OracleValues) {
  const auto th = thresholds(figure1());
  ASSERT_TRUE(th.h1 && th.h2);
  EXPECT_NEAR(*th.h1, 3.9605948026953229709, 1e-12);
  EXPECT_NEAR(*th.h2, 41.622456515227896583, 1e-10);
  EXPECT_NEAR(th.q1, 39.605948026953229709, 1e-11);
  EXPECT_NEAR(th.q2, 249.7347390913673795, 1e-9);
  EXPECT_GT(*th.h2, *th.h1);
  EXPECT_GT(th.q2, th.q1);
}

TEST(Thresholds, ConvectiveOnlyWithBulkTemperature) {
  const auto th = thresholds(figure3());
  EXPECT_FALSE(th.h1.has_value());
  EXPECT_FALSE(th.h2.has_value());
  EXPECT_THROW(robin_thresholds(figure3()), MissingBoundaryDatum);
  const auto [h1, h2] = robin_thresholds(figure1());
  EXPECT_LT(h1, h2);
}

TEST(Regime, Classification) {
  const auto ctx = figure1();
  const auto [h1, h2] = robin_thresholds(ctx);
  EXPECT_EQ(classify_regime(ctx), Regime::three_phase);
  EXPECT_EQ(classify_regime(ctx, Robin{h1 / 2, 334}), Regime::single_phase);
  EXPECT_EQ(classify_regime(ctx, Robin{h1, 334}), Regime::single_phase);
  EXPECT_EQ(classify_regime(ctx, Robin{(h1 + h2) / 2, 334}), Regime::two_phase);
  EXPECT_EQ(classify_regime(ctx, Robin{h2, 334}), Regime::two_phase);
  const double q1 = q1_threshold(ctx), q2 = q2_threshold(ctx);
  EXPECT_EQ(classify_regime(ctx, Neumann{(q1 + q2) / 2}), Regime::two_phase);
  EXPECT_EQ(classify_regime(ctx, Neumann{q1 / 2}), Regime::single_phase);
  EXPECT_EQ(classify_regime(ctx, Neumann{300}), Regime::three_phase);
  EXPECT_EQ(classify_regime(ctx, Dirichlet{328.001}), Regime::three_phase);
  EXPECT_THROW(classify_regime(ctx, Dirichlet{328}), ValidationError);
}

TEST(Regime, MonotoneInDatum) {
  const auto ctx = figure1();
  int prev = 0;
  for (int i = 0; i <= 400; ++i) {
    const double h0 = 0.25 * i;
    const int r = static_cast<int>(classify_regime(ctx, Robin{h0 + 1e-9, 334}));
    ASSERT_GE(r, prev);
    prev = r;
  }
  prev = 0;
  for (int i = 0; i <= 400; ++i) {
    const int r = static_cast<int>(classify_regime(ctx, Neumann{1.0 + i}));
    ASSERT_GE(r, prev);
    prev = r;
  }
}

TEST(Solve, Figure1Oracle) {
  const auto s = solve_robin(figure1());
  EXPECT_NEAR(s.coef1, 0.17306860266464350877, 1e-12);
  EXPECT_NEAR(s.coef2, 0.054204522544517436524, 1e-12);
  expect_consistent(s);
}

TEST(Solve, Figure2Oracle) {
  const auto s = solve_dirichlet(figure2());
  EXPECT_NEAR(s.coef1, 0.18059172851972194912, 1e-12);
  EXPECT_NEAR(s.coef2, 0.066085476150505617491, 1e-12);
  expect_consistent(s);
}

TEST(Solve, Figure3Oracle) {
  const auto s = solve_neumann(figure3());
  EXPECT_NEAR(s.coef1, 0.15430826800022137564, 1e-12);
  EXPECT_NEAR(s.coef2, 0.022973827455921504775, 1e-12);
  expect_consistent(s);
}

TEST(Solve, UnequalDiffusivitiesOracle) {
  const MaterialProperties p{0.5, 0.3, 0.2, 2, 1.5, 1.2, 1000, 200, 120};
  const PhaseTemps t{330, 324, 318};
  const auto r = solve(ProblemContext::make(p, t, Robin{200, 345}));
  EXPECT_NEAR(r.coef1, 0.16721986118420181277, 1e-12);
  EXPECT_NEAR(r.coef2, 0.081835607384138845342, 1e-12);
  const auto d = solve(ProblemContext::make(p, t, Dirichlet{336}));
  EXPECT_NEAR(d.coef1, 0.14796922602871610546, 1e-12);
  EXPECT_NEAR(d.coef2, 0.053368828227674030616, 1e-12);
  const auto n = solve(ProblemContext::make(p, t, Neumann{700}));
  EXPECT_NEAR(n.coef1, 0.14613790762917350935, 1e-12);
  EXPECT_NEAR(n.coef2, 0.050555827424568128779, 1e-12);
  for (const auto* s : {&r, &d, &n}) expect_consistent(*s);
}

TEST(Solve, RandomSets) {
  for (const auto& rc : random_cases(kSeed, 50)) {
    const auto ctx = ProblemContext::make(rc.props, rc.temps);
    expect_consistent(solve(ctx.with_boundary(rc.robin)));
    expect_consistent(solve(ctx.with_boundary(rc.dirichlet)));
    expect_consistent(solve(ctx.with_boundary(rc.neumann)));
  }
}

TEST(Solve, RegimeErrors) {
  const auto ctx = figure1();
  const auto [h1, h2] = robin_thresholds(ctx);
  try {
    solve_robin(ctx.with_boundary(Robin{h2, 334}));
    FAIL();
  } catch (const RegimeError& e) {
    EXPECT_EQ(e.regime(), Regime::two_phase);
  }
  try {
    solve_robin(ctx.with_boundary(Robin{h1 / 2, 334}));
    FAIL();
  } catch (const RegimeError& e) {
    EXPECT_EQ(e.regime(), Regime::single_phase);
  }
  try {
    solve_neumann(ctx.with_boundary(Neumann{q2_threshold(ctx)}));
    FAIL();
  } catch (const RegimeError& e) {
    EXPECT_EQ(e.regime(), Regime::two_phase);
  }
  EXPECT_THROW(ctx.with_boundary(Dirichlet{327}), ValidationError);
  EXPECT_THROW(solve_dirichlet(ctx), MissingBoundaryDatum);
}

TEST(Solve, ContinuityAtThresholds) {
  const auto ctx = figure1();
  const double h2 = robin_thresholds(ctx).second;
  const double z0 = ctx.z0();
  const auto near_h2 = solve(ctx.with_boundary(Robin{1.0001 * h2, 334}));
  EXPECT_GT(near_h2.coef1, z0);
  EXPECT_LT(near_h2.coef1 - z0, 1e-3);
  const auto near_b = solve(ctx.with_boundary(Dirichlet{328 + 1e-6}));
  EXPECT_LT(near_b.coef1 - z0, 1e-3);
  const auto near_q2 = solve(ctx.with_boundary(Neumann{1.0001 * q2_threshold(ctx)}));
  EXPECT_LT(near_q2.coef1 - z0, 1e-3);
  // Scan: the gap to z0 shrinks as the datum approaches the threshold.
  double prev = 1.0;
  for (double f : {1.5, 1.1, 1.01, 1.001, 1.0001}) {
    const double gap = solve(ctx.with_boundary(Robin{f * h2, 334})).coef1 - z0;
    EXPECT_LT(gap, prev);
    prev = gap;
  }
}

TEST(Solve, LargeH0ApproachesTemperatureProblem) {
  const auto ctx = figure1();
  const auto r = solve(ctx.with_boundary(Robin{1e9, 334}));
  const auto d = solve(ctx.with_boundary(Dirichlet{334}));
  EXPECT_NEAR(r.coef1, d.coef1, 1e-6);
  EXPECT_NEAR(r.coef2, d.coef2, 1e-6);
}

TEST(Solve, OuterCoefficientIncreasesWithFlux) {
  const auto ctx = figure1();
  const double q2 = q2_threshold(ctx);
  double prev = 0;
  for (int i = 1; i <= 10; ++i) {
    const double c = solve(ctx.with_boundary(Neumann{q2 * (1 + 0.4 * i)})).coef1;
    EXPECT_GT(c, prev);
    prev = c;
  }
}

TEST(Temperature, InterfaceAndFaceValues) {
  for (const auto& ctx : {figure1(), figure2(), figure3()}) {
    const auto s = solve(ctx);
    for (double t : {0.1, 1.0, 10.0}) {
      const auto fr = free_boundaries(s, t);
      EXPECT_NEAR(evaluate_temperature(s, fr.x2, t), 328.0, 1e-10);
      EXPECT_NEAR(evaluate_temperature(s, fr.x1, t), 324.0, 1e-10);
      EXPECT_NEAR(evaluate_temperature(s, 0.0, t), s.surface_temperature, 1e-12);
      EXPECT_NEAR(evaluate_temperature(s, 1e3 * fr.x1, t), 320.0, 0.0);
    }
  }
  const auto d = solve(figure2());
  EXPECT_EQ(evaluate_temperature(d, 0.0, 5.0), 331.0);
}

TEST(Temperature, PhaseAssignmentNearFronts) {
  const auto s = solve(figure1());
  const auto fr = free_boundaries(s, 1.0);
  EXPECT_EQ(phase_at(s, fr.x2, 1.0), 3);
  EXPECT_EQ(phase_at(s, fr.x2 * (1 + 1e-15), 1.0), 3);
  EXPECT_EQ(phase_at(s, fr.x2 * (1 + 1e-12), 1.0), 2);
  EXPECT_EQ(phase_at(s, fr.x1, 1.0), 2);
  EXPECT_EQ(phase_at(s, fr.x1 * (1 + 1e-12), 1.0), 1);
}

TEST(Temperature, MonotoneAndBoundedOnGrid) {
  for (const auto& ctx : {figure1(), figure2(), figure3()}) {
    const auto s = solve(ctx);
    for (double t : {0.5, 5.0, 50.0}) {
      const double xmax = 3 * free_boundaries(s, t).x1;
      double prev = evaluate_temperature(s, 0.0, t);
      for (int j = 0; j < 200; ++j) {
        const double u = evaluate_temperature(s, xmax * j / 199.0, t);
        ASSERT_LE(u, prev + 1e-12);
        ASSERT_GE(u, 320.0 - 1e-12);
        ASSERT_LE(u, s.surface_temperature + 1e-12);
        prev = u;
      }
    }
  }
}

TEST(Fronts, SimilarityScaling) {
  const auto s = solve(figure1());
  const double a1 = s.ctx.alphas().alpha1;
  const auto f1 = free_boundaries(s, 1.0);
  EXPECT_DOUBLE_EQ(f1.x2, 2 * s.coef2 * std::sqrt(a1));
  EXPECT_DOUBLE_EQ(f1.x1, 2 * s.coef1 * std::sqrt(a1));
  const auto f4 = free_boundaries(s, 4.0);
  EXPECT_NEAR(f4.x1, 2 * f1.x1, 1e-15);
  EXPECT_NEAR(f4.x2, 2 * f1.x2, 1e-15);
  const double ref = f1.x2;
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    EXPECT_NEAR(free_boundaries(s, t).x2 / std::sqrt(t), ref, 1e-12 * ref);
  }
  EXPECT_LT(f1.x2, f1.x1);
}

TEST(Surface, ValuesPerKind) {
  const auto r = solve(figure1());
  EXPECT_NEAR(r.surface_temperature, 330.28968510594612012, 1e-10);
  for (double t : {0.1, 1.0, 10.0}) EXPECT_EQ(surface_values(r, t).temperature, r.surface_temperature);
  EXPECT_GT(r.surface_temperature, 328.0);

  const auto d = solve(figure2());
  const auto& p = d.ctx.props();
  const double e3 = specfun::erf(d.coef2 * d.ctx.r13());
  const double coefficient = p.k3 * 3.0 / (std::sqrt(std::numbers::pi * d.ctx.alphas().alpha3) * e3);
  for (double t : {0.25, 4.0}) {
    const auto sv = surface_values(d, t);
    EXPECT_EQ(sv.temperature, 331.0);
    EXPECT_NEAR(sv.flux, -coefficient / std::sqrt(t), 1e-12 * coefficient);
  }

  const auto n = solve(figure3());
  for (double t : {0.25, 4.0}) EXPECT_NEAR(surface_values(n, t).flux, -300.0 / std::sqrt(t), 1e-12);
  EXPECT_NEAR(n.surface_flux_coefficient, 300.0, 1e-12);
}
