#include <cmath>

#include <gtest/gtest.h>

#include "hsched/config.h"
#include "hsched/factor.h"
#include "hsched/policy.h"
#include "test_support.h"

namespace hsched {
namespace {

ScenarioConfig small_scenario(std::uint64_t seed, std::size_t days = 2) {
  ScenarioConfig sc;
  sc.grid.days = days;
  sc.grid.slots_per_day = 32;
  sc.profile.sunrise_slot = 8;
  sc.profile.sunset_slot = 27;
  sc.seed = seed;
  return sc;
}

TEST(Factor, PlottedClosedForms) {
  FactorSpec spec;
  spec.variant = FactorVariant::kLinear;
  EXPECT_NEAR(factor_at_usage(spec, 0.0), 0.8, 1e-12);
  EXPECT_NEAR(factor_at_usage(spec, 1.0), 1.2, 1e-12);
  spec.variant = FactorVariant::kQuadratic;
  EXPECT_NEAR(factor_at_usage(spec, 0.5), 1.2, 1e-12);
  EXPECT_NEAR(factor_at_usage(spec, 0.0), 0.8, 1e-12);
  EXPECT_NEAR(factor_at_usage(spec, 0.25), -1.6 * 0.0625 + 1.2, 1e-12);
  spec.variant = FactorVariant::kExponential;
  EXPECT_NEAR(factor_at_usage(spec, 0.0), 0.8, 1e-12);
  EXPECT_NEAR(factor_at_usage(spec, 1.0), 1.2, 1e-12);
  const double e25 = std::exp(2.5);
  EXPECT_NEAR(factor_at_usage(spec, 0.3), 0.4 / (e25 - 1) * std::exp(0.75) + (0.8 * e25 - 1.2) / (e25 - 1), 1e-12);
  spec.variant = FactorVariant::kZhouExponential;
  const double knee = 1.0 / (1.0 + std::log(1.5));
  EXPECT_EQ(factor_at_usage(spec, knee * 0.5), 0.8);
  EXPECT_NEAR(factor_at_usage(spec, 1.0), 1.2, 1e-12);
  EXPECT_NEAR(factor_at_usage(spec, knee), 0.8, 1e-12);  // continuous at the knee
}

TEST(Factor, StepwiseUsesGapSinceLastStart) {
  FactorSpec spec{FactorVariant::kStepwiseConstant};
  spec.gap = 8;
  EXPECT_EQ(factor_value(spec, 18, 10, 3, 12), 1.0);
  EXPECT_EQ(factor_value(spec, 19, 10, 3, 12), 0.8);
  spec.variant = FactorVariant::kConstant;
  EXPECT_EQ(factor_value(spec, 19, 10, 3, 12), 1.0);
}

TEST(Factor, Validation) {
  EXPECT_THROW(factor_value(FactorSpec{}, 3, 3, 0, 4), std::invalid_argument);
  EXPECT_THROW(factor_value(FactorSpec{}, 4, 3, 5, 4), std::invalid_argument);
  EXPECT_THROW(factor_value(FactorSpec{}, 4, 3, 0, 0), std::invalid_argument);
  FactorSpec bad{FactorVariant::kLinear};
  bad.lower = 1.1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_EQ(parse_factor_variant("zhou_exponential"), FactorVariant::kZhouExponential);
  EXPECT_THROW(parse_factor_variant("cubic"), std::invalid_argument);
}

TEST(Percentile, LinearInterpolation) {
  const std::vector<double> v{4.0, 1.0, 3.0, 2.0};
  EXPECT_EQ(percentile(v, 0.0), 1.0);
  EXPECT_EQ(percentile(v, 1.0), 4.0);
  EXPECT_EQ(percentile(v, 0.5), 2.5);
  EXPECT_EQ(percentile(v, 0.25), 1.75);
  EXPECT_THROW(percentile(std::vector<double>{}, 0.5), std::invalid_argument);
  EXPECT_THROW(percentile(v, 1.5), std::invalid_argument);
}

TEST(Threshold, PathContributionsDropSinkArc) {
  PathSolution path{{0, 3, 7, 9}, {1.0, 2.0, 0.0}, 3.0};
  const auto c = path_contributions(path);
  EXPECT_EQ(c, (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(percentile(c, 0.0), 1.0);
}

TEST(Threshold, ZeroWidthsGiveZeroThreshold) {
  auto sc = small_scenario(1);
  sc.profile.alpha_pv = 0.0;
  EXPECT_EQ(ar_threshold(sc.make_base(), sc.make_schedule(), sc.make_grid(), 8, 0.5), 0.0);
}

TEST(Threshold, ArQuantileOneIsLargestArc) {
  const auto sc = small_scenario(1);
  const auto grid = sc.make_grid();
  const auto base = sc.make_base();
  const auto rho = sc.make_schedule();
  const std::vector<std::size_t> m(grid.mandatory().begin(), grid.mandatory().end());
  const auto path = solve_kpath(PathInstance{ar_gain_matrix(base, rho), m, 8});
  const auto arcs = path_contributions(path);
  EXPECT_EQ(ar_threshold(base, rho, grid, 8, 1.0), *std::ranges::max_element(arcs));
  EXPECT_EQ(ar_threshold(base, rho, grid, 8, 0.0), *std::ranges::min_element(arcs));
}

TEST(Threshold, HrPooling) {
  const auto sc = small_scenario(1);
  const auto grid = sc.make_grid();
  const auto one = sc.make_trajectory(sc.distribution, 5);
  const std::vector<ScenarioTrajectory> single{one};
  const std::vector<ScenarioTrajectory> twice{one, one};
  const std::vector<std::size_t> m(grid.mandatory().begin(), grid.mandatory().end());
  const auto arcs = path_contributions(solve_kpath(PathInstance{hr_gain_matrix(one), m, 8}));
  for (double q : {0.0, 0.5, 1.0}) {
    EXPECT_EQ(hr_threshold(single, grid, 8, q), percentile(arcs, q));
    EXPECT_EQ(hr_threshold(twice, grid, 8, q), hr_threshold(single, grid, 8, q));
  }
  std::vector<ScenarioTrajectory> ten;
  for (std::uint64_t s = 0; s < 10; ++s) ten.push_back(sc.make_trajectory(sc.distribution, 100 + s));
  const auto pooled = hr_contributions(ten, grid, 8);
  const double tau = hr_threshold(ten, grid, 8, 0.3);
  EXPECT_GE(tau, *std::ranges::min_element(pooled));
  EXPECT_LE(tau, *std::ranges::max_element(pooled));
}

PolicyConfig constant_policy(std::size_t k) {
  PolicyConfig p;
  p.k_per_day = k;
  return p;
}

TEST(RunOnline, HugeThresholdStartsOnlyMandatory) {
  const auto sc = small_scenario(3);
  const auto grid = sc.make_grid();
  const auto trace = run_online(sc.make_trajectory(), constant_policy(4), grid, 1e9);
  const std::vector<Slot> expected(grid.mandatory().begin() + 1, grid.mandatory().end());
  EXPECT_EQ(trace.starts, expected);
  EXPECT_EQ(trace.records.size(), grid.last_slot());
}

TEST(RunOnline, ZeroThresholdTakesEarliestPositiveSlots) {
  const auto sc = small_scenario(4, 3);
  const auto grid = sc.make_grid();
  const std::size_t k = 5;
  const auto trace = run_online(sc.make_trajectory(), constant_policy(k), grid, 0.0);
  std::vector<std::size_t> per_day(grid.days(), 0);
  for (Slot t : trace.starts) ++per_day[grid.day_of(t)];
  for (std::size_t d = 0; d < grid.days(); ++d) EXPECT_EQ(per_day[d], k);
  // Until the budget is spent, every positive slot starts.
  for (const auto& rec : trace.records) {
    if (rec.decision == Decision::kSkip) {
      EXPECT_EQ(rec.contribution, 0.0) << rec.slot;
    }
  }
}

void check_trace_rules(const DecisionTrace& trace, const TimeGrid& grid, std::size_t k) {
  std::vector<Slot> starts;
  for (const auto& rec : trace.records) {
    const bool budget = rec.starts_before + grid.mandatory_remaining_in_day(rec.slot) < k;
    if (grid.is_mandatory(rec.slot)) {
      EXPECT_EQ(rec.decision, Decision::kMandatoryStart);
      EXPECT_EQ(rec.over_budget, rec.starts_before >= k);
    } else {
      const bool should = budget && rec.contribution > 0.0 && rec.contribution >= rec.factored_threshold;
      EXPECT_EQ(rec.decision == Decision::kStart, should) << "slot " << rec.slot;
    }
    if (rec.decision == Decision::kStart || rec.decision == Decision::kMandatoryStart) starts.push_back(rec.slot);
    EXPECT_LE(rec.starts_before, k);
  }
  EXPECT_EQ(starts, trace.starts);
  for (Slot m : grid.mandatory())
    if (m > 0) {
      EXPECT_TRUE(std::ranges::binary_search(trace.starts, m));
    }
}

TEST(RunOnlineProperty, DecisionRuleHoldsOnEveryRecord) {
  testing::Gen gen(21);
  for (int trial = 0; trial < 40; ++trial) {
    const auto sc = small_scenario(gen.size(1, 1000), 2);
    const auto grid = sc.make_grid();
    PolicyConfig p;
    p.k_per_day = gen.size(1, 10);
    p.factor.variant = static_cast<FactorVariant>(gen.size(0, 4));
    const double tau = gen.real(0.0, 0.1);
    check_trace_rules(run_online(sc.make_trajectory(), p, grid, tau), grid, p.k_per_day);
  }
}

TEST(RunOnlineProperty, HigherThresholdNeverStartsEarlier) {
  testing::Gen gen(22);
  for (int trial = 0; trial < 60; ++trial) {
    const auto sc = small_scenario(gen.size(1, 1000), 2);
    const auto grid = sc.make_grid();
    const auto traj = sc.make_trajectory();
    const double lo = gen.real(0.0, 0.1);
    const double hi = lo + gen.real(0.0, 0.1);
    const auto first_free = [&](double tau) {
      for (Slot t : run_online(traj, constant_policy(6), grid, tau).starts)
        if (!grid.is_mandatory(t)) return t;
      return grid.sink();
    };
    EXPECT_GE(first_free(hi), first_free(lo));
  }
}

TEST(RunOnline, PartialRealizationScoresAreBinary) {
  const auto sc = small_scenario(9);
  const auto grid = sc.make_grid();
  PolicyConfig p = constant_policy(4);
  p.threshold.approach = Approach::kPR;
  const auto traj = sc.make_trajectory();
  const auto trace = run_online(traj, p, grid, 0.123);
  for (const auto& rec : trace.records) {
    EXPECT_TRUE(rec.contribution == 0.0 || rec.contribution == 1.0);
    EXPECT_EQ(rec.factored_threshold, 1.0);
  }
  check_trace_rules(trace, grid, 4);
  const auto again = run_online(traj, p, grid, 0.123);
  EXPECT_EQ(again.starts, trace.starts);
}

TEST(RunOnline, Deterministic) {
  const auto sc = small_scenario(10);
  const auto grid = sc.make_grid();
  PolicyConfig p = constant_policy(6);
  p.factor.variant = FactorVariant::kStepwiseConstant;
  const auto traj = sc.make_trajectory();
  const auto a = run_online(traj, p, grid, 0.05);
  const auto b = run_online(traj, p, grid, 0.05);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].contribution, b.records[i].contribution);
    EXPECT_EQ(a.records[i].decision, b.records[i].decision);
  }
}

TEST(RunOnline, RejectsMismatchedInput) {
  const auto sc = small_scenario(1);
  const auto other = small_scenario(1, 3);
  EXPECT_THROW(run_online(sc.make_trajectory(), constant_policy(4), other.make_grid(), 0.1), std::invalid_argument);
  EXPECT_THROW(run_online(sc.make_trajectory(), constant_policy(0), sc.make_grid(), 0.1), std::invalid_argument);
  EXPECT_THROW(run_online(sc.make_trajectory(), constant_policy(4), sc.make_grid(), -1.0), std::invalid_argument);
}

}  // namespace
}  // namespace hsched
