#include <gtest/gtest.h>

#include "hsched/gain_matrix.h"
#include "test_support.h"

namespace hsched {
namespace {

// Untruncated double-loop re-summations.
GainMatrix ar_oracle(std::span<const ForecastInterval> base, const ReductionSchedule& rho) {
  const std::size_t T = base.size() - 1;
  GainMatrix w(base.size() + 1);
  for (std::size_t s = 0; s <= T; ++s) {
    for (std::size_t t = s + 1; t <= T; ++t) {
      double sum = 0.0;
      for (std::size_t l = t; l <= T; ++l) sum += base[l].half_width * (rho(l - t) - rho(l - s));
      w(s, t) = sum;
    }
  }
  return w;
}

GainMatrix hr_oracle(const ScenarioTrajectory& traj) {
  const std::size_t T = traj.last_slot();
  GainMatrix w(T + 2);
  for (std::size_t s = 0; s <= T; ++s) {
    for (std::size_t t = s + 1; t <= T; ++t) {
      double sum = 0.0;
      for (std::size_t l = t; l <= T; ++l) sum += traj.lower(l, t) - traj.lower(l, s);
      w(s, t) = sum;
    }
  }
  return w;
}

TEST(ArGains, FlatScheduleGivesNoGain) {
  testing::Gen gen(1);
  const auto base = gen.base(25);
  const auto w = ar_gain_matrix(base, ReductionSchedule::constant(0.4, 30));
  for (std::size_t s = 0; s < w.n_nodes(); ++s)
    for (std::size_t t = s + 1; t < w.n_nodes(); ++t) EXPECT_EQ(w(s, t), 0.0);
}

TEST(ArGains, SingleDaytimeSlot) {
  std::vector<ForecastInterval> base(5);
  base[3] = {4.0, 1.0};
  const auto w = ar_gain_matrix(base, ReductionSchedule::from_table({0.7}));
  EXPECT_EQ(w(0, 3), 0.7);
  EXPECT_EQ(w(1, 3), 0.7);
  EXPECT_EQ(w(0, 2), 0.0);
  EXPECT_EQ(w(3, 4), 0.0);
}

TEST(ArGains, MatchesResummationOracle) {
  testing::Gen gen(2);
  for (int trial = 0; trial < 30; ++trial) {
    const auto base = gen.base(gen.size(2, 40));
    const auto rho = gen.schedule();
    const auto w = ar_gain_matrix(base, rho);
    const auto oracle = ar_oracle(base, rho);
    for (std::size_t s = 0; s < w.n_nodes(); ++s)
      for (std::size_t t = s + 1; t < w.n_nodes(); ++t) EXPECT_NEAR(w(s, t), oracle(s, t), 1e-12);
  }
}

TEST(ArGains, IndependentOfRealization) {
  testing::Gen gen(3);
  const auto base = gen.base(60);
  const auto rho = ReductionSchedule::geometric();
  const auto a = evolve_forecasts(base, sample_realization(DistributionSpec::uniform(), 1, 60), rho);
  const auto b = evolve_forecasts(base, sample_realization(DistributionSpec::uniform(), 2, 60), rho);
  EXPECT_EQ(ar_gain_matrix(a.base(), rho), ar_gain_matrix(b.base(), rho));
}

ScenarioTrajectory two_slot_toy() {
  // Slot 2: base [2, 4], r = 4; rho(1) = 0.5, rho(2) = 0.25.
  std::vector<ForecastInterval> base(3);
  base[2] = {3.0, 1.0};
  return evolve_forecasts(base, std::vector<double>{0.0, 0.0, 1.0}, ReductionSchedule::from_table({0.7, 0.5, 0.25}));
}

TEST(HrGains, HandSubtraction) {
  const auto traj = two_slot_toy();
  EXPECT_EQ(traj.lower(2, 1), 3.0);
  EXPECT_EQ(traj.lower(2, 0), 2.5);
  EXPECT_EQ(hr_gain_matrix(traj)(0, 1), 0.5);
  EXPECT_EQ(realized_contribution(traj, 0, 1), 0.5);
}

TEST(HrGains, FlatStepGivesNoGain) {
  std::vector<ForecastInterval> base(6);
  for (std::size_t t = 1; t < 6; ++t) base[t] = {2.0, 0.5};
  const auto traj = evolve_forecasts(base, std::vector<double>(6, 0.3), ReductionSchedule::constant(0.6, 10));
  const auto w = hr_gain_matrix(traj);
  for (std::size_t t = 1; t < 6; ++t) EXPECT_EQ(w(t - 1, t), 0.0);
}

TEST(HrGains, MatchesDoubleLoopOracleExactly) {
  testing::Gen gen(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto traj = gen.trajectory(21);  // T = 20
    EXPECT_EQ(hr_gain_matrix(traj), hr_oracle(traj));
  }
}

TEST(GainProperties, NonnegativeSinkZeroAndEarlierReferenceDominates) {
  testing::Gen gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = gen.size(3, 40);
    const auto traj = gen.trajectory(n);
    const auto hr = hr_gain_matrix(traj);
    const auto ar = ar_gain_matrix(traj.base(), traj.schedule());
    ASSERT_EQ(hr.n_nodes(), n + 1);
    for (std::size_t s = 0; s < n + 1; ++s) {
      EXPECT_EQ(hr(s, hr.sink()), 0.0);
      EXPECT_EQ(ar(s, ar.sink()), 0.0);
      for (std::size_t t = s + 1; t < n + 1; ++t) {
        EXPECT_GE(hr(s, t), 0.0);
        EXPECT_GE(ar(s, t), 0.0);
        if (t < n) {
          EXPECT_EQ(realized_contribution(traj, s, t), hr(s, t));
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) EXPECT_GE(hr(a, c), hr(b, c));
  }
}

TEST(PrGains, UnchangedForecastsAndFlatScheduleGiveZero) {
  std::vector<ForecastInterval> base(12);
  for (std::size_t t = 1; t < 12; ++t) base[t] = {1.0 + t, 0.3 * t};
  const auto rho = ReductionSchedule::constant(0.5, 20);
  const auto traj = evolve_forecasts(base, std::vector<double>(12, -0.4), rho);
  const auto w = pr_gain_matrix(traj, 4, 3, rho);
  for (std::size_t s = 0; s < w.n_nodes(); ++s)
    for (std::size_t t = s + 1; t < w.n_nodes(); ++t) EXPECT_EQ(w(s, t), 0.0);
}

TEST(PrGains, SingleTermHandCase) {
  // half_width(2, 1) = (1 - 0.2) * 2.5 = 2, beta gap rho(0) - rho(1) = 0.1.
  std::vector<ForecastInterval> base(3);
  base[2] = {5.0, 2.5};
  const auto rho = ReductionSchedule::from_table({0.3, 0.2});
  const auto traj = evolve_forecasts(base, std::vector<double>{0.0, 0.0, 0.5}, rho);
  EXPECT_EQ(traj.half_width(2, 1), 2.0);
  EXPECT_NEAR(pr_gain_matrix(traj, 1, 0, rho)(1, 2), 0.2, 1e-12);
}

TEST(PrGains, ArcsFromNowMatchArGainsOfCurrentSnapshot) {
  testing::Gen gen(6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = gen.size(4, 40);
    const auto traj = gen.trajectory(n);
    const Slot now = gen.size(1, n - 1);
    const Slot t_last = now - 1;
    std::vector<ForecastInterval> snapshot(n);
    for (Slot k = now; k < n; ++k) snapshot[k] = traj.interval(k, now);
    const auto pr = pr_gain_matrix(traj, now, t_last, traj.schedule());
    const auto ar = ar_gain_matrix(snapshot, traj.schedule());
    for (Slot s = now; s < n; ++s)
      for (Slot l = s + 1; l < n; ++l) EXPECT_EQ(pr(s, l), ar(s, l));
  }
}

TEST(PrGains, RealizedArcAndNonnegativity) {
  testing::Gen gen(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = gen.size(4, 40);
    const auto traj = gen.trajectory(n);
    const Slot now = gen.size(1, n - 1);
    const Slot t_last = gen.size(0, now - 1);
    const auto w = pr_gain_matrix(traj, now, t_last, traj.schedule());
    EXPECT_EQ(w(t_last, now), realized_contribution(traj, t_last, now));
    for (std::size_t s = 0; s < w.n_nodes(); ++s)
      for (std::size_t t = s + 1; t < w.n_nodes(); ++t) EXPECT_GE(w(s, t), 0.0);
  }
  const auto traj = gen.trajectory(10);
  EXPECT_THROW(pr_gain_matrix(traj, 3, 3, traj.schedule()), std::invalid_argument);
}

TEST(GainMatrixType, RestrictAndSet) {
  GainMatrix w(5);
  w.set(1, 3, 2.5);
  w.set(0, 1, 1.0);
  const std::vector<std::size_t> nodes{0, 1, 3};
  const auto r = w.restrict_to(nodes);
  EXPECT_EQ(r(0, 1), 1.0);
  EXPECT_EQ(r(1, 2), 2.5);
  EXPECT_THROW(w.set(3, 3, 1.0), std::out_of_range);
  EXPECT_THROW(w.at(5, 0), std::out_of_range);
}

}  // namespace
}  // namespace hsched
