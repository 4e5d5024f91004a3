#include <filesystem>

#include <gtest/gtest.h>

#include "hsched/config.h"
#include "hsched/sweep.h"

namespace hsched {
namespace {

ExperimentConfig tiny() {
  ExperimentConfig cfg;
  cfg.scenario.grid.days = 2;
  cfg.scenario.grid.slots_per_day = 32;
  cfg.scenario.profile.sunrise_slot = 8;
  cfg.scenario.profile.sunset_slot = 27;
  cfg.sweep.k_per_day = {4};
  cfg.sweep.approaches = {Approach::kAR};
  cfg.sweep.percentiles = {0.25};
  cfg.sweep.n_seeds = 1;
  cfg.sweep.include_baselines = false;
  cfg.sweep.write_traces = false;
  return cfg;
}

TEST(Sweep, SingleCellSingleSeed) {
  const auto res = sweep(tiny());
  ASSERT_EQ(res.rows.size(), 1u);
  EXPECT_EQ(res.rows[0].approach, "AR");
  EXPECT_EQ(res.rows[0].n_ok, 1u);
  EXPECT_EQ(res.rows[0].mean_obj, res.rows[0].min_obj);
  EXPECT_EQ(res.runs, 1u);
  EXPECT_EQ(res.dominance_checks, 1u);
  EXPECT_TRUE(res.failures.empty());
}

TEST(Sweep, BaselinesAndBudgetMonotonicity) {
  auto cfg = tiny();
  cfg.sweep.k_per_day = {4, 12};
  cfg.sweep.include_baselines = true;
  cfg.sweep.n_seeds = 5;
  const auto res = sweep(cfg);
  double opt4 = 0.0;
  double opt12 = 0.0;
  for (const auto& row : res.rows) {
    if (row.approach != "OptPath") continue;
    (row.k_per_day == 4 ? opt4 : opt12) = row.mean_obj;
  }
  EXPECT_GT(opt12, opt4);
  for (const auto& row : res.rows) {
    for (std::size_t i = 0; i < row.objectives.size(); ++i) EXPECT_LE(row.objectives[i], row.optpath[i]);
  }
}

TEST(Sweep, IdenticalAcrossWorkerCounts) {
  auto cfg = tiny();
  cfg.sweep.k_per_day = {4, 8};
  cfg.sweep.approaches = {Approach::kAR, Approach::kHR, Approach::kPR};
  cfg.sweep.n_seeds = 3;
  cfg.sweep.n_history = 2;
  cfg.sweep.include_baselines = true;
  const auto one = sweep_csv(sweep(cfg, {1, std::nullopt}));
  const auto four = sweep_csv(sweep(cfg, {4, std::nullopt}));
  EXPECT_EQ(one, four);
  cfg.sweep.master_seed = 2;
  EXPECT_NE(sweep_csv(sweep(cfg, {2, std::nullopt})), one);
}

TEST(Sweep, AddingCellsKeepsOtherDraws) {
  auto cfg = tiny();
  cfg.sweep.n_seeds = 3;
  const auto alone = sweep(cfg);
  cfg.sweep.distributions.push_back(DistributionSpec::truncated_normal());
  cfg.sweep.k_per_day = {4, 6};
  const auto more = sweep(cfg);
  bool found = false;
  for (const auto& row : more.rows) {
    if (row.distribution == "uniform" && row.k_per_day == 4 && row.approach == "AR") {
      EXPECT_EQ(row.objectives, alone.rows[0].objectives);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Sweep, SeedStreamsAreDisjoint) {
  const auto d = DistributionSpec::uniform();
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t j = 0; j < 50; ++j) EXPECT_NE(evaluation_seed(1, d, i), history_seed(1, d, j));
  EXPECT_NE(distribution_label(DistributionSpec::truncated_normal()),
            distribution_label(DistributionSpec::shifted_truncated_normal()));
}

TEST(Sweep, WritesTraces) {
  auto cfg = tiny();
  cfg.sweep.write_traces = true;
  const auto dir = std::filesystem::temp_directory_path() / "hsched_sweep_traces";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  sweep(cfg, {1, dir.string()});
  std::size_t n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) n += entry.path().extension() == ".csv";
  EXPECT_EQ(n, 1u);
  std::filesystem::remove_all(dir);
}

TEST(Sweep, CsvHeader) {
  const auto csv = sweep_csv(sweep(tiny()));
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "distribution,k,approach,factor,percentile,mean_obj,min_obj,max_obj,optpath_mean");
}

}  // namespace
}  // namespace hsched
