#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "hsched/gain_matrix.h"

namespace hsched {

// Maximum-weight 0 -> sink path with at most k + 1 arcs through every
// mandatory node. Mandatory nodes must be strictly increasing, start with 0
// and lie before the sink.
struct PathInstance {
  GainMatrix gains;
  std::vector<std::size_t> mandatory{0};
  std::size_t k = 0;

  std::size_t sink() const noexcept { return gains.sink(); }
  // Number of mandatory-to-mandatory segments, including the one into the sink.
  std::size_t segment_count() const noexcept { return mandatory.size(); }
  // Throws std::invalid_argument on malformed input and InfeasibleError when
  // k + 1 < segment_count().
  void validate() const;
};

struct PathSolution {
  std::vector<std::size_t> nodes;
  std::vector<double> arc_weights;
  double total = 0.0;

  std::size_t arcs() const noexcept { return arc_weights.size(); }
  // Nodes other than 0 and the sink.
  std::vector<std::size_t> starts() const;
};

// Exact-h longest paths between a and b (intermediate nodes strictly inside).
struct SegmentTable {
  static constexpr double kInfeasible = -std::numeric_limits<double>::infinity();

  std::size_t a = 0;
  std::size_t b = 0;
  // best[h] for h = 0..h_max; best[0] is always kInfeasible.
  std::vector<double> best;

  std::size_t h_max() const noexcept { return best.empty() ? 0 : best.size() - 1; }
  double operator[](std::size_t h) const noexcept {
    return h < best.size() ? best[h] : kInfeasible;
  }
};

SegmentTable segment_dp(const GainMatrix& gains, std::size_t a, std::size_t b, std::size_t h_max);

// Two-stage dynamic program: exact-h tables per mandatory segment, then an
// arc-budget allocation over segments. Ties go to fewer arcs, then to the
// lexicographically smallest node list; total is summed along the path.
PathSolution solve_kpath(const PathInstance& instance);

// Exhaustive enumeration of node subsets (sink <= 21). Same tie-breaking.
PathSolution brute_force_kpath(const PathInstance& instance);

struct KnapsackValue {
  bool feasible = false;
  double objective = 0.0;
};

// Evaluates item selection x (slots 0..T) under the knapsack formulation:
// |selection| <= k + 1, mandatory items included, and the y assignment that
// links neighbouring items. Infeasible selections return feasible == false.
KnapsackValue knapsack_evaluate(std::span<const std::size_t> selection, const PathInstance& instance);

}  // namespace hsched
