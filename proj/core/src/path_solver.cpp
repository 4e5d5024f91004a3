#include "hsched/path_solver.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hsched/error.h"

namespace hsched {

namespace {

constexpr double kNegInf = SegmentTable::kInfeasible;

// best[h][v - a]: heaviest v -> b path with exactly h arcs whose interior
// lies strictly between v and b.
class SegmentSolver {
 public:
  SegmentSolver(const GainMatrix& gains, std::size_t a, std::size_t b, std::size_t h_max)
      : gains_(gains), a_(a), b_(b), h_max_(std::min(h_max, b - a)) {
    const std::size_t len = b - a;
    best_.assign(h_max_ + 1, std::vector<double>(len + 1, kNegInf));
    if (h_max_ == 0) return;
    for (std::size_t v = a; v < b; ++v) best_[1][v - a] = gains(v, b);
    for (std::size_t h = 2; h <= h_max_; ++h) {
      const auto& prev = best_[h - 1];
      auto& cur = best_[h];
      // v needs h arcs to reach b, so v <= b - h; successors u <= b - h + 1.
      for (std::size_t v = a; v + h <= b; ++v) {
        double best = kNegInf;
        for (std::size_t u = v + 1; u + h - 1 <= b; ++u) {
          const double cand = gains(v, u) + prev[u - a];
          if (cand > best) best = cand;
        }
        cur[v - a] = best;
      }
    }
  }

  std::size_t h_max() const { return h_max_; }
  double value(std::size_t h) const { return h <= h_max_ ? best_[h][0] : kNegInf; }

  // Lexicographically smallest a -> b node list among optimal exact-h paths.
  std::vector<std::size_t> path(std::size_t h) const {
    std::vector<std::size_t> nodes{a_};
    std::size_t cur = a_;
    for (std::size_t rem = h; rem > 1; --rem) {
      const double target = best_[rem][cur - a_];
      const auto& next = best_[rem - 1];
      std::size_t chosen = b_;
      for (std::size_t u = cur + 1; u + rem - 1 <= b_; ++u) {
        if (next[u - a_] != kNegInf && gains_(cur, u) + next[u - a_] == target) {
          chosen = u;
          break;
        }
      }
      if (chosen == b_) throw std::logic_error("segment reconstruction lost the optimum");
      nodes.push_back(chosen);
      cur = chosen;
    }
    nodes.push_back(b_);
    return nodes;
  }

 private:
  const GainMatrix& gains_;
  std::size_t a_;
  std::size_t b_;
  std::size_t h_max_;
  std::vector<std::vector<double>> best_;
};

struct Allocation {
  double value = kNegInf;
  std::size_t arcs = 0;

  bool feasible() const { return value != kNegInf; }
  bool better_than(const Allocation& other) const {
    if (!other.feasible()) return feasible();
    if (value != other.value) return value > other.value;
    return arcs < other.arcs;
  }
};

PathSolution finish(const GainMatrix& gains, std::vector<std::size_t> nodes) {
  PathSolution sol;
  sol.nodes = std::move(nodes);
  for (std::size_t i = 0; i + 1 < sol.nodes.size(); ++i) {
    const double w = gains(sol.nodes[i], sol.nodes[i + 1]);
    sol.arc_weights.push_back(w);
    sol.total += w;
  }
  return sol;
}

}  // namespace

void PathInstance::validate() const {
  const std::size_t n = gains.n_nodes();
  if (n < 2) throw std::invalid_argument("path graph needs at least a source and the sink");
  if (mandatory.empty() || mandatory.front() != 0) throw std::invalid_argument("mandatory nodes must start with 0");
  for (std::size_t i = 1; i < mandatory.size(); ++i) {
    if (mandatory[i] <= mandatory[i - 1]) throw std::invalid_argument("mandatory nodes must be strictly increasing");
  }
  if (mandatory.back() >= sink()) throw std::invalid_argument("mandatory node at or beyond the sink");
  if (k + 1 < segment_count()) {
    throw InfeasibleError("budget of " + std::to_string(k) + " iterations (" + std::to_string(k + 1) +
                          " arcs) cannot cover " + std::to_string(segment_count()) + " mandatory segments");
  }
}

std::vector<std::size_t> PathSolution::starts() const {
  if (nodes.size() <= 2) return {};
  return {nodes.begin() + 1, nodes.end() - 1};
}

SegmentTable segment_dp(const GainMatrix& gains, std::size_t a, std::size_t b, std::size_t h_max) {
  if (a >= b || b >= gains.n_nodes()) throw std::invalid_argument("segment needs a < b inside the graph");
  SegmentSolver solver(gains, a, b, h_max);
  SegmentTable table{a, b, std::vector<double>(solver.h_max() + 1, kNegInf)};
  for (std::size_t h = 1; h <= solver.h_max(); ++h) table.best[h] = solver.value(h);
  return table;
}

PathSolution solve_kpath(const PathInstance& instance) {
  instance.validate();
  const GainMatrix& w = instance.gains;
  const std::size_t m = instance.segment_count();
  const std::size_t budget = instance.k + 1;
  const std::size_t per_segment = budget - (m - 1);

  std::vector<SegmentSolver> segments;
  segments.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t a = instance.mandatory[j];
    const std::size_t b = j + 1 < m ? instance.mandatory[j + 1] : instance.sink();
    segments.emplace_back(w, a, b, per_segment);
  }

  // tail[j][r]: best allocation of at most r arcs to segments j..m-1.
  std::vector<std::vector<Allocation>> tail(m + 1, std::vector<Allocation>(budget + 1));
  for (auto& a : tail[m]) a = {0.0, 0};
  for (std::size_t j = m; j-- > 0;) {
    for (std::size_t r = 0; r <= budget; ++r) {
      Allocation best;
      const std::size_t h_top = std::min(r, segments[j].h_max());
      for (std::size_t h = 1; h <= h_top; ++h) {
        const Allocation& rest = tail[j + 1][r - h];
        if (!rest.feasible() || segments[j].value(h) == kNegInf) continue;
        const Allocation cand{segments[j].value(h) + rest.value, h + rest.arcs};
        if (cand.better_than(best)) best = cand;
      }
      tail[j][r] = best;
    }
  }
  if (!tail[0][budget].feasible()) throw InfeasibleError("no path satisfies the mandatory nodes and the budget");

  std::vector<std::size_t> nodes{instance.mandatory.front()};
  std::size_t r = budget;
  for (std::size_t j = 0; j < m; ++j) {
    const Allocation target = tail[j][r];
    std::vector<std::size_t> chosen;
    std::size_t chosen_h = 0;
    const std::size_t h_top = std::min(r, segments[j].h_max());
    for (std::size_t h = 1; h <= h_top; ++h) {
      const Allocation& rest = tail[j + 1][r - h];
      if (!rest.feasible() || segments[j].value(h) == kNegInf) continue;
      if (segments[j].value(h) + rest.value != target.value || h + rest.arcs != target.arcs) continue;
      auto seg_path = segments[j].path(h);
      if (chosen.empty() || seg_path < chosen) {
        chosen = std::move(seg_path);
        chosen_h = h;
      }
    }
    if (chosen.empty()) throw std::logic_error("allocation reconstruction lost the optimum");
    nodes.insert(nodes.end(), chosen.begin() + 1, chosen.end());
    r -= chosen_h;
  }
  return finish(w, std::move(nodes));
}

PathSolution brute_force_kpath(const PathInstance& instance) {
  instance.validate();
  const std::size_t sink = instance.sink();
  if (sink > 21) throw std::invalid_argument("brute force limited to T <= 20");
  const GainMatrix& w = instance.gains;

  std::vector<std::size_t> free_nodes;
  for (std::size_t v = 1; v < sink; ++v) {
    if (!std::binary_search(instance.mandatory.begin(), instance.mandatory.end(), v)) free_nodes.push_back(v);
  }

  bool have = false;
  PathSolution best;
  std::vector<std::size_t> nodes;
  const std::size_t limit = std::size_t{1} << free_nodes.size();
  for (std::size_t mask = 0; mask < limit; ++mask) {
    nodes.assign(instance.mandatory.begin(), instance.mandatory.end());
    for (std::size_t i = 0; i < free_nodes.size(); ++i) {
      if (mask >> i & 1U) nodes.push_back(free_nodes[i]);
    }
    if (nodes.size() > instance.k + 1) continue;
    std::sort(nodes.begin(), nodes.end());
    nodes.push_back(sink);
    PathSolution cand = finish(w, nodes);
    bool better = !have;
    if (have) {
      if (cand.total != best.total) {
        better = cand.total > best.total;
      } else if (cand.arcs() != best.arcs()) {
        better = cand.arcs() < best.arcs();
      } else {
        better = cand.nodes < best.nodes;
      }
    }
    if (better) {
      best = std::move(cand);
      have = true;
    }
  }
  return best;
}

KnapsackValue knapsack_evaluate(std::span<const std::size_t> selection, const PathInstance& instance) {
  std::vector<std::size_t> items(selection.begin(), selection.end());
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  if (!items.empty() && items.back() >= instance.sink()) throw std::invalid_argument("selection outside the time slots");

  KnapsackValue out;
  if (items.size() > instance.k + 1) return out;
  for (std::size_t m : instance.mandatory) {
    if (!std::binary_search(items.begin(), items.end(), m)) return out;
  }
  out.feasible = true;
  // Only neighbouring items are linked by y; each item has at most one
  // predecessor and one successor.
  for (std::size_t i = 0; i + 1 < items.size(); ++i) out.objective += instance.gains(items[i], items[i + 1]);
  return out;
}

}  // namespace hsched
