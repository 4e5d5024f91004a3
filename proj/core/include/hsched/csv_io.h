#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hsched/gain_matrix.h"
#include "hsched/path_solver.h"
#include "hsched/policy.h"

namespace hsched {

// Shortest round-trip decimal form.
std::string format_double(double value);

// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// target_slot,made_at,center,half_width,realization for made_at <= target.
std::string trajectory_csv(const ScenarioTrajectory& traj);

// s,t,weight for every s < t (dense upper triangle, sink arcs included).
std::string gain_matrix_csv(const GainMatrix& gains);
// Inverse of gain_matrix_csv; missing arcs are 0. The node count is one past
// the largest index seen. Throws ConfigError on malformed rows.
GainMatrix parse_gain_matrix_csv(std::string_view text);

// index,from,to,weight rows followed by nothing else.
std::string path_csv(const PathSolution& path);

// slot,contribution,factor,factored_threshold,decision
std::string trace_csv(const DecisionTrace& trace);

}  // namespace hsched
