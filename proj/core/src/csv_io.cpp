#include "hsched/csv_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

#include "hsched/error.h"

namespace hsched {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trajectory_csv(const ScenarioTrajectory& traj) {
  std::string out = "target_slot,made_at,center,half_width,realization\n";
  for (Slot t = 0; t < traj.slots_total(); ++t) {
    const std::string r = format_double(traj.realization()[t]);
    for (Slot s = 0; s <= t; ++s) {
      const ForecastInterval iv = traj.interval(t, s);
      out += std::to_string(t) + ',' + std::to_string(s) + ',' + format_double(iv.center) + ',' +
             format_double(iv.half_width) + ',' + r + '\n';
    }
  }
  return out;
}

std::string gain_matrix_csv(const GainMatrix& gains) {
  std::string out = "s,t,weight\n";
  for (std::size_t s = 0; s < gains.n_nodes(); ++s) {
    for (std::size_t t = s + 1; t < gains.n_nodes(); ++t) {
      out += std::to_string(s) + ',' + std::to_string(t) + ',' + format_double(gains(s, t)) + '\n';
    }
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view text, std::size_t line_no) {
  T value{};
  text = trim(text);
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("gains:" + std::to_string(line_no), "cannot parse '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

GainMatrix parse_gain_matrix_csv(std::string_view text) {
  struct Arc {
    std::size_t s, t;
    double w;
  };
  std::vector<Arc> arcs;
  std::size_t n_nodes = 0;
  std::size_t line_no = 0;
  bool header_seen = false;
  for (std::string_view rest = text; !rest.empty();) {
    const std::size_t nl = rest.find('\n');
    std::string_view line = trim(rest.substr(0, nl));
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line == "s,t,weight") continue;
      throw ConfigError("gains:1", "expected header 's,t,weight'");
    }
    const auto cols = split(line, ',');
    if (cols.size() != 3) throw ConfigError("gains:" + std::to_string(line_no), "expected 3 columns");
    Arc a{parse_number<std::size_t>(cols[0], line_no), parse_number<std::size_t>(cols[1], line_no),
          parse_number<double>(cols[2], line_no)};
    if (a.s >= a.t) throw ConfigError("gains:" + std::to_string(line_no), "arcs need s < t");
    if (!(a.w >= 0.0)) throw ConfigError("gains:" + std::to_string(line_no), "weights must be nonnegative");
    n_nodes = std::max(n_nodes, a.t + 1);
    arcs.push_back(a);
  }
  if (n_nodes < 2) throw ConfigError("gains", "no arcs found");
  GainMatrix gains(n_nodes);
  for (const Arc& a : arcs) gains(a.s, a.t) = a.w;
  return gains;
}

std::string path_csv(const PathSolution& path) {
  std::string out = "index,from,to,weight\n";
  for (std::size_t i = 0; i < path.arc_weights.size(); ++i) {
    out += std::to_string(i) + ',' + std::to_string(path.nodes[i]) + ',' + std::to_string(path.nodes[i + 1]) + ',' +
           format_double(path.arc_weights[i]) + '\n';
  }
  return out;
}

std::string trace_csv(const DecisionTrace& trace) {
  std::string out = "slot,contribution,factor,factored_threshold,decision\n";
  for (const SlotRecord& r : trace.records) {
    out += std::to_string(r.slot) + ',' + format_double(r.contribution) + ',' + format_double(r.factor) + ',' +
           format_double(r.factored_threshold) + ',' + std::string(to_string(r.decision)) + '\n';
  }
  return out;
}

}  // namespace hsched
