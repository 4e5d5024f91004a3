#include "hsched/config.h"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "hsched/csv_io.h"
#include "hsched/error.h"
#include "json.hpp"

namespace hsched {

using nlohmann::json;

TimeGrid ScenarioConfig::make_grid() const {
  return TimeGrid(grid.days, grid.slots_per_day, grid.slot_minutes, grid.mandatory_noon);
}

ReductionSchedule ScenarioConfig::make_schedule() const {
  if (!schedule.table.empty()) return ReductionSchedule::from_table(schedule.table);
  return ReductionSchedule::geometric(schedule.rho_0, schedule.rho_8, schedule.d_max);
}

std::vector<ForecastInterval> ScenarioConfig::make_base() const { return build_base_profile(make_grid(), profile); }

ScenarioTrajectory ScenarioConfig::make_trajectory(const DistributionSpec& dist, std::uint64_t seed_value) const {
  const auto base = make_base();
  const auto u = sample_realization(dist, seed_value, base.size());
  return evolve_forecasts(base, u, make_schedule());
}

namespace {

// Reads one JSON object, remembering which keys were consumed so that
// leftovers can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    const json* v = find(key);
    if (v == nullptr) return;
    out = convert<T>(*v, key_path(key));
  }

  template <typename T>
  static T convert(const json& v, const std::string& key) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(key, "expected a boolean");
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(key, "expected a string");
      return v.get<std::string>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
        throw ConfigError(key, "expected a nonnegative integer");
      return static_cast<T>(v.get<unsigned long long>());
    } else {
      if (!v.is_number()) throw ConfigError(key, "expected a number");
      return v.get<double>();
    }
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.contains(it.key())) throw ConfigError(key_path(it.key()), "unknown key");
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename F>
void checked(const std::string& key, F&& f) {
  try {
    f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

DistributionSpec read_distribution(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  std::string kind = "uniform";
  r.read("kind", kind);
  DistributionSpec spec;
  checked(r.key_path("kind"), [&] { spec.kind = parse_distribution_kind(kind); });
  spec.mean = spec.kind == DistributionKind::kShiftedTruncatedNormal ? 0.6 : 0.0;
  r.read("mean", spec.mean);
  r.read("std_dev", spec.std_dev);
  r.finish();
  if (spec.kind != DistributionKind::kUniform) {
    if (!(spec.std_dev > 0.0)) throw ConfigError(r.key_path("std_dev"), "must be positive");
    if (!(spec.mean > -2.0 && spec.mean < 2.0)) throw ConfigError(r.key_path("mean"), "must lie in (-2, 2)");
  }
  return spec;
}

FactorSpec read_factor(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  FactorSpec spec;
  std::string variant = "constant";
  r.read("variant", variant);
  checked(r.key_path("variant"), [&] { spec.variant = parse_factor_variant(variant); });
  r.read("L", spec.lower);
  r.read("U", spec.upper);
  r.read("R", spec.gap);
  r.read("c", spec.rate);
  r.finish();
  // Zhou bounds are replaced by contribution data at run time.
  if (spec.variant != FactorVariant::kZhouExponential) checked(path, [&] { spec.validate(); });
  return spec;
}

ScenarioConfig read_scenario(const json& node) {
  ScenarioConfig cfg;
  ObjectReader r(node, "scenario");
  if (const json* g = r.find("grid")) {
    ObjectReader gr(*g, "scenario.grid");
    gr.read("days", cfg.grid.days);
    gr.read("slots_per_day", cfg.grid.slots_per_day);
    gr.read("slot_minutes", cfg.grid.slot_minutes);
    gr.read("mandatory_noon", cfg.grid.mandatory_noon);
    gr.finish();
  }
  if (const json* p = r.find("profile")) {
    ObjectReader pr(*p, "scenario.profile");
    pr.read("daily_kwh", cfg.profile.daily_kwh);
    pr.read("sunrise_slot", cfg.profile.sunrise_slot);
    pr.read("sunset_slot", cfg.profile.sunset_slot);
    pr.read("alpha_pv", cfg.profile.alpha_pv);
    pr.finish();
  }
  if (const json* s = r.find("schedule")) {
    ObjectReader sr(*s, "scenario.schedule");
    sr.read("rho_0", cfg.schedule.rho_0);
    sr.read("rho_8", cfg.schedule.rho_8);
    sr.read("d_max", cfg.schedule.d_max);
    if (const json* t = sr.find("table")) {
      if (!t->is_array()) throw ConfigError("scenario.schedule.table", "expected an array");
      for (const auto& v : *t) cfg.schedule.table.push_back(ObjectReader::convert<double>(v, "scenario.schedule.table"));
    }
    sr.finish();
  }
  if (const json* d = r.find("distribution")) cfg.distribution = read_distribution(*d, "scenario.distribution");
  if (const json* gp = r.find("gamma_pv"); gp && !gp->is_null()) {
    cfg.gamma_pv = ObjectReader::convert<double>(*gp, "scenario.gamma_pv");
  }
  r.read("seed", cfg.seed);
  r.finish();

  checked("scenario.grid", [&] { (void)cfg.make_grid(); });
  if (cfg.grid.slots_per_day > 0 && cfg.grid.days > 0) {
    checked("scenario.profile", [&] { (void)cfg.make_base(); });
  }
  checked("scenario.schedule", [&] { (void)cfg.make_schedule(); });
  return cfg;
}

PolicyConfig read_policy(const json& node) {
  PolicyConfig cfg;
  ObjectReader r(node, "policy");
  std::string approach = "AR";
  r.read("approach", approach);
  checked("policy.approach", [&] { cfg.threshold.approach = parse_approach(approach); });
  r.read("percentile_q", cfg.threshold.percentile_q);
  r.read("n_history", cfg.threshold.n_history);
  r.read("pr_stride", cfg.threshold.pr_stride);
  r.read("k_per_day", cfg.k_per_day);
  if (const json* f = r.find("factor")) cfg.factor = read_factor(*f, "policy.factor");
  r.finish();
  checked("policy", [&] { cfg.threshold.validate(); });
  if (cfg.k_per_day == 0) throw ConfigError("policy.k_per_day", "must be positive");
  return cfg;
}

SweepGrid read_sweep(const json& node) {
  SweepGrid cfg;
  ObjectReader r(node, "sweep");
  auto array = [&](const char* key) -> const json* {
    const json* v = r.find(key);
    if (v != nullptr && (!v->is_array() || v->empty()))
      throw ConfigError(r.key_path(key), "expected a non-empty array");
    return v;
  };
  if (const json* v = array("distributions")) {
    cfg.distributions.clear();
    for (std::size_t i = 0; i < v->size(); ++i)
      cfg.distributions.push_back(read_distribution((*v)[i], "sweep.distributions[" + std::to_string(i) + "]"));
  }
  if (const json* v = array("k_per_day")) {
    cfg.k_per_day.clear();
    for (const auto& k : *v) {
      cfg.k_per_day.push_back(ObjectReader::convert<std::size_t>(k, "sweep.k_per_day"));
      if (cfg.k_per_day.back() == 0) throw ConfigError("sweep.k_per_day", "entries must be positive");
    }
  }
  if (const json* v = array("approaches")) {
    cfg.approaches.clear();
    for (const auto& a : *v) {
      const auto name = ObjectReader::convert<std::string>(a, "sweep.approaches");
      checked("sweep.approaches", [&] { cfg.approaches.push_back(parse_approach(name)); });
    }
  }
  const json* list = array("percentiles");
  const json* step = r.find("percentile_step");
  if (list != nullptr && step != nullptr)
    throw ConfigError("sweep.percentile_step", "give either percentiles or percentile_step");
  if (list != nullptr) {
    for (const auto& q : *list) {
      const double v = ObjectReader::convert<double>(q, "sweep.percentiles");
      if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("sweep.percentiles", "entries must lie in [0, 1]");
      cfg.percentiles.push_back(v);
    }
  } else {
    double dq = 0.05;
    if (step != nullptr) dq = ObjectReader::convert<double>(*step, "sweep.percentile_step");
    if (!(dq > 0.0 && dq <= 1.0)) throw ConfigError("sweep.percentile_step", "must lie in (0, 1]");
    const auto n = static_cast<std::size_t>(std::floor(1.0 / dq + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) cfg.percentiles.push_back(std::min(1.0, std::round(i * dq * 1e9) / 1e9));
  }
  if (const json* v = array("factors")) {
    cfg.factors.clear();
    for (std::size_t i = 0; i < v->size(); ++i)
      cfg.factors.push_back(read_factor((*v)[i], "sweep.factors[" + std::to_string(i) + "]"));
  }
  r.read("n_seeds", cfg.n_seeds);
  r.read("master_seed", cfg.master_seed);
  r.read("n_history", cfg.n_history);
  r.read("write_traces", cfg.write_traces);
  r.read("include_baselines", cfg.include_baselines);
  r.finish();
  if (cfg.n_seeds == 0) throw ConfigError("sweep.n_seeds", "must be positive");
  if (cfg.n_history == 0) throw ConfigError("sweep.n_history", "must be positive");
  return cfg;
}

void apply_override(json& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError(assignment, "override must look like key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &root;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError(key, "empty path component");
    if (!node->is_object()) throw ConfigError(key, "override descends into a non-object");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    if (!node->contains(part)) (*node)[part] = json::object();
    node = &(*node)[part];
    start = dot + 1;
  }
}

json distribution_json(const DistributionSpec& d) {
  return {{"kind", to_string(d.kind)}, {"mean", d.mean}, {"std_dev", d.std_dev}};
}

json factor_json(const FactorSpec& f) {
  return {{"variant", to_string(f.variant)}, {"L", f.lower}, {"U", f.upper}, {"R", f.gap}, {"c", f.rate}};
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view json_text, std::span<const std::string> overrides) {
  json root = json::parse(json_text, nullptr, false);
  if (root.is_discarded()) throw ConfigError("<root>", "invalid JSON");
  if (!root.is_object()) throw ConfigError("<root>", "expected an object");
  for (const auto& o : overrides) apply_override(root, o);

  ExperimentConfig cfg;
  ObjectReader r(root, "");
  if (const json* s = r.find("scenario")) cfg.scenario = read_scenario(*s);
  if (const json* p = r.find("policy")) cfg.policy = read_policy(*p);
  if (const json* s = r.find("sweep")) {
    cfg.sweep = read_sweep(*s);
  } else {
    cfg.sweep = read_sweep(json::object());
  }
  r.read("output_dir", cfg.output_dir);
  r.finish();
  if (cfg.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path, std::span<const std::string> overrides) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    throw ConfigError("--config", e.what());
  }
  return parse_experiment_config(text, overrides);
}

std::string to_json(const ExperimentConfig& c) {
  const auto& s = c.scenario;
  json schedule = {{"rho_0", s.schedule.rho_0}, {"rho_8", s.schedule.rho_8}, {"d_max", s.schedule.d_max}};
  if (!s.schedule.table.empty()) schedule["table"] = s.schedule.table;
  json scenario = {
      {"grid",
       {{"days", s.grid.days},
        {"slots_per_day", s.grid.slots_per_day},
        {"slot_minutes", s.grid.slot_minutes},
        {"mandatory_noon", s.grid.mandatory_noon}}},
      {"profile",
       {{"daily_kwh", s.profile.daily_kwh},
        {"sunrise_slot", s.profile.sunrise_slot},
        {"sunset_slot", s.profile.sunset_slot},
        {"alpha_pv", s.profile.alpha_pv}}},
      {"schedule", schedule},
      {"distribution", distribution_json(s.distribution)},
      {"seed", s.seed},
  };
  if (s.gamma_pv) scenario["gamma_pv"] = *s.gamma_pv;

  const auto& p = c.policy;
  json policy = {{"approach", to_string(p.threshold.approach)},
                 {"percentile_q", p.threshold.percentile_q},
                 {"n_history", p.threshold.n_history},
                 {"pr_stride", p.threshold.pr_stride},
                 {"k_per_day", p.k_per_day},
                 {"factor", factor_json(p.factor)}};

  const auto& g = c.sweep;
  json dists = json::array();
  for (const auto& d : g.distributions) dists.push_back(distribution_json(d));
  json approaches = json::array();
  for (auto a : g.approaches) approaches.push_back(to_string(a));
  json factors = json::array();
  for (const auto& f : g.factors) factors.push_back(factor_json(f));
  json sweep = {{"distributions", dists},         {"k_per_day", g.k_per_day},
                {"approaches", approaches},       {"percentiles", g.percentiles},
                {"factors", factors},             {"n_seeds", g.n_seeds},
                {"master_seed", g.master_seed},   {"n_history", g.n_history},
                {"write_traces", g.write_traces}, {"include_baselines", g.include_baselines}};

  json root = {{"scenario", scenario}, {"policy", policy}, {"sweep", sweep}, {"output_dir", c.output_dir}};
  return root.dump(2) + "\n";
}

}  // namespace hsched
