#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace harness {

namespace {

using nlohmann::json;

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw config_error(std::string("config field '") + key + "': " + e.what());
  }
}

double parse_number(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw config_error("bad number '" + text + "'");
  return v;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw config_error("config must be a JSON object");
  static const char* known[] = {"kernel",      "n",        "masses",      "cutoff",
                                "t_max",       "obs_grid", "seed",        "replicas",
                                "observables", "integrals", "clock",      "threads"};
  for (const auto& [key, _] : doc.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw config_error("unknown config field '" + key + "'");
  }

  RunConfig c;
  if (doc.contains("kernel")) {
    const auto& k = doc.at("kernel");
    if (!k.is_object()) throw config_error("'kernel' must be an object");
    c.kernel = get_or<std::string>(k, "family", c.kernel);
    c.alpha = get_or<double>(k, "alpha", c.alpha);
  }
  c.masses = get_or<std::vector<double>>(doc, "masses", {});
  c.n = get_or<std::size_t>(doc, "n", c.masses.empty() ? c.n : c.masses.size());
  if (doc.contains("cutoff")) {
    const auto& cut = doc.at("cutoff");
    if (!cut.is_object()) throw config_error("'cutoff' must be an object");
    c.cutoff_mode = get_or<std::string>(cut, "mode", "none");
    c.cutoff_value = get_or<double>(cut, "value", 0.0);
  }
  c.t_max = get_or<double>(doc, "t_max", c.t_max);
  c.obs_grid = get_or<std::vector<double>>(doc, "obs_grid", {});
  c.seed = get_or<std::uint64_t>(doc, "seed", c.seed);
  c.replicas = get_or<std::size_t>(doc, "replicas", c.replicas);
  c.observables = get_or<std::vector<std::string>>(doc, "observables", {});
  if (doc.contains("integrals")) {
    for (const auto& item : doc.at("integrals")) {
      IntegralEntry e;
      e.observable = get_or<std::string>(item, "observable", "");
      e.from = get_or<double>(item, "from", 0.0);
      e.to = get_or<double>(item, "to", e.to);
      c.integrals.push_back(e);
    }
  }
  c.clock = get_or<std::string>(doc, "clock", c.clock);
  c.threads = get_or<unsigned>(doc, "threads", c.threads);
  return c;
}

json to_json(const RunConfig& c) {
  json doc;
  doc["kernel"] = {{"family", c.kernel}, {"alpha", c.alpha}};
  doc["n"] = c.n;
  if (!c.masses.empty()) doc["masses"] = c.masses;
  if (c.cutoff_mode == "none") {
    doc["cutoff"] = {{"mode", "none"}};
  } else {
    doc["cutoff"] = {{"mode", c.cutoff_mode}, {"value", c.cutoff_value}};
  }
  doc["t_max"] = c.t_max;
  doc["obs_grid"] = c.obs_grid;
  doc["seed"] = c.seed;
  doc["replicas"] = c.replicas;
  doc["observables"] = c.observables;
  json integrals = json::array();
  for (const auto& e : c.integrals) {
    json item = {{"observable", e.observable}, {"from", e.from}};
    if (std::isfinite(e.to)) item["to"] = e.to;
    integrals.push_back(item);
  }
  doc["integrals"] = integrals;
  doc["clock"] = c.clock;
  doc["threads"] = c.threads;
  return doc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  try {
    return parse_config(json::parse(in));
  } catch (const json::parse_error& e) {
    throw config_error("config file '" + path + "': " + e.what());
  }
}

void apply(RunConfig& c, const Overrides& o) {
  if (o.kernel) c.kernel = *o.kernel;
  if (o.alpha) c.alpha = *o.alpha;
  if (o.n) {
    c.n = *o.n;
    c.masses.clear();
  }
  if (o.cutoff && o.cutoff_frac) throw config_error("--cutoff and --cutoff-frac are exclusive");
  if (o.cutoff) {
    c.cutoff_mode = "absolute";
    c.cutoff_value = *o.cutoff;
  }
  if (o.cutoff_frac) {
    c.cutoff_mode = "fraction";
    c.cutoff_value = *o.cutoff_frac;
  }
  if (o.t_max) c.t_max = *o.t_max;
  if (o.grid) c.obs_grid = *o.grid;
  if (o.replicas) c.replicas = *o.replicas;
  if (o.seed) c.seed = *o.seed;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  const char sep = text.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  std::vector<double> out;
  if (sep == ':') {
    if (parts.size() != 3) throw config_error("grid range must be 'start:step:stop'");
    const double start = parse_number(parts[0]);
    const double step = parse_number(parts[1]);
    const double stop = parse_number(parts[2]);
    if (!(step > 0.0) || stop < start) throw config_error("bad grid range '" + text + "'");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
  } else {
    for (const auto& p : parts) out.push_back(parse_number(p));
  }
  if (out.empty()) throw config_error("empty observation grid");
  return out;
}

std::vector<double> default_grid() {
  std::vector<double> out;
  for (int i = 0; i <= 60; ++i) out.push_back(i / 20.0);
  return out;
}

ConfigHandle build(const RunConfig& c, const BuildOptions& options) {
  const KernelHandle kernel = make_kernel(c.kernel, c.alpha);
  gk_sim_config* raw = nullptr;
  GK_CHECK(gk_sim_config_create(kernel.get(), c.n, &raw));
  ConfigHandle cfg(raw);
  if (!c.masses.empty()) GK_CHECK(gk_sim_config_set_masses(raw, c.masses.data(), c.masses.size()));

  if (c.cutoff_mode == "none") {
    GK_CHECK(gk_sim_config_set_cutoff(raw, GK_CUTOFF_NONE, 0.0));
  } else if (c.cutoff_mode == "absolute") {
    GK_CHECK(gk_sim_config_set_cutoff(raw, GK_CUTOFF_ABSOLUTE, c.cutoff_value));
  } else if (c.cutoff_mode == "fraction") {
    GK_CHECK(gk_sim_config_set_cutoff(raw, GK_CUTOFF_FRACTION, c.cutoff_value));
  } else {
    throw config_error("unknown cutoff mode '" + c.cutoff_mode + "'");
  }

  if (c.clock == "auto") {
    GK_CHECK(gk_sim_config_set_clock(raw, GK_CLOCK_AUTO));
  } else if (c.clock == "exact") {
    GK_CHECK(gk_sim_config_set_clock(raw, GK_CLOCK_EXACT_PRODUCT));
  } else if (c.clock == "thinning") {
    GK_CHECK(gk_sim_config_set_clock(raw, GK_CLOCK_THINNING));
  } else {
    throw config_error("unknown clock '" + c.clock + "'");
  }

  GK_CHECK(gk_sim_config_set_tmax(raw, c.t_max));
  GK_CHECK(gk_sim_config_set_grid(raw, c.obs_grid.data(), c.obs_grid.size()));
  GK_CHECK(gk_sim_config_set_seed(raw, c.seed));
  GK_CHECK(gk_sim_config_set_replicas(raw, c.replicas));
  GK_CHECK(gk_sim_config_set_threads(raw, c.threads));
  for (const auto& obs : c.observables) GK_CHECK(gk_sim_config_add_observable(raw, obs.c_str()));
  for (const auto& e : c.integrals) {
    GK_CHECK(gk_sim_config_add_integral(raw, e.observable.c_str(), e.from, e.to));
  }
  GK_CHECK(gk_sim_config_set_record_events(raw, options.record_events ? 1 : 0));
  GK_CHECK(gk_sim_config_set_record_snapshots(raw, options.record_snapshots ? 1 : 0));
  GK_CHECK(gk_sim_config_validate(raw));
  return cfg;
}

Ensemble simulate(const RunConfig& config, const BuildOptions& options) {
  const ConfigHandle cfg = build(config, options);
  gk_ensemble* raw = nullptr;
  GK_CHECK(gk_simulate(cfg.get(), &raw));
  return Ensemble(raw);
}

}  // namespace harness
