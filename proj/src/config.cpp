#include "molcoop/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "molcoop/error.hpp"

namespace molcoop {
namespace {

using nlohmann::json;

constexpr double kDefaultMuiMean = 4e16;
constexpr double kDefaultCov = 0.3;

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) throw ConfigError(join(path, key), "unknown field");
  }
}

const json& require_object(const json& v, const std::string& path) {
  if (!v.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  return v;
}

double number_at(const json& obj, const std::string& key, const std::string& path) {
  const std::string where = join(path, key);
  if (!obj.contains(key)) throw ConfigError(where, "missing required key");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where, "must be finite");
  return x;
}

double positive_at(const json& obj, const std::string& key, const std::string& path) {
  const double x = number_at(obj, key, path);
  if (!(x > 0.0)) throw ConfigError(join(path, key), "must be strictly positive");
  return x;
}

std::uint64_t unsigned_at(const json& obj, const std::string& key, const std::string& path) {
  const std::string where = join(path, key);
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) throw ConfigError(where, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

int int_at(const json& obj, const std::string& key, const std::string& path, int min_value) {
  const std::string where = join(path, key);
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < min_value || x > 1'000'000) {
    throw ConfigError(where, "must be at least " + std::to_string(min_value));
  }
  return static_cast<int>(x);
}

std::string string_at(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(join(path, key), "expected a string");
  return v.get<std::string>();
}

MuiModel parse_mui(const json& v, const std::string& path) {
  require_object(v, path);
  reject_unknown(v, path, {"mean", "cov", "stddev", "interferers"});
  if (v.contains("cov") && v.contains("stddev")) {
    throw ConfigError(join(path, "stddev"), "give either cov or stddev, not both");
  }
  double mean = kDefaultMuiMean;
  if (v.contains("interferers")) {
    if (v.contains("mean")) {
      throw ConfigError(join(path, "interferers"), "give either mean or interferers, not both");
    }
    const std::string ipath = join(path, "interferers");
    const json& inter = require_object(v.at("interferers"), ipath);
    reject_unknown(inter, ipath, {"count", "molecules", "distance_um"});
    for (const char* k : {"count", "molecules", "distance_um"}) {
      if (!inter.contains(k)) throw ConfigError(join(ipath, k), "missing required key");
    }
    const int count = int_at(inter, "count", ipath, 1);
    const double q = positive_at(inter, "molecules", ipath);
    const double d = positive_at(inter, "distance_um", ipath);
    mean = count * peak_concentration(Emission(q), Link::from_micrometres(d));
  } else if (v.contains("mean")) {
    mean = number_at(v, "mean", path);
    if (mean < 0.0) throw ConfigError(join(path, "mean"), "must be non-negative");
  }
  if (v.contains("stddev")) return MuiModel(mean, positive_at(v, "stddev", path));
  const double cov = v.contains("cov") ? positive_at(v, "cov", path) : kDefaultCov;
  const double sd = cov * mean;
  if (!(sd > 0.0)) throw ConfigError(join(path, "mean"), "interference standard deviation would be 0");
  return MuiModel(mean, sd);
}

SplitRule parse_split(const std::string& s, const std::string& path) {
  if (s == "uniform") return SplitRule::uniform;
  if (s == "per_node") return SplitRule::per_node;
  if (s == "explicit") return SplitRule::explicit_counts;
  throw ConfigError(path, "unknown split rule '" + s + "' (uniform, per_node, explicit)");
}

SweepSpec parse_sweep(const json& v, const ScenarioSpec& scenario) {
  const std::string path = "sweep";
  require_object(v, path);
  reject_unknown(v, path,
                 {"parameter", "min", "max", "points", "spacing", "systems", "relay_counts",
                  "monte_carlo", "trials", "seed", "detector"});
  SweepSpec s;
  if (!v.contains("parameter")) throw ConfigError("sweep.parameter", "missing required key");
  const std::string param = string_at(v, "parameter", path);
  if (param == "total_molecules") {
    s.parameter = SweptParameter::total_molecules;
  } else if (param == "distance") {
    s.parameter = SweptParameter::distance;
  } else {
    throw ConfigError("sweep.parameter", "expected total_molecules or distance");
  }
  s.min = positive_at(v, "min", path);
  s.max = positive_at(v, "max", path);
  if (!(s.min < s.max)) throw ConfigError("sweep.max", "must be greater than sweep.min");
  if (v.contains("points")) s.points = int_at(v, "points", path, 2);
  if (v.contains("spacing")) {
    const std::string sp = string_at(v, "spacing", path);
    if (sp == "linear") {
      s.spacing = Spacing::linear;
    } else if (sp == "log") {
      s.spacing = Spacing::log;
    } else {
      throw ConfigError("sweep.spacing", "expected linear or log");
    }
  }
  if (v.contains("systems")) {
    const json& arr = v.at("systems");
    if (!arr.is_array() || arr.empty()) {
      throw ConfigError("sweep.systems", "expected a non-empty array");
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "sweep.systems[" + std::to_string(i) + "]";
      if (!arr[i].is_string()) throw ConfigError(where, "expected a string");
      const auto sys = parse_system(arr[i].get<std::string>());
      if (!sys) throw ConfigError(where, "unknown system (cooperative, siso, miso, simo)");
      s.systems.push_back(*sys);
    }
  } else {
    s.systems = {System::cooperative};
    if (scenario.direct_d_um) s.systems.insert(s.systems.end(), {System::siso, System::miso, System::simo});
  }
  if (!scenario.direct_d_um) {
    for (System sys : s.systems) {
      if (sys != System::cooperative) throw ConfigError("direct_d_um", "required for baseline systems");
    }
  }
  if (v.contains("relay_counts")) {
    const json& arr = v.at("relay_counts");
    if (!arr.is_array() || arr.empty()) {
      throw ConfigError("sweep.relay_counts", "expected a non-empty array");
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "sweep.relay_counts[" + std::to_string(i) + "]";
      if (!arr[i].is_number_integer()) throw ConfigError(where, "expected an integer");
      const auto n = arr[i].get<std::int64_t>();
      if (n < 1 || n > static_cast<std::int64_t>(scenario.relays.size())) {
        throw ConfigError(where, "must be between 1 and the number of relays");
      }
      s.relay_counts.push_back(static_cast<int>(n));
    }
  }
  if (v.contains("monte_carlo")) {
    if (!v.at("monte_carlo").is_boolean()) {
      throw ConfigError("sweep.monte_carlo", "expected a boolean");
    }
    s.monte_carlo = v.at("monte_carlo").get<bool>();
  }
  if (v.contains("trials")) s.trials = unsigned_at(v, "trials", path);
  if (v.contains("seed")) s.seed = unsigned_at(v, "seed", path);
  if (v.contains("detector")) {
    const auto d = parse_detector(string_at(v, "detector", path));
    if (!d) throw ConfigError("sweep.detector", "expected linear or exact");
    s.detector = *d;
  }
  if (s.monte_carlo && s.trials < 1000) {
    throw ConfigError("sweep.trials", "Monte Carlo sweeps need at least 1000 trials");
  }
  if (s.parameter == SweptParameter::distance && !scenario.direct_d_um) {
    throw ConfigError("direct_d_um", "required when sweeping distance");
  }
  if (s.parameter == SweptParameter::total_molecules &&
      scenario.split == SplitRule::explicit_counts) {
    throw ConfigError("split_rule", "cannot sweep molecules with explicit per-node counts");
  }
  return s;
}

}  // namespace

std::optional<System> parse_system(std::string_view name) {
  if (name == "cooperative") return System::cooperative;
  if (name == "siso") return System::siso;
  if (name == "miso") return System::miso;
  if (name == "simo") return System::simo;
  return std::nullopt;
}

std::optional<DetectorChoice> parse_detector(std::string_view name) {
  if (name == "linear") return DetectorChoice::linear;
  if (name == "exact") return DetectorChoice::exact;
  return std::nullopt;
}

LoadedConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  require_object(root, "");
  reject_unknown(root, "",
                 {"beta", "diffusion_coefficient_cm2_s", "mui", "molecules", "split_rule",
                  "source_molecules", "relays", "direct_d_um", "miso_emitters", "simo_receivers",
                  "sweep", "description"});
  LoadedConfig out;
  ScenarioSpec& sc = out.scenario;
  if (root.contains("beta")) {
    sc.prior = number_at(root, "beta", "");
    if (!(sc.prior > 0.0 && sc.prior < 1.0)) {
      throw ConfigError("beta", "must lie strictly between 0 and 1");
    }
  }
  if (root.contains("diffusion_coefficient_cm2_s")) {
    sc.medium = Medium(positive_at(root, "diffusion_coefficient_cm2_s", ""));
  }
  if (root.contains("mui")) sc.mui = parse_mui(root.at("mui"), "mui");
  sc.molecules = positive_at(root, "molecules", "");
  if (root.contains("split_rule")) {
    sc.split = parse_split(string_at(root, "split_rule", ""), "split_rule");
  }
  if (root.contains("source_molecules")) {
    sc.source_molecules = positive_at(root, "source_molecules", "");
  }
  if (root.contains("direct_d_um")) sc.direct_d_um = positive_at(root, "direct_d_um", "");
  if (root.contains("miso_emitters")) sc.miso_emitters = int_at(root, "miso_emitters", "", 1);
  if (root.contains("simo_receivers")) sc.simo_receivers = int_at(root, "simo_receivers", "", 1);

  if (!root.contains("relays")) throw ConfigError("relays", "missing required key");
  const json& relays = root.at("relays");
  if (!relays.is_array() || relays.empty()) {
    throw ConfigError("relays", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < relays.size(); ++i) {
    const std::string path = "relays[" + std::to_string(i) + "]";
    const json& r = require_object(relays[i], path);
    reject_unknown(r, path, {"d_sr_um", "d_rd_um", "molecules", "mui_sr", "mui_rd"});
    RelaySpec rs{
        .d_sr_um = positive_at(r, "d_sr_um", path),
        .d_rd_um = positive_at(r, "d_rd_um", path),
        .molecules = std::nullopt,
        .relay_mui = r.contains("mui_sr") ? parse_mui(r.at("mui_sr"), join(path, "mui_sr")) : sc.mui,
        .destination_mui =
            r.contains("mui_rd") ? parse_mui(r.at("mui_rd"), join(path, "mui_rd")) : sc.mui,
    };
    if (r.contains("molecules")) rs.molecules = positive_at(r, "molecules", path);
    if (sc.split == SplitRule::explicit_counts && !rs.molecules) {
      throw ConfigError(join(path, "molecules"), "required with split_rule explicit");
    }
    sc.relays.push_back(rs);
  }
  if (sc.split == SplitRule::explicit_counts && !sc.source_molecules) {
    throw ConfigError("source_molecules", "required with split_rule explicit");
  }
  if (root.contains("sweep")) out.sweep = parse_sweep(root.at("sweep"), sc);
  return out;
}

LoadedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

NetworkConfig build_network(const ScenarioSpec& spec, int relay_count, double molecules,
                            double scale) {
  if (relay_count < 1 || relay_count > static_cast<int>(spec.relays.size())) {
    throw DomainError("relay count out of range for this scenario");
  }
  const auto n = static_cast<std::size_t>(relay_count);
  double source_q = molecules;
  std::vector<double> relay_q(n, molecules);
  switch (spec.split) {
    case SplitRule::uniform:
      source_q = molecules / static_cast<double>(n + 1);
      relay_q.assign(n, source_q);
      break;
    case SplitRule::per_node:
      break;
    case SplitRule::explicit_counts:
      source_q = spec.source_molecules.value();
      for (std::size_t i = 0; i < n; ++i) relay_q[i] = spec.relays[i].molecules.value();
      break;
  }
  NetworkConfig cfg;
  cfg.prior = spec.prior;
  cfg.source = Emission(source_q);
  for (std::size_t i = 0; i < n; ++i) {
    const RelaySpec& r = spec.relays[i];
    cfg.relays.push_back(RelayLink{
        .source_to_relay = Link::from_micrometres(r.d_sr_um * scale),
        .relay_mui = r.relay_mui,
        .retransmission = Emission(relay_q[i]),
        .relay_to_destination = Link::from_micrometres(r.d_rd_um * scale),
        .destination_mui = r.destination_mui,
    });
  }
  if (spec.direct_d_um) cfg.direct = Link::from_micrometres(*spec.direct_d_um * scale);
  return cfg;
}

Scenario build_scenario(const ScenarioSpec& spec, System system, int nodes, double molecules,
                        double distance_um) {
  const double scale = spec.direct_d_um ? distance_um / *spec.direct_d_um : 1.0;
  if (system == System::cooperative) return build_network(spec, nodes, molecules, scale);

  if (!spec.direct_d_um) throw ConfigError("direct_d_um", "required for baseline systems");
  const Link direct = Link::from_micrometres(distance_um);
  // Baselines see the same total budget as the cooperative network under the
  // explicit rule.
  double total = molecules;
  if (spec.split == SplitRule::explicit_counts) {
    total = spec.source_molecules.value();
    for (const auto& r : spec.relays) total += r.molecules.value();
  }
  switch (system) {
    case System::siso:
      return SisoSetup{spec.prior, Emission(total), direct, spec.mui};
    case System::miso: {
      const double each =
          spec.split == SplitRule::per_node ? total : total / spec.miso_emitters;
      std::vector<Emitter> emitters(spec.miso_emitters, Emitter{Emission(each), direct});
      return MisoSetup{spec.prior, std::move(emitters), spec.mui};
    }
    case System::simo: {
      std::vector<Receiver> receivers(spec.simo_receivers, Receiver{direct, spec.mui});
      return SimoSetup{spec.prior, Emission(total), std::move(receivers)};
    }
    case System::cooperative:
      break;
  }
  throw DomainError("unreachable system");
}

}  // namespace molcoop
