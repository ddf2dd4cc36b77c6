#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "molcoop/analytics.hpp"
#include "molcoop/simulator.hpp"

namespace molcoop {

// JSON scenario files. Distances are given in micrometres and converted to
// centimetres on load. See README.md for the full schema.

enum class SplitRule {
  uniform,   // Q shared equally by all transmitting nodes
  per_node,  // every transmitting node emits Q
  explicit_counts,  // source_molecules and relays[i].molecules as given
};

enum class SweptParameter { total_molecules, distance };
enum class Spacing { linear, log };

struct RelaySpec {
  double d_sr_um = 0.0;
  double d_rd_um = 0.0;
  std::optional<double> molecules;  // explicit split only
  MuiModel relay_mui;
  MuiModel destination_mui;
};

struct ScenarioSpec {
  double prior = 0.5;
  Medium medium{1e-6};
  MuiModel mui{4e16, 0.3 * 4e16};
  double molecules = 0.0;  // Q; meaning depends on split_rule
  SplitRule split = SplitRule::uniform;
  std::optional<double> source_molecules;
  std::vector<RelaySpec> relays;
  std::optional<double> direct_d_um;
  int miso_emitters = 2;
  int simo_receivers = 2;
};

struct SweepSpec {
  SweptParameter parameter = SweptParameter::total_molecules;
  double min = 0.0;
  double max = 0.0;
  int points = 2;
  Spacing spacing = Spacing::log;
  std::vector<System> systems;
  std::vector<int> relay_counts;  // cooperative N values; empty = all relays
  bool monte_carlo = false;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  DetectorChoice detector = DetectorChoice::linear;
};

struct LoadedConfig {
  ScenarioSpec scenario;
  std::optional<SweepSpec> sweep;
};

/// Parses and validates a configuration document. Throws ConfigError naming
/// the offending key (e.g. "relays[1].d_rd_um").
LoadedConfig parse_config(std::string_view json_text);
LoadedConfig load_config(const std::filesystem::path& path);

/// Built-in experiment presets ("fig2a", "fig2b", "fig2c").
std::string_view preset_text(std::string_view name);
std::vector<std::string_view> preset_names();

std::optional<System> parse_system(std::string_view name);
std::optional<DetectorChoice> parse_detector(std::string_view name);

/// Cooperative network using the first `relay_count` relays, total/per-node
/// molecule budget `molecules`, and all distances scaled by `scale`.
NetworkConfig build_network(const ScenarioSpec& spec, int relay_count, double molecules,
                            double scale = 1.0);

/// Scenario for one system at molecule budget `molecules` and direct
/// distance `distance_um`. Relay distances scale with distance_um / direct_d_um.
/// `nodes` is N for the cooperative system and ignored otherwise.
Scenario build_scenario(const ScenarioSpec& spec, System system, int nodes, double molecules,
                        double distance_um);

}  // namespace molcoop
