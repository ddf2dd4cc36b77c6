#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "molcoop/config.hpp"
#include "molcoop/simulator.hpp"

namespace molcoop {

/// One CSV line: a system evaluated at one grid point.
struct SweepRow {
  System system = System::cooperative;
  int nodes = 1;  // N relays, MISO emitters, SIMO receivers, 1 for SISO
  double molecules = 0.0;
  double distance_um = 0.0;
  double pe_analytic = 0.0;
  std::optional<McEstimate> mc;
  std::optional<DetectorChoice> detector;  // set together with mc
};

inline constexpr std::string_view kCsvHeader =
    "system,N,Q_total,distance_um,pe_analytic,pe_mc,mc_se,trials,seed,detector";

/// Doubles are written with 17 significant digits so that parsing a row
/// restores every value bit-for-bit.
std::string format_csv_row(const SweepRow& row);
SweepRow parse_csv_row(std::string_view line);

std::vector<double> sweep_grid(const SweepSpec& spec);

/// Options applied on top of a loaded sweep (command-line overrides).
struct RunOptions {
  unsigned workers = 1;
};

using RowSink = std::function<void(const SweepRow&)>;

/// Evaluates every (grid point x system) pair in order and hands each row to
/// `sink` as soon as it is complete. Grid-point order is outermost; within a
/// point, systems follow spec.systems and cooperative rows follow
/// relay_counts. Analytic-only sweeps never touch the random generator.
void run_sweep(const ScenarioSpec& scenario, const SweepSpec& spec, const RunOptions& options,
               const RowSink& sink);

/// Same rows for a single operating point (the scenario's own molecules and
/// direct distance).
void run_point(const ScenarioSpec& scenario, const SweepSpec& spec, const RunOptions& options,
               const RowSink& sink);

}  // namespace molcoop
