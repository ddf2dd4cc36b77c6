#include "molcoop/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "molcoop/error.hpp"

namespace molcoop {
namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view field) {
  const std::string s(field);
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw DomainError("csv: bad number '" + s + "'");
  }
  return x;
}

template <class Int>
Int parse_int(std::string_view field) {
  Int x{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw DomainError("csv: bad integer '" + std::string(field) + "'");
  }
  return x;
}

int nodes_for(const ScenarioSpec& sc, System system, int relays) {
  switch (system) {
    case System::cooperative: return relays;
    case System::siso: return 1;
    case System::miso: return sc.miso_emitters;
    case System::simo: return sc.simo_receivers;
  }
  return 1;
}

void evaluate_point(const ScenarioSpec& sc, const SweepSpec& spec, const RunOptions& options,
                    double molecules, double distance_um, const RowSink& sink) {
  std::vector<int> counts = spec.relay_counts;
  if (counts.empty()) counts.push_back(static_cast<int>(sc.relays.size()));
  for (System system : spec.systems) {
    const std::vector<int> per_system =
        system == System::cooperative ? counts : std::vector<int>{0};
    for (int n : per_system) {
      const Scenario scenario = build_scenario(sc, system, n, molecules, distance_um);
      SweepRow row;
      row.system = system;
      row.nodes = nodes_for(sc, system, n);
      row.molecules = molecules;
      row.distance_um = distance_um;
      row.pe_analytic = analytic_pe(scenario);
      if (spec.monte_carlo) {
        row.mc = estimate_pe(scenario, spec.detector, spec.trials, spec.seed, options.workers);
        row.detector = spec.detector;
      }
      sink(row);
    }
  }
}

}  // namespace

std::string format_csv_row(const SweepRow& row) {
  std::string out;
  out += to_string(row.system);
  out += ',' + std::to_string(row.nodes);
  out += ',' + format_double(row.molecules);
  out += ',' + format_double(row.distance_um);
  out += ',' + format_double(row.pe_analytic);
  if (row.mc) {
    out += ',' + format_double(row.mc->error_rate);
    out += ',' + format_double(row.mc->standard_error);
    out += ',' + std::to_string(row.mc->trials);
    out += ',' + std::to_string(row.mc->seed);
  } else {
    out += ",,,,";
  }
  out += ',';
  if (row.detector) out += to_string(*row.detector);
  return out;
}

SweepRow parse_csv_row(std::string_view line) {
  const auto f = split_fields(line);
  if (f.size() != 10) throw DomainError("csv: expected 10 fields");
  SweepRow row;
  const auto system = parse_system(f[0]);
  if (!system) throw DomainError("csv: unknown system '" + std::string(f[0]) + "'");
  row.system = *system;
  row.nodes = parse_int<int>(f[1]);
  row.molecules = parse_double(f[2]);
  row.distance_um = parse_double(f[3]);
  row.pe_analytic = parse_double(f[4]);
  if (!f[5].empty()) {
    McEstimate mc;
    mc.error_rate = parse_double(f[5]);
    mc.standard_error = parse_double(f[6]);
    mc.trials = parse_int<std::uint64_t>(f[7]);
    mc.seed = parse_int<std::uint64_t>(f[8]);
    mc.errors = static_cast<std::uint64_t>(std::llround(mc.error_rate * mc.trials));
    row.mc = mc;
  }
  if (!f[9].empty()) {
    const auto d = parse_detector(f[9]);
    if (!d) throw DomainError("csv: unknown detector '" + std::string(f[9]) + "'");
    row.detector = *d;
  }
  return row;
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  if (spec.points < 2 || !(spec.min < spec.max)) {
    throw DomainError("sweep grid needs at least two points and min < max");
  }
  std::vector<double> grid(static_cast<std::size_t>(spec.points));
  const double steps = spec.points - 1;
  if (spec.spacing == Spacing::linear) {
    for (int i = 0; i < spec.points; ++i) grid[i] = spec.min + (spec.max - spec.min) * (i / steps);
  } else {
    const double lo = std::log10(spec.min);
    const double hi = std::log10(spec.max);
    for (int i = 0; i < spec.points; ++i) grid[i] = std::pow(10.0, lo + (hi - lo) * (i / steps));
  }
  grid.front() = spec.min;
  grid.back() = spec.max;
  return grid;
}

void run_sweep(const ScenarioSpec& scenario, const SweepSpec& spec, const RunOptions& options,
               const RowSink& sink) {
  for (double x : sweep_grid(spec)) {
    if (spec.parameter == SweptParameter::total_molecules) {
      const double d = scenario.direct_d_um.value_or(0.0);
      evaluate_point(scenario, spec, options, x, d, sink);
    } else {
      evaluate_point(scenario, spec, options, scenario.molecules, x, sink);
    }
  }
}

void run_point(const ScenarioSpec& scenario, const SweepSpec& spec, const RunOptions& options,
               const RowSink& sink) {
  evaluate_point(scenario, spec, options, scenario.molecules, scenario.direct_d_um.value_or(0.0),
                 sink);
}

}  // namespace molcoop
