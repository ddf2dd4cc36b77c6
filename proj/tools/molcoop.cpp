// molcoop: analytic and Monte Carlo error rates for cooperative diffusion
// networks. Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "molcoop/config.hpp"
#include "molcoop/error.hpp"
#include "molcoop/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Flags {
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::string detector;
  std::string out;
  unsigned workers = 1;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--trials", f.trials, "Monte Carlo trials per row (enables simulation)");
  cmd->add_option("--seed", f.seed, "64-bit seed of the counter-based generator");
  cmd->add_option("--detector", f.detector, "destination rule")
      ->check(CLI::IsMember({"linear", "exact"}));
  cmd->add_option("--out", f.out, "write CSV here instead of stdout");
  cmd->add_option("--workers", f.workers, "worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
}

molcoop::SweepSpec point_spec(const molcoop::LoadedConfig& cfg) {
  if (cfg.sweep) return *cfg.sweep;
  molcoop::SweepSpec spec;
  spec.systems = {molcoop::System::cooperative};
  if (cfg.scenario.direct_d_um) {
    spec.systems.insert(spec.systems.end(),
                        {molcoop::System::siso, molcoop::System::miso, molcoop::System::simo});
  }
  return spec;
}

void apply_overrides(molcoop::SweepSpec& spec, const Flags& f, bool force_mc) {
  if (f.trials) {
    spec.trials = *f.trials;
    spec.monte_carlo = true;
  }
  if (force_mc) spec.monte_carlo = true;
  if (f.seed) spec.seed = *f.seed;
  if (!f.detector.empty()) spec.detector = *molcoop::parse_detector(f.detector);
  if (spec.monte_carlo && spec.trials < 1000) {
    throw molcoop::ConfigError("--trials", "Monte Carlo runs need at least 1000 trials");
  }
}

template <class Runner>
int emit(const Flags& f, Runner run) {
  std::ofstream file;
  if (!f.out.empty()) {
    file.open(f.out);
    if (!file) throw molcoop::ConfigError("--out", "cannot open " + f.out);
  }
  std::ostream& os = f.out.empty() ? std::cout : file;
  os << molcoop::kCsvHeader << '\n';
  run([&os](const molcoop::SweepRow& row) {
    os << molcoop::format_csv_row(row) << '\n';
    os.flush();
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error-rate analysis of diffusion-based cooperative molecular networks"};
  app.require_subcommand(1);

  Flags flags;
  std::string config_path;
  std::string preset;

  auto* analytic = app.add_subcommand("analytic", "closed-form error rates at the configured point");
  analytic->add_option("config", config_path, "JSON scenario")->required();
  analytic->add_option("--out", flags.out, "write CSV here instead of stdout");

  auto* simulate = app.add_subcommand("simulate", "closed form plus Monte Carlo at the configured point");
  simulate->add_option("config", config_path, "JSON scenario")->required();
  add_run_flags(simulate, flags);

  auto* sweep = app.add_subcommand("sweep", "run the sweep block of a scenario file");
  sweep->add_option("config", config_path, "JSON scenario with a sweep block")->required();
  add_run_flags(sweep, flags);

  auto* reproduce = app.add_subcommand("reproduce", "run a built-in experiment preset");
  reproduce->add_option("preset", preset, "fig2a, fig2b or fig2c")
      ->required()
      ->check(CLI::IsMember({"fig2a", "fig2b", "fig2c"}));
  add_run_flags(reproduce, flags);

  auto* show = app.add_subcommand("preset", "print a built-in preset as JSON");
  show->add_option("name", preset, "fig2a, fig2b or fig2c")
      ->required()
      ->check(CLI::IsMember({"fig2a", "fig2b", "fig2c"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    molcoop::RunOptions options{.workers = flags.workers};
    if (*show) {
      std::cout << molcoop::preset_text(preset);
      return 0;
    }
    if (*analytic || *simulate) {
      const auto cfg = molcoop::load_config(config_path);
      auto spec = point_spec(cfg);
      spec.monte_carlo = false;
      if (*simulate) apply_overrides(spec, flags, true);
      return emit(flags, [&](const molcoop::RowSink& sink) {
        molcoop::run_point(cfg.scenario, spec, options, sink);
      });
    }
    const auto cfg = *sweep ? molcoop::load_config(config_path)
                            : molcoop::parse_config(molcoop::preset_text(preset));
    if (!cfg.sweep) throw molcoop::ConfigError("sweep", "missing required key");
    auto spec = *cfg.sweep;
    apply_overrides(spec, flags, false);
    return emit(flags, [&](const molcoop::RowSink& sink) {
      molcoop::run_sweep(cfg.scenario, spec, options, sink);
    });
  } catch (const molcoop::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
