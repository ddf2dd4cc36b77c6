#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "molcoop/analytics.hpp"
#include "molcoop/detection.hpp"
#include "molcoop/rng.hpp"

namespace molcoop {

enum class DetectorChoice { linear, exact };
enum class System { cooperative, siso, miso, simo };

std::string_view to_string(DetectorChoice d);
std::string_view to_string(System s);

struct SisoSetup {
  double prior = 0.5;
  Emission source;
  Link link;
  MuiModel mui;
};

struct MisoSetup {
  double prior = 0.5;
  std::vector<Emitter> emitters;
  MuiModel mui;
};

struct SimoSetup {
  double prior = 0.5;
  Emission source;
  std::vector<Receiver> receivers;
};

/// Any of the four systems compared in the experiments.
using Scenario = std::variant<NetworkConfig, SisoSetup, MisoSetup, SimoSetup>;

System system_of(const Scenario& scenario);

/// Closed-form error probability for whichever system `scenario` holds.
double analytic_pe(const Scenario& scenario);

struct TrialOutcome {
  DecisionBit transmitted = 0;
  std::vector<DecisionBit> relay_decisions;  // empty for the baselines
  DecisionBit destination = 0;
  bool error = false;
};

/// A scenario with every detector constant precomputed, ready to run trials.
///
/// Draw order inside one trial: the symbol x0 from one uniform, then one
/// Gaussian per relay (cooperative only), then one Gaussian per destination
/// branch or receiver. Relays forward over interference-free, distinct
/// molecule types, so branches are conditionally independent.
class ChainSimulator {
 public:
  explicit ChainSimulator(Scenario scenario);

  const Scenario& scenario() const noexcept { return scenario_; }
  System system() const noexcept { return system_of(scenario_); }

  TrialOutcome run_trial(TrialStream& stream, DetectorChoice detector) const;

  /// Both destination rules on the same realization. Baselines return the
  /// same decision twice.
  struct PairedDecision {
    DecisionBit transmitted;
    DecisionBit linear;
    DecisionBit exact;
  };
  PairedDecision run_paired_trial(TrialStream& stream) const;

 private:
  struct Realization {
    DecisionBit transmitted;
    std::vector<DecisionBit> relay_decisions;
    std::vector<double> concentrations;  // what the deciding node sees
  };
  Realization realize(TrialStream& stream) const;
  DecisionBit decide(const std::vector<double>& concentrations, DetectorChoice detector) const;

  Scenario scenario_;
  double prior_;
  std::vector<RelayDetector> relays_;
  std::vector<MuiModel> relay_mui_;
  std::vector<double> branch_signal_;
  std::vector<MuiModel> branch_mui_;
  FusionWeights fusion_;  // cooperative and SIMO
  std::vector<RelayDetector> single_;  // SISO and MISO: exactly one
};

/// Convenience wrapper; prefer ChainSimulator when running many trials.
TrialOutcome run_trial(const NetworkConfig& config, DetectorChoice detector, TrialStream& stream);

struct McEstimate {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double error_rate = 0.0;
  double standard_error = 0.0;  // sqrt(p(1-p)/n) at the estimate
  std::uint64_t seed = 0;
};

McEstimate make_estimate(std::uint64_t trials, std::uint64_t errors, std::uint64_t seed);

/// Monte Carlo error rate. Trial k draws from TrialStream(seed, k), so the
/// result depends only on (scenario, detector, trials, seed) and never on
/// `workers`.
McEstimate estimate_pe(const Scenario& scenario, DetectorChoice detector, std::uint64_t trials,
                       std::uint64_t seed, unsigned workers = 1);

struct DetectorComparison {
  std::uint64_t trials = 0;
  std::uint64_t linear_errors = 0;
  std::uint64_t exact_errors = 0;
  std::uint64_t agreements = 0;
};

/// Runs the linear fusion rule and the exact mixture LRT on identical trials.
DetectorComparison compare_detectors(const Scenario& scenario, std::uint64_t trials,
                                     std::uint64_t seed, unsigned workers = 1);

struct RelayRateEstimate {
  std::uint64_t trials = 0;        // per hypothesis
  std::uint64_t detections = 0;    // decisions of 1 under H1
  std::uint64_t false_alarms = 0;  // decisions of 1 under H0
};

/// Empirical P_D and P_FA of a single detector: `trials` draws under each
/// hypothesis.
RelayRateEstimate estimate_relay_rates(const RelayDetector& detector, std::uint64_t trials,
                                       std::uint64_t seed, unsigned workers = 1);

}  // namespace molcoop
