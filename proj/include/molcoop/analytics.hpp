#pragma once

#include <optional>
#include <span>
#include <vector>

#include "molcoop/channel.hpp"
#include "molcoop/detection.hpp"

namespace molcoop {

/// One decode-and-forward relay: its view of the source and its own
/// retransmission towards the destination.
struct RelayLink {
  Link source_to_relay;        // d_i
  MuiModel relay_mui;          // (mu_i, sigma_i)
  Emission retransmission;     // Q_i
  Link relay_to_destination;   // d~_i
  MuiModel destination_mui;    // (mu~_i, sigma~_i)
};

/// Complete two-phase cooperative scenario.
struct NetworkConfig {
  double prior = 0.5;  // beta = P(x0 = 1)
  Emission source{0.0};
  std::vector<RelayLink> relays;
  std::optional<Link> direct;  // source-destination distance, baselines only

  /// Throws DomainError if beta is outside (0,1) or there are no relays.
  void validate() const;
};

struct DestinationDetection {
  double detection = 0.0;    // P_D at the destination
  double false_alarm = 0.0;  // P_FA at the destination
  double miss = 1.0;         // 1 - P_D, evaluated without cancellation
};

struct PerformanceReport {
  std::vector<RelayPerformance> relays;
  DestinationDetection destination;
  double error_probability = 0.0;
};

std::vector<RelayDetector> relay_detectors(const NetworkConfig& config);

/// Fusion weights with P_D/P_FA of every relay taken from the closed forms.
FusionWeights destination_weights(const NetworkConfig& config);

/// Destination P_D / P_FA from the Gaussian law of the linear fusion
/// statistic. Throws DomainError when every branch has zero weight.
DestinationDetection destination_detection(const FusionWeights& weights);
DestinationDetection destination_detection(const NetworkConfig& config);

/// End-to-end error probability of the cooperative chain,
/// beta (1 - P_D^dest) + (1 - beta) P_FA^dest. The H1 law of the fusion
/// statistic assumes every relay forwarded symbol 1, so the expression is
/// accurate only while relay errors are small.
double analytic_pe_cooperative(const NetworkConfig& config);

PerformanceReport analyze(const NetworkConfig& config);

/// Direct link, single-receiver Gaussian LRT.
double analytic_pe_siso(const Emission& source, const Link& link, const MuiModel& mui,
                        double prior);

struct Emitter {
  Emission emission;
  Link link;
};

/// Several co-located-symbol emitters; concentrations superpose at the one
/// receiver and the single-receiver LRT is applied to the sum.
double analytic_pe_miso(std::span<const Emitter> emitters, const MuiModel& mui, double prior);

struct Receiver {
  Link link;
  MuiModel mui;
};

/// One emitter, several independent receivers combined by the linear fusion
/// rule with error-free branches.
double analytic_pe_simo(const Emission& source, std::span<const Receiver> receivers, double prior);

}  // namespace molcoop
