#include "molcoop/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "molcoop/error.hpp"
#include "molcoop/qfunction.hpp"

namespace molcoop {
namespace {

double combine(double prior, double miss, double false_alarm) {
  return prior * miss + (1.0 - prior) * false_alarm;
}

constexpr RelayPerformance kPerfectBranch{.detection = 1.0, .false_alarm = 0.0, .miss = 0.0};

}  // namespace

void NetworkConfig::validate() const {
  log_prior_ratio(prior);
  if (relays.empty()) throw DomainError("network needs at least one relay");
}

std::vector<RelayDetector> relay_detectors(const NetworkConfig& config) {
  config.validate();
  std::vector<RelayDetector> out;
  out.reserve(config.relays.size());
  for (const auto& r : config.relays) {
    out.push_back(build_relay_detector(config.source, r.source_to_relay, r.relay_mui, config.prior));
  }
  return out;
}

FusionWeights destination_weights(const NetworkConfig& config) {
  const auto detectors = relay_detectors(config);
  std::vector<FusionBranch> branches;
  branches.reserve(detectors.size());
  for (std::size_t i = 0; i < detectors.size(); ++i) {
    const auto& r = config.relays[i];
    branches.push_back(FusionBranch{r.retransmission, r.relay_to_destination, r.destination_mui,
                                    relay_performance(detectors[i])});
  }
  return build_fusion_weights(branches, config.prior);
}

DestinationDetection destination_detection(const FusionWeights& w) {
  // Weights can be as small as 1e-300 when relays are nearly uninformative,
  // so the standard deviation is accumulated relative to the largest term.
  double largest = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    largest = std::max(largest, std::abs(w.alpha[i]) * w.mui[i].stddev());
  }
  if (!(largest > 0.0)) {
    throw DomainError("destination fusion is degenerate: every branch has zero weight");
  }
  double scaled_var = 0.0;
  double mean_on = 0.0;
  double mean_off = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double r = w.alpha[i] * w.mui[i].stddev() / largest;
    scaled_var += r * r;
    mean_on += w.alpha[i] * (w.signal[i] + w.mui[i].mean());
    mean_off += w.alpha[i] * w.mui[i].mean();
  }
  const double sd = largest * std::sqrt(scaled_var);
  const double detect_arg = (w.threshold - mean_on) / sd;
  return DestinationDetection{
      .detection = q_function(detect_arg),
      .false_alarm = q_function((w.threshold - mean_off) / sd),
      .miss = q_function(-detect_arg),
  };
}

DestinationDetection destination_detection(const NetworkConfig& config) {
  return destination_detection(destination_weights(config));
}

double analytic_pe_cooperative(const NetworkConfig& config) {
  const auto d = destination_detection(config);
  return combine(config.prior, d.miss, d.false_alarm);
}

PerformanceReport analyze(const NetworkConfig& config) {
  PerformanceReport report;
  const auto w = destination_weights(config);
  report.relays = w.relay;
  report.destination = destination_detection(w);
  report.error_probability =
      combine(config.prior, report.destination.miss, report.destination.false_alarm);
  return report;
}

double analytic_pe_siso(const Emission& source, const Link& link, const MuiModel& mui,
                        double prior) {
  const auto perf = relay_performance(build_relay_detector(source, link, mui, prior));
  return combine(prior, perf.miss, perf.false_alarm);
}

double analytic_pe_miso(std::span<const Emitter> emitters, const MuiModel& mui, double prior) {
  if (emitters.empty()) throw DomainError("analytic_pe_miso: at least one emitter is required");
  double signal = 0.0;
  for (const auto& e : emitters) signal += peak_concentration(e.emission, e.link);
  const auto perf = relay_performance(RelayDetector(signal, mui, prior));
  return combine(prior, perf.miss, perf.false_alarm);
}

double analytic_pe_simo(const Emission& source, std::span<const Receiver> receivers,
                        double prior) {
  if (receivers.empty()) throw DomainError("analytic_pe_simo: at least one receiver is required");
  std::vector<FusionBranch> branches;
  branches.reserve(receivers.size());
  for (const auto& r : receivers) {
    branches.push_back(FusionBranch{source, r.link, r.mui, kPerfectBranch});
  }
  const auto d = destination_detection(build_fusion_weights(branches, prior));
  return combine(prior, d.miss, d.false_alarm);
}

}  // namespace molcoop
