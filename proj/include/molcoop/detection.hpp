#pragma once

#include <span>
#include <vector>

#include "molcoop/channel.hpp"

namespace molcoop {

using DecisionBit = int;  // 0 or 1

/// ln((1 - beta) / beta); throws unless 0 < beta < 1.
double log_prior_ratio(double prior);

/// Minimum-error Gaussian detector for "signal + MUI" vs "MUI only" at a
/// single receiving surface. The log-likelihood ratio reduces to the linear
/// statistic weight() * c compared against threshold().
class RelayDetector {
 public:
  /// signal = Q0 * h_p(d); must be strictly positive.
  RelayDetector(double signal, MuiModel mui, double prior);

  double signal() const noexcept { return signal_; }
  const MuiModel& mui() const noexcept { return mui_; }
  double prior() const noexcept { return prior_; }

  /// Statistic weight s / sigma^2.
  double weight() const noexcept { return weight_; }
  /// Threshold on weight() * c.
  double threshold() const noexcept { return threshold_; }
  /// The same threshold expressed in concentration units (threshold / weight).
  double concentration_threshold() const noexcept { return concentration_threshold_; }

  double statistic(double concentration) const noexcept { return weight_ * concentration; }

 private:
  double signal_;
  MuiModel mui_;
  double prior_;
  double weight_;
  double threshold_;
  double concentration_threshold_;
};

RelayDetector build_relay_detector(const Emission& source, const Link& link, const MuiModel& mui,
                                   double prior);

/// 1 iff weight * c exceeds the threshold; a tie decides 0. The comparison is
/// carried out in concentration units so that c == concentration_threshold()
/// is an exact tie.
DecisionBit relay_decide(const RelayDetector& detector, double concentration);

struct RelayPerformance {
  double detection = 0.0;    // P_D
  double false_alarm = 0.0;  // P_FA
  double miss = 1.0;         // 1 - P_D, evaluated without cancellation
};

RelayPerformance relay_performance(const RelayDetector& detector);

/// One relay-to-destination branch as the destination sees it.
struct FusionBranch {
  Emission retransmission;     // Q_i
  Link relay_to_destination;   // d~_i
  MuiModel mui;                // MUI at the destination for this molecule type
  RelayPerformance relay;      // how reliably R_i decoded the source
};

/// Constants of the destination's linear fusion test sum(alpha_i c_i) > threshold.
struct FusionWeights {
  double prior = 0.5;
  std::vector<double> alpha;
  std::vector<double> theta;
  double threshold = 0.0;                 // ln((1-beta)/beta) + sum(theta)
  std::vector<double> signal;             // s~_i = Q_i h_p(d~_i)
  std::vector<MuiModel> mui;
  std::vector<RelayPerformance> relay;

  std::size_t size() const noexcept { return alpha.size(); }
};

FusionWeights build_fusion_weights(std::span<const FusionBranch> branches, double prior);

double fusion_statistic(const FusionWeights& weights, std::span<const double> concentrations);

/// 1 iff the weighted sum exceeds the threshold; ties decide 0.
DecisionBit fusion_decide(const FusionWeights& weights, std::span<const double> concentrations);

/// Log-likelihood ratio of the optimal destination test, where each branch
/// density is the mixture induced by relay decoding errors:
///   p(c|H1) = P_D N(s+mu, sigma^2) + (1-P_D) N(mu, sigma^2)
///   p(c|H0) = P_FA N(s+mu, sigma^2) + (1-P_FA) N(mu, sigma^2).
/// Computed entirely in the log domain, so the result is finite for any
/// finite observation; a branch with P_D == P_FA contributes exactly 0.
double exact_destination_llr(const FusionWeights& weights, std::span<const double> concentrations);

DecisionBit exact_destination_decide(const FusionWeights& weights,
                                     std::span<const double> concentrations);

}  // namespace molcoop
