#include "molcoop/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "molcoop/error.hpp"
#include "molcoop/qfunction.hpp"

namespace molcoop {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_or_neg_inf(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

// ln(e^a + e^b) with the larger exponent factored out.
double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

void check_size(const FusionWeights& weights, std::span<const double> concentrations) {
  if (concentrations.size() != weights.size()) {
    throw DomainError("fusion: expected " + std::to_string(weights.size()) +
                      " concentrations, got " + std::to_string(concentrations.size()));
  }
}

}  // namespace

double log_prior_ratio(double prior) {
  if (!(prior > 0.0 && prior < 1.0)) {
    throw DomainError("prior probability must lie strictly between 0 and 1");
  }
  return std::log((1.0 - prior) / prior);
}

RelayDetector::RelayDetector(double signal, MuiModel mui, double prior)
    : signal_(signal), mui_(mui), prior_(prior) {
  if (!(signal > 0.0) || !std::isfinite(signal)) {
    throw DomainError("relay detector: signal must be positive (zero emission or zero gain)");
  }
  const double log_ratio = log_prior_ratio(prior);
  const double var = mui_.variance();
  weight_ = signal_ / var;
  threshold_ = (signal_ * signal_ + 2.0 * signal_ * mui_.mean()) / (2.0 * var) + log_ratio;
  concentration_threshold_ = threshold_ / weight_;
}

RelayDetector build_relay_detector(const Emission& source, const Link& link, const MuiModel& mui,
                                   double prior) {
  return RelayDetector(peak_concentration(source, link), mui, prior);
}

DecisionBit relay_decide(const RelayDetector& detector, double concentration) {
  return concentration > detector.concentration_threshold() ? 1 : 0;
}

RelayPerformance relay_performance(const RelayDetector& detector) {
  const double sigma = detector.mui().stddev();
  const double gamma = detector.concentration_threshold();
  const double detect_arg = (gamma - detector.signal() - detector.mui().mean()) / sigma;
  const double false_alarm_arg = (gamma - detector.mui().mean()) / sigma;
  return RelayPerformance{
      .detection = q_function(detect_arg),
      .false_alarm = q_function(false_alarm_arg),
      .miss = q_function(-detect_arg),
  };
}

FusionWeights build_fusion_weights(std::span<const FusionBranch> branches, double prior) {
  if (branches.empty()) {
    throw DomainError("build_fusion_weights: at least one branch is required");
  }
  FusionWeights w;
  w.prior = prior;
  w.threshold = log_prior_ratio(prior);
  for (const auto& b : branches) {
    const double s = peak_concentration(b.retransmission, b.relay_to_destination);
    const double var = b.mui.variance();
    const double reliability = b.relay.detection - b.relay.false_alarm;
    const double alpha = s / var * reliability;
    const double theta = (s * s + 2.0 * s * b.mui.mean()) / (2.0 * var) * reliability;
    w.alpha.push_back(alpha);
    w.theta.push_back(theta);
    w.signal.push_back(s);
    w.mui.push_back(b.mui);
    w.relay.push_back(b.relay);
    w.threshold += theta;
  }
  return w;
}

double fusion_statistic(const FusionWeights& weights, std::span<const double> concentrations) {
  check_size(weights, concentrations);
  double t = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) t += weights.alpha[i] * concentrations[i];
  return t;
}

DecisionBit fusion_decide(const FusionWeights& weights, std::span<const double> concentrations) {
  return fusion_statistic(weights, concentrations) > weights.threshold ? 1 : 0;
}

double exact_destination_llr(const FusionWeights& weights, std::span<const double> concentrations) {
  check_size(weights, concentrations);
  double llr = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const RelayPerformance& r = weights.relay[i];
    if (r.detection == r.false_alarm) continue;
    const double sigma = weights.mui[i].stddev();
    const double z_on = (concentrations[i] - weights.signal[i] - weights.mui[i].mean()) / sigma;
    const double z_off = (concentrations[i] - weights.mui[i].mean()) / sigma;
    // Gaussian normalisation is common to every term and cancels.
    const double log_on = -0.5 * z_on * z_on;
    const double log_off = -0.5 * z_off * z_off;
    const double log_h1 =
        log_add(log_or_neg_inf(r.detection) + log_on, log_or_neg_inf(r.miss) + log_off);
    const double log_h0 =
        log_add(log_or_neg_inf(r.false_alarm) + log_on, std::log1p(-r.false_alarm) + log_off);
    llr += log_h1 - log_h0;
  }
  return llr;
}

DecisionBit exact_destination_decide(const FusionWeights& weights,
                                     std::span<const double> concentrations) {
  return exact_destination_llr(weights, concentrations) > log_prior_ratio(weights.prior) ? 1 : 0;
}

}  // namespace molcoop
