#include "molcoop/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>

#include "molcoop/error.hpp"

namespace molcoop {
namespace {

constexpr RelayPerformance kPerfectBranch{.detection = 1.0, .false_alarm = 0.0, .miss = 0.0};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

using Counters = std::array<std::uint64_t, 3>;

// Splits [0, trials) into contiguous chunks, one per worker, and sums the
// per-chunk counters. Integer addition makes the result independent of the
// split.
template <class ChunkFn>
Counters run_chunks(std::uint64_t trials, unsigned workers, ChunkFn chunk) {
  workers = std::max(1u, workers);
  if (workers == 1 || trials < 2 * static_cast<std::uint64_t>(workers)) {
    return chunk(0, trials);
  }
  std::vector<Counters> partial(workers, Counters{});
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t base = trials / workers;
  const std::uint64_t extra = trials % workers;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + base + (w < extra ? 1 : 0);
    pool.emplace_back([&, w, begin, end] { partial[w] = chunk(begin, end); });
    begin = end;
  }
  for (auto& t : pool) t.join();
  Counters total{};
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += p[i];
  }
  return total;
}

void require_trials(std::uint64_t trials) {
  if (trials == 0) throw DomainError("Monte Carlo estimate needs at least one trial");
}

}  // namespace

std::string_view to_string(DetectorChoice d) {
  return d == DetectorChoice::linear ? "linear" : "exact";
}

std::string_view to_string(System s) {
  switch (s) {
    case System::cooperative: return "cooperative";
    case System::siso: return "siso";
    case System::miso: return "miso";
    case System::simo: return "simo";
  }
  return "unknown";
}

System system_of(const Scenario& scenario) {
  return std::visit(Overloaded{
                        [](const NetworkConfig&) { return System::cooperative; },
                        [](const SisoSetup&) { return System::siso; },
                        [](const MisoSetup&) { return System::miso; },
                        [](const SimoSetup&) { return System::simo; },
                    },
                    scenario);
}

double analytic_pe(const Scenario& scenario) {
  return std::visit(
      Overloaded{
          [](const NetworkConfig& c) { return analytic_pe_cooperative(c); },
          [](const SisoSetup& s) { return analytic_pe_siso(s.source, s.link, s.mui, s.prior); },
          [](const MisoSetup& s) { return analytic_pe_miso(s.emitters, s.mui, s.prior); },
          [](const SimoSetup& s) { return analytic_pe_simo(s.source, s.receivers, s.prior); },
      },
      scenario);
}

ChainSimulator::ChainSimulator(Scenario scenario) : scenario_(std::move(scenario)) {
  std::visit(Overloaded{
                 [this](const NetworkConfig& c) {
                   prior_ = c.prior;
                   relays_ = relay_detectors(c);
                   fusion_ = destination_weights(c);
                   for (const auto& r : c.relays) relay_mui_.push_back(r.relay_mui);
                   branch_signal_ = fusion_.signal;
                   branch_mui_ = fusion_.mui;
                 },
                 [this](const SisoSetup& s) {
                   prior_ = s.prior;
                   single_.push_back(build_relay_detector(s.source, s.link, s.mui, s.prior));
                   branch_signal_.push_back(single_.front().signal());
                   branch_mui_.push_back(s.mui);
                 },
                 [this](const MisoSetup& s) {
                   if (s.emitters.empty()) throw DomainError("MISO setup needs an emitter");
                   prior_ = s.prior;
                   double signal = 0.0;
                   for (const auto& e : s.emitters) signal += peak_concentration(e.emission, e.link);
                   single_.emplace_back(signal, s.mui, s.prior);
                   branch_signal_.push_back(signal);
                   branch_mui_.push_back(s.mui);
                 },
                 [this](const SimoSetup& s) {
                   if (s.receivers.empty()) throw DomainError("SIMO setup needs a receiver");
                   prior_ = s.prior;
                   std::vector<FusionBranch> branches;
                   for (const auto& r : s.receivers) {
                     branches.push_back(FusionBranch{s.source, r.link, r.mui, kPerfectBranch});
                   }
                   fusion_ = build_fusion_weights(branches, s.prior);
                   branch_signal_ = fusion_.signal;
                   branch_mui_ = fusion_.mui;
                 },
             },
             scenario_);
  log_prior_ratio(prior_);
}

ChainSimulator::Realization ChainSimulator::realize(TrialStream& stream) const {
  Realization r;
  r.transmitted = stream.bernoulli(prior_);
  // Phase one: relays sense the source. Baselines have no relays and every
  // branch "forwards" the transmitted symbol itself.
  std::vector<DecisionBit> forwarded;
  if (!relays_.empty()) {
    r.relay_decisions.reserve(relays_.size());
    for (std::size_t i = 0; i < relays_.size(); ++i) {
      const auto& mui = relay_mui_[i];
      const double c =
          r.transmitted * relays_[i].signal() + mui.mean() + mui.stddev() * stream.gaussian();
      r.relay_decisions.push_back(relay_decide(relays_[i], c));
    }
    forwarded = r.relay_decisions;
  } else {
    forwarded.assign(branch_signal_.size(), r.transmitted);
  }
  // Phase two: the deciding node senses each branch.
  r.concentrations.reserve(branch_signal_.size());
  for (std::size_t i = 0; i < branch_signal_.size(); ++i) {
    const auto& mui = branch_mui_[i];
    r.concentrations.push_back(forwarded[i] * branch_signal_[i] + mui.mean() +
                               mui.stddev() * stream.gaussian());
  }
  return r;
}

DecisionBit ChainSimulator::decide(const std::vector<double>& c, DetectorChoice detector) const {
  if (!single_.empty()) return relay_decide(single_.front(), c.front());
  return detector == DetectorChoice::linear ? fusion_decide(fusion_, c)
                                            : exact_destination_decide(fusion_, c);
}

TrialOutcome ChainSimulator::run_trial(TrialStream& stream, DetectorChoice detector) const {
  Realization r = realize(stream);
  TrialOutcome out;
  out.transmitted = r.transmitted;
  out.destination = decide(r.concentrations, detector);
  out.relay_decisions = std::move(r.relay_decisions);
  out.error = out.destination != out.transmitted;
  return out;
}

ChainSimulator::PairedDecision ChainSimulator::run_paired_trial(TrialStream& stream) const {
  const Realization r = realize(stream);
  return PairedDecision{r.transmitted, decide(r.concentrations, DetectorChoice::linear),
                        decide(r.concentrations, DetectorChoice::exact)};
}

TrialOutcome run_trial(const NetworkConfig& config, DetectorChoice detector, TrialStream& stream) {
  return ChainSimulator(config).run_trial(stream, detector);
}

McEstimate make_estimate(std::uint64_t trials, std::uint64_t errors, std::uint64_t seed) {
  require_trials(trials);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  return McEstimate{trials, errors, p, std::sqrt(p * (1.0 - p) / n), seed};
}

McEstimate estimate_pe(const Scenario& scenario, DetectorChoice detector, std::uint64_t trials,
                       std::uint64_t seed, unsigned workers) {
  require_trials(trials);
  const ChainSimulator sim(scenario);
  const Counters c = run_chunks(trials, workers, [&](std::uint64_t begin, std::uint64_t end) {
    Counters local{};
    for (std::uint64_t k = begin; k < end; ++k) {
      TrialStream stream(seed, k);
      local[0] += sim.run_trial(stream, detector).error ? 1 : 0;
    }
    return local;
  });
  return make_estimate(trials, c[0], seed);
}

DetectorComparison compare_detectors(const Scenario& scenario, std::uint64_t trials,
                                     std::uint64_t seed, unsigned workers) {
  require_trials(trials);
  const ChainSimulator sim(scenario);
  const Counters c = run_chunks(trials, workers, [&](std::uint64_t begin, std::uint64_t end) {
    Counters local{};
    for (std::uint64_t k = begin; k < end; ++k) {
      TrialStream stream(seed, k);
      const auto d = sim.run_paired_trial(stream);
      local[0] += d.linear != d.transmitted ? 1 : 0;
      local[1] += d.exact != d.transmitted ? 1 : 0;
      local[2] += d.linear == d.exact ? 1 : 0;
    }
    return local;
  });
  return DetectorComparison{trials, c[0], c[1], c[2]};
}

RelayRateEstimate estimate_relay_rates(const RelayDetector& detector, std::uint64_t trials,
                                       std::uint64_t seed, unsigned workers) {
  require_trials(trials);
  const double mean = detector.mui().mean();
  const double sd = detector.mui().stddev();
  const Counters c = run_chunks(trials, workers, [&](std::uint64_t begin, std::uint64_t end) {
    Counters local{};
    for (std::uint64_t k = begin; k < end; ++k) {
      TrialStream stream(seed, k);
      const double on = detector.signal() + mean + sd * stream.gaussian();
      const double off = mean + sd * stream.gaussian();
      local[0] += relay_decide(detector, on);
      local[1] += relay_decide(detector, off);
    }
    return local;
  });
  return RelayRateEstimate{trials, c[0], c[1]};
}

}  // namespace molcoop
