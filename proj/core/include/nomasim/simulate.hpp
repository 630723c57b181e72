#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nomasim/analysis.hpp"
#include "nomasim/config.hpp"

namespace nomasim::simulate {

enum class Scheme { noma, oma };

// Unit-mean fading power gains indexed by true identity (1 = truly nearer).
struct FadingDraw {
    double h1 = 1.0;
    double h2 = 1.0;
};

// Outage flags are role-indexed: "near" is the user the decision-maker
// believes nearer (the one decoded last in downlink, first in uplink),
// matching how per-user curves are labeled.
struct TrialOutcome {
    double sum_rate_bpcu = 0.0;
    bool outage_near = false;
    bool outage_far = false;
    bool order_error = false;
    Scheme chosen_scheme = Scheme::noma;
};

// One downlink transmission.  `order_swapped` marks that the estimated
// ordering contradicts the true one, so the truly-nearer user is served as if
// it were the far one.  The larger-share signal is decoded by both receivers;
// a failed first stage at the near user dooms its own signal too.
TrialOutcome downlink_trial(const analysis::PairScenario& truth, bool order_swapped,
                            const analysis::DownlinkPower& power, const FadingDraw& fading);
// Per-signal thresholds in linear SNR: signal 2 is the larger-share one.
TrialOutcome downlink_trial(const analysis::PairScenario& truth, bool order_swapped,
                            const analysis::DownlinkPower& power, const FadingDraw& fading,
                            double target_snr1, double target_snr2);

// One uplink transmission: believed-near transmits at power.rho1 and is
// decoded first against the other's interference.
TrialOutcome uplink_trial(const analysis::PairScenario& truth, bool order_swapped,
                          const analysis::UplinkPower& power, const FadingDraw& fading);

// Orthogonal baselines: each user gets half the channel uses, so the rate
// target doubles in SNR terms.
TrialOutcome oma_downlink_trial(const analysis::PairScenario& truth, bool order_swapped, double rho,
                                const FadingDraw& fading);
TrialOutcome oma_uplink_trial(const analysis::PairScenario& truth, bool order_swapped,
                              const analysis::UplinkPower& power, const FadingDraw& fading);

// Nearest-farthest pairing on estimated distances (ties by index).  Odd user
// counts leave the median user unpaired; it is served orthogonally.
struct Pairing {
    std::vector<std::pair<int, int>> pairs;  // (believed-near, believed-far) indices
    int leftover = -1;
};
Pairing pair_users(const std::vector<double>& estimated_distances);

struct HybridChoice {
    Scheme scheme = Scheme::noma;
    double predicted_cop = 0.0;
};
// Chooses per transmission from the two closed-form outage predictions on
// estimated distances; ties go to the non-orthogonal scheme.
HybridChoice hybrid_uplink_select(const analysis::PairScenario& estimated,
                                  const analysis::UplinkPower& power, double pe1_estimate);

struct MetricsReport {
    std::uint64_t trials = 0;
    double mean_sum_rate = 0.0;
    double sum_rate_std_error = 0.0;
    double cop = 0.0;
    double cop_std_error = 0.0;
    double outage_near = 0.0;
    double outage_near_std_error = 0.0;
    double outage_far = 0.0;
    double outage_far_std_error = 0.0;
    double order_error_rate = 0.0;
    double order_error_std_error = 0.0;
    double oma_share = 0.0;
};

// Fixed positions, fresh fading and observation noise per trial.  Results are
// a deterministic function of (config, seed) for any thread count.
MetricsReport run_static_experiment(const config::ExperimentConfig& cfg);

// Fresh deployment + trajectory per trial; tracking feeds ordering and power
// decisions each slot.  One report per slot.
std::vector<MetricsReport> run_mobile_experiment(const config::ExperimentConfig& cfg);

// Mean over slots >= warmup_slots of the per-slot means (mobile summaries).
MetricsReport summarize_slots(const std::vector<MetricsReport>& slots, int warmup_slots);

}  // namespace nomasim::simulate
