#pragma once

#include "nomasim/analysis.hpp"

namespace nomasim::power {

// Outcome of the downlink dynamic power allocation.  predicted_cop is the
// outage the optimizer believes it achieves (perfect-ordering branch on the
// estimated distances); the realized outage is a simulation output.
struct DpaSolution {
    double beta_star;
    double predicted_cop;
    bool closed_form;  // false when the degenerate-denominator fallback ran
};

// Outcome of the uplink dynamic power control.
struct DpcSolution {
    double rho1_star;
    double rho2_star;
    double predicted_cop;
};

// Closed-form COP-minimizing power split for the downlink pair, computed from
// ESTIMATED distances.  A vanishing closed-form denominator
// (lambda1 (1+eps0) == lambda2 within 1e-12 relative) falls back to a
// golden-section minimization of the same objective.
DpaSolution dpa_optimal_beta(const analysis::PairScenario& scenario_est, double rho, double eps0);

// Closed-form COP-minimizing uplink powers under individual caps, from
// ESTIMATED distances.  The first-decoded user always transmits at its cap.
DpcSolution dpc_optimal_power(const analysis::PairScenario& scenario_est, double omega1,
                              double omega2, double eps0);

// Fixed baselines.  The downlink scheme demands the larger share for the
// believed-far user, so beta must lie in (0.5, 1).
analysis::DownlinkPower fixed_downlink_beta(double rho, double beta);
analysis::UplinkPower fixed_uplink_power(double omega1, double omega2);

}  // namespace nomasim::power
