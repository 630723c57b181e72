#pragma once

#include <cmath>
#include <vector>

#include "nomasim/rng.hpp"

namespace nomasim::channel {

// True planar position of a user, origin at the base station.
struct UserGeometry {
    double x = 0.0;
    double y = 0.0;

    double distance() const { return std::hypot(x, y); }
    double squared_distance() const { return x * x + y * y; }
};

// Noisy position report.  The estimated range is the norm of the reported
// coordinates, so its square follows a noncentral chi-square law.
struct ObservedGeometry {
    double x_hat = 0.0;
    double y_hat = 0.0;

    double distance() const { return std::hypot(x_hat, y_hat); }
    double squared_distance() const { return x_hat * x_hat + y_hat * y_hat; }
};

// Static link parameters shared by every user of one experiment.
struct LinkConfig {
    double alpha = 3.0;             // path-loss exponent, >= 2
    double noise_power_dbm = -50.0; // additive noise power
    double sigma_ob2 = 9.0;         // per-coordinate observation variance, >= 0
    double target_rate_bpcu = 0.5;  // per-user target rate R0*

    // Target SINR 2^R - 1 for non-orthogonal decoding.
    double target_snr() const { return std::exp2(target_rate_bpcu) - 1.0; }
    // Orthogonal baseline spends two resource blocks per pair, so each user
    // must clear 2^(2R) - 1 in its own block.
    double oma_target_snr() const { return std::exp2(2.0 * target_rate_bpcu) - 1.0; }
};

// 10^(dbm/10), i.e. dBm to linear milliwatts.
inline double dbm_to_linear(double dbm) { return std::pow(10.0, dbm / 10.0); }

// Transmit SNR rho for a power level against a noise floor, both in dBm.
inline double snr_of(double power_dbm, double noise_power_dbm) {
    return std::pow(10.0, (power_dbm - noise_power_dbm) / 10.0);
}

// Rayleigh-faded links: the effective channel gain is |h|^2 d^-alpha with
// |h|^2 ~ Exp(1), so conditioned on distance the gain is exponential with
// rate d^alpha.
inline double path_loss_rate(double distance, double alpha) { return std::pow(distance, alpha); }

// Noncentrality of the squared estimated range for a user at this position.
inline double noncentrality_param(const UserGeometry& g) { return g.squared_distance(); }

// Draw |h|^2 for one link.
inline double sample_fading(RngStream& rng) { return rng.exponential(1.0); }

// Position report with i.i.d. N(0, sigma_ob2) error per coordinate.
// sigma_ob2 == 0 reproduces the true position.
ObservedGeometry observe_position(const UserGeometry& g, double sigma_ob2, RngStream& rng);

// Uniform-over-area deployment on a disc of the given radius.  Positions
// closer to the base station than min_distance are rejected and redrawn, so
// path loss stays bounded.
std::vector<UserGeometry> deploy_users(int count, double disc_radius, double min_distance, RngStream& rng);

inline std::vector<UserGeometry> deploy_users(int count, double disc_radius, RngStream& rng) {
    return deploy_users(count, disc_radius, 0.5, rng);
}

}  // namespace nomasim::channel
