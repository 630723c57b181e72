#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "nomasim/channel.hpp"
#include "nomasim/rng.hpp"

namespace nomasim::mobility {

// Kinematic state [x, vx, y, vy] of one user.
struct MobileState {
    double x = 0.0;
    double vx = 0.0;
    double y = 0.0;
    double vy = 0.0;

    double distance() const { return std::hypot(x, y); }
};

// Discrete-time constant-velocity state-space model.  This is the model the
// Kalman filter assumes; the empirical mobility models below deliberately do
// not follow it exactly.
struct StateSpaceModel {
    double sample_interval = 0.2;  // seconds
    double sigma_w2 = 1.0;         // process-noise intensity
    double sigma_ob2 = 25.0;       // per-axis observation noise variance

    // A = exp(A_cont T); exact since the continuous transition matrix is
    // nilpotent of index 2.
    Eigen::Matrix4d transition() const;
    // Q places T sigma_w2 on the position entries only.
    Eigen::Matrix4d process_noise() const;
    static Eigen::Matrix<double, 2, 4> observation();  // H selects positions
    Eigen::Matrix2d observation_noise() const;         // R = sigma_ob2 I2
};

// One transition s' = A s + w, w ~ N(0, Q).
MobileState linear_step(const MobileState& s, const StateSpaceModel& model, RngStream& rng);

// z = H s + n, n ~ N(0, R).
Eigen::Vector2d observe_state(const MobileState& s, const StateSpaceModel& model, RngStream& rng);

// Empirical mobility models with the simulation parameter sets.
struct RandomWalkParams {
    double min_speed = 0.0;
    double max_speed = 2.0;
    int movement_interval = 30;  // samples between speed/direction redraws
    double disc_radius = 30.0;
};

struct RandomWaypointParams {
    double min_speed = 1.0;  // must be > 0 or legs never complete
    double max_speed = 3.0;
    int max_pause = 5;  // samples
    double disc_radius = 50.0;
};

struct GaussMarkovParams {
    double speed_variance = 2.0;
    double tuning = 0.5;  // memory parameter in [0, 1]
    double disc_radius = 30.0;
    // The source material gives only variance and tuning; these complete the
    // recursion and are configurable.
    double mean_speed = 1.0;
    double direction_variance = 1.0;  // rad^2
};

using MobilityModelParams = std::variant<RandomWalkParams, RandomWaypointParams, GaussMarkovParams>;

double disc_radius_of(const MobilityModelParams& params);

// All trajectory generators: `horizon` samples at spacing `sample_interval`,
// starting from the supplied deployed position.  Samples stay inside the
// model's disc (reflection for RW/GM, interior waypoints for RWP).
std::vector<MobileState> rw_trajectory(const RandomWalkParams& params, const channel::UserGeometry& start,
                                       int horizon, double sample_interval, RngStream& rng);
std::vector<MobileState> rwp_trajectory(const RandomWaypointParams& params,
                                        const channel::UserGeometry& start, int horizon,
                                        double sample_interval, RngStream& rng);
std::vector<MobileState> gm_trajectory(const GaussMarkovParams& params, const channel::UserGeometry& start,
                                       int horizon, double sample_interval, RngStream& rng);

std::vector<MobileState> trajectory(const MobilityModelParams& params, const channel::UserGeometry& start,
                                    int horizon, double sample_interval, RngStream& rng);

}  // namespace nomasim::mobility
