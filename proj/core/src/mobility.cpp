#include "nomasim/mobility.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nomasim::mobility {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reflect a state that has left the disc of radius R back inside.  The
// position is mirrored across the tangent plane at the exit point and the
// velocity's radial component is flipped.
void reflect_into_disc(MobileState& s, double radius) {
    double r = std::hypot(s.x, s.y);
    while (r > radius) {
        const double nx = s.x / r;
        const double ny = s.y / r;
        const double excess = r - radius;
        s.x -= 2.0 * excess * nx;
        s.y -= 2.0 * excess * ny;
        const double vdotn = s.vx * nx + s.vy * ny;
        if (vdotn > 0.0) {
            s.vx -= 2.0 * vdotn * nx;
            s.vy -= 2.0 * vdotn * ny;
        }
        r = std::hypot(s.x, s.y);
    }
}

void check_trajectory_args(int horizon, double sample_interval, double disc_radius) {
    if (horizon <= 0) throw std::invalid_argument("trajectory horizon must be positive");
    if (!(sample_interval > 0.0)) throw std::invalid_argument("sample interval must be positive");
    if (!(disc_radius > 0.0)) throw std::invalid_argument("disc radius must be positive");
}

}  // namespace

Eigen::Matrix4d StateSpaceModel::transition() const {
    Eigen::Matrix4d a = Eigen::Matrix4d::Identity();
    a(0, 1) = sample_interval;
    a(2, 3) = sample_interval;
    return a;
}

Eigen::Matrix4d StateSpaceModel::process_noise() const {
    Eigen::Matrix4d q = Eigen::Matrix4d::Zero();
    q(0, 0) = sample_interval * sigma_w2;
    q(2, 2) = sample_interval * sigma_w2;
    return q;
}

Eigen::Matrix<double, 2, 4> StateSpaceModel::observation() {
    Eigen::Matrix<double, 2, 4> h = Eigen::Matrix<double, 2, 4>::Zero();
    h(0, 0) = 1.0;
    h(1, 2) = 1.0;
    return h;
}

Eigen::Matrix2d StateSpaceModel::observation_noise() const {
    return sigma_ob2 * Eigen::Matrix2d::Identity();
}

MobileState linear_step(const MobileState& s, const StateSpaceModel& model, RngStream& rng) {
    const double t = model.sample_interval;
    const double sd = std::sqrt(model.sigma_w2 * t);
    MobileState out;
    out.x = s.x + t * s.vx + sd * rng.normal();
    out.vx = s.vx;
    out.y = s.y + t * s.vy + sd * rng.normal();
    out.vy = s.vy;
    return out;
}

Eigen::Vector2d observe_state(const MobileState& s, const StateSpaceModel& model, RngStream& rng) {
    const double sd = std::sqrt(model.sigma_ob2);
    return {s.x + sd * rng.normal(), s.y + sd * rng.normal()};
}

double disc_radius_of(const MobilityModelParams& params) {
    return std::visit([](const auto& p) { return p.disc_radius; }, params);
}

std::vector<MobileState> rw_trajectory(const RandomWalkParams& params, const channel::UserGeometry& start,
                                       int horizon, double sample_interval, RngStream& rng) {
    check_trajectory_args(horizon, sample_interval, params.disc_radius);
    if (params.min_speed < 0.0 || params.max_speed < params.min_speed)
        throw std::invalid_argument("random walk speed range is invalid");
    if (params.movement_interval <= 0)
        throw std::invalid_argument("movement interval must be positive");

    std::vector<MobileState> out;
    out.reserve(static_cast<std::size_t>(horizon));
    MobileState s{start.x, 0.0, start.y, 0.0};
    for (int k = 0; k < horizon; ++k) {
        if (k % params.movement_interval == 0) {
            const double speed = rng.uniform(params.min_speed, params.max_speed);
            const double theta = rng.uniform(0.0, kTwoPi);
            s.vx = speed * std::cos(theta);
            s.vy = speed * std::sin(theta);
        }
        if (k > 0) {
            s.x += sample_interval * s.vx;
            s.y += sample_interval * s.vy;
            reflect_into_disc(s, params.disc_radius);
        }
        out.push_back(s);
    }
    return out;
}

std::vector<MobileState> rwp_trajectory(const RandomWaypointParams& params,
                                        const channel::UserGeometry& start, int horizon,
                                        double sample_interval, RngStream& rng) {
    check_trajectory_args(horizon, sample_interval, params.disc_radius);
    if (!(params.min_speed > 0.0) || params.max_speed < params.min_speed)
        throw std::invalid_argument("waypoint speed range is invalid (min must be > 0)");
    if (params.max_pause < 0) throw std::invalid_argument("pause bound must be nonnegative");

    std::vector<MobileState> out;
    out.reserve(static_cast<std::size_t>(horizon));
    MobileState s{start.x, 0.0, start.y, 0.0};

    double wx = s.x;
    double wy = s.y;
    double remaining = 0.0;  // distance left on the current leg
    int pause_left = 0;

    for (int k = 0; k < horizon; ++k) {
        if (k > 0) {
            double dt = sample_interval;
            while (dt > 0.0) {
                if (pause_left > 0) {
                    --pause_left;
                    s.vx = 0.0;
                    s.vy = 0.0;
                    break;  // a pause consumes a whole sample
                }
                if (remaining <= 0.0) {
                    // Pick the next waypoint uniformly inside the disc and a
                    // fresh speed for the leg.
                    const double r = params.disc_radius * std::sqrt(rng.uniform01());
                    const double theta = rng.uniform(0.0, kTwoPi);
                    wx = r * std::cos(theta);
                    wy = r * std::sin(theta);
                    const double dx = wx - s.x;
                    const double dy = wy - s.y;
                    remaining = std::hypot(dx, dy);
                    const double speed = rng.uniform(params.min_speed, params.max_speed);
                    if (remaining > 0.0) {
                        s.vx = speed * dx / remaining;
                        s.vy = speed * dy / remaining;
                    } else {
                        s.vx = 0.0;
                        s.vy = 0.0;
                    }
                }
                const double speed = std::hypot(s.vx, s.vy);
                const double step = speed * dt;
                if (speed <= 0.0 || step < remaining) {
                    s.x += s.vx * dt;
                    s.y += s.vy * dt;
                    remaining -= step;
                    dt = 0.0;
                } else {
                    // Arrive at the waypoint mid-sample, then pause.
                    const double used = remaining / speed;
                    s.x = wx;
                    s.y = wy;
                    remaining = 0.0;
                    dt -= used;
                    pause_left = static_cast<int>(rng.uniform01() * (params.max_pause + 1));
                    if (pause_left > params.max_pause) pause_left = params.max_pause;
                    if (pause_left > 0) {
                        s.vx = 0.0;
                        s.vy = 0.0;
                        break;
                    }
                }
            }
        }
        out.push_back(s);
    }
    return out;
}

std::vector<MobileState> gm_trajectory(const GaussMarkovParams& params, const channel::UserGeometry& start,
                                       int horizon, double sample_interval, RngStream& rng) {
    check_trajectory_args(horizon, sample_interval, params.disc_radius);
    if (params.tuning < 0.0 || params.tuning > 1.0)
        throw std::invalid_argument("memory tuning must lie in [0, 1]");
    if (params.speed_variance < 0.0 || params.direction_variance < 0.0)
        throw std::invalid_argument("variances must be nonnegative");

    const double xi = params.tuning;
    const double carry = std::sqrt(1.0 - xi * xi);
    const double speed_sd = std::sqrt(params.speed_variance);
    const double dir_sd = std::sqrt(params.direction_variance);

    std::vector<MobileState> out;
    out.reserve(static_cast<std::size_t>(horizon));
    MobileState s{start.x, 0.0, start.y, 0.0};

    double speed = params.mean_speed;
    double theta = rng.uniform(0.0, kTwoPi);
    double mean_theta = theta;

    for (int k = 0; k < horizon; ++k) {
        speed = xi * speed + (1.0 - xi) * params.mean_speed + carry * speed_sd * rng.normal();
        if (speed < 0.0) speed = 0.0;
        theta = xi * theta + (1.0 - xi) * mean_theta + carry * dir_sd * rng.normal();
        s.vx = speed * std::cos(theta);
        s.vy = speed * std::sin(theta);
        if (k > 0) {
            s.x += sample_interval * s.vx;
            s.y += sample_interval * s.vy;
            const double r = std::hypot(s.x, s.y);
            if (r > params.disc_radius) {
                reflect_into_disc(s, params.disc_radius);
                // Steer back toward the interior so the next increments do
                // not immediately push outward again.
                theta = std::atan2(s.vy, s.vx);
                mean_theta = std::atan2(-s.y, -s.x);
            }
        }
        out.push_back(s);
    }
    return out;
}

std::vector<MobileState> trajectory(const MobilityModelParams& params, const channel::UserGeometry& start,
                                    int horizon, double sample_interval, RngStream& rng) {
    return std::visit(
        [&](const auto& p) { return [&] {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, RandomWalkParams>)
                return rw_trajectory(p, start, horizon, sample_interval, rng);
            else if constexpr (std::is_same_v<T, RandomWaypointParams>)
                return rwp_trajectory(p, start, horizon, sample_interval, rng);
            else
                return gm_trajectory(p, start, horizon, sample_interval, rng);
        }(); },
        params);
}

}  // namespace nomasim::mobility
