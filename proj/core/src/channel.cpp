#include "nomasim/channel.hpp"

#include <numbers>
#include <stdexcept>

namespace nomasim::channel {

ObservedGeometry observe_position(const UserGeometry& g, double sigma_ob2, RngStream& rng) {
    if (sigma_ob2 < 0.0) throw std::domain_error("observe_position: requires sigma_ob2 >= 0");
    if (sigma_ob2 == 0.0) {
        // Still consume the same number of draws so downstream substreams
        // stay aligned across sigma_ob2 sweeps with a shared seed.
        rng.normal();
        rng.normal();
        return {g.x, g.y};
    }
    const double sigma = std::sqrt(sigma_ob2);
    return {g.x + rng.normal(0.0, sigma), g.y + rng.normal(0.0, sigma)};
}

std::vector<UserGeometry> deploy_users(int count, double disc_radius, double min_distance, RngStream& rng) {
    if (count < 0) throw std::invalid_argument("deploy_users: requires count >= 0");
    if (!(disc_radius > 0.0)) throw std::invalid_argument("deploy_users: requires disc_radius > 0");
    if (min_distance < 0.0 || min_distance >= disc_radius) {
        throw std::invalid_argument("deploy_users: requires 0 <= min_distance < disc_radius");
    }
    std::vector<UserGeometry> users;
    users.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        UserGeometry g;
        do {
            const double r = disc_radius * std::sqrt(rng.uniform01());
            const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
            g = {r * std::cos(theta), r * std::sin(theta)};
        } while (g.distance() < min_distance);
        users.push_back(g);
    }
    return users;
}

}  // namespace nomasim::channel
