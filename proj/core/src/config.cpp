#include "nomasim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace nomasim::config {

namespace {

double parse_double_or_throw(const std::string& key, const std::string& value) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("config key '" + key + "' needs a number, got '" + value + "'");
    return v;
}

std::uint64_t parse_u64_or_throw(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("config key '" + key + "' needs a nonnegative integer, got '" + value + "'");
    return v;
}

int parse_int_or_throw(const std::string& key, const std::string& value) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("config key '" + key + "' needs an integer, got '" + value + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Sets a per-model mobility parameter on the active variant; keys that do not
// belong to the active model are configuration errors rather than silent
// no-ops.
bool apply_mobility_key(mobility::MobilityModelParams& params, const std::string& key, double v) {
    using mobility::GaussMarkovParams;
    using mobility::RandomWalkParams;
    using mobility::RandomWaypointParams;

    if (key == "disc_radius") {
        std::visit([&](auto& p) { p.disc_radius = v; }, params);
        return true;
    }
    if (auto* rw = std::get_if<RandomWalkParams>(&params)) {
        if (key == "min_speed") return rw->min_speed = v, true;
        if (key == "max_speed") return rw->max_speed = v, true;
        if (key == "movement_interval") return rw->movement_interval = static_cast<int>(v), true;
    } else if (auto* rwp = std::get_if<RandomWaypointParams>(&params)) {
        if (key == "min_speed") return rwp->min_speed = v, true;
        if (key == "max_speed") return rwp->max_speed = v, true;
        if (key == "max_pause") return rwp->max_pause = static_cast<int>(v), true;
    } else if (auto* gm = std::get_if<GaussMarkovParams>(&params)) {
        if (key == "speed_variance") return gm->speed_variance = v, true;
        if (key == "tuning") return gm->tuning = v, true;
        if (key == "mean_speed") return gm->mean_speed = v, true;
        if (key == "direction_variance") return gm->direction_variance = v, true;
    }
    return false;
}

}  // namespace

double default_filter_sigma_w2(const mobility::MobilityModelParams& model) {
    struct Visitor {
        double operator()(const mobility::RandomWalkParams&) const { return 0.7; }
        double operator()(const mobility::RandomWaypointParams&) const { return 1.0; }
        double operator()(const mobility::GaussMarkovParams&) const { return 0.6; }
    };
    return std::visit(Visitor{}, model);
}

double resolved_filter_sigma_w2(const ExperimentConfig& cfg) {
    return cfg.filter_sigma_w2 > 0.0 ? cfg.filter_sigma_w2 : default_filter_sigma_w2(cfg.mobility);
}

void ExperimentConfig::validate() const {
    if (trials == 0) throw ConfigError("trials must be at least 1");
    if (threads < 1) throw ConfigError("threads must be at least 1");
    if (!(link.alpha > 0.0)) throw ConfigError("path loss exponent must be positive");
    if (link.sigma_ob2 < 0.0) throw ConfigError("observation noise variance must be nonnegative");
    if (link.target_rate_bpcu < 0.0) throw ConfigError("target rate must be nonnegative");
    if (target_snr1 < 0.0 || target_snr2 < 0.0)
        throw ConfigError("per-signal target thresholds must be nonnegative");
    if (!std::isfinite(u1_x) || !std::isfinite(u1_y) || !std::isfinite(u2_x) || !std::isfinite(u2_y))
        throw ConfigError("user positions must be finite");

    const double d1 = std::hypot(u1_x, u1_y);
    const double d2 = std::hypot(u2_x, u2_y);
    if (position_source == PositionSource::exact && !(d1 > 0.0 && d2 > 0.0))
        throw ConfigError("static users may not sit on the base station");

    if (direction == Direction::downlink && power_scheme == PowerScheme::fixed &&
        access != Access::oma) {
        if (!(beta > 0.5 && beta < 1.0))
            throw ConfigError("fixed downlink split must lie in (0.5, 1)");
    }
    if (direction == Direction::downlink && access == Access::hybrid)
        throw ConfigError("hybrid scheme selection applies to uplink transmissions only");

    if (horizon < 1) throw ConfigError("horizon must be at least 1 slot");
    if (!(sample_interval > 0.0)) throw ConfigError("sample interval must be positive");
    if (!(feedback_rate > 0.0) || feedback_rate > 1.0)
        throw ConfigError("feedback rate must lie in (0, 1]");
    if (filter_sigma_w2 < 0.0) throw ConfigError("filter process noise must be nonnegative");
    if (num_users < 2) throw ConfigError("need at least two users");
    if (num_users > 64) throw ConfigError("at most 64 users per cell (per-user stream budget)");
    const double radius = mobility::disc_radius_of(mobility);
    if (!(radius > 0.0)) throw ConfigError("disc radius must be positive");
    if (deploy_min_distance < 0.0 || deploy_min_distance >= radius)
        throw ConfigError("deployment exclusion radius must lie in [0, disc radius)");
}

void apply_key_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "direction") {
        if (value == "downlink") cfg.direction = Direction::downlink;
        else if (value == "uplink") cfg.direction = Direction::uplink;
        else throw ConfigError("direction must be downlink or uplink, got '" + value + "'");
        return;
    }
    if (key == "access") {
        if (value == "noma") cfg.access = Access::noma;
        else if (value == "oma") cfg.access = Access::oma;
        else if (value == "hybrid") cfg.access = Access::hybrid;
        else throw ConfigError("access must be noma, oma, or hybrid, got '" + value + "'");
        return;
    }
    if (key == "power_scheme") {
        if (value == "fixed") cfg.power_scheme = PowerScheme::fixed;
        else if (value == "dynamic") cfg.power_scheme = PowerScheme::dynamic_allocation;
        else throw ConfigError("power_scheme must be fixed or dynamic, got '" + value + "'");
        return;
    }
    if (key == "position_source") {
        if (value == "exact") cfg.position_source = PositionSource::exact;
        else if (value == "observed") cfg.position_source = PositionSource::observed;
        else if (value == "filtered") cfg.position_source = PositionSource::filtered;
        else throw ConfigError("position_source must be exact, observed, or filtered");
        return;
    }
    if (key == "mobility_model") {
        if (value == "rw") cfg.mobility = mobility::RandomWalkParams{};
        else if (value == "rwp") cfg.mobility = mobility::RandomWaypointParams{};
        else if (value == "gm") cfg.mobility = mobility::GaussMarkovParams{};
        else throw ConfigError("mobility_model must be rw, rwp, or gm, got '" + value + "'");
        return;
    }

    if (key == "trials") return void(cfg.trials = parse_u64_or_throw(key, value));
    if (key == "seed") return void(cfg.seed = parse_u64_or_throw(key, value));
    if (key == "threads") return void(cfg.threads = parse_int_or_throw(key, value));
    if (key == "horizon") return void(cfg.horizon = parse_int_or_throw(key, value));
    if (key == "num_users") return void(cfg.num_users = parse_int_or_throw(key, value));

    const double v = parse_double_or_throw(key, value);
    if (key == "u1_x") cfg.u1_x = v;
    else if (key == "u1_y") cfg.u1_y = v;
    else if (key == "u2_x") cfg.u2_x = v;
    else if (key == "u2_y") cfg.u2_y = v;
    else if (key == "alpha") cfg.link.alpha = v;
    else if (key == "noise_dbm") cfg.link.noise_power_dbm = v;
    else if (key == "sigma_ob2") cfg.link.sigma_ob2 = v;
    else if (key == "target_rate") cfg.link.target_rate_bpcu = v;
    else if (key == "p_dbm") cfg.p_dbm = v;
    else if (key == "beta") cfg.beta = v;
    else if (key == "p1_dbm") cfg.p1_dbm = v;
    else if (key == "p2_dbm") cfg.p2_dbm = v;
    else if (key == "target_snr1") cfg.target_snr1 = v;
    else if (key == "target_snr2") cfg.target_snr2 = v;
    else if (key == "sample_interval") cfg.sample_interval = v;
    else if (key == "feedback_rate") cfg.feedback_rate = v;
    else if (key == "filter_sigma_w2") cfg.filter_sigma_w2 = v;
    else if (key == "deploy_min_distance") cfg.deploy_min_distance = v;
    else if (!apply_mobility_key(cfg.mobility, key, v))
        throw ConfigError("unknown config key '" + key + "'");
}

void apply_config_stream(ExperimentConfig& cfg, std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + " is not key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + " has an empty key or value");
        apply_key_value(cfg, key, value);
    }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    apply_config_stream(cfg, in);
}

std::string to_string(Direction d) { return d == Direction::downlink ? "downlink" : "uplink"; }

std::string to_string(Access a) {
    switch (a) {
        case Access::noma: return "noma";
        case Access::oma: return "oma";
        default: return "hybrid";
    }
}

std::string to_string(PowerScheme p) {
    return p == PowerScheme::fixed ? "fixed" : "dynamic";
}

std::string to_string(PositionSource s) {
    switch (s) {
        case PositionSource::exact: return "exact";
        case PositionSource::observed: return "observed";
        default: return "filtered";
    }
}

}  // namespace nomasim::config
