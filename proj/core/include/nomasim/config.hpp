#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "nomasim/channel.hpp"
#include "nomasim/mobility.hpp"

namespace nomasim::config {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Direction { downlink, uplink };
enum class Access { noma, oma, hybrid };
enum class PowerScheme { fixed, dynamic_allocation };
// Where the ordering/power decisions get their positions: ground truth, the
// latest raw measurement, or the Kalman estimate.
enum class PositionSource { exact, observed, filtered };

struct ExperimentConfig {
    Direction direction = Direction::downlink;
    Access access = Access::noma;
    PowerScheme power_scheme = PowerScheme::fixed;
    PositionSource position_source = PositionSource::exact;

    double u1_x = 3.0;
    double u1_y = 3.0;
    double u2_x = 7.0;
    double u2_y = 7.0;

    channel::LinkConfig link;

    double p_dbm = 30.0;   // downlink budget
    double beta = 0.8;     // downlink split when power_scheme = fixed
    double p1_dbm = 30.0;  // uplink budgets
    double p2_dbm = 20.0;

    // Optional per-signal decode thresholds in linear SNR; 0 defers to the
    // common target rate.  Signal 2 is the larger-share signal decoded first.
    double target_snr1 = 0.0;
    double target_snr2 = 0.0;

    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    int threads = 1;

    // Mobile-scenario block.
    int horizon = 300;
    double sample_interval = 0.2;
    double feedback_rate = 1.0;
    double filter_sigma_w2 = 0.0;  // 0 selects the per-model calibrated default
    mobility::MobilityModelParams mobility = mobility::GaussMarkovParams{};
    int num_users = 2;
    double deploy_min_distance = 0.5;

    void validate() const;  // throws ConfigError
};

// Process-noise intensity that the filter defaults to for each mobility
// model; values fixed by an offline sweep minimizing steady-state error.
double default_filter_sigma_w2(const mobility::MobilityModelParams& model);
double resolved_filter_sigma_w2(const ExperimentConfig& cfg);

// key = value lines, '#' comments.  Unknown keys and malformed values throw
// ConfigError; the same setter backs CLI flag overrides.
void apply_key_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);
void apply_config_stream(ExperimentConfig& cfg, std::istream& in);
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

std::string to_string(Direction d);
std::string to_string(Access a);
std::string to_string(PowerScheme p);
std::string to_string(PositionSource s);

}  // namespace nomasim::config
