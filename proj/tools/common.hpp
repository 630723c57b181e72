#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "nomasim/config.hpp"
#include "nomasim/csv.hpp"
#include "nomasim/simulate.hpp"

namespace nomasim::cli {

// Slots before this index are excluded from mobile summaries and tracking
// error statistics: the filter starts from a zero prior and needs to settle.
inline constexpr int kWarmupSlots = 25;

// Output paths resolve against this directory when not absolute.
inline constexpr char kOutputDirEnv[] = "NOMASIM_OUTPUT_DIR";

std::filesystem::path resolve_output_path(const std::string& given, const std::string& fallback);

// Closed-form values for the metrics a static run reports; keys match the
// metric names in emitted rows.  Metrics with no closed form are absent.
std::map<std::string, double> analytic_metrics(const config::ExperimentConfig& cfg);

void append_metric_rows(std::vector<csv::SweepRow>& rows, const std::string& sweep_var, double value,
                        const simulate::MetricsReport& rep, const std::map<std::string, double>& analytic,
                        std::uint64_t seed);

// Per-axis position RMS errors over many tracked trajectories, warm-up
// excluded.  raw counts measurement errors on delivered slots only.
struct TrackStats {
    double raw_rmse = 0.0;
    double filtered_rmse = 0.0;
};
TrackStats tracking_rmse(const mobility::MobilityModelParams& model, double sigma_ob2, double sigma_w2,
                         double feedback_rate, int trajectories, int horizon, double sample_interval,
                         std::uint64_t seed);

void write_rows_or_die(const std::filesystem::path& path, const std::vector<csv::SweepRow>& rows);

}  // namespace nomasim::cli
