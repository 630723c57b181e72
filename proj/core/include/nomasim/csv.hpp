#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nomasim/mobility.hpp"
#include "nomasim/tracking.hpp"

namespace nomasim::csv {

// Shortest decimal form that parses back to the identical bits; this is what
// makes emitted CSV byte-stable and round-trip lossless.
std::string format_double(double v);
double parse_double(const std::string& text);

struct SweepRow {
    std::string sweep_var;
    double value = 0.0;
    std::string metric;
    double analytic = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

void write_trajectory_csv(std::ostream& out, int user_id,
                          const std::vector<mobility::MobileState>& samples, double sample_interval);

void write_estimate_csv(std::ostream& out, int user_id, const std::vector<tracking::TrackPoint>& points);

}  // namespace nomasim::csv
