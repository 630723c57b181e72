#pragma once

#include <cstdint>
#include <string>

namespace nomasim::cli {

struct ReproduceOptions {
    std::string figure;
    std::string output;            // CSV path; defaults to <figure>.csv in the output dir
    std::uint64_t seed = 424242;   // pinned so published numbers are reproducible
    std::uint64_t trials = 0;      // static Monte Carlo trials per point; 0 = recipe default
    std::uint64_t trajectories = 0;  // mobile trajectories per point; 0 = recipe default
    int threads = 4;
};

// Runs one recipe, writes its CSV, prints one PASS/FAIL line per check.
// Returns 0 when every check passes, 3 otherwise.
int cmd_reproduce(const ReproduceOptions& opt);

}  // namespace nomasim::cli
