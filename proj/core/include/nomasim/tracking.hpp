#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nomasim/mobility.hpp"

namespace nomasim::tracking {

enum class Phase { predicted, updated };

struct FilterState {
    Eigen::Vector4d s_hat = Eigen::Vector4d::Zero();
    Eigen::Matrix4d p = Eigen::Matrix4d::Identity();
    Phase phase = Phase::predicted;
};

FilterState kf_init();

// Measurement update.  Requires a predicted-phase input; sigma_ob2 == 0 is
// handled as the limit form (position components snap to the measurement).
FilterState kf_update(const FilterState& fs, const Eigen::Vector2d& z,
                      const mobility::StateSpaceModel& model);

// Time update.  Valid from either phase: when a slot has no measurement the
// next prediction chains from the previous prediction.
FilterState kf_predict(const FilterState& fs, const mobility::StateSpaceModel& model);

double estimated_distance(const FilterState& fs);

// Which slots carry a position measurement.  Rate-based schedules quantize to
// every round(1/rate)-th slot starting at 0.
class FeedbackSchedule {
  public:
    static FeedbackSchedule always();
    static FeedbackSchedule rate(double fraction);
    static FeedbackSchedule pattern(std::vector<bool> slots);

    bool available(int slot) const;
    // Throws unless at least one of the first `horizon` slots is available.
    void validate(int horizon) const;

  private:
    FeedbackSchedule() = default;
    int period_ = 1;
    std::vector<bool> pattern_;  // non-empty only for explicit patterns
};

struct TrackPoint {
    double x_hat = 0.0;
    double y_hat = 0.0;
    double d_hat = 0.0;
    double trace_p = 0.0;
    bool measured = false;
};

// Runs the filter over one measurement per slot, consulting the schedule for
// which measurements are actually delivered.  Estimates on unmeasured slots
// come from the predicted state.
std::vector<TrackPoint> track_trajectory(const std::vector<Eigen::Vector2d>& measurements,
                                         const mobility::StateSpaceModel& model,
                                         const FeedbackSchedule& schedule);

}  // namespace nomasim::tracking
