#include "nomasim/tracking.hpp"

#include <cmath>
#include <stdexcept>

namespace nomasim::tracking {

namespace {

Eigen::Matrix4d symmetrize(const Eigen::Matrix4d& m) { return 0.5 * (m + m.transpose()); }

// Inverse of the 2x2 innovation covariance.  Positive definite whenever
// sigma_ob2 > 0; the noise-free limit needs a pseudo-inverse because an exact
// update zeroes the position variances.
Eigen::Matrix2d innovation_inverse(const Eigen::Matrix2d& s) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(s);
    const Eigen::Vector2d ev = eig.eigenvalues();
    const double cutoff = 1e-12 * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    Eigen::Vector2d inv = Eigen::Vector2d::Zero();
    for (int i = 0; i < 2; ++i)
        if (ev(i) > cutoff) inv(i) = 1.0 / ev(i);
    return eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace

FilterState kf_init() { return FilterState{}; }

FilterState kf_update(const FilterState& fs, const Eigen::Vector2d& z,
                      const mobility::StateSpaceModel& model) {
    if (fs.phase != Phase::predicted)
        throw std::logic_error("measurement update requires a predicted filter state");

    const auto h = mobility::StateSpaceModel::observation();
    const Eigen::Matrix2d s = h * fs.p * h.transpose() + model.observation_noise();
    const Eigen::Matrix<double, 4, 2> k = fs.p * h.transpose() * innovation_inverse(s);

    FilterState out;
    out.s_hat = fs.s_hat + k * (z - h * fs.s_hat);
    out.p = symmetrize((Eigen::Matrix4d::Identity() - k * h) * fs.p);
    out.phase = Phase::updated;
    return out;
}

FilterState kf_predict(const FilterState& fs, const mobility::StateSpaceModel& model) {
    const Eigen::Matrix4d a = model.transition();
    FilterState out;
    out.s_hat = a * fs.s_hat;
    out.p = symmetrize(a * fs.p * a.transpose() + model.process_noise());
    out.phase = Phase::predicted;
    return out;
}

double estimated_distance(const FilterState& fs) { return std::hypot(fs.s_hat(0), fs.s_hat(2)); }

FeedbackSchedule FeedbackSchedule::always() {
    FeedbackSchedule s;
    s.period_ = 1;
    return s;
}

FeedbackSchedule FeedbackSchedule::rate(double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw std::invalid_argument("feedback rate must lie in (0, 1]");
    FeedbackSchedule s;
    s.period_ = std::max(1, static_cast<int>(std::lround(1.0 / fraction)));
    return s;
}

FeedbackSchedule FeedbackSchedule::pattern(std::vector<bool> slots) {
    FeedbackSchedule s;
    s.pattern_ = std::move(slots);
    return s;
}

bool FeedbackSchedule::available(int slot) const {
    if (slot < 0) return false;
    if (!pattern_.empty()) return static_cast<std::size_t>(slot) < pattern_.size() && pattern_[slot];
    return slot % period_ == 0;
}

void FeedbackSchedule::validate(int horizon) const {
    for (int k = 0; k < horizon; ++k)
        if (available(k)) return;
    throw std::invalid_argument("feedback schedule has no available slot in the horizon");
}

std::vector<TrackPoint> track_trajectory(const std::vector<Eigen::Vector2d>& measurements,
                                         const mobility::StateSpaceModel& model,
                                         const FeedbackSchedule& schedule) {
    const int horizon = static_cast<int>(measurements.size());
    if (horizon == 0) return {};
    schedule.validate(horizon);

    std::vector<TrackPoint> out;
    out.reserve(measurements.size());
    FilterState fs = kf_init();
    for (int k = 0; k < horizon; ++k) {
        const bool measured = schedule.available(k);
        if (measured) fs = kf_update(fs, measurements[static_cast<std::size_t>(k)], model);
        out.push_back(TrackPoint{fs.s_hat(0), fs.s_hat(2), estimated_distance(fs), fs.p.trace(), measured});
        fs = kf_predict(fs, model);
    }
    return out;
}

}  // namespace nomasim::tracking
