#include "common.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "nomasim/analysis.hpp"
#include "nomasim/channel.hpp"
#include "nomasim/power.hpp"
#include "nomasim/rng.hpp"
#include "nomasim/tracking.hpp"

namespace nomasim::cli {

namespace {

constexpr std::uint64_t kTagDeploy = 0;
constexpr std::uint64_t kTagTrajectory = 64;
constexpr std::uint64_t kTagObservation = 128;

// Mixture over the two possible believed orderings, weighted by the
// fading-free order error probability.
double order_mixture(double pe1, double correct, double swapped) {
    return (1.0 - pe1) * correct + pe1 * swapped;
}

}  // namespace

std::filesystem::path resolve_output_path(const std::string& given, const std::string& fallback) {
    std::filesystem::path p = given.empty() ? std::filesystem::path(fallback)
                                            : std::filesystem::path(given);
    if (p.is_absolute()) return p;
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0')
        return std::filesystem::path(dir) / p;
    return p;
}

std::map<std::string, double> analytic_metrics(const config::ExperimentConfig& cfg) {
    using config::Access;
    using config::Direction;
    using config::PositionSource;
    using config::PowerScheme;

    std::map<std::string, double> out;
    const double da = std::hypot(cfg.u1_x, cfg.u1_y);
    const double db = std::hypot(cfg.u2_x, cfg.u2_y);
    const analysis::PairScenario sc(std::min(da, db), std::max(da, db), cfg.link);

    const bool noisy = cfg.position_source != PositionSource::exact;
    const double pe1 = noisy ? analysis::decoding_error_prob_fading_free(sc) : 0.0;
    const double d = sc.gain_ratio();
    const double pe2 = (d - 1.0) / (d + 1.0) * pe1 + 1.0 / (d + 1.0);
    out["pe1"] = pe1;
    out["order_error"] = pe2;

    const double eps0 = cfg.link.target_snr();
    if (cfg.direction == Direction::downlink) {
        const double rho = channel::snr_of(cfg.p_dbm, cfg.link.noise_power_dbm);
        if (cfg.access == Access::oma) {
            out["sum_rate"] = 0.5 * (analysis::phi_prime(1, rho, sc) + analysis::phi_prime(2, rho, sc));
            out["cop"] = analysis::oma_cop(sc, rho);
            return out;
        }
        double beta = cfg.beta;
        if (cfg.power_scheme == PowerScheme::dynamic_allocation)
            beta = power::dpa_optimal_beta(sc, rho, eps0).beta_star;
        const analysis::DownlinkPower pw(rho, beta);
        out["sum_rate"] = analysis::downlink_avg_sum_rate(sc, pw, pe1);
        // The outage form needs one common threshold.
        if (cfg.target_snr1 <= 0.0 && cfg.target_snr2 <= 0.0)
            out["cop"] = analysis::downlink_cop(sc, pw, pe1);
        else if (cfg.target_snr1 == cfg.target_snr2)
            out["cop"] = analysis::downlink_cop(sc, pw, pe1, cfg.target_snr1);
        return out;
    }

    const double omega1 = channel::snr_of(cfg.p1_dbm, cfg.link.noise_power_dbm);
    const double omega2 = channel::snr_of(cfg.p2_dbm, cfg.link.noise_power_dbm);
    analysis::UplinkPower pw(omega1, omega2);
    if (cfg.power_scheme == PowerScheme::dynamic_allocation) {
        const auto sol = power::dpc_optimal_power(sc, omega1, omega2, eps0);
        pw = analysis::UplinkPower(sol.rho1_star, sol.rho2_star, omega1, omega2);
    }
    const analysis::UplinkPower swapped_pw(pw.rho2, pw.rho1);

    const double noma_rate =
        order_mixture(pe1, analysis::uplink_avg_sum_rate(sc, pw), analysis::uplink_avg_sum_rate(sc, swapped_pw));
    const double noma_cop = analysis::uplink_cop(sc, pw, pe1);
    // Orthogonal slots always spend the full budgets; an order error swaps
    // which user holds which budget.
    const double oma_rate = order_mixture(
        pe1, 0.5 * (analysis::phi_prime(1, omega1, sc) + analysis::phi_prime(2, omega2, sc)),
        0.5 * (analysis::phi_prime(1, omega2, sc) + analysis::phi_prime(2, omega1, sc)));
    const double oma_cop =
        order_mixture(pe1, analysis::oma_cop(sc, omega1, omega2), analysis::oma_cop(sc, omega2, omega1));

    switch (cfg.access) {
        case Access::oma:
            out["sum_rate"] = oma_rate;
            out["cop"] = oma_cop;
            break;
        case Access::hybrid:
            out["cop"] = std::min(noma_cop, oma_cop);
            break;
        default:
            out["sum_rate"] = noma_rate;
            out["cop"] = noma_cop;
            break;
    }
    return out;
}

void append_metric_rows(std::vector<csv::SweepRow>& rows, const std::string& sweep_var, double value,
                        const simulate::MetricsReport& rep, const std::map<std::string, double>& analytic,
                        std::uint64_t seed) {
    const auto of = [&](const std::string& key) {
        const auto it = analytic.find(key);
        return it == analytic.end() ? 0.0 : it->second;
    };
    rows.push_back({sweep_var, value, "sum_rate", of("sum_rate"), rep.mean_sum_rate,
                    rep.sum_rate_std_error, rep.trials, seed});
    rows.push_back({sweep_var, value, "cop", of("cop"), rep.cop, rep.cop_std_error, rep.trials, seed});
    rows.push_back({sweep_var, value, "outage_near", of("outage_near"), rep.outage_near,
                    rep.outage_near_std_error, rep.trials, seed});
    rows.push_back({sweep_var, value, "outage_far", of("outage_far"), rep.outage_far,
                    rep.outage_far_std_error, rep.trials, seed});
    rows.push_back({sweep_var, value, "order_error", of("order_error"), rep.order_error_rate,
                    rep.order_error_std_error, rep.trials, seed});
    rows.push_back({sweep_var, value, "oma_share", 0.0, rep.oma_share, 0.0, rep.trials, seed});
}

TrackStats tracking_rmse(const mobility::MobilityModelParams& model, double sigma_ob2, double sigma_w2,
                         double feedback_rate, int trajectories, int horizon, double sample_interval,
                         std::uint64_t seed) {
    if (trajectories < 1) throw std::invalid_argument("need at least one trajectory");
    const double radius = mobility::disc_radius_of(model);
    const auto schedule = feedback_rate >= 1.0 ? tracking::FeedbackSchedule::always()
                                               : tracking::FeedbackSchedule::rate(feedback_rate);
    const mobility::StateSpaceModel ssm{sample_interval, sigma_w2, sigma_ob2};
    const double obs_sd = std::sqrt(sigma_ob2);

    double raw_sq = 0.0, filt_sq = 0.0;
    std::uint64_t raw_n = 0, filt_n = 0;
    for (int t = 0; t < trajectories; ++t) {
        const auto ti = static_cast<std::uint64_t>(t);
        RngStream deploy_rng = RngStream::substream(seed, ti, kTagDeploy);
        const auto start = channel::deploy_users(1, radius, 0.5, deploy_rng).front();
        RngStream traj_rng = RngStream::substream(seed, ti, kTagTrajectory);
        const auto traj = mobility::trajectory(model, start, horizon, sample_interval, traj_rng);

        RngStream obs_rng = RngStream::substream(seed, ti, kTagObservation);
        std::vector<Eigen::Vector2d> z;
        z.reserve(traj.size());
        for (const auto& s : traj)
            z.emplace_back(s.x + obs_sd * obs_rng.normal(), s.y + obs_sd * obs_rng.normal());

        const auto est = tracking::track_trajectory(z, ssm, schedule);
        for (int k = kWarmupSlots; k < horizon; ++k) {
            const auto ki = static_cast<std::size_t>(k);
            const double ex = est[ki].x_hat - traj[ki].x;
            const double ey = est[ki].y_hat - traj[ki].y;
            filt_sq += ex * ex + ey * ey;
            filt_n += 2;
            if (est[ki].measured) {
                const double rx = z[ki](0) - traj[ki].x;
                const double ry = z[ki](1) - traj[ki].y;
                raw_sq += rx * rx + ry * ry;
                raw_n += 2;
            }
        }
    }
    TrackStats s;
    s.raw_rmse = raw_n > 0 ? std::sqrt(raw_sq / static_cast<double>(raw_n)) : 0.0;
    s.filtered_rmse = filt_n > 0 ? std::sqrt(filt_sq / static_cast<double>(filt_n)) : 0.0;
    return s;
}

void write_rows_or_die(const std::filesystem::path& path, const std::vector<csv::SweepRow>& rows) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path.string() + "'");
    csv::write_sweep_csv(out, rows);
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace nomasim::cli
