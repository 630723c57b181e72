#include "nomasim/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <thread>

#include "nomasim/channel.hpp"
#include "nomasim/power.hpp"
#include "nomasim/rng.hpp"
#include "nomasim/tracking.hpp"

namespace nomasim::simulate {

namespace {

// Fixed reduction granularity: each block is computed serially by one thread
// and blocks fold in index order, so results never depend on thread count.
constexpr std::uint64_t kStaticBlock = 4096;
constexpr std::uint64_t kMobileBlock = 8;

// Substream purposes for mobile trials; per-user streams keep the draw
// sequence of one concern independent of every other concern.
constexpr std::uint64_t kTagDeploy = 0;
constexpr std::uint64_t kTagTrajectory = 64;
constexpr std::uint64_t kTagObservation = 128;
constexpr std::uint64_t kTagFading = 192;

// Near-field guard: path loss diverges at the base station, so effective
// gains clamp the true distance at 1 mm (hit with negligible probability).
constexpr double kMinTrueDistance = 1e-3;
constexpr double kMinEstimatedDistance = 1e-9;

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

struct Accumulator {
    double sum_rate = 0.0;
    double sum_rate_sq = 0.0;
    std::uint64_t cop = 0;
    std::uint64_t near_out = 0;
    std::uint64_t far_out = 0;
    std::uint64_t order_err = 0;
    std::uint64_t oma = 0;
    std::uint64_t n = 0;

    void add(const TrialOutcome& o) {
        sum_rate += o.sum_rate_bpcu;
        sum_rate_sq += o.sum_rate_bpcu * o.sum_rate_bpcu;
        cop += (o.outage_near || o.outage_far) ? 1 : 0;
        near_out += o.outage_near ? 1 : 0;
        far_out += o.outage_far ? 1 : 0;
        order_err += o.order_error ? 1 : 0;
        oma += (o.chosen_scheme == Scheme::oma) ? 1 : 0;
        ++n;
    }

    void merge(const Accumulator& b) {
        sum_rate += b.sum_rate;
        sum_rate_sq += b.sum_rate_sq;
        cop += b.cop;
        near_out += b.near_out;
        far_out += b.far_out;
        order_err += b.order_err;
        oma += b.oma;
        n += b.n;
    }
};

double binomial_std_error(std::uint64_t k, std::uint64_t n) {
    if (n == 0) return 0.0;
    const double p = static_cast<double>(k) / static_cast<double>(n);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

MetricsReport finalize(const Accumulator& a) {
    MetricsReport r;
    r.trials = a.n;
    if (a.n == 0) return r;
    const double n = static_cast<double>(a.n);
    r.mean_sum_rate = a.sum_rate / n;
    const double var = std::max(0.0, a.sum_rate_sq / n - r.mean_sum_rate * r.mean_sum_rate);
    r.sum_rate_std_error = std::sqrt(var / n);
    r.cop = static_cast<double>(a.cop) / n;
    r.cop_std_error = binomial_std_error(a.cop, a.n);
    r.outage_near = static_cast<double>(a.near_out) / n;
    r.outage_near_std_error = binomial_std_error(a.near_out, a.n);
    r.outage_far = static_cast<double>(a.far_out) / n;
    r.outage_far_std_error = binomial_std_error(a.far_out, a.n);
    r.order_error_rate = static_cast<double>(a.order_err) / n;
    r.order_error_std_error = binomial_std_error(a.order_err, a.n);
    r.oma_share = static_cast<double>(a.oma) / n;
    return r;
}

// Runs body(b) for every block; block b is always processed whole by one
// thread.  The first exception, if any, is rethrown after joining.
template <typename Body>
void run_blocks(std::uint64_t nblocks, int threads, const Body& body) {
    const std::uint64_t want = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(threads, 1)), nblocks);
    if (want <= 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b) body(b);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(want);
    pool.reserve(want);
    for (std::uint64_t i = 0; i < want; ++i) {
        pool.emplace_back([&, i] {
            try {
                for (std::uint64_t b = i; b < nblocks; b += want) body(b);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// Believed-role effective gains: identity 1 is the truly-nearer user.
struct RoleGains {
    double x_near;
    double x_far;
};

RoleGains role_gains(const analysis::PairScenario& truth, bool swapped, const FadingDraw& f) {
    const double x1 = f.h1 / truth.lambda1();
    const double x2 = f.h2 / truth.lambda2();
    return swapped ? RoleGains{x2, x1} : RoleGains{x1, x2};
}

TrialOutcome downlink_core(double x_near, double x_far, double rho, double beta, double eps1,
                           double eps2) {
    const auto shared_sinr = [&](double x) {
        return rho * beta * x / (rho * (1.0 - beta) * x + 1.0);
    };
    const double far_at_far = shared_sinr(x_far);
    const double far_at_near = shared_sinr(x_near);
    const double own_near = rho * (1.0 - beta) * x_near;

    TrialOutcome o;
    o.outage_far = far_at_far < eps2;
    // A failed first stage leaves the near user's own signal buried.
    o.outage_near = (far_at_near < eps2) || (own_near < eps1);
    o.sum_rate_bpcu = log2_1p(std::min(far_at_far, far_at_near)) + log2_1p(own_near);
    o.order_error = x_far > x_near;
    return o;
}

TrialOutcome uplink_core(double x_near, double x_far, double rho1, double rho2, double eps0) {
    const double first = rho1 * x_near / (rho2 * x_far + 1.0);
    const double second = rho2 * x_far;

    TrialOutcome o;
    o.outage_near = first < eps0;
    o.outage_far = o.outage_near || second < eps0;
    o.sum_rate_bpcu = log2_1p(rho1 * x_near + rho2 * x_far);
    o.order_error = x_far > x_near;
    return o;
}

// Every experiment-level decision, resolved once per run.
struct PairRunParams {
    config::Direction direction = config::Direction::downlink;
    config::Access access = config::Access::noma;
    config::PowerScheme scheme = config::PowerScheme::fixed;
    double rho_down = 0.0;
    double beta_fixed = 0.75;
    double omega1 = 0.0;
    double omega2 = 0.0;
    double eps1 = 0.0;  // downlink per-signal thresholds
    double eps2 = 0.0;
    double eps0 = 0.0;  // common threshold (uplink + power optimization)
    channel::LinkConfig link;
};

PairRunParams make_pair_params(const config::ExperimentConfig& cfg) {
    PairRunParams pp;
    pp.direction = cfg.direction;
    pp.access = cfg.access;
    pp.scheme = cfg.power_scheme;
    pp.link = cfg.link;
    pp.rho_down = channel::snr_of(cfg.p_dbm, cfg.link.noise_power_dbm);
    pp.beta_fixed = cfg.beta;
    pp.omega1 = channel::snr_of(cfg.p1_dbm, cfg.link.noise_power_dbm);
    pp.omega2 = channel::snr_of(cfg.p2_dbm, cfg.link.noise_power_dbm);
    pp.eps0 = cfg.link.target_snr();
    pp.eps1 = cfg.target_snr1 > 0.0 ? cfg.target_snr1 : pp.eps0;
    pp.eps2 = cfg.target_snr2 > 0.0 ? cfg.target_snr2 : pp.eps0;
    return pp;
}

// Evaluates one pair transmission given believed-role estimated distances
// (d_est_near <= d_est_far) and the true sorted scenario.
TrialOutcome evaluate_pair(const PairRunParams& pp, const analysis::PairScenario& truth, bool swapped,
                           double d_est_near, double d_est_far, const FadingDraw& fading) {
    std::optional<analysis::PairScenario> est;
    const auto est_scenario = [&]() -> const analysis::PairScenario& {
        if (!est) est.emplace(d_est_near, d_est_far, pp.link);
        return *est;
    };

    if (pp.direction == config::Direction::downlink) {
        if (pp.access == config::Access::oma)
            return oma_downlink_trial(truth, swapped, pp.rho_down, fading);
        double beta = pp.beta_fixed;
        if (pp.scheme == config::PowerScheme::dynamic_allocation)
            beta = power::dpa_optimal_beta(est_scenario(), pp.rho_down, pp.eps0).beta_star;
        return downlink_trial(truth, swapped, analysis::DownlinkPower(pp.rho_down, beta), fading,
                              pp.eps1, pp.eps2);
    }

    // Power control shapes NOMA transmissions only; orthogonal slots carry no
    // intra-pair interference, so OMA always spends the full per-user budget.
    const analysis::UplinkPower full(pp.omega1, pp.omega2);
    if (pp.access == config::Access::oma) return oma_uplink_trial(truth, swapped, full, fading);

    analysis::UplinkPower pw = full;
    if (pp.scheme == config::PowerScheme::dynamic_allocation) {
        const auto sol = power::dpc_optimal_power(est_scenario(), pp.omega1, pp.omega2, pp.eps0);
        pw = analysis::UplinkPower(sol.rho1_star, sol.rho2_star, pp.omega1, pp.omega2);
    }
    if (pp.access == config::Access::hybrid) {
        const auto sel = hybrid_uplink_select(est_scenario(), pw, 0.0);
        TrialOutcome o = sel.scheme == Scheme::noma ? uplink_trial(truth, swapped, pw, fading)
                                                    : oma_uplink_trial(truth, swapped, full, fading);
        o.chosen_scheme = sel.scheme;
        return o;
    }
    return uplink_trial(truth, swapped, pw, fading);
}

struct StaticContext {
    config::ExperimentConfig cfg;
    channel::UserGeometry g1;  // truly nearer of the two configured users
    channel::UserGeometry g2;
    analysis::PairScenario truth;
    PairRunParams pp;
};

TrialOutcome static_trial(const StaticContext& ctx, std::uint64_t t) {
    RngStream rng = RngStream::substream(ctx.cfg.seed, t);
    // Observation noise is always consumed so fading draws line up across
    // position sources (common random numbers).
    const auto z1 = channel::observe_position(ctx.g1, ctx.cfg.link.sigma_ob2, rng);
    const auto z2 = channel::observe_position(ctx.g2, ctx.cfg.link.sigma_ob2, rng);
    const FadingDraw fading{rng.exponential(1.0), rng.exponential(1.0)};

    double d1_hat = ctx.truth.d1();
    double d2_hat = ctx.truth.d2();
    bool swapped = false;
    if (ctx.cfg.position_source == config::PositionSource::observed) {
        d1_hat = std::max(z1.distance(), kMinEstimatedDistance);
        d2_hat = std::max(z2.distance(), kMinEstimatedDistance);
        swapped = d2_hat < d1_hat;
    }
    const double d_est_near = std::min(d1_hat, d2_hat);
    const double d_est_far = std::max(d1_hat, d2_hat);
    return evaluate_pair(ctx.pp, ctx.truth, swapped, d_est_near, d_est_far, fading);
}

struct MobileContext {
    config::ExperimentConfig cfg;
    double radius;
    PairRunParams pp;
    double sigma_w2;
};

std::vector<TrialOutcome> mobile_trial(const MobileContext& ctx, std::uint64_t t) {
    const auto& cfg = ctx.cfg;
    const int m = cfg.num_users;
    const int horizon = cfg.horizon;

    RngStream deploy_rng = RngStream::substream(cfg.seed, t, kTagDeploy);
    const auto starts = channel::deploy_users(m, ctx.radius, cfg.deploy_min_distance, deploy_rng);

    std::vector<std::vector<mobility::MobileState>> traj;
    std::vector<RngStream> obs_rng;
    std::vector<RngStream> fade_rng;
    traj.reserve(static_cast<std::size_t>(m));
    obs_rng.reserve(static_cast<std::size_t>(m));
    fade_rng.reserve(static_cast<std::size_t>(m));
    for (int u = 0; u < m; ++u) {
        RngStream tr = RngStream::substream(cfg.seed, t, kTagTrajectory + static_cast<std::uint64_t>(u));
        traj.push_back(mobility::trajectory(cfg.mobility, starts[static_cast<std::size_t>(u)], horizon,
                                            cfg.sample_interval, tr));
        obs_rng.push_back(RngStream::substream(cfg.seed, t, kTagObservation + static_cast<std::uint64_t>(u)));
        fade_rng.push_back(RngStream::substream(cfg.seed, t, kTagFading + static_cast<std::uint64_t>(u)));
    }

    const auto schedule = cfg.feedback_rate >= 1.0 ? tracking::FeedbackSchedule::always()
                                                   : tracking::FeedbackSchedule::rate(cfg.feedback_rate);
    const mobility::StateSpaceModel ssm{cfg.sample_interval, ctx.sigma_w2, cfg.link.sigma_ob2};
    std::vector<tracking::FilterState> filters(static_cast<std::size_t>(m));
    std::vector<double> held_obs_distance(static_cast<std::size_t>(m), 0.0);

    std::vector<double> d_true(static_cast<std::size_t>(m));
    std::vector<double> d_est(static_cast<std::size_t>(m));
    std::vector<double> h(static_cast<std::size_t>(m));

    std::vector<TrialOutcome> out(static_cast<std::size_t>(horizon));

    for (int k = 0; k < horizon; ++k) {
        const bool avail = schedule.available(k);
        for (int u = 0; u < m; ++u) {
            const auto ui = static_cast<std::size_t>(u);
            const auto& s = traj[ui][static_cast<std::size_t>(k)];
            d_true[ui] = std::max(s.distance(), kMinTrueDistance);
            switch (cfg.position_source) {
                case config::PositionSource::exact:
                    d_est[ui] = d_true[ui];
                    break;
                case config::PositionSource::observed: {
                    if (avail) {
                        const Eigen::Vector2d z = mobility::observe_state(s, ssm, obs_rng[ui]);
                        held_obs_distance[ui] = std::hypot(z(0), z(1));
                    }
                    d_est[ui] = std::max(held_obs_distance[ui], kMinEstimatedDistance);
                    break;
                }
                case config::PositionSource::filtered: {
                    if (avail) {
                        const Eigen::Vector2d z = mobility::observe_state(s, ssm, obs_rng[ui]);
                        filters[ui] = tracking::kf_update(filters[ui], z, ssm);
                    }
                    d_est[ui] = std::max(tracking::estimated_distance(filters[ui]), kMinEstimatedDistance);
                    break;
                }
            }
            h[ui] = fade_rng[ui].exponential(1.0);
        }
        if (cfg.position_source == config::PositionSource::filtered)
            for (int u = 0; u < m; ++u)
                filters[static_cast<std::size_t>(u)] =
                    tracking::kf_predict(filters[static_cast<std::size_t>(u)], ssm);

        const Pairing pairing = pair_users(d_est);
        TrialOutcome slot;
        bool any_oma = false;
        for (const auto& [a, b] : pairing.pairs) {
            const auto ai = static_cast<std::size_t>(a);
            const auto bi = static_cast<std::size_t>(b);
            // a is believed nearer; swapped when the truth disagrees.
            const bool swapped = d_true[bi] < d_true[ai];
            const int id1 = swapped ? b : a;
            const int id2 = swapped ? a : b;
            const analysis::PairScenario truth(d_true[static_cast<std::size_t>(id1)],
                                               d_true[static_cast<std::size_t>(id2)], cfg.link);
            const FadingDraw fading{h[static_cast<std::size_t>(id1)], h[static_cast<std::size_t>(id2)]};
            const TrialOutcome o =
                evaluate_pair(ctx.pp, truth, swapped, d_est[ai], d_est[bi], fading);
            slot.sum_rate_bpcu += o.sum_rate_bpcu;
            slot.outage_near = slot.outage_near || o.outage_near;
            slot.outage_far = slot.outage_far || o.outage_far;
            slot.order_error = slot.order_error || o.order_error;
            any_oma = any_oma || o.chosen_scheme == Scheme::oma;
        }
        if (pairing.leftover >= 0) {
            // The unpaired median user gets a private half-rate slice.
            const auto li = static_cast<std::size_t>(pairing.leftover);
            const double x = h[li] / std::pow(d_true[li], cfg.link.alpha);
            const double budget =
                ctx.pp.direction == config::Direction::downlink ? ctx.pp.rho_down : ctx.pp.omega1;
            slot.sum_rate_bpcu += 0.5 * log2_1p(budget * x);
        }
        slot.chosen_scheme = any_oma ? Scheme::oma : Scheme::noma;
        out[static_cast<std::size_t>(k)] = slot;
    }
    return out;
}

}  // namespace

TrialOutcome downlink_trial(const analysis::PairScenario& truth, bool order_swapped,
                            const analysis::DownlinkPower& power, const FadingDraw& fading) {
    const double eps = truth.link().target_snr();
    return downlink_trial(truth, order_swapped, power, fading, eps, eps);
}

TrialOutcome downlink_trial(const analysis::PairScenario& truth, bool order_swapped,
                            const analysis::DownlinkPower& power, const FadingDraw& fading,
                            double target_snr1, double target_snr2) {
    if (target_snr1 < 0.0 || target_snr2 < 0.0)
        throw std::invalid_argument("target thresholds must be nonnegative");
    const RoleGains g = role_gains(truth, order_swapped, fading);
    return downlink_core(g.x_near, g.x_far, power.rho, power.beta, target_snr1, target_snr2);
}

TrialOutcome uplink_trial(const analysis::PairScenario& truth, bool order_swapped,
                          const analysis::UplinkPower& power, const FadingDraw& fading) {
    const RoleGains g = role_gains(truth, order_swapped, fading);
    return uplink_core(g.x_near, g.x_far, power.rho1, power.rho2, truth.link().target_snr());
}

TrialOutcome oma_downlink_trial(const analysis::PairScenario& truth, bool order_swapped, double rho,
                                const FadingDraw& fading) {
    if (!(rho > 0.0)) throw std::invalid_argument("transmit SNR must be positive");
    const RoleGains g = role_gains(truth, order_swapped, fading);
    const double eps = truth.link().oma_target_snr();
    TrialOutcome o;
    o.outage_near = rho * g.x_near < eps;
    o.outage_far = rho * g.x_far < eps;
    o.sum_rate_bpcu = 0.5 * (log2_1p(rho * g.x_near) + log2_1p(rho * g.x_far));
    o.order_error = g.x_far > g.x_near;
    o.chosen_scheme = Scheme::oma;
    return o;
}

TrialOutcome oma_uplink_trial(const analysis::PairScenario& truth, bool order_swapped,
                              const analysis::UplinkPower& power, const FadingDraw& fading) {
    const RoleGains g = role_gains(truth, order_swapped, fading);
    const double eps = truth.link().oma_target_snr();
    TrialOutcome o;
    o.outage_near = power.rho1 * g.x_near < eps;
    o.outage_far = power.rho2 * g.x_far < eps;
    o.sum_rate_bpcu = 0.5 * (log2_1p(power.rho1 * g.x_near) + log2_1p(power.rho2 * g.x_far));
    o.order_error = g.x_far > g.x_near;
    o.chosen_scheme = Scheme::oma;
    return o;
}

Pairing pair_users(const std::vector<double>& estimated_distances) {
    const int m = static_cast<int>(estimated_distances.size());
    if (m < 2) throw std::invalid_argument("pairing needs at least two users");
    std::vector<int> idx(static_cast<std::size_t>(m));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return estimated_distances[static_cast<std::size_t>(a)] <
               estimated_distances[static_cast<std::size_t>(b)];
    });
    Pairing p;
    for (int i = 0; i < m / 2; ++i)
        p.pairs.emplace_back(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(m - 1 - i)]);
    if (m % 2 != 0) p.leftover = idx[static_cast<std::size_t>(m / 2)];
    return p;
}

HybridChoice hybrid_uplink_select(const analysis::PairScenario& estimated,
                                  const analysis::UplinkPower& power, double pe1_estimate) {
    // The OMA arm is judged at the full budgets: backing off power only ever
    // helps shared-medium decoding, never orthogonal slots.
    const double noma_cop = analysis::uplink_cop(estimated, power, pe1_estimate);
    const double oma_cop = analysis::oma_cop(estimated, power.omega1, power.omega2);
    if (noma_cop <= oma_cop) return HybridChoice{Scheme::noma, noma_cop};
    return HybridChoice{Scheme::oma, oma_cop};
}

MetricsReport run_static_experiment(const config::ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.position_source == config::PositionSource::filtered)
        throw config::ConfigError("filtered positions need a mobile run");

    channel::UserGeometry g1{cfg.u1_x, cfg.u1_y};
    channel::UserGeometry g2{cfg.u2_x, cfg.u2_y};
    if (g2.distance() < g1.distance()) std::swap(g1, g2);
    const StaticContext ctx{cfg, g1, g2,
                            analysis::PairScenario(g1.distance(), g2.distance(), cfg.link),
                            make_pair_params(cfg)};

    const std::uint64_t nblocks = (cfg.trials + kStaticBlock - 1) / kStaticBlock;
    std::vector<Accumulator> acc(nblocks);
    run_blocks(nblocks, cfg.threads, [&](std::uint64_t b) {
        const std::uint64_t lo = b * kStaticBlock;
        const std::uint64_t hi = std::min(cfg.trials, lo + kStaticBlock);
        for (std::uint64_t t = lo; t < hi; ++t) acc[b].add(static_trial(ctx, t));
    });

    Accumulator total;
    for (const auto& a : acc) total.merge(a);
    return finalize(total);
}

std::vector<MetricsReport> run_mobile_experiment(const config::ExperimentConfig& cfg) {
    cfg.validate();
    const MobileContext ctx{cfg, mobility::disc_radius_of(cfg.mobility), make_pair_params(cfg),
                            config::resolved_filter_sigma_w2(cfg)};

    const std::uint64_t nblocks = (cfg.trials + kMobileBlock - 1) / kMobileBlock;
    std::vector<std::vector<Accumulator>> acc(nblocks);
    run_blocks(nblocks, cfg.threads, [&](std::uint64_t b) {
        acc[b].assign(static_cast<std::size_t>(cfg.horizon), Accumulator{});
        const std::uint64_t lo = b * kMobileBlock;
        const std::uint64_t hi = std::min(cfg.trials, lo + kMobileBlock);
        for (std::uint64_t t = lo; t < hi; ++t) {
            const auto slots = mobile_trial(ctx, t);
            for (int k = 0; k < cfg.horizon; ++k)
                acc[b][static_cast<std::size_t>(k)].add(slots[static_cast<std::size_t>(k)]);
        }
    });

    std::vector<MetricsReport> out;
    out.reserve(static_cast<std::size_t>(cfg.horizon));
    for (int k = 0; k < cfg.horizon; ++k) {
        Accumulator total;
        for (const auto& block : acc) total.merge(block[static_cast<std::size_t>(k)]);
        out.push_back(finalize(total));
    }
    return out;
}

MetricsReport summarize_slots(const std::vector<MetricsReport>& slots, int warmup_slots) {
    MetricsReport r;
    if (slots.empty()) return r;
    const int first = std::clamp(warmup_slots, 0, static_cast<int>(slots.size()) - 1);
    double used = 0.0;
    for (std::size_t k = static_cast<std::size_t>(first); k < slots.size(); ++k) {
        const auto& s = slots[k];
        r.mean_sum_rate += s.mean_sum_rate;
        r.cop += s.cop;
        r.outage_near += s.outage_near;
        r.outage_far += s.outage_far;
        r.order_error_rate += s.order_error_rate;
        r.oma_share += s.oma_share;
        // Conservative: slots of one trajectory are treated as fully
        // correlated, so averaging does not shrink the error bars.
        r.sum_rate_std_error += s.sum_rate_std_error;
        r.cop_std_error += s.cop_std_error;
        r.outage_near_std_error += s.outage_near_std_error;
        r.outage_far_std_error += s.outage_far_std_error;
        r.order_error_std_error += s.order_error_std_error;
        used += 1.0;
    }
    r.trials = slots.back().trials;
    r.mean_sum_rate /= used;
    r.cop /= used;
    r.outage_near /= used;
    r.outage_far /= used;
    r.order_error_rate /= used;
    r.oma_share /= used;
    r.sum_rate_std_error /= used;
    r.cop_std_error /= used;
    r.outage_near_std_error /= used;
    r.outage_far_std_error /= used;
    r.order_error_std_error /= used;
    return r;
}

}  // namespace nomasim::simulate
