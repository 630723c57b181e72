#include <benchmark/benchmark.h>

#include <cmath>

#include "nomasim/analysis.hpp"
#include "nomasim/config.hpp"
#include "nomasim/power.hpp"
#include "nomasim/rng.hpp"
#include "nomasim/simulate.hpp"
#include "nomasim/specfun.hpp"
#include "nomasim/tracking.hpp"

namespace {

using namespace nomasim;

channel::LinkConfig make_link(double alpha, double sigma_ob2, double rate) {
    channel::LinkConfig link;
    link.alpha = alpha;
    link.sigma_ob2 = sigma_ob2;
    link.target_rate_bpcu = rate;
    return link;
}

void bm_exp_integral_scaled(benchmark::State& state) {
    double x = -1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::exp_integral_ei_scaled(x));
        x = x < -1e3 ? -1e-6 : x * 1.7;
    }
}
BENCHMARK(bm_exp_integral_scaled);

void bm_gamma_order_prob(benchmark::State& state) {
    const int i = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(specfun::gamma_order_prob(i, i + 3));
}
BENCHMARK(bm_gamma_order_prob)->Arg(2)->Arg(40)->Arg(400);

void bm_order_error_series(benchmark::State& state) {
    const analysis::PairScenario sc(std::hypot(3.0, 3.0), std::hypot(5.0, 5.0),
                                    make_link(3.0, static_cast<double>(state.range(0)), 0.5));
    for (auto _ : state) benchmark::DoNotOptimize(analysis::decoding_error_prob_fading_free(sc));
}
BENCHMARK(bm_order_error_series)->Arg(1)->Arg(9)->Arg(64);

void bm_downlink_rate_closed_form(benchmark::State& state) {
    const analysis::PairScenario sc(std::hypot(3.0, 3.0), std::hypot(7.0, 7.0),
                                    make_link(2.0, 9.0, 0.5));
    const analysis::DownlinkPower pw(1e5, 0.8);
    for (auto _ : state) benchmark::DoNotOptimize(analysis::downlink_avg_sum_rate(sc, pw, 0.1));
}
BENCHMARK(bm_downlink_rate_closed_form);

void bm_downlink_cop_closed_form(benchmark::State& state) {
    const analysis::PairScenario sc(std::hypot(3.0, 3.0), std::hypot(7.0, 7.0),
                                    make_link(2.0, 9.0, 0.5));
    const analysis::DownlinkPower pw(1e4, 0.75);
    for (auto _ : state) benchmark::DoNotOptimize(analysis::downlink_cop(sc, pw, 0.1));
}
BENCHMARK(bm_downlink_cop_closed_form);

void bm_split_optimizer(benchmark::State& state) {
    const analysis::PairScenario sc(std::hypot(3.0, 3.0), std::hypot(7.0, 7.0),
                                    make_link(2.0, 9.0, 0.5));
    const double eps0 = sc.link().target_snr();
    for (auto _ : state) benchmark::DoNotOptimize(power::dpa_optimal_beta(sc, 1e4, eps0));
}
BENCHMARK(bm_split_optimizer);

void bm_power_control_optimizer(benchmark::State& state) {
    const analysis::PairScenario sc(std::hypot(3.0, 3.0), std::hypot(15.0, 15.0),
                                    make_link(3.5, 9.0, 0.1));
    const double eps0 = sc.link().target_snr();
    for (auto _ : state) benchmark::DoNotOptimize(power::dpc_optimal_power(sc, 1e6, 1e5, eps0));
}
BENCHMARK(bm_power_control_optimizer);

void bm_downlink_trial(benchmark::State& state) {
    const analysis::PairScenario sc(std::hypot(3.0, 3.0), std::hypot(7.0, 7.0),
                                    make_link(2.0, 9.0, 0.5));
    const analysis::DownlinkPower pw(1e5, 0.8);
    RngStream rng(1);
    for (auto _ : state) {
        const simulate::FadingDraw f{rng.exponential(1.0), rng.exponential(1.0)};
        benchmark::DoNotOptimize(simulate::downlink_trial(sc, false, pw, f));
    }
}
BENCHMARK(bm_downlink_trial);

void bm_uplink_trial(benchmark::State& state) {
    const analysis::PairScenario sc(std::hypot(3.0, 3.0), std::hypot(15.0, 15.0),
                                    make_link(3.5, 9.0, 0.1));
    const analysis::UplinkPower pw(1e8, 1e7);
    RngStream rng(2);
    for (auto _ : state) {
        const simulate::FadingDraw f{rng.exponential(1.0), rng.exponential(1.0)};
        benchmark::DoNotOptimize(simulate::uplink_trial(sc, false, pw, f));
    }
}
BENCHMARK(bm_uplink_trial);

void bm_static_run(benchmark::State& state) {
    config::ExperimentConfig cfg;
    cfg.direction = config::Direction::downlink;
    cfg.position_source = config::PositionSource::observed;
    cfg.link = make_link(2.0, 9.0, 0.5);
    cfg.beta = 0.8;
    cfg.trials = 100'000;
    cfg.seed = 3;
    for (auto _ : state) benchmark::DoNotOptimize(simulate::run_static_experiment(cfg));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(cfg.trials));
}
BENCHMARK(bm_static_run)->Unit(benchmark::kMillisecond);

void bm_filter_cycle(benchmark::State& state) {
    mobility::StateSpaceModel ssm;
    ssm.sample_interval = 0.2;
    ssm.sigma_w2 = 0.6;
    ssm.sigma_ob2 = 25.0;
    tracking::FilterState st = tracking::kf_init();
    const Eigen::Vector2d z(3.0, -4.0);
    for (auto _ : state) {
        st = tracking::kf_predict(tracking::kf_update(st, z, ssm), ssm);
        benchmark::DoNotOptimize(st);
    }
}
BENCHMARK(bm_filter_cycle);

void bm_mobile_slot(benchmark::State& state) {
    config::ExperimentConfig cfg;
    cfg.direction = config::Direction::downlink;
    cfg.position_source = config::PositionSource::filtered;
    cfg.link = make_link(3.0, 50.0, 0.5);
    cfg.beta = 0.8;
    cfg.trials = 16;
    cfg.horizon = 100;
    cfg.seed = 4;
    cfg.mobility = mobility::GaussMarkovParams{};
    for (auto _ : state) benchmark::DoNotOptimize(simulate::run_mobile_experiment(cfg));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * cfg.trials *
                            cfg.horizon);
}
BENCHMARK(bm_mobile_slot)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
