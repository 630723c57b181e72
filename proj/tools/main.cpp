#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "common.hpp"
#include "nomasim/analysis.hpp"
#include "nomasim/channel.hpp"
#include "nomasim/config.hpp"
#include "nomasim/csv.hpp"
#include "nomasim/power.hpp"
#include "nomasim/simulate.hpp"
#include "nomasim/tracking.hpp"
#include "reproduce.hpp"

namespace {

using namespace nomasim;

struct CommonArgs {
    std::string config_file;
    std::vector<std::string> sets;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("-c,--config", args.config_file, "key = value config file")
        ->check(CLI::ExistingFile);
    sub->add_option("-s,--set", args.sets, "override one config key (key=value, repeatable)");
}

config::ExperimentConfig build_config(const CommonArgs& args) {
    config::ExperimentConfig cfg;
    if (!args.config_file.empty()) config::apply_config_file(cfg, args.config_file);
    for (const auto& kv : args.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw config::ConfigError("--set expects key=value, got '" + kv + "'");
        config::apply_key_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

void print_report(const simulate::MetricsReport& rep) {
    std::cout << "trials        " << rep.trials << '\n'
              << "sum_rate      " << csv::format_double(rep.mean_sum_rate) << " +- "
              << csv::format_double(rep.sum_rate_std_error) << '\n'
              << "cop           " << csv::format_double(rep.cop) << " +- "
              << csv::format_double(rep.cop_std_error) << '\n'
              << "outage_near   " << csv::format_double(rep.outage_near) << " +- "
              << csv::format_double(rep.outage_near_std_error) << '\n'
              << "outage_far    " << csv::format_double(rep.outage_far) << " +- "
              << csv::format_double(rep.outage_far_std_error) << '\n'
              << "order_error   " << csv::format_double(rep.order_error_rate) << " +- "
              << csv::format_double(rep.order_error_std_error) << '\n'
              << "oma_share     " << csv::format_double(rep.oma_share) << '\n';
}

int cmd_analyze(const CommonArgs& args) {
    const auto cfg = build_config(args);
    cfg.validate();
    for (const auto& [key, value] : cli::analytic_metrics(cfg))
        std::cout << key << " = " << csv::format_double(value) << '\n';

    const channel::UserGeometry g1{cfg.u1_x, cfg.u1_y};
    const channel::UserGeometry g2{cfg.u2_x, cfg.u2_y};
    const analysis::PairScenario sc(std::min(g1.distance(), g2.distance()),
                                    std::max(g1.distance(), g2.distance()), cfg.link);
    if (cfg.power_scheme == config::PowerScheme::dynamic_allocation) {
        const double eps0 = cfg.link.target_snr();
        if (cfg.direction == config::Direction::downlink) {
            const auto sol = power::dpa_optimal_beta(
                sc, channel::snr_of(cfg.p_dbm, cfg.link.noise_power_dbm), eps0);
            std::cout << "beta_star = " << csv::format_double(sol.beta_star) << '\n';
        } else {
            const auto sol = power::dpc_optimal_power(
                sc, channel::snr_of(cfg.p1_dbm, cfg.link.noise_power_dbm),
                channel::snr_of(cfg.p2_dbm, cfg.link.noise_power_dbm), eps0);
            std::cout << "rho1_star = " << csv::format_double(sol.rho1_star) << '\n'
                      << "rho2_star = " << csv::format_double(sol.rho2_star) << '\n';
        }
    }
    return 0;
}

int cmd_simulate(const CommonArgs& args, bool mobile, const std::string& output,
                 bool per_slot) {
    auto cfg = build_config(args);
    std::vector<csv::SweepRow> rows;
    if (mobile) {
        const auto slots = simulate::run_mobile_experiment(cfg);
        const auto rep = simulate::summarize_slots(slots, cli::kWarmupSlots);
        print_report(rep);
        if (per_slot) {
            for (std::size_t k = 0; k < slots.size(); ++k)
                cli::append_metric_rows(rows, "slot", static_cast<double>(k), slots[k], {},
                                        cfg.seed);
        } else {
            cli::append_metric_rows(rows, "point", 0.0, rep, {}, cfg.seed);
        }
    } else {
        const auto rep = simulate::run_static_experiment(cfg);
        print_report(rep);
        const auto ana = cli::analytic_metrics(cfg);
        for (const auto& [key, value] : ana)
            std::cout << "analytic " << key << " = " << csv::format_double(value) << '\n';
        cli::append_metric_rows(rows, "point", 0.0, rep, ana, cfg.seed);
    }
    if (!output.empty()) {
        const auto path = cli::resolve_output_path(output, "simulate.csv");
        cli::write_rows_or_die(path, rows);
        std::cout << "wrote " << path.string() << '\n';
    }
    return 0;
}

// Keys that must be rendered as integers when a numeric grid is swept.
bool integer_key(const std::string& key) {
    return key == "trials" || key == "seed" || key == "threads" || key == "horizon" ||
           key == "num_users" || key == "movement_interval" || key == "max_pause";
}

int cmd_sweep(const CommonArgs& args, const std::string& var, std::vector<double> values,
              double from, double to, int points, bool mobile, const std::string& output) {
    if (values.empty()) {
        if (points < 2) throw config::ConfigError("--points must be at least 2");
        for (int i = 0; i < points; ++i)
            values.push_back(from + (to - from) * static_cast<double>(i) /
                                        static_cast<double>(points - 1));
    }

    std::vector<csv::SweepRow> rows;
    for (double v : values) {
        auto cfg = build_config(args);
        const std::string rendered =
            integer_key(var) ? std::to_string(std::llround(v)) : csv::format_double(v);
        config::apply_key_value(cfg, var, rendered);

        simulate::MetricsReport rep;
        std::map<std::string, double> ana;
        if (mobile) {
            rep = simulate::summarize_slots(simulate::run_mobile_experiment(cfg),
                                            cli::kWarmupSlots);
        } else {
            rep = simulate::run_static_experiment(cfg);
            ana = cli::analytic_metrics(cfg);
        }
        cli::append_metric_rows(rows, var, v, rep, ana, cfg.seed);
        std::cout << var << " = " << rendered << ": sum_rate "
                  << csv::format_double(rep.mean_sum_rate) << ", cop "
                  << csv::format_double(rep.cop) << ", order_error "
                  << csv::format_double(rep.order_error_rate) << '\n';
    }

    const auto path = cli::resolve_output_path(output, "sweep.csv");
    cli::write_rows_or_die(path, rows);
    std::cout << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
    return 0;
}

int cmd_track(const CommonArgs& args, int trajectories, const std::vector<double>& grid,
              const std::string& dump_prefix) {
    auto cfg = build_config(args);
    cfg.validate();
    const double resolved = config::resolved_filter_sigma_w2(cfg);

    if (!grid.empty()) {
        for (double w2 : grid) {
            const auto stats =
                cli::tracking_rmse(cfg.mobility, cfg.link.sigma_ob2, w2, cfg.feedback_rate,
                                   trajectories, cfg.horizon, cfg.sample_interval, cfg.seed);
            std::cout << "sigma_w2 " << csv::format_double(w2) << ": raw "
                      << csv::format_double(stats.raw_rmse) << ", filtered "
                      << csv::format_double(stats.filtered_rmse) << '\n';
        }
        return 0;
    }

    const auto stats =
        cli::tracking_rmse(cfg.mobility, cfg.link.sigma_ob2, resolved, cfg.feedback_rate,
                           trajectories, cfg.horizon, cfg.sample_interval, cfg.seed);
    std::cout << "sigma_w2      " << csv::format_double(resolved) << '\n'
              << "raw rmse      " << csv::format_double(stats.raw_rmse) << '\n'
              << "filtered rmse " << csv::format_double(stats.filtered_rmse) << '\n';

    if (!dump_prefix.empty()) {
        RngStream deploy = RngStream::substream(cfg.seed, 0, 0);
        const auto start =
            channel::deploy_users(1, mobility::disc_radius_of(cfg.mobility),
                                  cfg.deploy_min_distance, deploy)[0];
        RngStream traj_rng = RngStream::substream(cfg.seed, 0, 64);
        const auto traj = mobility::trajectory(cfg.mobility, start, cfg.horizon,
                                               cfg.sample_interval, traj_rng);

        RngStream obs_rng = RngStream::substream(cfg.seed, 0, 128);
        const double sigma = std::sqrt(cfg.link.sigma_ob2);
        std::vector<Eigen::Vector2d> meas;
        meas.reserve(traj.size());
        for (const auto& st : traj)
            meas.emplace_back(st.x + sigma * obs_rng.normal(), st.y + sigma * obs_rng.normal());

        mobility::StateSpaceModel ssm;
        ssm.sample_interval = cfg.sample_interval;
        ssm.sigma_w2 = resolved;
        ssm.sigma_ob2 = cfg.link.sigma_ob2;
        const auto sched = cfg.feedback_rate >= 1.0
                               ? tracking::FeedbackSchedule::always()
                               : tracking::FeedbackSchedule::rate(cfg.feedback_rate);
        const auto track = tracking::track_trajectory(meas, ssm, sched);

        const auto tpath = cli::resolve_output_path(dump_prefix + "_trajectory.csv", "");
        const auto epath = cli::resolve_output_path(dump_prefix + "_estimates.csv", "");
        std::ofstream tout(tpath, std::ios::binary);
        std::ofstream eout(epath, std::ios::binary);
        if (!tout || !eout) throw config::ConfigError("cannot open dump files for writing");
        csv::write_trajectory_csv(tout, 0, traj, cfg.sample_interval);
        csv::write_estimate_csv(eout, 0, track);
        std::cout << "wrote " << tpath.string() << " and " << epath.string() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"position-information NOMA simulator"};
    app.require_subcommand(1);

    CommonArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "print closed-form metrics for a config");
    add_common(analyze, analyze_args);

    CommonArgs sim_args;
    bool sim_mobile = false, sim_per_slot = false;
    std::string sim_output;
    std::uint64_t sim_seed = 0;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo run for one config");
    add_common(sim, sim_args);
    sim->add_option("--seed", sim_seed, "run seed")->required();
    sim->add_flag("--mobile", sim_mobile, "trajectory-driven run instead of fixed positions");
    sim->add_flag("--per-slot", sim_per_slot, "emit one CSV row group per slot (mobile only)");
    sim->add_option("-o,--output", sim_output, "CSV destination");

    CommonArgs sweep_args;
    std::string sweep_var, sweep_output = "sweep.csv";
    std::vector<double> sweep_values;
    double sweep_from = 0.0, sweep_to = 1.0;
    int sweep_points = 0;
    bool sweep_mobile = false;
    std::uint64_t sweep_seed = 0;
    auto* sweep = app.add_subcommand("sweep", "run a config over a grid of one key");
    add_common(sweep, sweep_args);
    sweep->add_option("--var", sweep_var, "config key to sweep")->required();
    sweep->add_option("--seed", sweep_seed, "run seed")->required();
    auto* values_opt = sweep->add_option("--values", sweep_values, "explicit grid values");
    auto* from_opt = sweep->add_option("--from", sweep_from, "grid start");
    sweep->add_option("--to", sweep_to, "grid end")->needs(from_opt);
    sweep->add_option("--points", sweep_points, "grid size")->needs(from_opt);
    from_opt->excludes(values_opt);
    sweep->add_flag("--mobile", sweep_mobile, "trajectory-driven runs");
    sweep->add_option("-o,--output", sweep_output, "CSV destination");

    CommonArgs track_args;
    int track_traj = 200;
    std::vector<double> track_grid;
    std::string track_dump;
    auto* track = app.add_subcommand("track", "position-tracking error for a mobility config");
    add_common(track, track_args);
    track->add_option("--trajectories", track_traj, "number of trajectories")
        ->check(CLI::PositiveNumber);
    track->add_option("--sigma-w2-grid", track_grid,
                      "report errors for each process-noise intensity");
    track->add_option("--dump-prefix", track_dump,
                      "write first trajectory and estimates as CSV with this prefix");

    cli::ReproduceOptions rep_opts;
    auto* rep = app.add_subcommand("reproduce", "rebuild a published figure or table");
    rep->add_option("figure", rep_opts.figure, "figure id")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9",
                               "table3"}));
    rep->add_option("-o,--output", rep_opts.output, "CSV destination");
    rep->add_option("--seed", rep_opts.seed, "run seed");
    rep->add_option("--trials", rep_opts.trials, "override static trials per point");
    rep->add_option("--trajectories", rep_opts.trajectories, "override mobile trajectories");
    rep->add_option("--threads", rep_opts.threads, "worker threads")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(analyze_args);
        if (sim->parsed()) {
            sim_args.sets.push_back("seed=" + std::to_string(sim_seed));
            return cmd_simulate(sim_args, sim_mobile, sim_output, sim_per_slot);
        }
        if (sweep->parsed()) {
            sweep_args.sets.push_back("seed=" + std::to_string(sweep_seed));
            return cmd_sweep(sweep_args, sweep_var, sweep_values, sweep_from, sweep_to,
                             sweep_points, sweep_mobile, sweep_output);
        }
        if (track->parsed()) return cmd_track(track_args, track_traj, track_grid, track_dump);
        if (rep->parsed()) return cli::cmd_reproduce(rep_opts);
    } catch (const config::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
