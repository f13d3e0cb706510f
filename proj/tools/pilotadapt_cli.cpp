// pilotadapt: adaptive pilot pattern simulation for UAV air-to-ground links.
//
//   pilotadapt run [--scenario default|<file.yaml>] [--time-scale f] [--seeds n]
//                  [--base-seed u64] [--feedback explicit|implicit] [--out dir]
//                  [--mse-cache file]
//   pilotadapt codebook
//   pilotadapt gains --trace <trace.csv> [--out gains.csv]

#include <pilotadapt/codebook.hpp>
#include <pilotadapt/metrics.hpp>
#include <pilotadapt/mse_cache.hpp>
#include <pilotadapt/report_io.hpp>
#include <pilotadapt/scenario.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <array>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace pilotadapt;

namespace {

constexpr std::array<double, 3> kPercentiles{10.0, 50.0, 90.0};

struct RunOptions {
    std::string scenario = "default";
    double time_scale = 1.0;
    std::size_t seeds = 1;
    std::uint64_t base_seed = 1;
    std::string feedback = "explicit";
    fs::path out = "results";
    fs::path mse_cache;
    bool quiet = false;
};

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
}

void print_gains(std::span<const GainRow> rows) {
    fmt::print("{:<10} {:>10} {:>10} {:>10}\n", "config", "p10 [%]", "p50 [%]", "p90 [%]");
    for (const auto& r : rows) {
        fmt::print("{:<10} {:>10.1f} {:>10.1f} {:>10.1f}\n", r.config, r.gains_percent[0], r.gains_percent[1],
                   r.gains_percent[2]);
    }
}

int cmd_run(const RunOptions& opt) {
    const auto stages = opt.scenario == "default" ? default_scenario() : load_scenario(opt.scenario);
    SimParams sim;
    sim.receiver.mode = parse_feedback_mode(opt.feedback);
    const auto fixed = default_fixed_configs();
    const auto cb = build_default_codebook(sim.dims.t_sym, sim.dims.delta_f, sim.receiver.n_dt, sim.receiver.n_df);

    MseCache cache;
    if (!opt.mse_cache.empty() && fs::exists(opt.mse_cache)) {
        std::ifstream in(opt.mse_cache);
        const auto n = cache.load(in);
        if (!opt.quiet) fmt::print(std::cerr, "loaded {} MSE cache entries from {}\n", n, opt.mse_cache.string());
    }

    fs::create_directories(opt.out);
    auto feedback_log = open_out(opt.out / "feedback.log");

    const auto n_epochs = epoch_count(stages, sim.dims, opt.time_scale);
    std::vector<RunReport> runs;
    for (std::size_t r = 0; r < opt.seeds; ++r) {
        const std::uint64_t seed = opt.base_seed + r;
        const auto t0 = std::chrono::steady_clock::now();
        feedback_log << "# seed " << seed << '\n';
        runs.push_back(run_scenario(stages, fixed, sim, opt.time_scale, seed, cache,
                                    [&](const EpochRecord& rec, const FeedbackMessage& msg) {
                                        feedback_log << format_trace(msg) << '\n';
                                        if (!opt.quiet && (rec.epoch + 1) % 50 == 0) {
                                            fmt::print(std::cerr, "  seed {}: epoch {}/{}\n", seed, rec.epoch + 1,
                                                       n_epochs);
                                        }
                                    }));
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        if (!opt.quiet) {
            fmt::print(std::cerr, "seed {} done: {} epochs in {:.1f} s (MSE cache {} entries)\n", seed,
                       runs.back().epochs.size(), dt.count(), cache.size());
        }
    }
    const auto report = merge_reports(runs);
    if (report.epochs.empty()) {
        fmt::print(std::cerr, "time scale {} yields no complete epoch\n", opt.time_scale);
        return 1;
    }

    {
        auto f = open_out(opt.out / "trace.csv");
        write_trace_csv(f, report);
    }
    {
        auto f = open_out(opt.out / "cdf.csv");
        write_cdf_csv(f, report);
    }
    const auto gains = percentile_gains(report, kPercentiles);
    {
        auto f = open_out(opt.out / "gains.csv");
        write_gains_csv(f, gains);
    }
    {
        auto f = open_out(opt.out / "summary.txt");
        write_summary(f, report, sim.sets, cb, sim.dims, runs.size());
    }
    if (!opt.mse_cache.empty()) {
        auto f = open_out(opt.mse_cache);
        cache.save(f);
    }

    write_summary(std::cout, report, sim.sets, cb, sim.dims, runs.size());
    fmt::print("\ninstantaneous rate gain of adaptive pilots\n");
    print_gains(gains);
    return 0;
}

int cmd_codebook() {
    const GridDims dims;
    write_table(std::cout, build_default_codebook(dims.t_sym, dims.delta_f));
    return 0;
}

int cmd_gains(const fs::path& trace, const fs::path& out) {
    std::ifstream in(trace);
    if (!in) throw std::runtime_error("cannot open " + trace.string());
    const auto report = read_trace_csv(in);
    const auto gains = percentile_gains(report, kPercentiles);
    print_gains(gains);
    if (!out.empty()) {
        auto f = open_out(out);
        write_gains_csv(f, gains);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rate-maximizing adaptive OFDM pilot patterns for UAV air-to-ground links"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "simulate the flight scenario, adaptive vs fixed pilots");
    run_cmd->add_option("--scenario", run.scenario, "'default' or a YAML scenario file")->capture_default_str();
    run_cmd->add_option("--time-scale", run.time_scale, "fraction of full stage durations, in (0, 1]")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    run_cmd->add_option("--seeds", run.seeds, "number of independent runs")->capture_default_str()->check(
        CLI::PositiveNumber);
    run_cmd->add_option("--base-seed", run.base_seed, "seed of the first run; run r uses base + r")
        ->capture_default_str();
    run_cmd->add_option("--feedback", run.feedback, "feedback mode")
        ->capture_default_str()
        ->check(CLI::IsMember({"explicit", "implicit"}));
    run_cmd->add_option("--out", run.out, "output directory")->capture_default_str();
    run_cmd->add_option("--mse-cache", run.mse_cache, "MSE cache file, loaded if present and saved after the run");
    run_cmd->add_flag("--quiet", run.quiet, "no progress output");

    app.add_subcommand("codebook", "print the channel statistics codebook");

    fs::path trace;
    fs::path gains_out;
    auto* gains_cmd = app.add_subcommand("gains", "recompute percentile gains from a trace");
    gains_cmd->add_option("--trace", trace, "trace.csv written by 'run'")->required();
    gains_cmd->add_option("--out", gains_out, "write gains.csv here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return cmd_run(run);
        if (app.got_subcommand("codebook")) return cmd_codebook();
        if (*gains_cmd) return cmd_gains(trace, gains_out);
    } catch (const std::exception& e) {
        fmt::print(std::cerr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}
