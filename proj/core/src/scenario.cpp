#include <pilotadapt/random.hpp>
#include <pilotadapt/scenario.hpp>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pilotadapt {

namespace {

enum StreamTag : std::uint64_t { tag_channel = 1, tag_noise, tag_data, tag_shadow, tag_tau };

double lerp(double a, double b, double x) { return a + (b - a) * x; }

TauProfile parse_tau(const YAML::Node& node) {
    if (!node) throw std::invalid_argument("stage is missing tau_rms_ns");
    if (node.IsScalar()) return TauProfile::constant(node.as<double>() * 1e-9);
    if (node.IsMap()) {
        const double lo = node["min"].as<double>();
        const double hi = node["max"].as<double>();
        if (!(lo <= hi)) throw std::invalid_argument("tau_rms_ns: min must not exceed max");
        return TauProfile::uniform(lo * 1e-9, hi * 1e-9);
    }
    throw std::invalid_argument("tau_rms_ns must be a number or a {min, max} map");
}

template <typename T>
T required(const YAML::Node& node, const char* key) {
    if (!node[key]) throw std::invalid_argument(fmt::format("stage is missing '{}'", key));
    return node[key].as<T>();
}

}  // namespace

void ScenarioStage::validate(const PathLossParams& pl) const {
    if (!(duration_s > 0.0)) throw ConfigError(fmt::format("stage '{}': duration must be positive", name));
    if (v_start_kmh < 0.0 || v_end_kmh < 0.0) {
        throw ConfigError(fmt::format("stage '{}': velocities must be non-negative", name));
    }
    if (tau.lo < 0.0 || tau.hi < tau.lo) throw ConfigError(fmt::format("stage '{}': bad delay-spread range", name));
    for (double d : {d_start_m, d_end_m}) {
        if (d < pl.r_min || d > pl.r_max) {
            throw ConfigError(fmt::format("stage '{}': distance {} m outside [{}, {}]", name, d, pl.r_min, pl.r_max));
        }
    }
}

std::vector<ScenarioStage> default_scenario() {
    // approach flight: 17 km -> 1.7 km spread evenly over the three stages
    return {
        {"hilly", 120.0, 300.0, 200.0, TauProfile::constant(1000e-9), 17000.0, 11900.0},
        {"suburban", 120.0, 200.0, 100.0, TauProfile::uniform(50e-9, 500e-9), 11900.0, 6800.0},
        {"urban", 120.0, 100.0, 50.0, TauProfile::constant(1440e-9), 6800.0, 1700.0},
    };
}

std::vector<ScenarioStage> parse_scenario(std::string_view yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception& e) {
        throw std::invalid_argument(std::string("scenario: ") + e.what());
    }
    const auto stages = root["stages"];
    if (!stages || !stages.IsSequence() || stages.size() == 0) {
        throw std::invalid_argument("scenario needs a nonempty 'stages' list");
    }
    std::vector<ScenarioStage> out;
    try {
        for (std::size_t i = 0; i < stages.size(); ++i) {
            const auto& n = stages[i];
            ScenarioStage s;
            s.name = n["name"] ? n["name"].as<std::string>() : fmt::format("stage{}", i + 1);
            s.duration_s = required<double>(n, "duration_s");
            s.v_start_kmh = required<double>(n, "v_start_kmh");
            s.v_end_kmh = n["v_end_kmh"] ? n["v_end_kmh"].as<double>() : s.v_start_kmh;
            s.tau = parse_tau(n["tau_rms_ns"]);
            s.d_start_m = required<double>(n, "d_start_m");
            s.d_end_m = n["d_end_m"] ? n["d_end_m"].as<double>() : s.d_start_m;
            out.push_back(std::move(s));
        }
    } catch (const YAML::Exception& e) {
        throw std::invalid_argument(std::string("scenario: ") + e.what());
    }
    return out;
}

std::vector<ScenarioStage> load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

double doppler_hz(double v_kmh, double carrier_hz) { return v_kmh / 3.6 * carrier_hz / speed_of_light; }

double noise_power_dbm(const SimParams& sim) {
    return sim.noise_psd_dbm_hz + 10.0 * std::log10(static_cast<double>(sim.dims.n_sub) * sim.dims.delta_f);
}

double link_snr_db(double path_loss_db, const SimParams& sim) {
    return sim.tx_power_dbm - path_loss_db - noise_power_dbm(sim);
}

double shadowing_db(std::uint64_t seed, std::size_t interval, double sigma_db) {
    Rng rng(derive_seed(seed, {tag_shadow, interval}));
    std::normal_distribution<double> n(0.0, sigma_db);
    return n(rng);
}

std::size_t epoch_count(std::span<const ScenarioStage> stages, const GridDims& dims, double time_scale) {
    double total = 0.0;
    for (const auto& s : stages) total += s.duration_s * time_scale;
    return static_cast<std::size_t>(std::floor(total / dims.window_seconds()));
}

std::vector<PilotConfig> default_fixed_configs() {
    std::vector<PilotConfig> out;
    for (auto [a, b] : {std::pair{2, 2}, {4, 2}, {6, 4}, {6, 6}, {8, 8}}) out.push_back(PilotConfig::from_db(-3.0, a, b));
    return out;
}

std::string fixed_config_name(const PilotConfig& cfg) {
    const bool base_power = std::abs(cfg.rho_db() + 3.0) < 1e-9;
    auto name = fmt::format("V{}{}", cfg.dpf, cfg.dpt);
    if (!base_power) name += fmt::format("_{:g}dB", std::round(cfg.rho_db() * 100.0) / 100.0);
    return name;
}

RunReport run_scenario(std::span<const ScenarioStage> stages, std::span<const PilotConfig> fixed_configs,
                       const SimParams& sim, double time_scale, std::uint64_t seed, MseCache& cache,
                       const EpochCallback& on_epoch) {
    if (!(time_scale > 0.0 && time_scale <= 1.0)) {
        throw std::invalid_argument(fmt::format("time scale must be in (0, 1], got {}", time_scale));
    }
    if (stages.empty()) throw std::invalid_argument("scenario has no stages");
    for (const auto& s : stages) s.validate(sim.path_loss);
    for (const auto& c : fixed_configs) c.validate();
    sim.sets.validate();

    const auto& dims = sim.dims;
    const Codebook cb = build_default_codebook(dims.t_sym, dims.delta_f, sim.receiver.n_dt, sim.receiver.n_df);
    const MseProvider provider = [&cache](const PilotConfig& c, const ChannelStatistics& s, double snr) {
        return cache(c, s, snr);
    };

    RunReport report;
    report.fixed.assign(fixed_configs.begin(), fixed_configs.end());
    for (const auto& c : fixed_configs) report.fixed_names.push_back(fixed_config_name(c));
    report.mode = sim.receiver.mode;
    report.feedback_bits = sim.receiver.mode == FeedbackMode::explicit_config ? feedback_bits_explicit(sim.sets)
                                                                              : feedback_bits_implicit(cb);
    report.feedback_bps = report.feedback_bits / dims.window_seconds();

    std::vector<double> stage_start;
    double acc = 0.0;
    for (const auto& s : stages) {
        stage_start.push_back(acc);
        acc += s.duration_s * time_scale;
    }
    const double stationarity = sim.stationarity_s * time_scale;
    const std::size_t n_epochs = epoch_count(stages, dims, time_scale);

    EpochState state = initial_state(sim.bootstrap);

    for (std::size_t k = 0; k < n_epochs; ++k) {
        EpochRecord rec;
        rec.epoch = k;
        rec.t_sec = static_cast<double>(k) * dims.window_seconds();

        std::size_t si = 0;
        while (si + 1 < stages.size() && rec.t_sec >= stage_start[si + 1]) ++si;
        const auto& stage = stages[si];
        const double frac = std::clamp((rec.t_sec - stage_start[si]) / (stage.duration_s * time_scale), 0.0, 1.0);
        const auto interval = static_cast<std::size_t>(std::floor(rec.t_sec / stationarity));

        rec.stage = si;
        rec.f_d_hz = doppler_hz(lerp(stage.v_start_kmh, stage.v_end_kmh, frac), sim.carrier_hz);
        if (stage.tau.kind == TauProfile::Kind::uniform) {
            Rng rng(derive_seed(seed, {tag_tau, interval}));
            rec.tau_rms_s = std::uniform_real_distribution<double>(stage.tau.lo, stage.tau.hi)(rng);
        } else {
            rec.tau_rms_s = stage.tau.lo;
        }
        rec.distance_m = std::clamp(lerp(stage.d_start_m, stage.d_end_m, frac), sim.path_loss.r_min,
                                    sim.path_loss.r_max);
        rec.shadow_db = shadowing_db(seed, interval, sim.path_loss.sigma_x_db);
        rec.snr_db = link_snr_db(path_loss_db(rec.distance_m, sim.path_loss, rec.shadow_db), sim);
        const auto cond = LinkCondition::from_snr_db(rec.snr_db);

        const auto channel = generate_channel({rec.f_d_hz, rec.tau_rms_s, sim.n_taps, sim.n_sinusoids}, dims,
                                              derive_seed(seed, {tag_channel, k}));
        const auto data_seed = derive_seed(seed, {tag_data, k});
        const auto noise_seed = derive_seed(seed, {tag_noise, k});

        // every scheme sees the same channel, data and noise streams
        auto transmit = [&](const PilotConfig& cfg, double& mse) {
            const auto sent = known_pilots(cfg, dims);
            const auto data = qpsk_symbols(dims.size() - sent.size(), data_seed);
            const auto grid = build_grid(cfg, dims, data, unit_pilot_symbols(sent.size()));
            auto rx = apply_channel(grid, channel, cond, rec.f_d_hz, noise_seed);
            const auto est = interpolate_2d(ls_at_pilots(rx, sent), dims);
            mse = data_mse(est.h_hat, channel.h, grid.pilot_mask);
            return rx;
        };

        rec.active = state.active;
        const auto rx = transmit(state.active, rec.mse_adaptive);
        rec.rate_adaptive = rate_objective(state.active, dims, cond, rec.f_d_hz, rec.mse_adaptive);
        for (const auto& cfg : fixed_configs) {
            double mse = 0.0;
            transmit(cfg, mse);
            rec.rate_fixed.push_back(rate_objective(cfg, dims, cond, rec.f_d_hz, mse));
        }

        auto rx_out = receiver_epoch(rx, state, cb, sim.sets, cond, sim.receiver, provider);
        rec.decided = rx_out.decision.config;
        rec.matched = rx_out.matched.indices;
        const auto next = transmitter_apply(rx_out.message, rx_out.state, sim.sets, cb, cond, dims, provider);
        state = advance(std::move(rx_out.state), next);

        if (on_epoch) on_epoch(rec, rx_out.message);
        report.epochs.push_back(std::move(rec));
    }
    return report;
}

RunReport merge_reports(std::span<const RunReport> runs) {
    if (runs.empty()) return {};
    RunReport out;
    out.fixed = runs.front().fixed;
    out.fixed_names = runs.front().fixed_names;
    out.mode = runs.front().mode;
    out.feedback_bits = runs.front().feedback_bits;
    out.feedback_bps = runs.front().feedback_bps;
    for (const auto& r : runs) {
        if (r.fixed_names != out.fixed_names) throw std::invalid_argument("cannot merge runs with different fixed configs");
        for (auto rec : r.epochs) {
            rec.epoch = out.epochs.size();
            out.epochs.push_back(std::move(rec));
        }
    }
    return out;
}

}  // namespace pilotadapt
