#pragma once

#include <pilotadapt/channel.hpp>
#include <pilotadapt/link.hpp>
#include <pilotadapt/mse_cache.hpp>
#include <pilotadapt/optimizer.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pilotadapt {

inline constexpr double speed_of_light = 299792458.0;

/// Delay-spread trajectory within a stage: a constant, or a fresh uniform draw
/// in [lo, hi] per stationarity interval. Values in seconds.
struct TauProfile {
    enum class Kind { constant, uniform };
    Kind kind = Kind::constant;
    double lo = 0.0;
    double hi = 0.0;

    static TauProfile constant(double tau) { return {Kind::constant, tau, tau}; }
    static TauProfile uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }
};

struct ScenarioStage {
    std::string name;
    double duration_s = 120.0;
    double v_start_kmh = 0.0;
    double v_end_kmh = 0.0;
    TauProfile tau;
    double d_start_m = 0.0;
    double d_end_m = 0.0;

    void validate(const PathLossParams& pl) const;
};

/// Hilly (300 -> 200 km/h, tau 1 us), suburban (200 -> 100 km/h, tau uniform
/// 50..500 ns), urban (100 -> 50 km/h, tau 1440 ns); two minutes each; ground
/// distance ramps 17 km -> 1.7 km across the whole flight.
std::vector<ScenarioStage> default_scenario();

/// YAML scenario description; see docs/scenario-format.md.
std::vector<ScenarioStage> parse_scenario(std::string_view yaml_text);
std::vector<ScenarioStage> load_scenario(const std::filesystem::path& path);

double doppler_hz(double v_kmh, double carrier_hz);

struct SimParams {
    GridDims dims;
    double carrier_hz = 5e9;
    double tx_power_dbm = 37.5;
    double noise_psd_dbm_hz = -174.0;
    PathLossParams path_loss;
    double stationarity_s = 0.45;  ///< full-scale; multiplied by time_scale
    FeasibleSets sets = FeasibleSets::defaults();
    ReceiverSettings receiver;
    std::size_t n_taps = 24;
    std::size_t n_sinusoids = 16;
    PilotConfig bootstrap = bootstrap_config();
};

/// Noise power over the occupied band, n_sub * delta_f.
double noise_power_dbm(const SimParams& sim);
double link_snr_db(double path_loss_db, const SimParams& sim);

/// Log-normal shadowing draw for one stationarity interval.
double shadowing_db(std::uint64_t seed, std::size_t interval, double sigma_db);

/// Number of whole epochs (n_sym symbols each) that fit in the scaled flight.
std::size_t epoch_count(std::span<const ScenarioStage> stages, const GridDims& dims, double time_scale);

/// V_{a,b} = {-3 dB, a, b} for (a, b) in (2,2), (4,2), (6,4), (6,6), (8,8).
std::vector<PilotConfig> default_fixed_configs();
/// "V22" style name; used as the trace column suffix.
std::string fixed_config_name(const PilotConfig& cfg);

struct EpochRecord {
    std::size_t epoch = 0;
    double t_sec = 0.0;
    std::size_t stage = 0;
    double f_d_hz = 0.0;
    double tau_rms_s = 0.0;
    double distance_m = 0.0;
    double shadow_db = 0.0;
    double snr_db = 0.0;
    PilotConfig active;   ///< config in force this epoch (decided during the previous one)
    PilotConfig decided;  ///< V_o computed from this epoch's window
    CodebookIndices matched;
    double mse_adaptive = 0.0;
    double rate_adaptive = 0.0;
    std::vector<double> rate_fixed;
};

struct RunReport {
    std::vector<PilotConfig> fixed;
    std::vector<std::string> fixed_names;
    std::vector<EpochRecord> epochs;
    FeedbackMode mode = FeedbackMode::explicit_config;
    int feedback_bits = 0;
    double feedback_bps = 0.0;
};

using EpochCallback = std::function<void(const EpochRecord&, const FeedbackMessage&)>;

/// Runs the adaptive link and every fixed config over the same per-epoch
/// channel realization. time_scale in (0, 1] shrinks stage durations and the
/// stationarity interval; the epoch length is never scaled.
RunReport run_scenario(std::span<const ScenarioStage> stages, std::span<const PilotConfig> fixed_configs,
                       const SimParams& sim, double time_scale, std::uint64_t seed, MseCache& cache,
                       const EpochCallback& on_epoch = {});

/// Concatenates runs with consecutive epoch numbering.
RunReport merge_reports(std::span<const RunReport> runs);

}  // namespace pilotadapt
