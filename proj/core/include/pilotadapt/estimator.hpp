#pragma once

#include <pilotadapt/channel.hpp>
#include <pilotadapt/grid.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace pilotadapt {

enum class CorrelationDomain { time, frequency };

/// Correlation values at lags 0..max_lag(). Negative lags are the conjugates.
struct CorrelationProfile {
    std::vector<cplx> lags;
    CorrelationDomain domain = CorrelationDomain::time;
    double lag_step = 0.0;  ///< seconds (time) or Hz (frequency)

    std::size_t max_lag() const noexcept { return lags.empty() ? 0 : lags.size() - 1; }
};

struct ChannelEstimate {
    GridDims dims;
    GridArray<cplx> h_hat;
};

/// LS estimate y_p / x_p at each sent pilot, read from the received grid.
std::vector<PilotSample> ls_at_pilots(const ResourceGrid& received, std::span<const PilotSample> sent);
/// Same, with received values already gathered in the order of `sent`.
std::vector<PilotSample> ls_at_pilots(std::span<const PilotSample> received, std::span<const PilotSample> sent);

/// Linear interpolation along frequency on every pilot-bearing symbol, then
/// along time on every subcarrier. Cells outside the pilot hull take the
/// nearest edge value; pilot cells keep their LS value.
ChannelEstimate interpolate_2d(std::span<const PilotSample> pilot_estimates, const GridDims& dims);

struct CorrelationEstimates {
    CorrelationProfile time;
    CorrelationProfile frequency;
};

/// Averaged diagonals of H^H H (time) and H H^H (frequency), each normalized
/// by its lag-0 value. Profiles hold lags 0..n_dt and 0..n_df.
CorrelationEstimates estimate_correlations(const ChannelEstimate& est, std::size_t n_dt, std::size_t n_df);

/// Mean |h_hat - h|^2 over data cells (all cells if the mask has no data cells).
double data_mse(const GridArray<cplx>& h_hat, const GridArray<cplx>& h, const PilotMask& mask);

struct MseOracleSettings {
    GridDims dims{72, 300, 15e3, 71.875e-6};
    std::size_t trials = 4;
    std::size_t n_taps = 24;
    std::size_t n_sinusoids = 16;
};

/// Monte Carlo channel-estimation MSE of the LS + interpolate_2d chain on data
/// cells, averaged over `trials` channel draws. Deterministic in seed; noise
/// draws do not depend on pilot_snr, so calls sharing a seed are paired.
double empirical_mse(const PilotConfig& cfg, double f_d, double tau_rms, double pilot_snr, std::size_t trials,
                     std::uint64_t seed, const MseOracleSettings& settings = {});

/// Same estimator over caller-supplied channel draws (trial i uses channels[i]).
double empirical_mse(const PilotConfig& cfg, std::span<const ChannelRealization> channels, double pilot_snr,
                     std::uint64_t seed);

/// Channel draws used by empirical_mse for the given seed.
std::vector<ChannelRealization> oracle_channels(double f_d, double tau_rms, std::size_t trials, std::uint64_t seed,
                                                const MseOracleSettings& settings = {});

}  // namespace pilotadapt
