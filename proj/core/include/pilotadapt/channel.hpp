#pragma once

#include <pilotadapt/grid.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace pilotadapt {

/// Tapped-delay-line parameters. Each tap carries an independent Jakes
/// process built from n_sinusoids random-angle sinusoids.
struct ChannelParams {
    double f_d = 0.0;       ///< maximum Doppler shift [Hz]
    double tau_rms = 0.0;   ///< r.m.s. delay spread [s]
    std::size_t n_taps = 24;
    std::size_t n_sinusoids = 16;

    void validate() const;
};

struct Tap {
    double delay = 0.0;  ///< [s]
    double power = 1.0;  ///< linear, taps sum to one
};

/// Normalized exponential power delay profile. Taps are uniformly spaced over
/// five r.m.s. delay spreads; the decay constant is solved so the profile's
/// r.m.s. spread equals tau_rms. tau_rms == 0 yields a single tap.
std::vector<Tap> exponential_pdp(double tau_rms, std::size_t n_taps);
double rms_delay_spread(std::span<const Tap> taps);

struct ChannelRealization {
    GridDims dims;
    GridArray<cplx> h;
    std::vector<Tap> taps;                 ///< nominal profile
    std::vector<double> realized_tap_power; ///< time-averaged |g_k|^2 over the window
};

/// J0(2 pi f_d dt).
double jakes_correlation(double f_d, double dt);

/// Frequency correlation of a continuous exponential PDP: 1 / (1 + j 2 pi df tau_rms).
cplx pdp_frequency_correlation(double tau_rms, double df);

/// h[f, t] = sum_k g_k(t) exp(-j 2 pi f delta_f tau_k). Deterministic in seed.
ChannelRealization generate_channel(const ChannelParams& params, const GridDims& dims, std::uint64_t seed);

struct PathLossParams {
    double a_db = 116.0;
    double n_exp = 1.8;
    double sigma_x_db = 3.1;
    double f_db = 2.3;
    double r_min = 1700.0;   ///< [m]
    double r_max = 19000.0;  ///< [m]
};

/// A + 10 n log10(d / r_min) + X - F. Throws std::out_of_range outside [r_min, r_max].
double path_loss_db(double d, const PathLossParams& params, double shadow_x_db);

struct LinkCondition {
    double snr_db = 0.0;
    double noise_power = 1.0;  ///< relative to unit mean RE power

    static LinkCondition from_snr_db(double snr_db);
};

/// Mobility-induced ICI power taken at its upper bound (1/3)(pi f_d / delta_f)^2 sigma_d2.
double ici_power(double f_d, double delta_f, double sigma_d2);

/// y = h x + w + i per RE, with w ~ CN(0, noise_power) and i ~ CN(0, ici_power).
ResourceGrid apply_channel(const ResourceGrid& grid, const ChannelRealization& ch, const LinkCondition& cond,
                           double f_d, std::uint64_t seed);

}  // namespace pilotadapt
