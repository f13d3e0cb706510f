#include <pilotadapt/channel.hpp>
#include <pilotadapt/random.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pilotadapt {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::vector<Tap> exponential_taps(double spacing, std::size_t n_taps, double decay) {
    std::vector<Tap> taps(n_taps);
    double total = 0.0;
    for (std::size_t k = 0; k < n_taps; ++k) {
        taps[k].delay = static_cast<double>(k) * spacing;
        taps[k].power = std::exp(-taps[k].delay / decay);
        total += taps[k].power;
    }
    for (auto& t : taps) t.power /= total;
    return taps;
}

}  // namespace

void ChannelParams::validate() const {
    if (!(f_d >= 0.0) || !(tau_rms >= 0.0)) {
        throw ConfigError("channel needs f_d >= 0 and tau_rms >= 0");
    }
    if (n_taps < 1 || n_sinusoids < 1) {
        throw ConfigError("channel needs at least one tap and one sinusoid per tap");
    }
    if (tau_rms > 0.0 && n_taps < 2) {
        throw ConfigError("a nonzero delay spread needs at least two taps");
    }
}

std::vector<Tap> exponential_pdp(double tau_rms, std::size_t n_taps) {
    if (!(tau_rms >= 0.0) || n_taps == 0) throw ConfigError("PDP needs tau_rms >= 0 and at least one tap");
    if (tau_rms == 0.0 || n_taps == 1) {
        if (tau_rms > 0.0) throw ConfigError("a nonzero delay spread needs at least two taps");
        return {Tap{0.0, 1.0}};
    }
    const double spacing = 5.0 * tau_rms / static_cast<double>(n_taps - 1);

    // rms spread grows monotonically with the decay constant; bisect in log domain.
    double lo = std::log(1e-4 * tau_rms);
    double hi = std::log(1e4 * tau_rms);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto taps = exponential_taps(spacing, n_taps, std::exp(mid));
        if (rms_delay_spread(taps) < tau_rms) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return exponential_taps(spacing, n_taps, std::exp(0.5 * (lo + hi)));
}

double rms_delay_spread(std::span<const Tap> taps) {
    double p = 0.0, m1 = 0.0, m2 = 0.0;
    for (const auto& t : taps) {
        p += t.power;
        m1 += t.power * t.delay;
        m2 += t.power * t.delay * t.delay;
    }
    if (p <= 0.0) return 0.0;
    m1 /= p;
    m2 /= p;
    return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

double jakes_correlation(double f_d, double dt) {
    return std::cyl_bessel_j(0.0, two_pi * f_d * std::abs(dt));
}

cplx pdp_frequency_correlation(double tau_rms, double df) {
    return 1.0 / cplx(1.0, two_pi * df * tau_rms);
}

ChannelRealization generate_channel(const ChannelParams& params, const GridDims& dims, std::uint64_t seed) {
    params.validate();
    dims.validate();

    ChannelRealization ch;
    ch.dims = dims;
    ch.taps = exponential_pdp(params.tau_rms, params.n_taps);
    const std::size_t n_taps = ch.taps.size();
    const std::size_t m = params.n_sinusoids;

    Rng rng(seed);
    std::uniform_real_distribution<double> angle(0.0, two_pi);

    // Tap gain processes g_k(t), unit variance before scaling by sqrt(p_k).
    std::vector<cplx> gains(n_taps * dims.n_sym, cplx{});
    ch.realized_tap_power.assign(n_taps, 0.0);
    for (std::size_t k = 0; k < n_taps; ++k) {
        const double amp = std::sqrt(ch.taps[k].power / static_cast<double>(m));
        cplx* g = gains.data() + k * dims.n_sym;
        for (std::size_t n = 0; n < m; ++n) {
            const double alpha = angle(rng);
            const double phi = angle(rng);
            const double w = two_pi * params.f_d * std::cos(alpha) * dims.t_sym;
            // exact phasor every 64 symbols, rotation in between
            const cplx step = std::polar(1.0, w);
            cplx z;
            for (std::size_t t = 0; t < dims.n_sym; ++t) {
                if (t % 64 == 0) z = std::polar(amp, phi + w * static_cast<double>(t));
                g[t] += z;
                z *= step;
            }
        }
        double acc = 0.0;
        for (std::size_t t = 0; t < dims.n_sym; ++t) acc += std::norm(g[t]);
        ch.realized_tap_power[k] = acc / static_cast<double>(dims.n_sym);
    }

    // Per-subcarrier tap phasors exp(-j 2 pi f delta_f tau_k).
    std::vector<cplx> phasor(dims.n_sub * n_taps);
    for (std::size_t f = 0; f < dims.n_sub; ++f) {
        for (std::size_t k = 0; k < n_taps; ++k) {
            phasor[f * n_taps + k] = std::polar(1.0, -two_pi * static_cast<double>(f) * dims.delta_f * ch.taps[k].delay);
        }
    }

    ch.h = GridArray<cplx>(dims.n_sub, dims.n_sym);
    for (std::size_t t = 0; t < dims.n_sym; ++t) {
        auto row = ch.h.symbol(t);
        for (std::size_t f = 0; f < dims.n_sub; ++f) {
            const cplx* ph = phasor.data() + f * n_taps;
            cplx acc{};
            for (std::size_t k = 0; k < n_taps; ++k) acc += gains[k * dims.n_sym + t] * ph[k];
            row[f] = acc;
        }
    }
    return ch;
}

double path_loss_db(double d, const PathLossParams& params, double shadow_x_db) {
    if (!(d >= params.r_min && d <= params.r_max)) {
        throw std::out_of_range("distance " + std::to_string(d) + " m outside path-loss validity range [" +
                                std::to_string(params.r_min) + ", " + std::to_string(params.r_max) + "]");
    }
    return params.a_db + 10.0 * params.n_exp * std::log10(d / params.r_min) + shadow_x_db - params.f_db;
}

LinkCondition LinkCondition::from_snr_db(double snr_db) {
    return {snr_db, std::pow(10.0, -snr_db / 10.0)};
}

double ici_power(double f_d, double delta_f, double sigma_d2) {
    if (!(delta_f > 0.0)) throw std::invalid_argument("subcarrier spacing must be positive");
    const double x = std::numbers::pi * f_d / delta_f;
    return x * x * sigma_d2 / 3.0;
}

ResourceGrid apply_channel(const ResourceGrid& grid, const ChannelRealization& ch, const LinkCondition& cond,
                           double f_d, std::uint64_t seed) {
    if (!(grid.dims == ch.dims) || grid.cells.size() != ch.h.size()) {
        throw std::invalid_argument("channel and resource grid dimensions differ");
    }
    const double ici = ici_power(f_d, grid.dims.delta_f, grid.power.sigma_d2);
    const double impairment = cond.noise_power + ici;

    ResourceGrid out = grid;
    auto y = out.cells.flat();
    const auto h = ch.h.flat();
    if (impairment <= 0.0) {
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = h[i] * y[i];
        return out;
    }
    // noise + ICI as one Gaussian draw
    Rng rng(seed);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = h[i] * y[i] + complex_normal(rng, impairment);
    return out;
}

}  // namespace pilotadapt
