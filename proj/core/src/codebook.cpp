#include <pilotadapt/codebook.hpp>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace pilotadapt {

std::vector<DopplerClass> default_doppler_classes() {
    return {
        {"Almost stationary", 4.6},
        {"Low speed (taxiing)", 70.0},
        {"High speed (taxiing)", 250.0},
        {"Takeoff/Landing", 550.0},
        {"Medium speed (airborne)", 750.0},
        {"High speed (airborne)", 1150.0},
    };
}

// tau_rms values are in nanoseconds
std::vector<DelaySpreadClass> default_delay_spread_classes() {
    return {
        {"Low (near-LoS)", 221.5e-9},
        {"Medium (suburban A2G)", 476.4e-9},
        {"High (near-urban A2G)", 791.2e-9},
        {"Very high (urban/hilly A2G)", 1440e-9},
    };
}

Codebook build_codebook(double t_sym, double delta_f, std::size_t n_dt, std::size_t n_df,
                        std::span<const DopplerClass> doppler, std::span<const DelaySpreadClass> delay) {
    if (!(t_sym > 0.0) || !(delta_f > 0.0) || n_dt < 1 || n_df < 1) {
        throw ConfigError("codebook needs positive lag steps and at least one lag per domain");
    }
    if (doppler.empty() || delay.empty()) throw ConfigError("codebook needs at least one codeword per domain");

    Codebook cb;
    for (const auto& c : doppler) {
        CorrelationProfile p{std::vector<cplx>(n_dt + 1), CorrelationDomain::time, t_sym};
        for (std::size_t i = 0; i <= n_dt; ++i) {
            p.lags[i] = jakes_correlation(c.f_d, static_cast<double>(i) * t_sym);
        }
        cb.temporal.push_back({std::move(p), c.label, c.f_d});
    }
    for (const auto& c : delay) {
        CorrelationProfile p{std::vector<cplx>(n_df + 1), CorrelationDomain::frequency, delta_f};
        for (std::size_t j = 0; j <= n_df; ++j) {
            p.lags[j] = pdp_frequency_correlation(c.tau_rms, static_cast<double>(j) * delta_f);
        }
        cb.spectral.push_back({std::move(p), c.label, c.tau_rms});
    }
    return cb;
}

Codebook build_default_codebook(double t_sym, double delta_f, std::size_t n_dt, std::size_t n_df) {
    const auto doppler = default_doppler_classes();
    const auto delay = default_delay_spread_classes();
    return build_codebook(t_sym, delta_f, n_dt, n_df, doppler, delay);
}

std::size_t nearest_codeword(const CorrelationProfile& estimate, std::span<const Codeword> codewords) {
    if (codewords.empty()) throw std::invalid_argument("empty codeword set");
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < codewords.size(); ++c) {
        const auto& ref = codewords[c].profile;
        if (ref.lags.size() != estimate.lags.size()) {
            throw std::invalid_argument(fmt::format("profile has {} lags, codeword has {}", estimate.max_lag(),
                                                    ref.max_lag()));
        }
        double d = 0.0;
        for (std::size_t i = 1; i < ref.lags.size(); ++i) d += std::norm(estimate.lags[i] - ref.lags[i]);
        // distances equal up to rounding count as ties
        if (c == 0 || d < best_d - 1e-12 * best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

CodebookIndices match(const CorrelationProfile& r_t_hat, const CorrelationProfile& r_f_hat, const Codebook& cb) {
    return {nearest_codeword(r_t_hat, cb.temporal), nearest_codeword(r_f_hat, cb.spectral)};
}

ChannelStatistics statistics(const Codebook& cb, CodebookIndices idx) {
    if (idx.temporal >= cb.temporal.size() || idx.spectral >= cb.spectral.size()) {
        throw std::out_of_range(fmt::format("codeword indices ({}, {}) outside codebook of size ({}, {})",
                                            idx.temporal, idx.spectral, cb.temporal.size(), cb.spectral.size()));
    }
    return {idx, cb.temporal[idx.temporal].parameter, cb.spectral[idx.spectral].parameter};
}

void write_table(std::ostream& os, const Codebook& cb) {
    fmt::print(os, "# temporal codewords: {} (lag step {:.6g} s, lags 0..{})\n", cb.temporal.size(),
               cb.temporal.front().profile.lag_step, cb.temporal.front().profile.max_lag());
    fmt::print(os, "# domain index label f_d_hz | lag values\n");
    for (std::size_t m = 0; m < cb.temporal.size(); ++m) {
        const auto& c = cb.temporal[m];
        fmt::print(os, "temporal {} \"{}\" {:.6g} |", m, c.label, c.parameter);
        for (const auto& v : c.profile.lags) fmt::print(os, " {:.6g}", v.real());
        fmt::print(os, "\n");
    }
    fmt::print(os, "# spectral codewords: {} (lag step {:.6g} Hz, lags 0..{})\n", cb.spectral.size(),
               cb.spectral.front().profile.lag_step, cb.spectral.front().profile.max_lag());
    fmt::print(os, "# domain index label tau_rms_ns | lag values (re,im)\n");
    for (std::size_t l = 0; l < cb.spectral.size(); ++l) {
        const auto& c = cb.spectral[l];
        fmt::print(os, "spectral {} \"{}\" {:.6g} |", l, c.label, c.parameter * 1e9);
        for (const auto& v : c.profile.lags) fmt::print(os, " {:.6g},{:.6g}", v.real(), v.imag());
        fmt::print(os, "\n");
    }
}

}  // namespace pilotadapt
