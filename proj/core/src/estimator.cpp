#include <pilotadapt/estimator.hpp>
#include <pilotadapt/random.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pilotadapt {

namespace {

/// Fills out[0..n) by linear interpolation through (pos[i], val[i]), pos sorted ascending.
void interpolate_line(std::span<const std::size_t> pos, std::span<const cplx> val, std::span<cplx> out) {
    const std::size_t n = out.size();
    std::size_t j = 0;
    for (std::size_t x = 0; x < n; ++x) {
        if (x <= pos.front()) {
            out[x] = val.front();
            continue;
        }
        if (x >= pos.back()) {
            out[x] = val.back();
            continue;
        }
        while (pos[j + 1] < x) ++j;
        const double w = static_cast<double>(x - pos[j]) / static_cast<double>(pos[j + 1] - pos[j]);
        out[x] = (1.0 - w) * val[j] + w * val[j + 1];
    }
}

}  // namespace

std::vector<PilotSample> ls_at_pilots(std::span<const PilotSample> received, std::span<const PilotSample> sent) {
    if (received.size() != sent.size()) {
        throw std::invalid_argument("received and sent pilot counts differ");
    }
    std::vector<PilotSample> out(sent.size());
    for (std::size_t i = 0; i < sent.size(); ++i) {
        if (sent[i].value == cplx{}) throw std::invalid_argument("pilot symbol is zero");
        out[i] = {sent[i].at, received[i].value / sent[i].value};
    }
    return out;
}

std::vector<PilotSample> ls_at_pilots(const ResourceGrid& received, std::span<const PilotSample> sent) {
    std::vector<PilotSample> rx(sent.size());
    for (std::size_t i = 0; i < sent.size(); ++i) {
        const auto& at = sent[i].at;
        if (at.sub >= received.dims.n_sub || at.sym >= received.dims.n_sym) {
            throw std::invalid_argument("pilot position outside the received grid");
        }
        rx[i] = {at, received.cells(at.sub, at.sym)};
    }
    return ls_at_pilots(rx, sent);
}

ChannelEstimate interpolate_2d(std::span<const PilotSample> pilot_estimates, const GridDims& dims) {
    dims.validate();
    if (pilot_estimates.empty()) throw std::invalid_argument("no pilot estimates to interpolate");

    std::vector<PilotSample> sorted(pilot_estimates.begin(), pilot_estimates.end());
    for (const auto& p : sorted) {
        if (p.at.sub >= dims.n_sub || p.at.sym >= dims.n_sym) {
            throw std::invalid_argument("pilot estimate outside the grid");
        }
    }
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.at < b.at; });

    // frequency pass: one dense row per pilot-bearing symbol
    std::vector<std::size_t> row_sym;
    std::vector<cplx> rows;
    std::vector<std::size_t> pos;
    std::vector<cplx> val;
    for (std::size_t i = 0; i < sorted.size();) {
        const std::size_t sym = sorted[i].at.sym;
        pos.clear();
        val.clear();
        for (; i < sorted.size() && sorted[i].at.sym == sym; ++i) {
            if (!pos.empty() && pos.back() == sorted[i].at.sub) {
                val.back() = sorted[i].value;
                continue;
            }
            pos.push_back(sorted[i].at.sub);
            val.push_back(sorted[i].value);
        }
        row_sym.push_back(sym);
        rows.resize(rows.size() + dims.n_sub);
        interpolate_line(pos, val, std::span<cplx>(rows).last(dims.n_sub));
    }

    // time pass
    ChannelEstimate est{dims, GridArray<cplx>(dims.n_sub, dims.n_sym)};
    const std::size_t n_rows = row_sym.size();
    std::size_t j = 0;
    for (std::size_t t = 0; t < dims.n_sym; ++t) {
        auto out = est.h_hat.symbol(t);
        if (t <= row_sym.front() || t >= row_sym.back() || n_rows == 1) {
            const std::size_t r = (t <= row_sym.front()) ? 0 : n_rows - 1;
            std::copy_n(rows.begin() + static_cast<std::ptrdiff_t>(r * dims.n_sub), dims.n_sub, out.begin());
            continue;
        }
        while (row_sym[j + 1] < t) ++j;
        const double w = static_cast<double>(t - row_sym[j]) / static_cast<double>(row_sym[j + 1] - row_sym[j]);
        const cplx* a = rows.data() + j * dims.n_sub;
        const cplx* b = a + dims.n_sub;
        for (std::size_t f = 0; f < dims.n_sub; ++f) out[f] = (1.0 - w) * a[f] + w * b[f];
    }
    return est;
}

CorrelationEstimates estimate_correlations(const ChannelEstimate& est, std::size_t n_dt, std::size_t n_df) {
    const auto& d = est.dims;
    if (d.n_sym < 2 || d.n_sub < 2 || n_dt >= d.n_sym || n_df >= d.n_sub) {
        throw std::invalid_argument("correlation lag counts must be below the window dimensions");
    }
    const auto& h = est.h_hat;

    CorrelationEstimates out;
    out.time = {std::vector<cplx>(n_dt + 1), CorrelationDomain::time, d.t_sym};
    out.frequency = {std::vector<cplx>(n_df + 1), CorrelationDomain::frequency, d.delta_f};

    // R_t(i) = E[h(t + i) h*(t)], averaged over subcarriers and the T - i valid symbol pairs
    for (std::size_t i = 0; i <= n_dt; ++i) {
        cplx acc{};
        for (std::size_t t = 0; t + i < d.n_sym; ++t) {
            const auto a = h.symbol(t);
            const auto b = h.symbol(t + i);
            for (std::size_t f = 0; f < d.n_sub; ++f) acc += b[f] * std::conj(a[f]);
        }
        out.time.lags[i] = acc / static_cast<double>((d.n_sym - i) * d.n_sub);
    }
    // R_f(j) = E[h(f + j) h*(f)]
    for (std::size_t j = 0; j <= n_df; ++j) {
        cplx acc{};
        for (std::size_t t = 0; t < d.n_sym; ++t) {
            const auto row = h.symbol(t);
            for (std::size_t f = 0; f + j < d.n_sub; ++f) acc += row[f + j] * std::conj(row[f]);
        }
        out.frequency.lags[j] = acc / static_cast<double>((d.n_sub - j) * d.n_sym);
    }

    for (auto* p : {&out.time, &out.frequency}) {
        const double r0 = p->lags[0].real();
        if (!(r0 > 0.0)) throw std::domain_error("channel estimate has zero power; cannot normalize correlation");
        for (auto& v : p->lags) v /= r0;
        p->lags[0] = cplx(1.0, 0.0);
    }
    return out;
}

double data_mse(const GridArray<cplx>& h_hat, const GridArray<cplx>& h, const PilotMask& mask) {
    if (h_hat.size() != h.size() || mask.size() != h.size()) {
        throw std::invalid_argument("data_mse: size mismatch");
    }
    const auto a = h_hat.flat();
    const auto b = h.flat();
    const auto m = mask.flat();
    double acc = 0.0, acc_all = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double e = std::norm(a[i] - b[i]);
        acc_all += e;
        if (!m[i]) {
            acc += e;
            ++n;
        }
    }
    return n > 0 ? acc / static_cast<double>(n) : acc_all / static_cast<double>(a.size());
}

std::vector<ChannelRealization> oracle_channels(double f_d, double tau_rms, std::size_t trials, std::uint64_t seed,
                                                const MseOracleSettings& settings) {
    const ChannelParams params{f_d, tau_rms, settings.n_taps, settings.n_sinusoids};
    std::vector<ChannelRealization> out;
    out.reserve(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        out.push_back(generate_channel(params, settings.dims, derive_seed(seed, {i, 1})));
    }
    return out;
}

double empirical_mse(const PilotConfig& cfg, std::span<const ChannelRealization> channels, double pilot_snr,
                     std::uint64_t seed) {
    if (channels.empty()) throw std::invalid_argument("empirical_mse needs at least one trial");
    if (!(pilot_snr > 0.0)) throw std::invalid_argument("pilot SNR must be positive");
    const double noise_amp = std::isinf(pilot_snr) ? 0.0 : std::sqrt(1.0 / pilot_snr);

    double total = 0.0;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        const auto& ch = channels[i];
        const auto positions = pilot_positions(cfg, ch.dims);
        const auto mask = pilot_mask(cfg, ch.dims);

        std::vector<PilotSample> sent(positions.size());
        std::vector<PilotSample> rx(positions.size());
        Rng rng(derive_seed(seed, {i, 2}));
        for (std::size_t p = 0; p < positions.size(); ++p) {
            const auto& at = positions[p];
            sent[p] = {at, cplx(1.0, 0.0)};
            const cplx w = complex_normal(rng, 1.0);
            rx[p] = {at, ch.h(at.sub, at.sym) + noise_amp * w};
        }
        const auto est = interpolate_2d(ls_at_pilots(rx, sent), ch.dims);
        total += data_mse(est.h_hat, ch.h, mask);
    }
    return total / static_cast<double>(channels.size());
}

double empirical_mse(const PilotConfig& cfg, double f_d, double tau_rms, double pilot_snr, std::size_t trials,
                     std::uint64_t seed, const MseOracleSettings& settings) {
    if (trials < 1) throw std::invalid_argument("empirical_mse needs at least one trial");
    const auto channels = oracle_channels(f_d, tau_rms, trials, seed, settings);
    return empirical_mse(cfg, channels, pilot_snr, seed);
}

}  // namespace pilotadapt
