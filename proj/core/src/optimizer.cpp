#include <pilotadapt/optimizer.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

namespace pilotadapt {

namespace {

int ceil_log2(std::size_t n) {
    if (n == 0) throw ConfigError("cannot index an empty set");
    return static_cast<int>(std::bit_width(n - 1));
}

}  // namespace

FeasibleSets FeasibleSets::defaults() {
    FeasibleSets s;
    for (double db : {-10.0, -9.0, -7.0, -5.0, -3.0, 0.0}) s.powers.push_back(std::pow(10.0, db / 10.0));
    s.freq_spacings = {2, 4, 6, 8, 10, 12};
    s.time_spacings = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    return s;
}

bool FeasibleSets::contains(const PilotConfig& cfg) const {
    return std::find(powers.begin(), powers.end(), cfg.rho) != powers.end() &&
           std::find(freq_spacings.begin(), freq_spacings.end(), cfg.dpf) != freq_spacings.end() &&
           std::find(time_spacings.begin(), time_spacings.end(), cfg.dpt) != time_spacings.end();
}

void FeasibleSets::validate() const {
    if (powers.empty() || freq_spacings.empty() || time_spacings.empty()) {
        throw ConfigError("feasible sets must be nonempty");
    }
    for (double p : powers) {
        if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("feasible powers must be positive and finite");
    }
    for (int f : freq_spacings) {
        if (f < 2) throw ConfigError("feasible frequency spacings must be >= 2");
    }
    for (int t : time_spacings) {
        if (t < 1) throw ConfigError("feasible time spacings must be >= 1");
    }
}

double post_eq_sinr(const SinrTerms& t) {
    if (t.sigma_d2 < 0.0 || t.sigma_w2 < 0.0 || t.sigma_ici2 < 0.0 || t.sigma_mse2 < 0.0 || t.sigma_zf < 0.0) {
        throw std::invalid_argument("SINR terms must be non-negative");
    }
    const double den = t.sigma_w2 + t.sigma_ici2 + t.sigma_mse2 * t.sigma_d2;
    if (!(den > 0.0)) {
        throw std::domain_error("SINR denominator is zero (noiseless, ICI-free, perfect CSI)");
    }
    return t.sigma_d2 * t.sigma_zf / den;
}

double achievable_rate(double utilization, double sinr) {
    if (utilization <= 0.0) return 0.0;
    return utilization * std::log2(1.0 + sinr);
}

double pilot_snr(const PilotConfig& cfg, const GridDims& dims, const LinkCondition& cond) {
    const double sp = power_allocation(cfg, dims).sigma_p2;
    if (cond.noise_power <= 0.0) return std::numeric_limits<double>::infinity();
    return sp / cond.noise_power;
}

double rate_objective(const PilotConfig& cfg, const GridDims& dims, const LinkCondition& cond, double f_d,
                      double mse) {
    const double s = spectrum_utilization(cfg, dims);
    if (s <= 0.0) return 0.0;
    const auto pa = power_allocation(cfg, dims);
    const SinrTerms terms{pa.sigma_d2, cond.noise_power, ici_power(f_d, dims.delta_f, pa.sigma_d2), mse};
    return achievable_rate(s, post_eq_sinr(terms));
}

bool preferred(const OptimizationResult& a, const OptimizationResult& b) {
    if (a.objective != b.objective) return a.objective > b.objective;
    const int area_a = a.config.dpf * a.config.dpt;
    const int area_b = b.config.dpf * b.config.dpt;
    if (area_a != area_b) return area_a > area_b;
    if (a.config.rho != b.config.rho) return a.config.rho > b.config.rho;
    return a.config.dpf < b.config.dpf;
}

OptimizationResult optimize(const ChannelStatistics& stats, const LinkCondition& cond, const FeasibleSets& sets,
                            const GridDims& dims, const MseProvider& mse) {
    sets.validate();
    if (!mse) throw std::invalid_argument("optimize needs an MSE provider");

    std::vector<OptimizationResult> candidates;
    candidates.reserve(sets.size());
    for (double rho : sets.powers) {
        for (int dpf : sets.freq_spacings) {
            for (int dpt : sets.time_spacings) candidates.push_back({PilotConfig{rho, dpf, dpt}, 0.0});
        }
    }

    auto evaluate = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto& c = candidates[i];
            const double sigma_mse2 = mse(c.config, stats, pilot_snr(c.config, dims, cond));
            c.objective = rate_objective(c.config, dims, cond, stats.f_d, sigma_mse2);
        }
    };

    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::min<std::size_t>(8, candidates.size()));
    if (workers <= 1) {
        evaluate(0, candidates.size());
    } else {
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            const std::size_t chunk = (candidates.size() + workers - 1) / workers;
            for (std::size_t w = 0; w < workers; ++w) {
                const std::size_t b = w * chunk;
                const std::size_t e = std::min(candidates.size(), b + chunk);
                if (b >= e) continue;
                pool.emplace_back([&, w, b, e] {
                    try {
                        evaluate(b, e);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (const auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }

    return *std::min_element(candidates.begin(), candidates.end(),
                             [](const auto& a, const auto& b) { return preferred(a, b); });
}

int feedback_bits_explicit(const FeasibleSets& sets) { return ceil_log2(sets.size()); }

double feedback_rate_explicit(const FeasibleSets& sets, const GridDims& dims) {
    return feedback_bits_explicit(sets) / dims.window_seconds();
}

int feedback_bits_implicit(const Codebook& cb) { return ceil_log2(cb.temporal.size() * cb.spectral.size()); }

double feedback_rate_implicit(const Codebook& cb, const GridDims& dims) {
    return feedback_bits_implicit(cb) / dims.window_seconds();
}

}  // namespace pilotadapt
