#pragma once

#include <pilotadapt/channel.hpp>
#include <pilotadapt/codebook.hpp>
#include <pilotadapt/grid.hpp>

#include <functional>
#include <vector>

namespace pilotadapt {

/// Discrete search space shared by both link ends. Powers are linear rho values.
struct FeasibleSets {
    std::vector<double> powers;
    std::vector<int> freq_spacings;
    std::vector<int> time_spacings;

    /// rho in {-10, -9, -7, -5, -3, 0} dB, dpf in {2, 4, ..., 12}, dpt in {1, ..., 10}.
    static FeasibleSets defaults();

    std::size_t size() const noexcept { return powers.size() * freq_spacings.size() * time_spacings.size(); }
    bool contains(const PilotConfig& cfg) const;
    void validate() const;
};

struct SinrTerms {
    double sigma_d2 = 1.0;
    double sigma_w2 = 0.0;
    double sigma_ici2 = 0.0;
    double sigma_mse2 = 0.0;
    double sigma_zf = 1.0;  // SISO zero-forcing
};

/// Average post-ZF SINR: sigma_d2 sigma_zf / (sigma_w2 + sigma_ici2 + sigma_mse2 sigma_d2).
/// Throws std::domain_error when the denominator is zero.
double post_eq_sinr(const SinrTerms& t);

/// S log2(1 + sinr).
double achievable_rate(double utilization, double sinr);

/// sigma_p^2 / sigma_w^2 for cfg's own power split.
double pilot_snr(const PilotConfig& cfg, const GridDims& dims, const LinkCondition& cond);

/// S(cfg) log2(1 + sinr) with sigma_d2 from power_allocation and ICI at its bound for f_d.
double rate_objective(const PilotConfig& cfg, const GridDims& dims, const LinkCondition& cond, double f_d,
                      double mse);

/// sigma_MSE^2 for a candidate config, the matched channel statistics and a pilot SNR.
/// Must be safe to call concurrently.
using MseProvider = std::function<double(const PilotConfig&, const ChannelStatistics&, double pilot_snr)>;

struct OptimizationResult {
    PilotConfig config;
    double objective = 0.0;
};

/// True if `a` wins over `b` under the deterministic ordering: higher objective,
/// then fewer pilots (larger dpf * dpt), then higher rho, then lower dpf.
bool preferred(const OptimizationResult& a, const OptimizationResult& b);

/// Exhaustive search over sets; ICI is evaluated at the matched codeword's f_d.
OptimizationResult optimize(const ChannelStatistics& stats, const LinkCondition& cond, const FeasibleSets& sets,
                            const GridDims& dims, const MseProvider& mse);

int feedback_bits_explicit(const FeasibleSets& sets);
double feedback_rate_explicit(const FeasibleSets& sets, const GridDims& dims);
int feedback_bits_implicit(const Codebook& cb);
double feedback_rate_implicit(const Codebook& cb, const GridDims& dims);

}  // namespace pilotadapt
