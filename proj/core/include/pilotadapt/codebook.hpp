#pragma once

#include <pilotadapt/estimator.hpp>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace pilotadapt {

struct Codeword {
    CorrelationProfile profile;
    std::string label;
    double parameter = 0.0;  ///< f_d [Hz] for temporal, tau_rms [s] for spectral
};

/// Shared channel-statistics codebook: Jakes temporal profiles indexed by
/// Doppler, exponential-PDP spectral profiles indexed by delay spread.
struct Codebook {
    std::vector<Codeword> temporal;
    std::vector<Codeword> spectral;
};

struct CodebookIndices {
    std::size_t temporal = 0;
    std::size_t spectral = 0;

    friend bool operator==(const CodebookIndices&, const CodebookIndices&) = default;
};

/// Codeword pair resolved to its generating parameters.
struct ChannelStatistics {
    CodebookIndices indices;
    double f_d = 0.0;
    double tau_rms = 0.0;
};

struct DopplerClass {
    std::string label;
    double f_d;
};

struct DelaySpreadClass {
    std::string label;
    double tau_rms;
};

std::vector<DopplerClass> default_doppler_classes();
std::vector<DelaySpreadClass> default_delay_spread_classes();

Codebook build_codebook(double t_sym, double delta_f, std::size_t n_dt, std::size_t n_df,
                        std::span<const DopplerClass> doppler, std::span<const DelaySpreadClass> delay);
Codebook build_default_codebook(double t_sym, double delta_f, std::size_t n_dt = 40, std::size_t n_df = 62);

/// Index of the codeword at minimum Euclidean distance over lags 1..L
/// (lowest index on ties).
std::size_t nearest_codeword(const CorrelationProfile& estimate, std::span<const Codeword> codewords);

CodebookIndices match(const CorrelationProfile& r_t_hat, const CorrelationProfile& r_f_hat, const Codebook& cb);

/// Throws std::out_of_range for indices outside the codebook.
ChannelStatistics statistics(const Codebook& cb, CodebookIndices idx);

/// Line-oriented table: domain, index, label, parameter, lag values.
void write_table(std::ostream& os, const Codebook& cb);

}  // namespace pilotadapt
