#pragma once

#include <pilotadapt/codebook.hpp>
#include <pilotadapt/estimator.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <vector>

namespace pilotadapt {

/// Memoized empirical_mse keyed by (dpf, dpt, codeword pair, pilot SNR in
/// whole dB). Usable directly as an MseProvider; safe for concurrent calls.
///
/// The oracle seed depends only on the codeword pair, so every key sharing a
/// pair sees the same channel draws and noise sequence. Values are therefore
/// deterministic per key and independent of evaluation order.
///
/// Persisted form (one entry per line, '#' starts a comment):
///   # settings <n_sub> <n_sym> <delta_f> <t_sym> <trials> <n_taps> <n_sinusoids> <seed>
///   <dpf> <dpt> <temporal> <spectral> <pilot_snr_db> <mse>
class MseCache {
public:
    struct Key {
        int dpf;
        int dpt;
        std::size_t temporal;
        std::size_t spectral;
        int pilot_snr_db;

        friend auto operator<=>(const Key&, const Key&) = default;
    };

    static constexpr int min_snr_db = -30;
    static constexpr int max_snr_db = 80;

    explicit MseCache(MseOracleSettings settings = {}, std::uint64_t seed = 0x9d2c5680u);

    double operator()(const PilotConfig& cfg, const ChannelStatistics& stats, double pilot_snr);

    static int round_snr_db(double pilot_snr);

    std::size_t size() const;
    const MseOracleSettings& settings() const noexcept { return settings_; }

    /// Returns the number of entries read; 0 if the file was written with different settings.
    std::size_t load(std::istream& is);
    void save(std::ostream& os) const;

private:
    using ChannelSet = std::vector<ChannelRealization>;

    std::shared_ptr<const ChannelSet> channels_for(const ChannelStatistics& stats);
    std::uint64_t pair_seed(const CodebookIndices& idx) const;
    std::string settings_line() const;

    MseOracleSettings settings_;
    std::uint64_t seed_;

    mutable std::shared_mutex values_mutex_;
    std::map<Key, double> values_;

    std::mutex channels_mutex_;
    std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const ChannelSet>> channels_;
};

}  // namespace pilotadapt
