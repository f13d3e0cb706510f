#include <pilotadapt/mse_cache.hpp>
#include <pilotadapt/random.hpp>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace pilotadapt {

MseCache::MseCache(MseOracleSettings settings, std::uint64_t seed) : settings_(settings), seed_(seed) {
    settings_.dims.validate();
    if (settings_.trials < 1) throw ConfigError("MSE oracle needs at least one trial");
}

int MseCache::round_snr_db(double pilot_snr) {
    if (!(pilot_snr > 0.0)) return min_snr_db;
    if (std::isinf(pilot_snr)) return max_snr_db;
    const auto db = static_cast<int>(std::lround(10.0 * std::log10(pilot_snr)));
    return std::clamp(db, min_snr_db, max_snr_db);
}

std::uint64_t MseCache::pair_seed(const CodebookIndices& idx) const {
    return derive_seed(seed_, {idx.temporal, idx.spectral});
}

std::shared_ptr<const MseCache::ChannelSet> MseCache::channels_for(const ChannelStatistics& stats) {
    const auto key = std::make_pair(stats.indices.temporal, stats.indices.spectral);
    {
        std::lock_guard lock(channels_mutex_);
        if (auto it = channels_.find(key); it != channels_.end()) return it->second;
    }
    auto set = std::make_shared<const ChannelSet>(
        oracle_channels(stats.f_d, stats.tau_rms, settings_.trials, pair_seed(stats.indices), settings_));
    std::lock_guard lock(channels_mutex_);
    return channels_.try_emplace(key, std::move(set)).first->second;
}

double MseCache::operator()(const PilotConfig& cfg, const ChannelStatistics& stats, double pilot_snr) {
    const Key key{cfg.dpf, cfg.dpt, stats.indices.temporal, stats.indices.spectral, round_snr_db(pilot_snr)};
    {
        std::shared_lock lock(values_mutex_);
        if (auto it = values_.find(key); it != values_.end()) return it->second;
    }
    const auto channels = channels_for(stats);
    const double snr = std::pow(10.0, key.pilot_snr_db / 10.0);
    const double value = empirical_mse(cfg, *channels, snr, pair_seed(stats.indices));
    std::unique_lock lock(values_mutex_);
    values_.insert_or_assign(key, value);
    return value;
}

std::size_t MseCache::size() const {
    std::shared_lock lock(values_mutex_);
    return values_.size();
}

std::string MseCache::settings_line() const {
    const auto& d = settings_.dims;
    return fmt::format("# settings {} {} {:.17g} {:.17g} {} {} {} {}", d.n_sub, d.n_sym, d.delta_f, d.t_sym,
                       settings_.trials, settings_.n_taps, settings_.n_sinusoids, seed_);
}

void MseCache::save(std::ostream& os) const {
    std::shared_lock lock(values_mutex_);
    fmt::print(os, "# pilotadapt MSE cache\n{}\n", settings_line());
    for (const auto& [k, v] : values_) {
        fmt::print(os, "{} {} {} {} {} {:.17g}\n", k.dpf, k.dpt, k.temporal, k.spectral, k.pilot_snr_db, v);
    }
}

std::size_t MseCache::load(std::istream& is) {
    std::string line;
    std::map<Key, double> read;
    bool settings_ok = false;
    while (std::getline(is, line)) {
        if (line.rfind("# settings", 0) == 0) {
            settings_ok = (line == settings_line());
            continue;
        }
        if (line.empty() || line.front() == '#') continue;
        std::istringstream ls(line);
        Key k{};
        double v = 0.0;
        if (!(ls >> k.dpf >> k.dpt >> k.temporal >> k.spectral >> k.pilot_snr_db >> v)) {
            throw std::runtime_error("malformed MSE cache line: " + line);
        }
        read.insert_or_assign(k, v);
    }
    if (!settings_ok) return 0;
    std::unique_lock lock(values_mutex_);
    for (const auto& [k, v] : read) values_.insert_or_assign(k, v);
    return read.size();
}

}  // namespace pilotadapt
