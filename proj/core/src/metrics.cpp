#include <pilotadapt/metrics.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pilotadapt {

double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("percentile of an empty sample");
    if (!(p >= 0.0 && p <= 100.0)) throw std::invalid_argument("percentile must be in [0, 100]");
    std::sort(values.begin(), values.end());
    const double pos = p / 100.0 * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return values[lo] + w * (values[hi] - values[lo]);
}

EmpiricalCdf empirical_cdf(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    EmpiricalCdf out;
    out.cdf.resize(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out.cdf[i] = static_cast<double>(i + 1) / static_cast<double>(samples.size());
    }
    out.values = std::move(samples);
    return out;
}

std::vector<double> instantaneous_gains(const RunReport& report, std::size_t fixed_index) {
    std::vector<double> out;
    out.reserve(report.epochs.size());
    for (const auto& e : report.epochs) {
        const double fixed = e.rate_fixed.at(fixed_index);
        if (fixed > 0.0) out.push_back(e.rate_adaptive / fixed);
    }
    return out;
}

std::vector<GainRow> percentile_gains(const RunReport& report, std::span<const double> percentiles) {
    if (report.epochs.empty()) throw std::invalid_argument("percentile gains need a nonempty report");
    std::vector<GainRow> rows;
    for (std::size_t i = 0; i < report.fixed_names.size(); ++i) {
        auto eta = instantaneous_gains(report, i);
        if (eta.empty()) throw std::invalid_argument("no epoch with a nonzero rate for " + report.fixed_names[i]);
        for (auto& v : eta) v = (v - 1.0) * 100.0;
        GainRow row{report.fixed_names[i], {}};
        for (double p : percentiles) row.gains_percent.push_back(percentile(eta, p));
        rows.push_back(std::move(row));
    }
    return rows;
}

SchemeMeans mean_rates(const RunReport& report) {
    SchemeMeans m;
    m.fixed.assign(report.fixed_names.size(), 0.0);
    if (report.epochs.empty()) return m;
    for (const auto& e : report.epochs) {
        m.adaptive += e.rate_adaptive;
        for (std::size_t i = 0; i < m.fixed.size(); ++i) m.fixed[i] += e.rate_fixed.at(i);
    }
    const auto n = static_cast<double>(report.epochs.size());
    m.adaptive /= n;
    for (auto& v : m.fixed) v /= n;
    return m;
}

double median_decided_dpt(const RunReport& report, std::size_t stage) {
    std::vector<double> dpt;
    for (const auto& e : report.epochs) {
        if (e.stage == stage) dpt.push_back(e.decided.dpt);
    }
    if (dpt.empty()) return std::numeric_limits<double>::quiet_NaN();
    return percentile(std::move(dpt), 50.0);
}

}  // namespace pilotadapt
