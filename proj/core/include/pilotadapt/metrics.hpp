#pragma once

#include <pilotadapt/scenario.hpp>

#include <span>
#include <string>
#include <vector>

namespace pilotadapt {

/// Linear interpolation between order statistics; p in [0, 100].
double percentile(std::vector<double> values, double p);

/// Sorted samples with empirical CDF i / n.
struct EmpiricalCdf {
    std::vector<double> values;
    std::vector<double> cdf;
};
EmpiricalCdf empirical_cdf(std::vector<double> samples);

/// Per-epoch adaptive / fixed rate ratio for one fixed config; epochs with a
/// zero fixed rate are skipped.
std::vector<double> instantaneous_gains(const RunReport& report, std::size_t fixed_index);

struct GainRow {
    std::string config;
    std::vector<double> gains_percent;  ///< one per requested percentile
};

/// Percentiles of (eta_inst - 1) in percent, per fixed config.
std::vector<GainRow> percentile_gains(const RunReport& report, std::span<const double> percentiles);

struct SchemeMeans {
    double adaptive = 0.0;
    std::vector<double> fixed;
};
SchemeMeans mean_rates(const RunReport& report);

/// Median of the decided dpt over epochs of one stage (NaN if the stage has none).
double median_decided_dpt(const RunReport& report, std::size_t stage);

}  // namespace pilotadapt
