#pragma once

#include <pilotadapt/codebook.hpp>
#include <pilotadapt/metrics.hpp>
#include <pilotadapt/scenario.hpp>

#include <iosfwd>
#include <span>

namespace pilotadapt {

/// Columns: epoch, t_sec, stage (1-based), f_d_hz, tau_rms_ns, snr_db, rho_db,
/// dpf, dpt, rate_adaptive, rate_<name> per fixed config. rho_db/dpf/dpt are
/// the adaptive config in force during the epoch. 6 significant digits.
void write_trace_csv(std::ostream& os, const RunReport& report);

/// Reads a trace written by write_trace_csv. Fields not in the trace keep defaults.
RunReport read_trace_csv(std::istream& is);

/// Long format: scheme, rate, cdf.
void write_cdf_csv(std::ostream& os, const RunReport& report);

/// config, p10, p50, p90 (gains in percent).
void write_gains_csv(std::ostream& os, std::span<const GainRow> rows);

void write_summary(std::ostream& os, const RunReport& report, const FeasibleSets& sets, const Codebook& cb,
                   const GridDims& dims, std::size_t runs);

}  // namespace pilotadapt
