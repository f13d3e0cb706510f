#include <pilotadapt/report_io.hpp>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pilotadapt {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

void write_trace_csv(std::ostream& os, const RunReport& report) {
    fmt::print(os, "epoch,t_sec,stage,f_d_hz,tau_rms_ns,snr_db,rho_db,dpf,dpt,rate_adaptive");
    for (const auto& n : report.fixed_names) fmt::print(os, ",rate_{}", n);
    fmt::print(os, "\n");
    for (const auto& e : report.epochs) {
        fmt::print(os, "{},{:.6g},{},{:.6g},{:.6g},{:.6g},{:.6g},{},{},{:.6g}", e.epoch, e.t_sec, e.stage + 1,
                   e.f_d_hz, e.tau_rms_s * 1e9, e.snr_db, e.active.rho_db(), e.active.dpf, e.active.dpt,
                   e.rate_adaptive);
        for (double r : e.rate_fixed) fmt::print(os, ",{:.6g}", r);
        fmt::print(os, "\n");
    }
}

RunReport read_trace_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("trace is empty");
    const auto header = split_csv(line);
    constexpr std::size_t fixed_cols = 10;
    if (header.size() < fixed_cols || header[0] != "epoch" || header[9] != "rate_adaptive") {
        throw std::invalid_argument("trace header does not match the expected columns");
    }
    RunReport report;
    for (std::size_t c = fixed_cols; c < header.size(); ++c) {
        if (header[c].rfind("rate_", 0) != 0) throw std::invalid_argument("unexpected trace column " + header[c]);
        report.fixed_names.push_back(header[c].substr(5));
    }
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size()) {
            throw std::invalid_argument(fmt::format("trace row {} has {} cells, expected {}", row, cells.size(),
                                                    header.size()));
        }
        try {
            EpochRecord e;
            e.epoch = std::stoul(cells[0]);
            e.t_sec = std::stod(cells[1]);
            e.stage = std::stoul(cells[2]) - 1;
            e.f_d_hz = std::stod(cells[3]);
            e.tau_rms_s = std::stod(cells[4]) * 1e-9;
            e.snr_db = std::stod(cells[5]);
            e.active = PilotConfig::from_db(std::stod(cells[6]), std::stoi(cells[7]), std::stoi(cells[8]));
            e.decided = e.active;
            e.rate_adaptive = std::stod(cells[9]);
            for (std::size_t c = fixed_cols; c < cells.size(); ++c) e.rate_fixed.push_back(std::stod(cells[c]));
            report.epochs.push_back(std::move(e));
        } catch (const std::logic_error&) {
            throw std::invalid_argument(fmt::format("trace row {} is not numeric", row));
        }
    }
    return report;
}

void write_cdf_csv(std::ostream& os, const RunReport& report) {
    fmt::print(os, "scheme,rate,cdf\n");
    auto emit = [&](const std::string& name, std::vector<double> samples) {
        const auto cdf = empirical_cdf(std::move(samples));
        for (std::size_t i = 0; i < cdf.values.size(); ++i) {
            fmt::print(os, "{},{:.6g},{:.6g}\n", name, cdf.values[i], cdf.cdf[i]);
        }
    };
    std::vector<double> adaptive;
    for (const auto& e : report.epochs) adaptive.push_back(e.rate_adaptive);
    emit("adaptive", std::move(adaptive));
    for (std::size_t i = 0; i < report.fixed_names.size(); ++i) {
        std::vector<double> v;
        for (const auto& e : report.epochs) v.push_back(e.rate_fixed.at(i));
        emit(report.fixed_names[i], std::move(v));
    }
}

void write_gains_csv(std::ostream& os, std::span<const GainRow> rows) {
    fmt::print(os, "config,p10,p50,p90\n");
    for (const auto& r : rows) {
        fmt::print(os, "{}", r.config);
        for (double g : r.gains_percent) fmt::print(os, ",{:.6g}", g);
        fmt::print(os, "\n");
    }
}

void write_summary(std::ostream& os, const RunReport& report, const FeasibleSets& sets, const Codebook& cb,
                   const GridDims& dims, std::size_t runs) {
    const auto means = mean_rates(report);
    fmt::print(os, "runs: {}\nepochs: {}\nfeedback mode: {}\n", runs, report.epochs.size(), to_string(report.mode));
    fmt::print(os, "feedback explicit: {} bits/epoch, {:.6g} bps\n", feedback_bits_explicit(sets),
               feedback_rate_explicit(sets, dims));
    fmt::print(os, "feedback implicit: {} bits/epoch, {:.6g} bps\n", feedback_bits_implicit(cb),
               feedback_rate_implicit(cb, dims));
    fmt::print(os, "\nmean rate [bit/s/Hz]\n");
    fmt::print(os, "  adaptive: {:.6g}\n", means.adaptive);
    for (std::size_t i = 0; i < means.fixed.size(); ++i) {
        const double gain = means.fixed[i] > 0.0 ? (means.adaptive / means.fixed[i] - 1.0) * 100.0 : 0.0;
        fmt::print(os, "  {}: {:.6g} (adaptive gain {:.6g}%)\n", report.fixed_names[i], means.fixed[i], gain);
    }
}

}  // namespace pilotadapt
