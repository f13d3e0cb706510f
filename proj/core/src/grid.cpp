#include <pilotadapt/grid.hpp>
#include <pilotadapt/random.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pilotadapt {

void GridDims::validate() const {
    if (n_sub < 2 || n_sym < 1) {
        throw ConfigError("grid needs n_sub >= 2 and n_sym >= 1");
    }
    if (!(delta_f > 0.0) || !(t_sym > 0.0)) {
        throw ConfigError("grid needs positive subcarrier spacing and symbol duration");
    }
}

PilotConfig PilotConfig::from_db(double rho_db, int dpf, int dpt) {
    return PilotConfig{std::pow(10.0, rho_db / 10.0), dpf, dpt};
}

double PilotConfig::rho_db() const { return 10.0 * std::log10(rho); }

void PilotConfig::validate() const {
    if (dpf < 2) {
        throw ConfigError("pilot frequency spacing must be >= 2, got " + std::to_string(dpf));
    }
    if (dpt < 1) {
        throw ConfigError("pilot time spacing must be >= 1, got " + std::to_string(dpt));
    }
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw ConfigError("data-to-pilot power ratio must be positive and finite");
    }
}

std::vector<ReCoord> pilot_positions(const PilotConfig& cfg, const GridDims& dims) {
    cfg.validate();
    dims.validate();
    const auto dpf = static_cast<std::size_t>(cfg.dpf);
    const auto dpt = static_cast<std::size_t>(cfg.dpt);
    const std::size_t off_f = dpf / 2;
    const std::size_t off_t = dpt / 2;

    std::vector<ReCoord> out;
    std::vector<std::size_t> row;
    for (std::size_t t = 0; t < dims.n_sym; ++t) {
        row.clear();
        if (t % dpt == 0) {
            for (std::size_t f = 0; f < dims.n_sub; f += dpf) row.push_back(f);
        }
        if (t % dpt == off_t) {
            for (std::size_t f = off_f; f < dims.n_sub; f += dpf) row.push_back(f);
        }
        std::sort(row.begin(), row.end());
        for (auto f : row) out.push_back({f, t});
    }
    return out;
}

PilotMask pilot_mask(const PilotConfig& cfg, const GridDims& dims) {
    PilotMask mask(dims.n_sub, dims.n_sym, 0);
    for (const auto& p : pilot_positions(cfg, dims)) mask(p.sub, p.sym) = 1;
    return mask;
}

namespace {

// members of {offset, offset + period, ...} below n
std::size_t lattice_count(std::size_t n, std::size_t offset, std::size_t period) {
    return n > offset ? (n - offset + period - 1) / period : 0;
}

}  // namespace

std::size_t pilot_count(const PilotConfig& cfg, const GridDims& dims) {
    cfg.validate();
    dims.validate();
    const auto dpf = static_cast<std::size_t>(cfg.dpf);
    const auto dpt = static_cast<std::size_t>(cfg.dpt);
    // combs never share a cell since dpf >= 2
    return lattice_count(dims.n_sub, 0, dpf) * lattice_count(dims.n_sym, 0, dpt) +
           lattice_count(dims.n_sub, dpf / 2, dpf) * lattice_count(dims.n_sym, dpt / 2, dpt);
}

double pilot_density(const PilotConfig& cfg, const GridDims& dims) {
    return static_cast<double>(pilot_count(cfg, dims)) / static_cast<double>(dims.size());
}

double spectrum_utilization(const PilotConfig& cfg, const GridDims& dims) {
    return 1.0 - pilot_density(cfg, dims);
}

PowerAllocation power_allocation(const PilotConfig& cfg, const GridDims& dims) {
    const double delta = pilot_density(cfg, dims);
    // (1 - delta) * rho * sp + delta * sp = 1
    const double sigma_p2 = 1.0 / ((1.0 - delta) * cfg.rho + delta);
    return {cfg.rho * sigma_p2, sigma_p2};
}

ResourceGrid build_grid(const PilotConfig& cfg, const GridDims& dims, std::span<const cplx> data_symbols,
                        std::span<const cplx> pilot_symbols) {
    ResourceGrid g;
    g.dims = dims;
    g.pilot_mask = pilot_mask(cfg, dims);
    g.power = power_allocation(cfg, dims);

    const auto flat_mask = g.pilot_mask.flat();
    const auto n_pilots = static_cast<std::size_t>(std::count(flat_mask.begin(), flat_mask.end(), 1));
    if (pilot_symbols.size() != n_pilots) {
        throw std::invalid_argument("expected " + std::to_string(n_pilots) + " pilot symbols, got " +
                                    std::to_string(pilot_symbols.size()));
    }
    if (data_symbols.size() != dims.size() - n_pilots) {
        throw std::invalid_argument("expected " + std::to_string(dims.size() - n_pilots) + " data symbols, got " +
                                    std::to_string(data_symbols.size()));
    }

    const double a_p = std::sqrt(g.power.sigma_p2);
    const double a_d = std::sqrt(g.power.sigma_d2);
    g.cells = GridArray<cplx>(dims.n_sub, dims.n_sym);
    auto cells = g.cells.flat();
    std::size_t ip = 0;
    std::size_t id = 0;
    // symbol-major walk visits pilots in pilot_positions order
    for (std::size_t i = 0; i < cells.size(); ++i) {
        cells[i] = flat_mask[i] ? a_p * pilot_symbols[ip++] : a_d * data_symbols[id++];
    }
    return g;
}

std::vector<PilotSample> known_pilots(const PilotConfig& cfg, const GridDims& dims) {
    const double a_p = std::sqrt(power_allocation(cfg, dims).sigma_p2);
    std::vector<PilotSample> out;
    for (const auto& p : pilot_positions(cfg, dims)) out.push_back({p, cplx(a_p, 0.0)});
    return out;
}

std::vector<cplx> unit_pilot_symbols(std::size_t count) { return std::vector<cplx>(count, cplx(1.0, 0.0)); }

std::vector<cplx> qpsk_symbols(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    const double a = 1.0 / std::sqrt(2.0);
    std::vector<cplx> out(count);
    for (auto& s : out) {
        const auto bits = rng();
        s = {(bits & 1U) ? a : -a, (bits & 2U) ? a : -a};
    }
    return out;
}

}  // namespace pilotadapt
