#pragma once

#include <pilotadapt/errors.hpp>

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pilotadapt {

using cplx = std::complex<double>;

/// OFDM resource grid geometry: subcarriers x OFDM symbols of one window.
struct GridDims {
    std::size_t n_sub = 72;
    std::size_t n_sym = 1500;
    double delta_f = 15e3;      ///< subcarrier spacing [Hz]
    double t_sym = 71.875e-6;   ///< symbol duration incl. cyclic prefix [s]

    std::size_t size() const noexcept { return n_sub * n_sym; }
    /// Symbol-major linear index; all subcarriers of one symbol are contiguous.
    std::size_t index(std::size_t sub, std::size_t sym) const noexcept { return sym * n_sub + sub; }
    double window_seconds() const noexcept { return static_cast<double>(n_sym) * t_sym; }

    void validate() const;

    friend bool operator==(const GridDims&, const GridDims&) = default;
};

/// Dense per-RE storage laid out like GridDims::index.
template <typename T>
class GridArray {
public:
    GridArray() = default;
    GridArray(std::size_t n_sub, std::size_t n_sym, T fill = T{})
        : n_sub_(n_sub), n_sym_(n_sym), data_(n_sub * n_sym, fill) {}

    T& operator()(std::size_t sub, std::size_t sym) { return data_[sym * n_sub_ + sub]; }
    const T& operator()(std::size_t sub, std::size_t sym) const { return data_[sym * n_sub_ + sub]; }

    std::size_t n_sub() const noexcept { return n_sub_; }
    std::size_t n_sym() const noexcept { return n_sym_; }
    std::size_t size() const noexcept { return data_.size(); }

    std::span<T> flat() noexcept { return data_; }
    std::span<const T> flat() const noexcept { return data_; }
    std::span<T> symbol(std::size_t sym) noexcept { return std::span<T>(data_).subspan(sym * n_sub_, n_sub_); }
    std::span<const T> symbol(std::size_t sym) const noexcept {
        return std::span<const T>(data_).subspan(sym * n_sub_, n_sub_);
    }

    friend bool operator==(const GridArray&, const GridArray&) = default;

private:
    std::size_t n_sub_ = 0;
    std::size_t n_sym_ = 0;
    std::vector<T> data_;
};

/// Pilot pattern {rho, dpf, dpt}. rho is the linear data-to-pilot power ratio.
struct PilotConfig {
    double rho = 1.0;
    int dpf = 6;
    int dpt = 4;

    static PilotConfig from_db(double rho_db, int dpf, int dpt);
    double rho_db() const;
    void validate() const;

    friend bool operator==(const PilotConfig&, const PilotConfig&) = default;
};

struct PowerAllocation {
    double sigma_d2 = 1.0;  ///< mean power per data RE
    double sigma_p2 = 1.0;  ///< mean power per pilot RE
};

struct ReCoord {
    std::size_t sub = 0;
    std::size_t sym = 0;

    friend bool operator==(const ReCoord&, const ReCoord&) = default;
    // symbol-major, same as grid storage
    friend std::strong_ordering operator<=>(const ReCoord& a, const ReCoord& b) {
        if (auto c = a.sym <=> b.sym; c != 0) return c;
        return a.sub <=> b.sub;
    }
};

struct PilotSample {
    ReCoord at;
    cplx value;
};

using PilotMask = GridArray<std::uint8_t>;

struct ResourceGrid {
    GridDims dims;
    GridArray<cplx> cells;
    PilotMask pilot_mask;
    PowerAllocation power;
};

/// Diamond lattice: comb A at (0, 0) and comb B at (dpf/2, dpt/2), both with
/// period (dpf, dpt). Sorted by symbol, then subcarrier.
std::vector<ReCoord> pilot_positions(const PilotConfig& cfg, const GridDims& dims);
PilotMask pilot_mask(const PilotConfig& cfg, const GridDims& dims);

std::size_t pilot_count(const PilotConfig& cfg, const GridDims& dims);
double pilot_density(const PilotConfig& cfg, const GridDims& dims);
/// Fraction of data REs in the window.
double spectrum_utilization(const PilotConfig& cfg, const GridDims& dims);
/// Splits power so the mean RE power of the window is exactly one.
PowerAllocation power_allocation(const PilotConfig& cfg, const GridDims& dims);

/// Fills pilots (in pilot_positions order) and data (remaining cells in
/// symbol-major order) with unit-power input symbols scaled to the allocation.
ResourceGrid build_grid(const PilotConfig& cfg, const GridDims& dims, std::span<const cplx> data_symbols,
                        std::span<const cplx> pilot_symbols);

/// Pilot symbols the receiver knows for cfg: all-ones scaled to sigma_p.
std::vector<PilotSample> known_pilots(const PilotConfig& cfg, const GridDims& dims);

std::vector<cplx> unit_pilot_symbols(std::size_t count);
std::vector<cplx> qpsk_symbols(std::size_t count, std::uint64_t seed);

}  // namespace pilotadapt
