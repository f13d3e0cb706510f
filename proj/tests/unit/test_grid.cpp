#include <pilotadapt/errors.hpp>
#include <pilotadapt/grid.hpp>
#include <pilotadapt/optimizer.hpp>

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace pilotadapt;

namespace {

// independent membership test for the two staggered combs
bool on_comb_a(const PilotConfig& c, std::size_t f, std::size_t t) {
    return f % c.dpf == 0 && t % c.dpt == 0;
}
bool on_comb_b(const PilotConfig& c, std::size_t f, std::size_t t) {
    return f % c.dpf == static_cast<std::size_t>(c.dpf / 2) && t % c.dpt == static_cast<std::size_t>(c.dpt / 2);
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("default geometry") {
    const GridDims d;
    CHECK(d.n_sub == 72);
    CHECK(d.n_sym == 1500);
    CHECK(d.size() == 108000);
    CHECK(d.window_seconds() == doctest::Approx(0.1078125));
    CHECK(d.index(5, 2) == 2 * 72 + 5);
    CHECK_NOTHROW(d.validate());
    CHECK_THROWS_AS((GridDims{1, 10}.validate()), ConfigError);
    CHECK_THROWS_AS((GridDims{72, 0}.validate()), ConfigError);
    CHECK_THROWS_AS((GridDims{72, 10, 0.0}.validate()), ConfigError);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS((PilotConfig{1.0, 1, 4}.validate()), ConfigError);
    CHECK_THROWS_AS((PilotConfig{1.0, 6, 0}.validate()), ConfigError);
    CHECK_THROWS_AS((PilotConfig{0.0, 6, 4}.validate()), ConfigError);
    CHECK_THROWS_AS((PilotConfig{-1.0, 6, 4}.validate()), ConfigError);
    const auto c = PilotConfig::from_db(-3.0, 6, 4);
    CHECK(c.rho == doctest::Approx(0.501187).epsilon(1e-6));
    CHECK(c.rho_db() == doctest::Approx(-3.0));
}

TEST_CASE("diamond lattice on a 72x8 window") {
    const GridDims d{72, 8};
    const PilotConfig c{1.0, 6, 4};
    const auto pos = pilot_positions(c, d);
    // comb A on symbols 0 and 4, comb B on 2 and 6, 12 subcarriers each
    CHECK(pos.size() == 48);
    CHECK(pos.front() == ReCoord{0, 0});
    CHECK(pos[12] == ReCoord{3, 2});
    CHECK(pos.back() == ReCoord{69, 6});
    CHECK(std::is_sorted(pos.begin(), pos.end()));
}

TEST_CASE("positions match brute-force cell enumeration") {
    const GridDims d{72, 37};
    for (int dpf : {2, 4, 5, 6, 8, 10, 12}) {
        for (int dpt = 1; dpt <= 10; ++dpt) {
            const PilotConfig c{0.5, dpf, dpt};
            std::vector<ReCoord> expect;
            for (std::size_t t = 0; t < d.n_sym; ++t) {
                for (std::size_t f = 0; f < d.n_sub; ++f) {
                    if (on_comb_a(c, f, t) || on_comb_b(c, f, t)) expect.push_back({f, t});
                }
            }
            CHECK(pilot_positions(c, d) == expect);
            CHECK(pilot_count(c, d) == expect.size());
            const auto mask = pilot_mask(c, d);
            CHECK(std::accumulate(mask.flat().begin(), mask.flat().end(), std::size_t{0}) == expect.size());
        }
    }
}

TEST_CASE("combs are disjoint and equally populated") {
    const GridDims d{120, 2520};
    const auto sets = FeasibleSets::defaults();
    for (int dpf : sets.freq_spacings) {
        for (int dpt : sets.time_spacings) {
            const PilotConfig c{1.0, dpf, dpt};
            std::size_t a = 0, b = 0, both = 0;
            for (std::size_t t = 0; t < d.n_sym; t += 1) {
                for (std::size_t f = 0; f < d.n_sub; ++f) {
                    a += on_comb_a(c, f, t);
                    b += on_comb_b(c, f, t);
                    both += on_comb_a(c, f, t) && on_comb_b(c, f, t);
                }
            }
            CHECK(both == 0);
            CHECK(a == b);
            CHECK(pilot_positions(c, d).size() == a + b);
        }
    }
}

TEST_CASE("utilization on divisible grids is exactly 1 - 2/(dpf dpt)") {
    const GridDims d{120, 2520};
    for (int dpf : {2, 4, 6, 8, 10, 12}) {
        for (int dpt = 1; dpt <= 10; ++dpt) {
            const PilotConfig c{1.0, dpf, dpt};
            CHECK(spectrum_utilization(c, d) == 1.0 - 2.0 / (dpf * dpt));
            CHECK(pilot_density(c, d) == 2.0 / (dpf * dpt));
        }
    }
}

TEST_CASE("power allocation examples") {
    const GridDims d{72, 12};
    // delta = 1/12
    auto p = power_allocation(PilotConfig{0.5, 6, 4}, d);
    CHECK(pilot_density(PilotConfig{0.5, 6, 4}, d) == doctest::Approx(1.0 / 12.0));
    CHECK(p.sigma_p2 == doctest::Approx(1.846154).epsilon(1e-6));
    CHECK(p.sigma_d2 == doctest::Approx(0.923077).epsilon(1e-6));
    // delta = 2/24
    p = power_allocation(PilotConfig{0.1, 12, 2}, d);
    CHECK(p.sigma_p2 == doctest::Approx(5.714286).epsilon(1e-6));
    CHECK(p.sigma_d2 == doctest::Approx(0.571429).epsilon(1e-6));
    // rho = 1 spreads power evenly
    p = power_allocation(PilotConfig{1.0, 2, 1}, d);
    CHECK(p.sigma_p2 == doctest::Approx(1.0));
    CHECK(p.sigma_d2 == doctest::Approx(1.0));
}

TEST_CASE("mean RE power of a built grid is one") {
    const GridDims d{72, 120};
    for (double rho_db : {-10.0, -3.0, 0.0, 4.0}) {
        for (auto [dpf, dpt] : {std::pair{2, 1}, {6, 4}, {12, 10}, {8, 7}}) {
            const auto c = PilotConfig::from_db(rho_db, dpf, dpt);
            const auto n_p = pilot_positions(c, d).size();
            const auto g = build_grid(c, d, qpsk_symbols(d.size() - n_p, 3), unit_pilot_symbols(n_p));
            double total = 0.0, pilot_total = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i) {
                const double e = std::norm(g.cells.flat()[i]);
                total += e;
                if (g.pilot_mask.flat()[i]) pilot_total += e;
            }
            CHECK(total / static_cast<double>(d.size()) == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(pilot_total / static_cast<double>(n_p) == doctest::Approx(g.power.sigma_p2).epsilon(1e-12));
            CHECK(g.power.sigma_d2 / g.power.sigma_p2 == doctest::Approx(c.rho).epsilon(1e-12));
        }
    }
}

TEST_CASE("build_grid places pilots and rejects wrong counts") {
    const GridDims d{72, 8};
    const PilotConfig c{0.5, 6, 4};
    const auto n_p = pilot_positions(c, d).size();
    const auto g = build_grid(c, d, qpsk_symbols(d.size() - n_p, 1), unit_pilot_symbols(n_p));
    const double a_p = std::sqrt(g.power.sigma_p2);
    for (const auto& p : known_pilots(c, d)) {
        CHECK(g.pilot_mask(p.at.sub, p.at.sym) == 1);
        CHECK(g.cells(p.at.sub, p.at.sym) == p.value);
        CHECK(p.value == cplx(a_p, 0.0));
    }
    CHECK_THROWS_AS(build_grid(c, d, qpsk_symbols(d.size() - n_p, 1), unit_pilot_symbols(n_p - 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_grid(c, d, qpsk_symbols(d.size(), 1), unit_pilot_symbols(n_p)), std::invalid_argument);
}

TEST_CASE("qpsk symbols are unit power and seeded") {
    const auto a = qpsk_symbols(1000, 9);
    CHECK(a == qpsk_symbols(1000, 9));
    CHECK(a != qpsk_symbols(1000, 10));
    for (auto s : a) CHECK(std::norm(s) == doctest::Approx(1.0));
    std::set<std::pair<double, double>> points;
    for (auto s : a) points.insert({s.real(), s.imag()});
    CHECK(points.size() == 4);
}

}
