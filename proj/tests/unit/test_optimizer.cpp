#include <pilotadapt/errors.hpp>
#include <pilotadapt/optimizer.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace pilotadapt;

namespace {

const GridDims kDims;

// smooth stand-in for the estimation MSE: worse with sparser pilots, faster
// fading, larger delay spread and lower pilot SNR
double stub_mse(const PilotConfig& c, const ChannelStatistics& s, double snr) {
    const double t = 2.0 * std::numbers::pi * s.f_d * c.dpt * kDims.t_sym;
    const double f = 2.0 * std::numbers::pi * s.tau_rms * c.dpf * kDims.delta_f;
    return 0.05 * t * t + 0.02 * f * f + 1.0 / (snr * c.dpf);
}

double reference_objective(const PilotConfig& c, const ChannelStatistics& s, const LinkCondition& cond,
                           const MseProvider& mse) {
    const double delta = pilot_density(c, kDims);
    const double sp = 1.0 / ((1.0 - delta) * c.rho + delta);
    const double sd = c.rho * sp;
    const double x = std::numbers::pi * s.f_d / kDims.delta_f;
    const double ici = x * x * sd / 3.0;
    const double m = mse(c, s, sp / cond.noise_power);
    const double sinr = sd * 1.0 / (cond.noise_power + ici + m * sd);
    return (1.0 - delta) * std::log2(1.0 + sinr);
}

}  // namespace

TEST_SUITE("optimizer") {

TEST_CASE("default sets") {
    const auto s = FeasibleSets::defaults();
    CHECK(s.size() == 360);
    CHECK(s.freq_spacings == std::vector<int>{2, 4, 6, 8, 10, 12});
    CHECK(s.time_spacings.size() == 10);
    CHECK(s.powers.size() == 6);
    CHECK(s.contains(PilotConfig::from_db(-3.0, 6, 4)));
    CHECK(!s.contains(PilotConfig::from_db(-4.0, 6, 4)));
    CHECK(!s.contains(PilotConfig::from_db(-3.0, 5, 4)));
    CHECK(!s.contains(PilotConfig::from_db(-3.0, 6, 11)));
}

TEST_CASE("set validation") {
    auto s = FeasibleSets::defaults();
    s.freq_spacings = {1, 2};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = FeasibleSets::defaults();
    s.time_spacings.clear();
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = FeasibleSets::defaults();
    s.powers.push_back(-1.0);
    CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("post-equalization SINR") {
    CHECK(post_eq_sinr({1.0, 0.01, 0.0, 0.0}) == doctest::Approx(100.0));
    CHECK(post_eq_sinr({0.5, 0.01, 0.01, 0.02}) == doctest::Approx(0.5 / 0.03));
    CHECK(post_eq_sinr({1.0, 0.0, 0.0, 0.1}) == doctest::Approx(10.0));
    CHECK_THROWS_AS(post_eq_sinr({1.0, 0.0, 0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(post_eq_sinr({1.0, -0.1, 0.0, 0.0}), std::invalid_argument);
    CHECK(achievable_rate(0.5, 3.0) == doctest::Approx(1.0));
    CHECK(achievable_rate(0.0, 3.0) == 0.0);
}

TEST_CASE("pilot SNR uses the config's own power split") {
    const PilotConfig c{0.5, 6, 4};
    const auto cond = LinkCondition::from_snr_db(10.0);
    CHECK(pilot_snr(c, kDims, cond) == doctest::Approx(power_allocation(c, kDims).sigma_p2 * 10.0));
    CHECK(std::isinf(pilot_snr(c, kDims, LinkCondition{100.0, 0.0})));
}

TEST_CASE("utilization grows with either spacing") {
    for (int dpf = 2; dpf <= 12; dpf += 2) {
        for (int dpt = 1; dpt < 10; ++dpt) {
            CHECK(spectrum_utilization({1.0, dpf, dpt + 1}, kDims) > spectrum_utilization({1.0, dpf, dpt}, kDims));
            if (dpf < 12)
                CHECK(spectrum_utilization({1.0, dpf + 2, dpt}, kDims) > spectrum_utilization({1.0, dpf, dpt}, kDims));
        }
    }
}

TEST_CASE("preferred ordering") {
    auto r = [](double obj, double rho, int dpf, int dpt) { return OptimizationResult{PilotConfig{rho, dpf, dpt}, obj}; };
    CHECK(preferred(r(2.0, 1, 2, 1), r(1.0, 1, 12, 10)));
    CHECK(preferred(r(1.0, 1, 4, 4), r(1.0, 1, 2, 4)));
    CHECK(preferred(r(1.0, 1, 4, 4), r(1.0, 0.5, 4, 4)));
    CHECK(preferred(r(1.0, 1, 4, 6), r(1.0, 1, 6, 4)));
    CHECK(!preferred(r(1.0, 1, 6, 4), r(1.0, 1, 4, 6)));
}

TEST_CASE("optimize equals an independent re-enumeration") {
    const auto sets = FeasibleSets::defaults();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> snr(-5.0, 35.0), fd(0.0, 1400.0), tau(0.0, 1.5e-6);
    for (int k = 0; k < 20; ++k) {
        const ChannelStatistics st{{}, fd(rng), tau(rng)};
        const auto cond = LinkCondition::from_snr_db(snr(rng));
        const auto got = optimize(st, cond, sets, kDims, stub_mse);

        // reverse enumeration order, own comparison
        OptimizationResult best{};
        bool first = true;
        for (auto it = sets.time_spacings.rbegin(); it != sets.time_spacings.rend(); ++it) {
            for (auto jt = sets.powers.rbegin(); jt != sets.powers.rend(); ++jt) {
                for (auto kt = sets.freq_spacings.rbegin(); kt != sets.freq_spacings.rend(); ++kt) {
                    const PilotConfig c{*jt, *kt, *it};
                    const double v = reference_objective(c, st, cond, stub_mse);
                    const bool better = first || v > best.objective ||
                                        (v == best.objective &&
                                         std::tuple(c.dpf * c.dpt, c.rho, -c.dpf) >
                                             std::tuple(best.config.dpf * best.config.dpt, best.config.rho,
                                                        -best.config.dpf));
                    if (better) best = {c, v};
                    first = false;
                }
            }
        }
        CHECK(got.config == best.config);
        CHECK(got.objective == best.objective);
        CHECK(got.objective == rate_objective(got.config, kDims, cond, st.f_d,
                                              stub_mse(got.config, st, pilot_snr(got.config, kDims, cond))));
    }
}

TEST_CASE("tie-break is independent of set order") {
    // constant objective for every config: largest dpf*dpt wins, then rho, then lower dpf
    auto sets = FeasibleSets::defaults();
    const MseProvider flat = [](const PilotConfig&, const ChannelStatistics&, double) { return 0.0; };
    const ChannelStatistics st{{}, 0.0, 0.0};
    auto zero_rate = LinkCondition{-300.0, 1e300};
    const auto a = optimize(st, zero_rate, sets, kDims, flat);
    CHECK(a.objective == 0.0);
    CHECK(a.config.dpf == 12);
    CHECK(a.config.dpt == 10);
    CHECK(a.config.rho == sets.powers.back());

    std::mt19937_64 rng(7);
    for (int k = 0; k < 5; ++k) {
        std::shuffle(sets.powers.begin(), sets.powers.end(), rng);
        std::shuffle(sets.freq_spacings.begin(), sets.freq_spacings.end(), rng);
        std::shuffle(sets.time_spacings.begin(), sets.time_spacings.end(), rng);
        const auto b = optimize(st, zero_rate, sets, kDims, flat);
        CHECK(b.config == a.config);
        const ChannelStatistics st2{{}, 700.0, 300e-9};
        const auto cond = LinkCondition::from_snr_db(15.0);
        CHECK(optimize(st2, cond, sets, kDims, stub_mse).config ==
              optimize(st2, cond, FeasibleSets::defaults(), kDims, stub_mse).config);
    }
}

TEST_CASE("provider errors propagate") {
    const MseProvider boom = [](const PilotConfig&, const ChannelStatistics&, double) -> double {
        throw std::runtime_error("oracle failed");
    };
    CHECK_THROWS_AS(optimize({}, LinkCondition::from_snr_db(10.0), FeasibleSets::defaults(), kDims, boom),
                    std::runtime_error);
    CHECK_THROWS_AS(optimize({}, LinkCondition::from_snr_db(10.0), FeasibleSets::defaults(), kDims, MseProvider{}),
                    std::invalid_argument);
}

TEST_CASE("feedback overhead") {
    const auto sets = FeasibleSets::defaults();
    CHECK(feedback_bits_explicit(sets) == 9);
    CHECK(feedback_rate_explicit(sets, kDims) == doctest::Approx(83.478).epsilon(1e-4));
}

}
