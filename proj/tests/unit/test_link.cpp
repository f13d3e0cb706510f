#include <pilotadapt/errors.hpp>
#include <pilotadapt/link.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pilotadapt;

namespace {

const GridDims kWin{72, 300};

double stub_mse(const PilotConfig& c, const ChannelStatistics& s, double snr) {
    const double t = 2.0 * std::numbers::pi * s.f_d * c.dpt * kWin.t_sym;
    const double f = 2.0 * std::numbers::pi * s.tau_rms * c.dpf * kWin.delta_f;
    return 0.05 * t * t + 0.02 * f * f + 1.0 / (snr * c.dpf);
}

ResourceGrid received_window(const PilotConfig& c, double f_d, double tau, std::uint64_t seed) {
    const auto n_p = pilot_positions(c, kWin).size();
    const auto g = build_grid(c, kWin, qpsk_symbols(kWin.size() - n_p, seed), unit_pilot_symbols(n_p));
    const auto ch = generate_channel({f_d, tau}, kWin, seed + 1);
    return apply_channel(g, ch, LinkCondition::from_snr_db(30.0), f_d, seed + 2);
}

}  // namespace

TEST_SUITE("link") {

TEST_CASE("bootstrap and mode parsing") {
    const auto b = bootstrap_config();
    CHECK(b.rho_db() == doctest::Approx(-3.0));
    CHECK(b.dpf == 6);
    CHECK(b.dpt == 4);
    const auto s = initial_state();
    CHECK(s.epoch == 0);
    CHECK(s.active == b);
    CHECK(!s.pending);
    CHECK_THROWS_AS(initial_state(PilotConfig{1.0, 0, 1}), ConfigError);

    CHECK(parse_feedback_mode("explicit") == FeedbackMode::explicit_config);
    CHECK(parse_feedback_mode("implicit") == FeedbackMode::implicit_indices);
    CHECK(to_string(FeedbackMode::implicit_indices) == "implicit");
    CHECK_THROWS_AS(parse_feedback_mode("Explicit"), std::invalid_argument);
}

TEST_CASE("trace lines") {
    FeedbackMessage m{3, FeedbackMode::explicit_config, PilotConfig::from_db(-7.0, 12, 5), {5, 3}, 9};
    CHECK(format_trace(m) == "epoch=3 mode=explicit rho_db=-7 dpf=12 dpt=5 bits=9");
    m.mode = FeedbackMode::implicit_indices;
    m.bit_cost = 5;
    CHECK(format_trace(m) == "epoch=3 mode=implicit m=5 l=3 bits=5");
}

TEST_CASE("receiver epoch") {
    const auto cb = build_default_codebook(kWin.t_sym, kWin.delta_f);
    const auto sets = FeasibleSets::defaults();
    const auto cond = LinkCondition::from_snr_db(30.0);
    auto state = initial_state();
    state.epoch = 4;
    const auto rx = received_window(state.active, 1150.0, 221.5e-9, 10);

    for (auto mode : {FeedbackMode::explicit_config, FeedbackMode::implicit_indices}) {
        const auto out = receiver_epoch(rx, state, cb, sets, cond, ReceiverSettings{mode}, stub_mse);
        CHECK(out.message.epoch == 4);
        CHECK(out.message.mode == mode);
        CHECK(out.message.bit_cost == (mode == FeedbackMode::explicit_config ? 9 : 5));
        CHECK(out.matched.indices == out.message.indices);
        CHECK(out.matched.indices.temporal == 5);
        CHECK(sets.contains(out.message.config));
        CHECK(out.message.config == optimize(out.matched, cond, sets, kWin, stub_mse).config);
        CHECK(out.state.pending == out.decision.config);
        CHECK(out.state.active == state.active);
        CHECK(out.state.last_estimate.has_value());
        CHECK(out.statistics.time.lags.size() == 41);
        CHECK(out.statistics.frequency.lags.size() == 63);
    }
}

TEST_CASE("receiver rejects a window with another pilot layout") {
    const auto cb = build_default_codebook(kWin.t_sym, kWin.delta_f);
    const auto rx = received_window(PilotConfig::from_db(-3.0, 4, 2), 250.0, 221.5e-9, 3);
    CHECK_THROWS_AS(receiver_epoch(rx, initial_state(), cb, FeasibleSets::defaults(), LinkCondition::from_snr_db(20.0),
                                   {}, stub_mse),
                    ProtocolError);
}

TEST_CASE("transmitter applies feedback") {
    const auto cb = build_default_codebook(kWin.t_sym, kWin.delta_f);
    const auto sets = FeasibleSets::defaults();
    const auto cond = LinkCondition::from_snr_db(18.0);
    const auto state = initial_state();

    FeedbackMessage m{0, FeedbackMode::explicit_config, PilotConfig::from_db(-9.0, 10, 3), {2, 1}, 9};
    CHECK(transmitter_apply(m, state, sets, cb, cond, kWin, stub_mse) == m.config);

    m.mode = FeedbackMode::implicit_indices;
    const auto expect = optimize(statistics(cb, {2, 1}), cond, sets, kWin, stub_mse).config;
    CHECK(transmitter_apply(m, state, sets, cb, cond, kWin, stub_mse) == expect);

    SUBCASE("protocol errors") {
        auto late = m;
        late.epoch = 1;
        CHECK_THROWS_AS(transmitter_apply(late, state, sets, cb, cond, kWin, stub_mse), ProtocolError);
        auto bad_idx = m;
        bad_idx.indices = {6, 0};
        CHECK_THROWS_AS(transmitter_apply(bad_idx, state, sets, cb, cond, kWin, stub_mse), ProtocolError);
        auto bad_cfg = m;
        bad_cfg.mode = FeedbackMode::explicit_config;
        bad_cfg.config = PilotConfig::from_db(-3.0, 3, 4);
        CHECK_THROWS_AS(transmitter_apply(bad_cfg, state, sets, cb, cond, kWin, stub_mse), ProtocolError);
    }
}

TEST_CASE("implicit and explicit agree when both ends share the noise estimate") {
    const auto cb = build_default_codebook(kWin.t_sym, kWin.delta_f);
    const auto sets = FeasibleSets::defaults();
    const auto cond = LinkCondition::from_snr_db(25.0);
    const auto state = initial_state();
    const auto rx = received_window(state.active, 550.0, 791.2e-9, 21);
    const auto ex = receiver_epoch(rx, state, cb, sets, cond, {FeedbackMode::explicit_config}, stub_mse);
    const auto im = receiver_epoch(rx, state, cb, sets, cond, {FeedbackMode::implicit_indices}, stub_mse);
    CHECK(transmitter_apply(ex.message, state, sets, cb, cond, kWin, stub_mse) ==
          transmitter_apply(im.message, state, sets, cb, cond, kWin, stub_mse));
}

TEST_CASE("static flat channel settles on one config") {
    const auto cb = build_default_codebook(kWin.t_sym, kWin.delta_f);
    const auto sets = FeasibleSets::defaults();
    const auto cond = LinkCondition::from_snr_db(40.0);
    auto state = initial_state();
    std::vector<PilotConfig> decided;
    int bits = 0;
    for (int k = 0; k < 5; ++k) {
        const auto rx = received_window(state.active, 0.0, 0.0, 100 + k);
        const auto out = receiver_epoch(rx, state, cb, sets, cond, {}, stub_mse);
        bits += out.message.bit_cost;
        decided.push_back(out.decision.config);
        state = advance(out.state, transmitter_apply(out.message, out.state, sets, cb, cond, kWin, stub_mse));
    }
    CHECK(decided[3] == decided[4]);
    CHECK(state.active == decided[4]);
    CHECK(state.epoch == 5);
    CHECK(bits == 5 * 9);
}

TEST_CASE("advance switches config one epoch later") {
    auto s = initial_state();
    s.pending = PilotConfig::from_db(-5.0, 8, 2);
    const auto next = advance(s, *s.pending);
    CHECK(next.epoch == 1);
    CHECK(next.active == *s.pending);
    CHECK(!next.pending);
    CHECK_THROWS_AS(advance(s, PilotConfig{1.0, 6, 0}), ConfigError);
}

}
