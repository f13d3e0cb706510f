#include <pilotadapt/link.hpp>

#include <fmt/format.h>

#include <stdexcept>

namespace pilotadapt {

std::string to_string(FeedbackMode mode) {
    return mode == FeedbackMode::explicit_config ? "explicit" : "implicit";
}

FeedbackMode parse_feedback_mode(std::string_view s) {
    if (s == "explicit") return FeedbackMode::explicit_config;
    if (s == "implicit") return FeedbackMode::implicit_indices;
    throw std::invalid_argument(fmt::format("unknown feedback mode '{}'", s));
}

std::string format_trace(const FeedbackMessage& msg) {
    if (msg.mode == FeedbackMode::explicit_config) {
        return fmt::format("epoch={} mode=explicit rho_db={:.6g} dpf={} dpt={} bits={}", msg.epoch,
                           msg.config.rho_db(), msg.config.dpf, msg.config.dpt, msg.bit_cost);
    }
    return fmt::format("epoch={} mode=implicit m={} l={} bits={}", msg.epoch, msg.indices.temporal,
                       msg.indices.spectral, msg.bit_cost);
}

PilotConfig bootstrap_config() { return PilotConfig::from_db(-3.0, 6, 4); }

EpochState initial_state(PilotConfig bootstrap) {
    bootstrap.validate();
    EpochState s;
    s.active = bootstrap;
    return s;
}

ReceiverOutput receiver_epoch(const ResourceGrid& received, const EpochState& state, const Codebook& cb,
                              const FeasibleSets& sets, const LinkCondition& cond, const ReceiverSettings& settings,
                              const MseProvider& mse) {
    const auto& dims = received.dims;
    if (!(received.pilot_mask == pilot_mask(state.active, dims))) {
        throw ProtocolError(fmt::format("epoch {}: received pilot layout does not match active config dpf={} dpt={}",
                                        state.epoch, state.active.dpf, state.active.dpt));
    }

    ReceiverOutput out;
    // 1. channel estimate and statistics over the window
    const auto sent = known_pilots(state.active, dims);
    auto estimate = interpolate_2d(ls_at_pilots(received, sent), dims);
    out.statistics = estimate_correlations(estimate, settings.n_dt, settings.n_df);
    // 2. codebook projection
    out.matched = statistics(cb, match(out.statistics.time, out.statistics.frequency, cb));
    // 3-4. MSE per candidate and exhaustive search
    out.decision = optimize(out.matched, cond, sets, dims, mse);
    // 5. feedback
    out.message.epoch = state.epoch;
    out.message.mode = settings.mode;
    out.message.config = out.decision.config;
    out.message.indices = out.matched.indices;
    out.message.bit_cost =
        settings.mode == FeedbackMode::explicit_config ? feedback_bits_explicit(sets) : feedback_bits_implicit(cb);

    out.state = state;
    out.state.pending = out.decision.config;
    out.state.last_estimate = std::move(estimate);
    return out;
}

PilotConfig transmitter_apply(const FeedbackMessage& msg, const EpochState& state, const FeasibleSets& sets,
                              const Codebook& cb, const LinkCondition& assumed, const GridDims& dims,
                              const MseProvider& mse) {
    if (msg.epoch != state.epoch) {
        throw ProtocolError(fmt::format("feedback for epoch {} received in epoch {}", msg.epoch, state.epoch));
    }
    if (msg.mode == FeedbackMode::explicit_config) {
        if (!sets.contains(msg.config)) {
            throw ProtocolError("explicit feedback config is not in the shared feasible sets");
        }
        return msg.config;
    }
    if (msg.indices.temporal >= cb.temporal.size() || msg.indices.spectral >= cb.spectral.size()) {
        throw ProtocolError(fmt::format("implicit feedback indices ({}, {}) outside codebook of size ({}, {})",
                                        msg.indices.temporal, msg.indices.spectral, cb.temporal.size(),
                                        cb.spectral.size()));
    }
    return optimize(statistics(cb, msg.indices), assumed, sets, dims, mse).config;
}

EpochState advance(EpochState state, const PilotConfig& next) {
    next.validate();
    state.epoch += 1;
    state.active = next;
    state.pending.reset();
    return state;
}

}  // namespace pilotadapt
