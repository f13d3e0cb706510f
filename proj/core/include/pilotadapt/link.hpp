#pragma once

#include <pilotadapt/codebook.hpp>
#include <pilotadapt/estimator.hpp>
#include <pilotadapt/optimizer.hpp>

#include <optional>
#include <string>

namespace pilotadapt {

enum class FeedbackMode { explicit_config, implicit_indices };

std::string to_string(FeedbackMode mode);
FeedbackMode parse_feedback_mode(std::string_view s);

/// One feedback message per epoch. Explicit carries the chosen config,
/// implicit carries the matched codeword indices; both carry the indices and
/// config for tracing, but only the mode's payload is read by the transmitter.
struct FeedbackMessage {
    std::size_t epoch = 0;
    FeedbackMode mode = FeedbackMode::explicit_config;
    PilotConfig config;
    CodebookIndices indices;
    int bit_cost = 0;
};

/// `epoch=<k> mode=<explicit|implicit> rho_db=<x> dpf=<n> dpt=<n> m=<i> l=<j> bits=<b>`
/// (explicit omits m/l, implicit omits rho_db/dpf/dpt).
std::string format_trace(const FeedbackMessage& msg);

struct EpochState {
    std::size_t epoch = 0;
    PilotConfig active;
    std::optional<PilotConfig> pending;
    std::optional<ChannelEstimate> last_estimate;
};

/// Bootstrap config used before any feedback: rho = -3 dB, dpf = 6, dpt = 4.
PilotConfig bootstrap_config();
EpochState initial_state(PilotConfig bootstrap = bootstrap_config());

struct ReceiverSettings {
    FeedbackMode mode = FeedbackMode::explicit_config;
    std::size_t n_dt = 40;
    std::size_t n_df = 62;
};

struct ReceiverOutput {
    FeedbackMessage message;
    EpochState state;
    CorrelationEstimates statistics;
    ChannelStatistics matched;
    OptimizationResult decision;
};

/// Receiver side of one epoch: LS + interpolation with the active config,
/// correlation estimation, codebook match, exhaustive optimization, feedback.
/// Throws ProtocolError if the window does not carry the active config's pilots.
ReceiverOutput receiver_epoch(const ResourceGrid& received, const EpochState& state, const Codebook& cb,
                              const FeasibleSets& sets, const LinkCondition& cond, const ReceiverSettings& settings,
                              const MseProvider& mse);

/// Transmitter side: config to use for the next epoch. Implicit feedback
/// re-runs optimize from the indices with the shared sets and noise power.
PilotConfig transmitter_apply(const FeedbackMessage& msg, const EpochState& state, const FeasibleSets& sets,
                              const Codebook& cb, const LinkCondition& assumed, const GridDims& dims,
                              const MseProvider& mse);

/// Moves to epoch k + 1 with `next` in force.
EpochState advance(EpochState state, const PilotConfig& next);

}  // namespace pilotadapt
