// Brute-force reference model for sequence recovery and the randomized
// stream generator used to compare it against SequenceRecovery.
//
// The oracle works on unwrapped absolute indices, so it never has to reason
// about 16-bit modular distance. That makes it a referee for wraparound.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "frer/recovery.hpp"

namespace frer::testkit {

class OracleState {
public:
    explicit OracleState(std::size_t history_length);

    [[nodiscard]] bool fresh() const noexcept { return fresh_; }
    [[nodiscard]] std::int64_t max_accepted() const noexcept { return max_accepted_; }
    [[nodiscard]] std::size_t history_length() const noexcept { return history_; }
    [[nodiscard]] const std::set<std::int64_t>& accepted() const noexcept { return accepted_; }

    [[nodiscard]] std::string describe() const;

private:
    friend Decision oracle_recover(OracleState& state, std::int64_t abs_seq);

    std::size_t history_;
    bool fresh_ = true;
    std::int64_t max_accepted_ = 0;
    std::set<std::int64_t> accepted_;
};

Decision oracle_recover(OracleState& state, std::int64_t abs_seq);

struct SequencePoint {
    std::uint16_t seq = 0;
    std::int64_t abs = 0;
    friend bool operator==(const SequencePoint&, const SequencePoint&) = default;
};

struct PerturbedStream {
    std::size_t length = 0;           // base stream length before perturbation
    std::uint64_t seed = 0;
    double duplication = 0.0;         // probability an element is emitted twice
    std::size_t reorder_window = 0;   // max displacement in positions
    double loss = 0.0;                // probability an element is dropped
    std::size_t max_loss_run = 0;     // cap on consecutive drops
    std::int64_t wrap_offset = 0;     // absolute index of the first element
};

/// Deterministic under `spec.seed`. Absolute indices are wrap_offset + i;
/// the 16-bit sequence is the index modulo 65536.
[[nodiscard]] std::vector<SequencePoint> generate_stream(const PerturbedStream& spec);

/// Largest forward jump over the running maximum the generator can produce.
[[nodiscard]] constexpr std::size_t max_forward_jump(const PerturbedStream& spec) noexcept {
    return spec.reorder_window + spec.max_loss_run + 1;
}

/// Implementation under test: receives the 16-bit sequence, returns a decision.
/// `describe` dumps its state for divergence reports.
struct RecoveryUnderTest {
    std::function<Decision(std::uint16_t)> recover;
    std::function<std::string()> describe;
};

/// Wraps a SequenceRecovery (time fixed at zero, so no resets).
[[nodiscard]] RecoveryUnderTest wrap(SequenceRecovery& recovery);

struct Divergence {
    std::size_t index = 0;
    SequencePoint point;
    Decision implementation = Decision::pass;
    Decision oracle = Decision::pass;
    std::string implementation_state;  // after the divergent step
    std::string oracle_state;
};

struct EquivalenceReport {
    std::size_t decisions = 0;
    std::optional<Divergence> divergence;

    [[nodiscard]] bool ok() const noexcept { return !divergence.has_value(); }
    [[nodiscard]] std::string summary() const;
};

/// Feeds `stream` to both sides and stops at the first disagreement.
[[nodiscard]] EquivalenceReport check_equivalence(const RecoveryUnderTest& impl, OracleState& oracle,
                                                  const std::vector<SequencePoint>& stream);

}  // namespace frer::testkit
