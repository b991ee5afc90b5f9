// Sequence recovery (vector algorithm) and the elimination function built on it.

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frer/frame.hpp"
#include "frer/stream.hpp"

namespace frer {

enum class Decision { pass, discard_duplicate, discard_rogue };

const char* to_string(Decision d) noexcept;

struct Counters {
    std::uint64_t passed = 0;
    std::uint64_t discarded_duplicate = 0;
    std::uint64_t discarded_rogue = 0;
    std::uint64_t tagless = 0;
    std::uint64_t resets = 0;

    friend bool operator==(const Counters&, const Counters&) = default;
};

/// Fixed-length bit window. Bit i stands for sequence (head - i); shift(n)
/// moves every bit n positions toward older indices and clears the n newest.
class HistoryWindow {
public:
    explicit HistoryWindow(std::size_t length);

    [[nodiscard]] std::size_t length() const noexcept { return length_; }
    [[nodiscard]] bool test(std::size_t i) const noexcept;
    void set(std::size_t i) noexcept;
    void shift(std::size_t n) noexcept;
    void clear() noexcept;

private:
    [[nodiscard]] std::size_t slot(std::size_t i) const noexcept { return (head_ + length_ - i) % length_; }

    std::size_t length_;
    std::size_t head_ = 0;
    std::vector<std::uint64_t> words_;
};

struct RecoveryConfig {
    std::size_t history_length = 64;
    Nanoseconds reset_timeout = std::chrono::seconds(2);

    static constexpr std::size_t min_history = 2;
    static constexpr std::size_t max_history = 4096;

    friend bool operator==(const RecoveryConfig&, const RecoveryConfig&) = default;
};

/// Per-stream elimination state. Not internally synchronized: callers hold
/// exclusive access for the duration of each call.
class SequenceRecovery {
public:
    /// Throws std::invalid_argument for a history length outside [2, 4096]
    /// or a non-positive reset timeout.
    explicit SequenceRecovery(StreamHandle stream, RecoveryConfig config = {});

    /// Vector recovery: first copy of each sequence passes, later copies are
    /// duplicates, anything |delta| >= history length away is rogue.
    Decision recover(std::uint16_t seq, Nanoseconds now);

    /// Return to take-any if nothing arrived for reset_timeout.
    bool check_reset(Nanoseconds now);

    void count_tagless() noexcept { ++counters_.tagless; }

    [[nodiscard]] StreamHandle stream() const noexcept { return stream_; }
    [[nodiscard]] bool take_any() const noexcept { return take_any_; }
    [[nodiscard]] std::uint16_t recov_seq() const noexcept { return recov_seq_; }
    [[nodiscard]] std::size_t history_length() const noexcept { return history_.length(); }
    [[nodiscard]] bool history_bit(std::size_t i) const noexcept { return history_.test(i); }
    [[nodiscard]] Nanoseconds last_packet_time() const noexcept { return last_packet_time_; }
    [[nodiscard]] Nanoseconds reset_timeout() const noexcept { return config_.reset_timeout; }
    [[nodiscard]] const RecoveryConfig& config() const noexcept { return config_; }
    [[nodiscard]] const Counters& counters() const noexcept { return counters_; }

    /// Human-readable dump used in diagnostics.
    [[nodiscard]] std::string describe() const;

private:
    StreamHandle stream_;
    RecoveryConfig config_;
    bool take_any_ = true;
    std::uint16_t recov_seq_ = 0;
    HistoryWindow history_;
    Nanoseconds last_packet_time_{0};
    Counters counters_;
};

/// Signed distance seq - reference folded into [-32768, 32767].
[[nodiscard]] constexpr std::int32_t sequence_delta(std::uint16_t seq, std::uint16_t reference) noexcept {
    return static_cast<std::int32_t>(static_cast<std::uint16_t>(seq - reference + 32768u)) - 32768;
}

struct EliminationResult {
    Decision decision = Decision::pass;
    std::optional<Frame> frame;  // set iff decision == pass
    bool tagless = false;

    [[nodiscard]] bool passed() const noexcept { return decision == Decision::pass; }
};

/// Elimination for one frame of `state.stream()`. Tagless frames pass
/// unchanged and are counted; tagged frames go through recover().
[[nodiscard]] EliminationResult eliminate(const Frame& frame, SequenceRecovery& state, Nanoseconds now,
                                          bool strip_rtag = true);

}  // namespace frer
