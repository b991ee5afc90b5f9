#include "frer/recovery.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace frer {

const char* to_string(Decision d) noexcept {
    switch (d) {
        case Decision::pass: return "Pass";
        case Decision::discard_duplicate: return "DiscardDuplicate";
        case Decision::discard_rogue: return "DiscardRogue";
    }
    return "unknown";
}

HistoryWindow::HistoryWindow(std::size_t length) : length_(length), words_((length + 63) / 64, 0) {
    if (length == 0) {
        throw std::invalid_argument("history window length must be positive");
    }
}

bool HistoryWindow::test(std::size_t i) const noexcept {
    if (i >= length_) {
        return false;
    }
    const std::size_t s = slot(i);
    return (words_[s / 64] >> (s % 64)) & 1u;
}

void HistoryWindow::set(std::size_t i) noexcept {
    if (i >= length_) {
        return;
    }
    const std::size_t s = slot(i);
    words_[s / 64] |= std::uint64_t{1} << (s % 64);
}

void HistoryWindow::shift(std::size_t n) noexcept {
    if (n >= length_) {
        clear();
        return;
    }
    // the n slots that become bits 0..n-1 held the n oldest entries
    for (std::size_t k = 0; k < n; ++k) {
        head_ = (head_ + 1) % length_;
        words_[head_ / 64] &= ~(std::uint64_t{1} << (head_ % 64));
    }
}

void HistoryWindow::clear() noexcept {
    std::fill(words_.begin(), words_.end(), 0);
    head_ = 0;
}

SequenceRecovery::SequenceRecovery(StreamHandle stream, RecoveryConfig config)
    : stream_(stream), config_(config), history_(config.history_length) {
    if (config.history_length < RecoveryConfig::min_history || config.history_length > RecoveryConfig::max_history) {
        throw std::invalid_argument("history length " + std::to_string(config.history_length) +
                                    " outside [2, 4096]");
    }
    if (config.reset_timeout <= Nanoseconds::zero()) {
        throw std::invalid_argument("reset timeout must be positive");
    }
}

Decision SequenceRecovery::recover(std::uint16_t seq, Nanoseconds now) {
    last_packet_time_ = now;

    if (take_any_) {
        take_any_ = false;
        recov_seq_ = seq;
        history_.clear();
        history_.set(0);
        ++counters_.passed;
        return Decision::pass;
    }

    const auto window = static_cast<std::int32_t>(history_.length());
    const std::int32_t delta = sequence_delta(seq, recov_seq_);

    if (delta >= window || delta <= -window) {
        ++counters_.discarded_rogue;
        return Decision::discard_rogue;
    }
    if (delta <= 0) {
        const auto age = static_cast<std::size_t>(-delta);
        if (history_.test(age)) {
            ++counters_.discarded_duplicate;
            return Decision::discard_duplicate;
        }
        history_.set(age);
        ++counters_.passed;
        return Decision::pass;
    }

    history_.shift(static_cast<std::size_t>(delta));
    history_.set(0);
    recov_seq_ = seq;
    ++counters_.passed;
    return Decision::pass;
}

bool SequenceRecovery::check_reset(Nanoseconds now) {
    if (take_any_ || now - last_packet_time_ < config_.reset_timeout) {
        return false;
    }
    take_any_ = true;
    history_.clear();
    ++counters_.resets;
    return true;
}

std::string SequenceRecovery::describe() const {
    std::ostringstream os;
    os << "stream=" << stream_.vid() << " take_any=" << take_any_ << " recov_seq=" << recov_seq_
       << " H=" << history_.length() << " last_packet_ns=" << last_packet_time_.count() << " history=[";
    bool first = true;
    for (std::size_t i = 0; i < history_.length(); ++i) {
        if (history_.test(i)) {
            os << (first ? "" : ",") << i;
            first = false;
        }
    }
    os << "] passed=" << counters_.passed << " dup=" << counters_.discarded_duplicate
       << " rogue=" << counters_.discarded_rogue << " tagless=" << counters_.tagless
       << " resets=" << counters_.resets;
    return os.str();
}

EliminationResult eliminate(const Frame& frame, SequenceRecovery& state, Nanoseconds now, bool strip_rtag) {
    const ParsedHeaders h = parse_frame(frame.octets());
    if (h.vlan && h.vlan->vid != state.stream().vid()) {
        throw std::invalid_argument("frame does not belong to stream " + std::to_string(state.stream().vid()));
    }
    if (!h.rtag) {
        state.count_tagless();
        return EliminationResult{Decision::pass, frame, true};
    }

    const Decision d = state.recover(h.rtag->sequence, now);
    if (d != Decision::pass) {
        return EliminationResult{d, std::nullopt, false};
    }
    if (!strip_rtag) {
        return EliminationResult{d, frame, false};
    }
    return EliminationResult{d, pop_rtag(frame).first, false};
}

}  // namespace frer
