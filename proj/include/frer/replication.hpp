#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "frer/frame.hpp"
#include "frer/stream.hpp"

namespace frer {

/// Per-stream 16-bit sequence number source. Wraps 65535 -> 0.
class SequenceGenerator {
public:
    explicit SequenceGenerator(StreamHandle stream, std::uint16_t start = 0) : stream_(stream), next_seq_(start) {}

    /// Returns the current value and advances by one modulo 2^16.
    std::uint16_t next_sequence() noexcept { return next_seq_++; }

    [[nodiscard]] std::uint16_t peek() const noexcept { return next_seq_; }
    [[nodiscard]] StreamHandle stream() const noexcept { return stream_; }

private:
    StreamHandle stream_;
    std::uint16_t next_seq_;
};

class ReplicationEntry {
public:
    /// Throws std::invalid_argument if `egress_ports` is empty or has duplicates.
    ReplicationEntry(StreamHandle stream, std::vector<PortId> egress_ports, bool skip_if_tagged = true,
                     std::uint16_t first_seq = 0);

    [[nodiscard]] StreamHandle stream() const noexcept { return generator_.stream(); }
    [[nodiscard]] const std::vector<PortId>& egress_ports() const noexcept { return egress_; }
    [[nodiscard]] bool skip_if_tagged() const noexcept { return skip_if_tagged_; }
    [[nodiscard]] SequenceGenerator& generator() noexcept { return generator_; }
    [[nodiscard]] const SequenceGenerator& generator() const noexcept { return generator_; }

private:
    std::vector<PortId> egress_;
    SequenceGenerator generator_;
    bool skip_if_tagged_;
};

using Replicas = std::vector<std::pair<PortId, Frame>>;

/// Tags (if needed) and fans out one frame to every egress port of `entry`.
/// An untagged frame consumes exactly one sequence number. A tagged frame is
/// forwarded untouched when skip_if_tagged, else CodecError(already_tagged).
/// Throws std::invalid_argument if the frame's VLAN is not entry.stream().
[[nodiscard]] Replicas replicate(const Frame& frame, ReplicationEntry& entry,
                                 std::size_t mtu = constants::default_mtu);

}  // namespace frer
