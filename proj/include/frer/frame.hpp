// Ethernet / 802.1Q / R-tag frame codec.
//
// Octet layout handled here (all 16-bit fields in network byte order):
//
//   0      6      12     14     16        18        20      22
//   | dst  | src  | TPID | TCI  | 0xF1C1  | reserved| seq   | ethertype | payload
//
// The R-tag sits directly after the single VLAN tag. Untagged and VLAN-only
// frames are parsed too; only VLAN-tagged frames can carry an R-tag.

#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frer {

namespace constants {
inline constexpr std::size_t mac_size = 6;
inline constexpr std::size_t eth_header_size = 14;
inline constexpr std::size_t vlan_tag_size = 4;
inline constexpr std::size_t rtag_size = 6;
inline constexpr std::size_t default_mtu = 2048;

inline constexpr std::uint16_t tpid_8021q = 0x8100;
inline constexpr std::uint16_t ethertype_rtag = 0xF1C1;

inline constexpr std::uint16_t min_stream_vid = 1;
inline constexpr std::uint16_t max_stream_vid = 4094;
}  // namespace constants

enum class CodecErrc {
    truncated_frame,
    malformed_vlan,
    frame_too_large,
    already_tagged,
    no_vlan,
    no_rtag,
};

const char* to_string(CodecErrc e) noexcept;

class CodecError : public std::runtime_error {
public:
    explicit CodecError(CodecErrc code);
    CodecError(CodecErrc code, const std::string& detail);

    [[nodiscard]] CodecErrc code() const noexcept { return code_; }

private:
    CodecErrc code_;
};

/// Identifies a port (interface) of a node. Opaque to the codec.
struct PortId {
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(PortId, PortId) = default;
};

using Nanoseconds = std::chrono::duration<std::int64_t, std::nano>;
using MacAddress = std::array<std::uint8_t, constants::mac_size>;

struct VlanTag {
    std::uint16_t tpid = constants::tpid_8021q;
    std::uint8_t pcp = 0;  // 3 bits
    bool dei = false;
    std::uint16_t vid = 0;  // 12 bits

    [[nodiscard]] constexpr std::uint16_t tci() const noexcept {
        return static_cast<std::uint16_t>(((pcp & 0x7u) << 13) | (dei ? 0x1000u : 0u) | (vid & 0x0FFFu));
    }
    [[nodiscard]] static constexpr VlanTag from_tci(std::uint16_t tci) noexcept {
        return VlanTag{constants::tpid_8021q, static_cast<std::uint8_t>(tci >> 13), (tci & 0x1000u) != 0,
                       static_cast<std::uint16_t>(tci & 0x0FFFu)};
    }
    friend constexpr bool operator==(const VlanTag&, const VlanTag&) = default;
};

struct RTag {
    std::uint16_t ethertype = constants::ethertype_rtag;
    std::uint16_t reserved = 0;
    std::uint16_t sequence = 0;
    friend constexpr bool operator==(const RTag&, const RTag&) = default;
};

struct ParsedHeaders {
    MacAddress dst_mac{};
    MacAddress src_mac{};
    std::optional<VlanTag> vlan;
    std::optional<RTag> rtag;
    std::uint16_t inner_ethertype = 0;
    std::size_t payload_offset = 0;
};

/// An immutable frame: raw octets plus optional ingress metadata.
/// Every rewrite produces a new Frame.
class Frame {
public:
    Frame() = default;
    explicit Frame(std::vector<std::uint8_t> octets, std::size_t mtu = constants::default_mtu);
    Frame(std::vector<std::uint8_t> octets, std::optional<PortId> ingress_port,
          std::optional<Nanoseconds> arrival_time, std::size_t mtu = constants::default_mtu);

    [[nodiscard]] std::span<const std::uint8_t> octets() const noexcept { return octets_; }
    [[nodiscard]] std::size_t size() const noexcept { return octets_.size(); }
    [[nodiscard]] const std::optional<PortId>& ingress_port() const noexcept { return ingress_port_; }
    [[nodiscard]] const std::optional<Nanoseconds>& arrival_time() const noexcept { return arrival_time_; }

    [[nodiscard]] Frame with_ingress(PortId port, Nanoseconds at) const;

    /// Octet equality only; metadata is ignored.
    friend bool operator==(const Frame& a, const Frame& b) noexcept { return a.octets_ == b.octets_; }

private:
    std::vector<std::uint8_t> octets_;
    std::optional<PortId> ingress_port_;
    std::optional<Nanoseconds> arrival_time_;
};

/// Parse the L2 headers. Throws CodecError(truncated_frame | malformed_vlan).
[[nodiscard]] ParsedHeaders parse_frame(std::span<const std::uint8_t> octets);

/// Insert an R-tag carrying `seq` after the VLAN tag.
/// Throws CodecError(no_vlan | already_tagged | frame_too_large).
[[nodiscard]] Frame push_rtag(const Frame& frame, std::uint16_t seq, std::size_t mtu = constants::default_mtu);

/// Remove the R-tag, returning the restored frame and its sequence number.
/// Throws CodecError(no_rtag).
[[nodiscard]] std::pair<Frame, std::uint16_t> pop_rtag(const Frame& frame);

/// True iff the two octets following the VLAN TCI are 0xF1C1. Never throws.
[[nodiscard]] bool has_rtag(std::span<const std::uint8_t> octets) noexcept;
[[nodiscard]] inline bool has_rtag(const Frame& frame) noexcept { return has_rtag(frame.octets()); }

/// Builds a VLAN-tagged frame of exactly `total_size` octets (payload zero
/// filled unless given). Used by traffic generators and tests.
[[nodiscard]] std::vector<std::uint8_t> build_vlan_frame(const MacAddress& dst, const MacAddress& src,
                                                         VlanTag vlan, std::uint16_t inner_ethertype,
                                                         std::span<const std::uint8_t> payload,
                                                         std::size_t total_size);

}  // namespace frer
