#include "frer/frame.hpp"

#include <algorithm>

namespace frer {

namespace {

std::uint16_t load_be16(std::span<const std::uint8_t> b, std::size_t at) noexcept {
    return static_cast<std::uint16_t>((b[at] << 8) | b[at + 1]);
}

void store_be16(std::uint8_t* out, std::uint16_t v) noexcept {
    out[0] = static_cast<std::uint8_t>(v >> 8);
    out[1] = static_cast<std::uint8_t>(v & 0xFF);
}

constexpr std::size_t vlan_tci_end = constants::eth_header_size - 2 + constants::vlan_tag_size;  // 16

}  // namespace

const char* to_string(CodecErrc e) noexcept {
    switch (e) {
        case CodecErrc::truncated_frame: return "TruncatedFrame";
        case CodecErrc::malformed_vlan: return "MalformedVlan";
        case CodecErrc::frame_too_large: return "FrameTooLarge";
        case CodecErrc::already_tagged: return "AlreadyTagged";
        case CodecErrc::no_vlan: return "NoVlan";
        case CodecErrc::no_rtag: return "NoRtag";
    }
    return "unknown";
}

CodecError::CodecError(CodecErrc code) : std::runtime_error(to_string(code)), code_(code) {}

CodecError::CodecError(CodecErrc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

Frame::Frame(std::vector<std::uint8_t> octets, std::size_t mtu) : Frame(std::move(octets), std::nullopt, std::nullopt, mtu) {}

Frame::Frame(std::vector<std::uint8_t> octets, std::optional<PortId> ingress_port,
             std::optional<Nanoseconds> arrival_time, std::size_t mtu)
    : octets_(std::move(octets)), ingress_port_(ingress_port), arrival_time_(arrival_time) {
    if (octets_.size() > mtu) {
        throw CodecError(CodecErrc::frame_too_large,
                         std::to_string(octets_.size()) + " octets exceeds MTU " + std::to_string(mtu));
    }
}

Frame Frame::with_ingress(PortId port, Nanoseconds at) const {
    Frame copy = *this;
    copy.ingress_port_ = port;
    copy.arrival_time_ = at;
    return copy;
}

ParsedHeaders parse_frame(std::span<const std::uint8_t> octets) {
    if (octets.size() < constants::eth_header_size) {
        throw CodecError(CodecErrc::truncated_frame, std::to_string(octets.size()) + " octets");
    }
    ParsedHeaders h;
    std::copy_n(octets.begin(), constants::mac_size, h.dst_mac.begin());
    std::copy_n(octets.begin() + constants::mac_size, constants::mac_size, h.src_mac.begin());

    std::size_t cursor = 12;
    std::uint16_t type = load_be16(octets, cursor);
    if (type == constants::tpid_8021q) {
        if (octets.size() < cursor + constants::vlan_tag_size) {
            throw CodecError(CodecErrc::malformed_vlan, "tag cut short");
        }
        h.vlan = VlanTag::from_tci(load_be16(octets, cursor + 2));
        cursor += constants::vlan_tag_size;
        if (octets.size() < cursor + 2) {
            throw CodecError(CodecErrc::truncated_frame, "missing ethertype after VLAN tag");
        }
        type = load_be16(octets, cursor);
        if (type == constants::ethertype_rtag) {
            if (octets.size() < cursor + constants::rtag_size + 2) {
                throw CodecError(CodecErrc::truncated_frame, "R-tag cut short");
            }
            // reserved field is ignored on decode
            h.rtag = RTag{constants::ethertype_rtag, load_be16(octets, cursor + 2), load_be16(octets, cursor + 4)};
            cursor += constants::rtag_size;
            type = load_be16(octets, cursor);
        }
    }
    h.inner_ethertype = type;
    h.payload_offset = cursor + 2;
    return h;
}

Frame push_rtag(const Frame& frame, std::uint16_t seq, std::size_t mtu) {
    const auto in = frame.octets();
    const ParsedHeaders h = parse_frame(in);
    if (!h.vlan) {
        throw CodecError(CodecErrc::no_vlan);
    }
    if (h.rtag) {
        throw CodecError(CodecErrc::already_tagged, "sequence " + std::to_string(h.rtag->sequence));
    }

    std::vector<std::uint8_t> out(in.size() + constants::rtag_size);
    std::copy_n(in.begin(), vlan_tci_end, out.begin());
    std::uint8_t* tag = out.data() + vlan_tci_end;
    store_be16(tag, constants::ethertype_rtag);
    store_be16(tag + 2, 0);
    store_be16(tag + 4, seq);
    std::copy(in.begin() + vlan_tci_end, in.end(), out.begin() + vlan_tci_end + constants::rtag_size);
    return Frame(std::move(out), frame.ingress_port(), frame.arrival_time(), mtu);
}

std::pair<Frame, std::uint16_t> pop_rtag(const Frame& frame) {
    const auto in = frame.octets();
    const ParsedHeaders h = parse_frame(in);
    if (!h.rtag) {
        throw CodecError(CodecErrc::no_rtag);
    }
    std::vector<std::uint8_t> out;
    out.reserve(in.size() - constants::rtag_size);
    out.insert(out.end(), in.begin(), in.begin() + vlan_tci_end);
    out.insert(out.end(), in.begin() + vlan_tci_end + constants::rtag_size, in.end());
    // shrinking never exceeds the original frame's MTU
    return {Frame(std::move(out), frame.ingress_port(), frame.arrival_time(), in.size()), h.rtag->sequence};
}

bool has_rtag(std::span<const std::uint8_t> octets) noexcept {
    if (octets.size() < vlan_tci_end + 2) {
        return false;
    }
    return load_be16(octets, 12) == constants::tpid_8021q && load_be16(octets, vlan_tci_end) == constants::ethertype_rtag;
}

std::vector<std::uint8_t> build_vlan_frame(const MacAddress& dst, const MacAddress& src, VlanTag vlan,
                                           std::uint16_t inner_ethertype, std::span<const std::uint8_t> payload,
                                           std::size_t total_size) {
    constexpr std::size_t header = constants::eth_header_size + constants::vlan_tag_size;
    if (total_size < header + payload.size()) {
        throw CodecError(CodecErrc::truncated_frame,
                         "frame size " + std::to_string(total_size) + " cannot hold headers and payload");
    }
    std::vector<std::uint8_t> out(total_size, 0);
    std::copy(dst.begin(), dst.end(), out.begin());
    std::copy(src.begin(), src.end(), out.begin() + 6);
    store_be16(out.data() + 12, vlan.tpid);
    store_be16(out.data() + 14, vlan.tci());
    store_be16(out.data() + 16, inner_ethertype);
    std::copy(payload.begin(), payload.end(), out.begin() + header);
    return out;
}

}  // namespace frer
