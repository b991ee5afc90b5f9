#include "frer/stream.hpp"

#include <stdexcept>

namespace frer {

StreamHandle::StreamHandle(std::uint16_t vid) : vid_(vid) {
    if (!valid_vid(vid)) {
        throw std::invalid_argument("stream VLAN ID " + std::to_string(vid) + " outside [1, 4094]");
    }
}

StreamIdentifier::StreamIdentifier(std::set<std::uint16_t> vids) {
    for (auto vid : vids) {
        add(StreamHandle(vid));
    }
}

std::optional<StreamHandle> StreamIdentifier::identify(const ParsedHeaders& headers) const {
    if (!headers.vlan || !StreamHandle::valid_vid(headers.vlan->vid) || !contains(headers.vlan->vid)) {
        return std::nullopt;
    }
    return StreamHandle(headers.vlan->vid);
}

}  // namespace frer
