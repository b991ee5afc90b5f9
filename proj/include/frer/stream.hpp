#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "frer/frame.hpp"

namespace frer {

/// A stream is identified by its VLAN ID, valid range [1, 4094].
class StreamHandle {
public:
    explicit StreamHandle(std::uint16_t vid);

    [[nodiscard]] std::uint16_t vid() const noexcept { return vid_; }
    [[nodiscard]] static bool valid_vid(std::uint32_t vid) noexcept {
        return vid >= constants::min_stream_vid && vid <= constants::max_stream_vid;
    }

    friend constexpr auto operator<=>(const StreamHandle&, const StreamHandle&) = default;

private:
    std::uint16_t vid_;
};

/// Maps parsed headers to a configured stream. Frames of unconfigured VLANs,
/// or untagged frames, are background traffic.
class StreamIdentifier {
public:
    StreamIdentifier() = default;
    explicit StreamIdentifier(std::set<std::uint16_t> vids);

    void add(StreamHandle stream) { vids_.insert(stream.vid()); }
    [[nodiscard]] bool contains(std::uint16_t vid) const { return vids_.count(vid) != 0; }

    [[nodiscard]] std::optional<StreamHandle> identify(const ParsedHeaders& headers) const;

private:
    std::set<std::uint16_t> vids_;
};

[[nodiscard]] inline std::optional<StreamHandle> identify_stream(const ParsedHeaders& headers,
                                                                 const StreamIdentifier& configured) {
    return configured.identify(headers);
}

}  // namespace frer
