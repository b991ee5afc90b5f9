#include "frer/replication.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace frer {

ReplicationEntry::ReplicationEntry(StreamHandle stream, std::vector<PortId> egress_ports, bool skip_if_tagged,
                                   std::uint16_t first_seq)
    : egress_(std::move(egress_ports)), generator_(stream, first_seq), skip_if_tagged_(skip_if_tagged) {
    if (egress_.empty()) {
        throw std::invalid_argument("replication entry needs at least one egress port");
    }
    std::set<PortId> seen;
    for (auto p : egress_) {
        if (!seen.insert(p).second) {
            throw std::invalid_argument("duplicate egress port " + std::to_string(p.value));
        }
    }
}

Replicas replicate(const Frame& frame, ReplicationEntry& entry, std::size_t mtu) {
    const ParsedHeaders h = parse_frame(frame.octets());
    if (!h.vlan || h.vlan->vid != entry.stream().vid()) {
        throw std::invalid_argument("frame does not belong to stream " + std::to_string(entry.stream().vid()));
    }

    Frame out;
    if (h.rtag) {
        if (!entry.skip_if_tagged()) {
            throw CodecError(CodecErrc::already_tagged, "sequence " + std::to_string(h.rtag->sequence));
        }
        out = frame;
    } else {
        out = push_rtag(frame, entry.generator().next_sequence(), mtu);
    }

    Replicas replicas;
    replicas.reserve(entry.egress_ports().size());
    for (auto port : entry.egress_ports()) {
        replicas.emplace_back(port, out);
    }
    return replicas;
}

}  // namespace frer
