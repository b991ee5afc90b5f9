#include "frer/netsim.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace frer::sim {

namespace {

constexpr int max_hops = 64;

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) noexcept {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xFF;
        h *= 0x100000001b3ull;
    }
    return h;
}

MacAddress host_mac(std::size_t node_index) {
    return MacAddress{0x02, 0x00, 0x00, 0x00, static_cast<std::uint8_t>(node_index >> 8),
                      static_cast<std::uint8_t>(node_index & 0xFF)};
}

struct FrameArrival {
    PortId port;
    Frame frame;
    int hops = 0;
};
struct Emit {
    PortId port;
    Frame frame;
    int hops = 0;
};
struct LinkChange {
    std::size_t link = 0;
    bool up = true;
};
struct ResetTimer {
    std::size_t function = 0;
};
struct Sweep {};
struct GeneratorFire {
    std::size_t traffic = 0;
    std::uint32_t index = 0;
};

using Payload = std::variant<FrameArrival, Emit, LinkChange, ResetTimer, Sweep, GeneratorFire>;

struct Event {
    SimTime time;
    std::uint64_t order = 0;
    Payload payload;
};

// min-heap on (time, order)
struct Later {
    bool operator()(const Event& a, const Event& b) const noexcept {
        return a.time != b.time ? a.time > b.time : a.order > b.order;
    }
};

}  // namespace

SimTime serialization_delay(std::size_t octets, std::uint64_t bit_rate_bps) noexcept {
    // octets stay far below 2^64 / 8e12, so no overflow
    const std::uint64_t bits = static_cast<std::uint64_t>(octets) * 8u * 1'000'000'000'000u;
    const auto ps = (bits + bit_rate_bps - 1) / bit_rate_bps;
    return SimTime(static_cast<std::int64_t>(ps));
}

std::pair<std::string, std::string> split_port(const std::string& qualified) {
    const auto dot = qualified.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == qualified.size() ||
        qualified.find('.', dot + 1) != std::string::npos) {
        throw ConfigError("port reference '" + qualified + "' is not of the form node.port");
    }
    return {qualified.substr(0, dot), qualified.substr(dot + 1)};
}

std::array<std::uint8_t, ProbePayload::size> ProbePayload::encode() const noexcept {
    return {'F',
            'R',
            static_cast<std::uint8_t>(kind),
            0,
            static_cast<std::uint8_t>(flow >> 8),
            static_cast<std::uint8_t>(flow & 0xFF),
            0,
            0,
            static_cast<std::uint8_t>(index >> 24),
            static_cast<std::uint8_t>((index >> 16) & 0xFF),
            static_cast<std::uint8_t>((index >> 8) & 0xFF),
            static_cast<std::uint8_t>(index & 0xFF)};
}

std::optional<ProbePayload> ProbePayload::decode(std::span<const std::uint8_t> b) noexcept {
    if (b.size() < size || b[0] != 'F' || b[1] != 'R' || (b[2] != 1 && b[2] != 2)) {
        return std::nullopt;
    }
    ProbePayload p;
    p.kind = static_cast<Kind>(b[2]);
    p.flow = static_cast<std::uint16_t>((b[4] << 8) | b[5]);
    p.index = (std::uint32_t{b[8]} << 24) | (std::uint32_t{b[9]} << 16) | (std::uint32_t{b[10]} << 8) | b[11];
    return p;
}

struct Simulation::Impl {
    struct PortState {
        std::size_t node = 0;
        std::string name;
        std::optional<std::size_t> link;
    };
    struct NodeState {
        NodeConfig config;
        std::vector<PortId> ports;
        MacAddress mac{};
    };
    struct LinkState {
        LinkConfig config;
        PortId a;
        PortId b;
        bool up = true;
    };
    struct FunctionState {
        StreamFunctionConfig config;
        std::size_t node = 0;
        std::vector<PortId> egress;
        std::optional<SequenceRecovery> recovery;
        std::optional<ReplicationEntry> replication;
        bool timer_armed = false;
    };
    struct TrafficState {
        TrafficSpec spec;
        std::size_t src_node = 0;
        std::size_t dst_node = 0;
        std::vector<MeasurementRecord> records;
        std::uint32_t next_to_send = 0;
    };

    NetworkConfig config;
    std::vector<NodeState> nodes;
    std::vector<PortState> ports;
    std::vector<LinkState> links;
    std::vector<FunctionState> functions;
    std::vector<TrafficState> traffic;
    std::map<std::string, std::size_t> node_index;
    std::map<std::string, PortId> port_index;
    std::map<std::string, std::size_t> link_index;
    std::map<std::pair<std::uint32_t, std::uint16_t>, std::size_t> function_by_port;
    StreamIdentifier identifier;

    std::vector<Event> queue;
    std::uint64_t next_order = 0;
    SimTime clock{0};
    std::mt19937_64 rng;
    SimulationStats stats;
    std::uint64_t digest = 0xcbf29ce484222325ull;

    explicit Impl(NetworkConfig cfg) : config(std::move(cfg)), rng(config.seed) {
        build_nodes();
        build_links();
        build_functions();
        if (config.jitter < Nanoseconds::zero()) {
            throw ConfigError("jitter must be non-negative");
        }
        if (config.frer.reset_check == ResetCheck::sweep) {
            if (config.frer.sweep_interval <= Nanoseconds::zero()) {
                throw ConfigError("frer.sweep_interval must be positive");
            }
            if (std::any_of(functions.begin(), functions.end(), [](const auto& f) { return f.recovery.has_value(); })) {
                push(to_sim(config.frer.sweep_interval), Sweep{});
            }
        }
    }

    void build_nodes() {
        for (const auto& n : config.nodes) {
            if (n.name.empty() || n.name.find('.') != std::string::npos) {
                throw ConfigError("node name '" + n.name + "' is empty or contains '.'");
            }
            if (node_index.count(n.name) != 0) {
                throw ConfigError("node '" + n.name + "' defined twice");
            }
            if (n.ports.empty()) {
                throw ConfigError("node '" + n.name + "' has no ports");
            }
            if (n.kind == NodeKind::host && n.ports.size() != 1) {
                throw ConfigError("host '" + n.name + "' must have exactly one port");
            }
            if (n.processing_delay < Nanoseconds::zero()) {
                throw ConfigError("node '" + n.name + "': processing delay must be non-negative");
            }
            const std::size_t idx = nodes.size();
            node_index[n.name] = idx;
            NodeState state{n, {}, host_mac(idx)};
            for (const auto& p : n.ports) {
                const std::string qualified = n.name + "." + p;
                if (p.empty() || p.find('.') != std::string::npos) {
                    throw ConfigError("port '" + qualified + "' has an invalid name");
                }
                if (port_index.count(qualified) != 0) {
                    throw ConfigError("port '" + qualified + "' defined twice");
                }
                const PortId id{static_cast<std::uint32_t>(ports.size())};
                port_index[qualified] = id;
                ports.push_back(PortState{idx, qualified, std::nullopt});
                state.ports.push_back(id);
            }
            nodes.push_back(std::move(state));
        }
    }

    PortId resolve(const std::string& qualified, const std::string& context) const {
        (void)split_port(qualified);
        auto it = port_index.find(qualified);
        if (it == port_index.end()) {
            throw ConfigError(context + ": port '" + qualified + "' does not exist");
        }
        return it->second;
    }

    void build_links() {
        for (const auto& l : config.links) {
            const std::string ctx = "link '" + l.id + "'";
            if (l.id.empty() || link_index.count(l.id) != 0) {
                throw ConfigError(ctx + ": id empty or duplicated");
            }
            const PortId a = resolve(l.a, ctx);
            const PortId b = resolve(l.b, ctx);
            if (a == b) {
                throw ConfigError(ctx + ": both endpoints are '" + l.a + "'");
            }
            for (PortId p : {a, b}) {
                if (ports[p.value].link) {
                    throw ConfigError(ctx + ": port '" + ports[p.value].name + "' already attached to link '" +
                                      links[*ports[p.value].link].config.id + "'");
                }
            }
            if (l.bit_rate_bps == 0) {
                throw ConfigError(ctx + ": bit_rate must be positive");
            }
            if (l.propagation_delay < Nanoseconds::zero()) {
                throw ConfigError(ctx + ": propagation delay must be non-negative");
            }
            bool up = true;
            for (std::size_t i = 0; i < l.schedule.size(); ++i) {
                if (l.schedule[i].at < Nanoseconds::zero() || (i > 0 && l.schedule[i].at <= l.schedule[i - 1].at)) {
                    throw ConfigError(ctx + ": schedule times must be non-negative and strictly increasing");
                }
            }
            const std::size_t idx = links.size();
            link_index[l.id] = idx;
            ports[a.value].link = idx;
            ports[b.value].link = idx;
            for (const auto& change : l.schedule) {
                if (change.at == Nanoseconds::zero()) {
                    up = change.up;
                }
            }
            links.push_back(LinkState{l, a, b, up});
            for (const auto& change : l.schedule) {
                if (change.at > Nanoseconds::zero()) {
                    push(to_sim(change.at), LinkChange{idx, change.up});
                }
            }
        }
    }

    void build_functions() {
        std::set<std::uint16_t> seen_streams;
        for (auto vid : config.frer.streams) {
            if (!StreamHandle::valid_vid(vid)) {
                throw ConfigError("stream " + std::to_string(vid) + ": VLAN ID outside [1, 4094]");
            }
            if (!seen_streams.insert(vid).second) {
                throw ConfigError("stream " + std::to_string(vid) + " listed twice");
            }
            identifier.add(StreamHandle(vid));
        }
        for (std::size_t i = 0; i < config.frer.functions.size(); ++i) {
            const auto& f = config.frer.functions[i];
            const std::string ctx = "frer function #" + std::to_string(i) + " (" + f.node + ", stream " +
                                    std::to_string(f.stream) + ")";
            auto nit = node_index.find(f.node);
            if (nit == node_index.end()) {
                throw ConfigError(ctx + ": node does not exist");
            }
            if (nodes[nit->second].config.kind != NodeKind::bridge) {
                throw ConfigError(ctx + ": FRER functions run on bridges only");
            }
            if (!identifier.contains(f.stream)) {
                throw ConfigError(ctx + ": stream is not configured");
            }
            if (f.ingress.empty() || f.egress.empty()) {
                throw ConfigError(ctx + ": needs at least one ingress and one egress port");
            }
            auto local = [&](const std::string& name) { return resolve(f.node + "." + name, ctx); };

            FunctionState state{f, nit->second, {}, std::nullopt, std::nullopt, false};
            for (const auto& p : f.ingress) {
                const PortId id = local(p);
                if (!function_by_port.emplace(std::make_pair(id.value, f.stream), functions.size()).second) {
                    throw ConfigError(ctx + ": ingress port '" + p + "' already handles this stream");
                }
            }
            std::set<std::string> egress_seen;
            for (const auto& p : f.egress) {
                if (!egress_seen.insert(p).second) {
                    throw ConfigError(ctx + ": egress port '" + p + "' listed twice");
                }
                state.egress.push_back(local(p));
            }
            try {
                if (f.eliminate) {
                    state.recovery.emplace(StreamHandle(f.stream), f.eliminate->recovery);
                }
                if (f.replicate) {
                    state.replication.emplace(StreamHandle(f.stream), state.egress, f.replicate->skip_if_tagged);
                }
            } catch (const std::invalid_argument& e) {
                throw ConfigError(ctx + ": " + e.what());
            }
            functions.push_back(std::move(state));
        }
    }

    template <typename T>
    void push(SimTime at, T&& payload) {
        queue.push_back(Event{at, next_order++, Payload(std::forward<T>(payload))});
        std::push_heap(queue.begin(), queue.end(), Later{});
    }

    SimTime jitter() {
        if (config.jitter <= Nanoseconds::zero()) {
            return SimTime::zero();
        }
        std::uniform_int_distribution<std::int64_t> dist(0, to_sim(config.jitter).count());
        return SimTime(dist(rng));
    }

    std::optional<SimTime> transmit_now(PortId from, const Frame& frame, SimTime at, int hops) {
        const auto& port = ports.at(from.value);
        if (!port.link) {
            ++stats.dropped_unconnected;
            return std::nullopt;
        }
        const auto& link = links[*port.link];
        if (!link.up) {
            ++stats.dropped_link_down;
            return std::nullopt;
        }
        const PortId to = link.a == from ? link.b : link.a;
        const SimTime arrival = at + serialization_delay(frame.size(), link.config.bit_rate_bps) +
                                to_sim(link.config.propagation_delay) + jitter();
        push(arrival, FrameArrival{to, frame, hops});
        return arrival;
    }

    void send(PortId from, Frame frame, SimTime at, int hops) {
        if (at == clock) {
            transmit_now(from, frame, at, hops);
        } else {
            push(at, Emit{from, std::move(frame), hops});
        }
    }

    void arm_timer(std::size_t fi) {
        auto& f = functions[fi];
        if (config.frer.reset_check != ResetCheck::exact || f.timer_armed || !f.recovery || f.recovery->take_any()) {
            return;
        }
        f.timer_armed = true;
        push(to_sim(f.recovery->last_packet_time() + f.recovery->reset_timeout()), ResetTimer{fi});
    }

    void on_frame(PortId at_port, const Frame& frame, int hops) {
        ++stats.frames_delivered;
        const auto& node = nodes[ports[at_port.value].node];
        if (node.config.kind == NodeKind::host) {
            on_host_frame(ports[at_port.value].node, frame);
            return;
        }
        if (hops >= max_hops) {
            ++stats.dropped_unroutable;
            return;
        }

        ParsedHeaders headers;
        try {
            headers = parse_frame(frame.octets());
        } catch (const CodecError&) {
            ++stats.dropped_malformed;
            return;
        }
        const auto stream = identifier.identify(headers);
        if (!stream) {
            ++stats.dropped_unroutable;
            return;
        }
        auto fit = function_by_port.find({at_port.value, stream->vid()});
        if (fit == function_by_port.end()) {
            ++stats.dropped_unroutable;
            return;
        }
        const std::size_t fi = fit->second;
        auto& fn = functions[fi];
        const Nanoseconds now_ns = to_ns_floor(clock);

        Frame current = frame.with_ingress(at_port, now_ns);
        try {
            if (fn.recovery) {
                if (config.frer.reset_check == ResetCheck::exact) {
                    fn.recovery->check_reset(now_ns);
                }
                auto result = eliminate(current, *fn.recovery, now_ns, fn.config.eliminate->strip_rtag);
                arm_timer(fi);
                if (!result.passed()) {
                    ++stats.dropped_elimination;
                    return;
                }
                current = std::move(*result.frame);
            }

            const SimTime depart = clock + to_sim(node.config.processing_delay);
            if (fn.replication) {
                for (auto& [port, copy] : replicate(current, *fn.replication, config.mtu)) {
                    send(port, std::move(copy), depart, hops + 1);
                }
            } else {
                for (PortId port : fn.egress) {
                    send(port, current, depart, hops + 1);
                }
            }
        } catch (const CodecError&) {
            ++stats.dropped_malformed;
        }
    }

    std::optional<ProbePayload> probe_of(const Frame& frame) const {
        try {
            const auto h = parse_frame(frame.octets());
            if (h.inner_ethertype != ProbePayload::ethertype) {
                return std::nullopt;
            }
            return ProbePayload::decode(frame.octets().subspan(h.payload_offset));
        } catch (const CodecError&) {
            return std::nullopt;
        }
    }

    Frame probe_frame(const TrafficState& t, ProbePayload payload) const {
        const bool request = payload.kind == ProbePayload::Kind::request;
        const auto& from = nodes[request ? t.src_node : t.dst_node];
        const auto& to = nodes[request ? t.dst_node : t.src_node];
        VlanTag vlan;
        vlan.vid = request ? t.spec.stream : t.spec.reply_stream;
        const auto body = payload.encode();
        return Frame(build_vlan_frame(to.mac, from.mac, vlan, ProbePayload::ethertype, body, t.spec.size), config.mtu);
    }

    void send_request(std::size_t ti) {
        auto& t = traffic[ti];
        const std::uint32_t index = t.next_to_send++;
        t.records.push_back(MeasurementRecord{index, clock, std::nullopt});
        const auto& src = nodes[t.src_node];
        send(src.ports.front(), probe_frame(t, ProbePayload{ProbePayload::Kind::request, static_cast<std::uint16_t>(ti), index}),
             clock + to_sim(src.config.processing_delay), 0);

        const std::uint32_t next = index + 1;
        if (next >= t.spec.count) {
            return;
        }
        if (t.spec.mode == TrafficMode::periodic) {
            push(to_sim(t.spec.start) + to_sim(t.spec.interval) * next, GeneratorFire{ti, next});
        } else {
            push(clock + to_sim(t.spec.reply_timeout), GeneratorFire{ti, next});
        }
    }

    void on_host_frame(std::size_t node, const Frame& frame) {
        const auto probe = probe_of(frame);
        if (!probe || probe->flow >= traffic.size()) {
            ++stats.dropped_unroutable;
            return;
        }
        auto& t = traffic[probe->flow];
        if (probe->kind == ProbePayload::Kind::request && t.dst_node == node) {
            const auto& self = nodes[node];
            ProbePayload reply = *probe;
            reply.kind = ProbePayload::Kind::reply;
            send(self.ports.front(), probe_frame(t, reply), clock + to_sim(self.config.processing_delay), 0);
            return;
        }
        if (probe->kind == ProbePayload::Kind::reply && t.src_node == node && probe->index < t.records.size()) {
            auto& rec = t.records[probe->index];
            if (rec.reply_time) {
                ++stats.duplicate_replies;
                return;
            }
            rec.reply_time = clock;
            if (t.spec.mode == TrafficMode::adaptive && t.next_to_send == probe->index + 1 &&
                t.next_to_send < t.spec.count) {
                send_request(probe->flow);
            }
            return;
        }
        ++stats.dropped_unroutable;
    }

    void trace(const Event& e) {
        digest = fnv_mix(digest, static_cast<std::uint64_t>(e.time.count()));
        digest = fnv_mix(digest, e.payload.index());
        std::visit(
            [this](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, FrameArrival> || std::is_same_v<T, Emit>) {
                    digest = fnv_mix(digest, p.port.value);
                    for (auto b : p.frame.octets()) {
                        digest = (digest ^ b) * 0x100000001b3ull;
                    }
                } else if constexpr (std::is_same_v<T, LinkChange>) {
                    digest = fnv_mix(digest, p.link * 2 + (p.up ? 1 : 0));
                } else if constexpr (std::is_same_v<T, ResetTimer>) {
                    digest = fnv_mix(digest, p.function);
                } else if constexpr (std::is_same_v<T, GeneratorFire>) {
                    digest = fnv_mix(digest, (std::uint64_t{p.traffic} << 32) | p.index);
                }
            },
            e.payload);
    }

    void dispatch(Event& e) {
        ++stats.events;
        trace(e);
        std::visit(
            [this](auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, FrameArrival>) {
                    on_frame(p.port, p.frame, p.hops);
                } else if constexpr (std::is_same_v<T, Emit>) {
                    transmit_now(p.port, p.frame, clock, p.hops);
                } else if constexpr (std::is_same_v<T, LinkChange>) {
                    links[p.link].up = p.up;
                } else if constexpr (std::is_same_v<T, ResetTimer>) {
                    auto& f = functions[p.function];
                    f.timer_armed = false;
                    if (!f.recovery->check_reset(to_ns_floor(clock))) {
                        arm_timer(p.function);
                    }
                } else if constexpr (std::is_same_v<T, Sweep>) {
                    for (auto& f : functions) {
                        if (f.recovery) {
                            f.recovery->check_reset(to_ns_floor(clock));
                        }
                    }
                    push(clock + to_sim(config.frer.sweep_interval), Sweep{});
                } else if constexpr (std::is_same_v<T, GeneratorFire>) {
                    if (traffic[p.traffic].next_to_send == p.index) {
                        send_request(p.traffic);
                    }
                }
            },
            e.payload);
    }

    void run_until(SimTime t_end) {
        if (t_end < clock) {
            throw std::invalid_argument("run_until: end time precedes current time");
        }
        while (!queue.empty() && queue.front().time <= t_end) {
            std::pop_heap(queue.begin(), queue.end(), Later{});
            Event e = std::move(queue.back());
            queue.pop_back();
            clock = e.time;
            dispatch(e);
        }
        clock = t_end;
    }
};

Simulation::Simulation(NetworkConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}
Simulation::~Simulation() = default;
Simulation::Simulation(Simulation&&) noexcept = default;
Simulation& Simulation::operator=(Simulation&&) noexcept = default;

SimTime Simulation::now() const noexcept { return impl_->clock; }

PortId Simulation::port(const std::string& qualified) const { return impl_->resolve(qualified, "lookup"); }

std::size_t Simulation::link(const std::string& id) const {
    auto it = impl_->link_index.find(id);
    if (it == impl_->link_index.end()) {
        throw ConfigError("link '" + id + "' does not exist");
    }
    return it->second;
}

std::string Simulation::port_name(PortId p) const { return impl_->ports.at(p.value).name; }

std::size_t Simulation::node_count() const noexcept { return impl_->nodes.size(); }
std::size_t Simulation::link_count() const noexcept { return impl_->links.size(); }
bool Simulation::link_up(std::size_t link) const { return impl_->links.at(link).up; }

std::vector<std::string> Simulation::elimination_ports() const {
    std::vector<std::string> out;
    for (const auto& f : impl_->functions) {
        if (f.recovery) {
            for (const auto& p : f.config.ingress) {
                out.push_back(f.config.node + "." + p);
            }
        }
    }
    return out;
}

std::vector<std::string> Simulation::replication_ports() const {
    std::vector<std::string> out;
    for (const auto& f : impl_->functions) {
        if (f.replication) {
            for (const auto& p : f.config.ingress) {
                out.push_back(f.config.node + "." + p);
            }
        }
    }
    return out;
}

std::optional<SimTime> Simulation::transmit(PortId from, const Frame& frame, SimTime at) {
    if (at < impl_->clock) {
        throw std::invalid_argument("transmit: emission time precedes current time");
    }
    if (from.value >= impl_->ports.size()) {
        throw std::out_of_range("transmit: unknown port");
    }
    return impl_->transmit_now(from, frame, at, 0);
}

void Simulation::run_until(SimTime t_end) { impl_->run_until(t_end); }

void Simulation::set_link_state(std::size_t link, bool up, SimTime at) {
    if (at < impl_->clock) {
        throw std::invalid_argument("set_link_state: time precedes current time");
    }
    if (link >= impl_->links.size()) {
        throw std::out_of_range("set_link_state: unknown link");
    }
    impl_->push(at, LinkChange{link, up});
}

SinkHandle Simulation::attach_traffic(const TrafficSpec& spec) {
    auto& im = *impl_;
    const std::string ctx = "traffic '" + spec.name + "'";
    auto host = [&](const std::string& name, const char* role) {
        auto it = im.node_index.find(name);
        if (it == im.node_index.end() || im.nodes[it->second].config.kind != NodeKind::host) {
            throw ConfigError(ctx + ": " + role + " '" + name + "' is not a host");
        }
        return it->second;
    };
    const std::size_t src = host(spec.source, "source");
    const std::size_t dst = host(spec.destination, "destination");
    if (src == dst) {
        throw ConfigError(ctx + ": source and destination are the same host");
    }
    if (spec.count < 1) {
        throw ConfigError(ctx + ": count must be at least 1");
    }
    if (spec.size < 64 || spec.size > im.config.mtu) {
        throw ConfigError(ctx + ": size " + std::to_string(spec.size) + " outside [64, " +
                          std::to_string(im.config.mtu) + "]");
    }
    if (spec.mode == TrafficMode::periodic && spec.interval <= Nanoseconds::zero()) {
        throw ConfigError(ctx + ": interval must be positive");
    }
    if (spec.mode == TrafficMode::adaptive && spec.reply_timeout <= Nanoseconds::zero()) {
        throw ConfigError(ctx + ": reply_timeout must be positive");
    }
    for (auto vid : {spec.stream, spec.reply_stream}) {
        if (!im.identifier.contains(vid)) {
            throw ConfigError(ctx + ": stream " + std::to_string(vid) + " is not configured");
        }
    }
    if (to_sim(spec.start) < im.clock) {
        throw ConfigError(ctx + ": start precedes current time");
    }
    if (im.traffic.size() >= 0xFFFF) {
        throw ConfigError(ctx + ": too many traffic sources");
    }
    const std::size_t ti = im.traffic.size();
    im.traffic.push_back(Impl::TrafficState{spec, src, dst, {}, 0});
    im.traffic.back().records.reserve(spec.count);
    im.push(to_sim(spec.start), GeneratorFire{ti, 0});
    return SinkHandle{ti};
}

const std::vector<MeasurementRecord>& Simulation::records(SinkHandle sink) const {
    return impl_->traffic.at(sink.index).records;
}

const TrafficSpec& Simulation::traffic(SinkHandle sink) const { return impl_->traffic.at(sink.index).spec; }

std::size_t Simulation::traffic_count() const noexcept { return impl_->traffic.size(); }

std::vector<EliminationSnapshot> Simulation::elimination_counters() const {
    std::vector<EliminationSnapshot> out;
    for (const auto& f : impl_->functions) {
        if (f.recovery) {
            out.push_back(EliminationSnapshot{f.config.node, f.config.stream, f.config.ingress, f.recovery->counters()});
        }
    }
    return out;
}

const SimulationStats& Simulation::stats() const noexcept { return impl_->stats; }

std::uint64_t Simulation::trace_digest() const noexcept { return impl_->digest; }

}  // namespace frer::sim
