// Deterministic discrete-event simulator hosting FRER functions on bridge
// ports. Single-threaded: one Simulation owns all of its state.
//
// Delay model per hop: serialization (8 * octets / bit_rate) + propagation,
// plus an optional per-node processing delay and optional seeded jitter.
// No queuing. Internal clock resolution is one picosecond so that
// serialization at multi-gigabit rates stays exact.

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "frer/frame.hpp"
#include "frer/recovery.hpp"
#include "frer/replication.hpp"
#include "frer/stream.hpp"

namespace frer::sim {

using SimTime = std::chrono::duration<std::int64_t, std::pico>;

[[nodiscard]] constexpr SimTime to_sim(Nanoseconds ns) noexcept { return std::chrono::duration_cast<SimTime>(ns); }
[[nodiscard]] constexpr Nanoseconds to_ns_floor(SimTime t) noexcept { return std::chrono::floor<Nanoseconds>(t); }

/// 8 * octets / bit_rate, rounded up to the next picosecond.
[[nodiscard]] SimTime serialization_delay(std::size_t octets, std::uint64_t bit_rate_bps) noexcept;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class NodeKind { host, bridge };

struct NodeConfig {
    std::string name;
    NodeKind kind = NodeKind::bridge;
    std::vector<std::string> ports;
    Nanoseconds processing_delay{0};
    friend bool operator==(const NodeConfig&, const NodeConfig&) = default;
};

struct LinkStateChange {
    Nanoseconds at{0};
    bool up = true;
    friend bool operator==(const LinkStateChange&, const LinkStateChange&) = default;
};

struct LinkConfig {
    std::string id;
    std::string a;  // "node.port"
    std::string b;
    Nanoseconds propagation_delay{0};
    std::uint64_t bit_rate_bps = 1'000'000'000;
    std::vector<LinkStateChange> schedule;
    friend bool operator==(const LinkConfig&, const LinkConfig&) = default;
};

struct EliminationConfig {
    RecoveryConfig recovery;
    bool strip_rtag = true;
    friend bool operator==(const EliminationConfig&, const EliminationConfig&) = default;
};

struct ReplicationConfig {
    bool skip_if_tagged = true;
    friend bool operator==(const ReplicationConfig&, const ReplicationConfig&) = default;
};

/// What a bridge does with frames of `stream` arriving on any `ingress` port:
/// optional elimination (one state shared by all ingress ports), then either
/// replication with sequence generation or plain forwarding to `egress`.
struct StreamFunctionConfig {
    std::string node;
    std::uint16_t stream = 0;
    std::vector<std::string> ingress;
    std::vector<std::string> egress;
    std::optional<EliminationConfig> eliminate;
    std::optional<ReplicationConfig> replicate;
    friend bool operator==(const StreamFunctionConfig&, const StreamFunctionConfig&) = default;
};

enum class ResetCheck {
    exact,  // timer at last_packet_time + reset_timeout
    sweep,  // every sweep_interval, like a periodic management poll
};

struct FrerConfig {
    std::vector<std::uint16_t> streams;
    std::vector<StreamFunctionConfig> functions;
    ResetCheck reset_check = ResetCheck::exact;
    Nanoseconds sweep_interval = std::chrono::seconds(2);
    friend bool operator==(const FrerConfig&, const FrerConfig&) = default;
};

struct NetworkConfig {
    std::vector<NodeConfig> nodes;
    std::vector<LinkConfig> links;
    FrerConfig frer;
    std::uint64_t seed = 0;
    Nanoseconds jitter{0};  // max extra per-hop delay, uniform; 0 disables
    std::size_t mtu = constants::default_mtu;
    friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

enum class TrafficMode { periodic, adaptive };

struct TrafficSpec {
    std::string name;
    TrafficMode mode = TrafficMode::periodic;
    Nanoseconds interval{std::chrono::milliseconds(1)};
    std::uint32_t count = 1;
    std::size_t size = 1000;  // request/reply frame length in octets, VLAN tag included
    std::uint16_t stream = 0;
    std::uint16_t reply_stream = 0;
    std::string source;
    std::string destination;
    Nanoseconds start{0};
    Nanoseconds reply_timeout{std::chrono::seconds(1)};  // adaptive: send next anyway after this
    friend bool operator==(const TrafficSpec&, const TrafficSpec&) = default;
};

struct MeasurementRecord {
    std::uint32_t request_seq = 0;
    SimTime send_time{0};
    std::optional<SimTime> reply_time;

    [[nodiscard]] std::optional<SimTime> rtt() const {
        if (!reply_time) {
            return std::nullopt;
        }
        return *reply_time - send_time;
    }
};

struct SinkHandle {
    std::size_t index = 0;
};

struct EliminationSnapshot {
    std::string node;
    std::uint16_t stream = 0;
    std::vector<std::string> ingress;
    Counters counters;
};

struct SimulationStats {
    std::uint64_t events = 0;
    std::uint64_t frames_delivered = 0;
    std::uint64_t dropped_link_down = 0;
    std::uint64_t dropped_unconnected = 0;
    std::uint64_t dropped_unroutable = 0;
    std::uint64_t dropped_malformed = 0;
    std::uint64_t dropped_elimination = 0;
    std::uint64_t duplicate_replies = 0;
};

class Simulation {
public:
    /// Validates `config`; throws ConfigError naming the offending element.
    explicit Simulation(NetworkConfig config);
    ~Simulation();
    Simulation(Simulation&&) noexcept;
    Simulation& operator=(Simulation&&) noexcept;

    [[nodiscard]] SimTime now() const noexcept;

    /// Port/link lookup by name; throw ConfigError when unknown.
    [[nodiscard]] PortId port(const std::string& qualified) const;
    [[nodiscard]] std::size_t link(const std::string& id) const;
    [[nodiscard]] std::string port_name(PortId p) const;

    [[nodiscard]] std::size_t node_count() const noexcept;
    [[nodiscard]] std::size_t link_count() const noexcept;
    [[nodiscard]] bool link_up(std::size_t link) const;
    [[nodiscard]] std::vector<std::string> elimination_ports() const;
    [[nodiscard]] std::vector<std::string> replication_ports() const;

    /// Send `frame` out of `from` at time `at` (>= now). Returns the arrival
    /// time at the far end, or nullopt when the link is down or absent.
    std::optional<SimTime> transmit(PortId from, const Frame& frame, SimTime at);

    /// Process every event with time <= t_end, then advance the clock to t_end.
    void run_until(SimTime t_end);

    void set_link_state(std::size_t link, bool up, SimTime at);

    SinkHandle attach_traffic(const TrafficSpec& spec);
    [[nodiscard]] const std::vector<MeasurementRecord>& records(SinkHandle sink) const;
    [[nodiscard]] const TrafficSpec& traffic(SinkHandle sink) const;
    [[nodiscard]] std::size_t traffic_count() const noexcept;

    [[nodiscard]] std::vector<EliminationSnapshot> elimination_counters() const;
    [[nodiscard]] const SimulationStats& stats() const noexcept;

    /// FNV-1a digest over every processed event (time, kind, location, octets).
    [[nodiscard]] std::uint64_t trace_digest() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Parse "node.port" into its parts; throws ConfigError when malformed.
[[nodiscard]] std::pair<std::string, std::string> split_port(const std::string& qualified);

/// Request/reply payload carried by simulated hosts, placed at the payload offset.
struct ProbePayload {
    static constexpr std::uint16_t ethertype = 0x88B5;  // IEEE local experimental
    static constexpr std::size_t size = 12;
    enum class Kind : std::uint8_t { request = 1, reply = 2 };

    Kind kind = Kind::request;
    std::uint16_t flow = 0;
    std::uint32_t index = 0;

    [[nodiscard]] std::array<std::uint8_t, size> encode() const noexcept;
    [[nodiscard]] static std::optional<ProbePayload> decode(std::span<const std::uint8_t> octets) noexcept;
};

}  // namespace frer::sim
