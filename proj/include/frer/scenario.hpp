// Scenario files: loading and validation, running, statistics and output.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "frer/netsim.hpp"

namespace frer::scenario {

inline constexpr std::string_view schema_id = "frer-scenario/1";
inline constexpr std::string_view summary_schema_id = "frer-summary/1";

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what);
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string field, const std::string& what);
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct RunConfig {
    Nanoseconds t_end{0};
    std::uint64_t seed = 0;
    std::string output_dir;  // empty: caller decides
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct ScenarioConfig {
    std::string name;
    std::string description;
    sim::NetworkConfig network;
    std::vector<sim::TrafficSpec> traffic;
    RunConfig run;
    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Throws ParseError (malformed JSON) or ValidationError (schema/semantics).
[[nodiscard]] ScenarioConfig parse_scenario(std::string_view text, const std::string& source = "<string>");
[[nodiscard]] ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Fully explicit JSON form; parse_scenario(to_json(c).dump()) == c.
[[nodiscard]] nlohmann::ordered_json to_json(const ScenarioConfig& config);

/// Semantic checks that need the whole topology (dangling ports, unknown
/// hosts, ...). Throws ValidationError.
void validate(const ScenarioConfig& config);

struct BuiltinScenario {
    std::string_view name;
    std::string_view text;
};
[[nodiscard]] const std::vector<BuiltinScenario>& builtin_scenarios();
[[nodiscard]] std::optional<std::string_view> find_builtin(std::string_view name);

/// Nearest-rank percentile of an ascending list: element at rank
/// ceil(p/100 * n), p given in thousandths of a percent (99.9% -> 99900).
[[nodiscard]] sim::SimTime nearest_rank(const std::vector<sim::SimTime>& sorted, std::uint32_t p_milli);

struct RttStats {
    sim::SimTime min{0};
    double mean_ns = 0.0;
    sim::SimTime p50{0};
    sim::SimTime p99{0};
    sim::SimTime p999{0};
    sim::SimTime max{0};
};

struct CdfPoint {
    sim::SimTime rtt{0};
    double fraction = 0.0;
};

struct TrafficSummary {
    std::string name;
    std::uint64_t sent = 0;
    std::uint64_t received = 0;
    std::uint64_t lost = 0;
    std::optional<RttStats> rtt;
    std::vector<CdfPoint> cdf;
};

[[nodiscard]] TrafficSummary summarize(const std::string& name, const std::vector<sim::MeasurementRecord>& records);

struct StatsSummary {
    std::string scenario;
    std::uint64_t seed = 0;
    Nanoseconds t_end{0};
    std::vector<TrafficSummary> traffic;
    std::vector<sim::EliminationSnapshot> elimination;
    sim::SimulationStats simulation;
};

struct RunResult {
    std::vector<std::vector<sim::MeasurementRecord>> records;  // one list per traffic spec
    StatsSummary summary;
    std::uint64_t trace_digest = 0;
};

/// Builds the network, attaches every traffic spec and runs to run.t_end.
[[nodiscard]] RunResult run(const ScenarioConfig& config, std::optional<std::uint64_t> seed_override = std::nullopt);

/// Exact decimal nanoseconds for a picosecond time ("80480", "3219.2").
[[nodiscard]] std::string format_ns(sim::SimTime t);

/// index,send_ns,reply_ns,rtt_ns (reply/rtt empty when lost).
[[nodiscard]] std::string records_csv(const std::vector<sim::MeasurementRecord>& records);
[[nodiscard]] nlohmann::ordered_json summary_json(const StatsSummary& summary);

enum class Format { csv, summary, both };

/// Writes <dir>/<scenario>.<traffic>.csv and/or <dir>/<scenario>.summary.json.
/// Returns the paths written. Throws std::runtime_error naming the path on I/O failure.
std::vector<std::filesystem::path> emit(const RunResult& result, const ScenarioConfig& config, Format format,
                                        const std::filesystem::path& dir);

}  // namespace frer::scenario
