#include "frer/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace frer::scenario {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

ValidationError::ValidationError(std::string field, const std::string& what)
    : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

namespace {

// Typed access to one JSON object; every key must be consumed or finish() throws.
class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ValidationError(path_, "expected an object");
        }
    }

    [[nodiscard]] bool has(const std::string& key) const { return j_.contains(key); }

    const json& raw(const std::string& key) {
        auto it = j_.find(key);
        if (it == j_.end()) {
            throw ValidationError(field(key), "required field missing");
        }
        used_.insert(key);
        return *it;
    }

    std::string str(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_string()) {
            throw ValidationError(field(key), "expected a string");
        }
        return v.get<std::string>();
    }
    std::string str(const std::string& key, std::string fallback) { return has(key) ? str(key) : fallback; }

    bool boolean(const std::string& key, bool fallback) {
        if (!has(key)) {
            return fallback;
        }
        const json& v = raw(key);
        if (!v.is_boolean()) {
            throw ValidationError(field(key), "expected true or false");
        }
        return v.get<bool>();
    }

    std::uint64_t uint(const std::string& key, std::uint64_t max = UINT64_MAX) {
        const json& v = raw(key);
        if (!v.is_number_integer()) {
            throw ValidationError(field(key), "expected an integer");
        }
        if (v.is_number_unsigned()) {
            const auto u = v.get<std::uint64_t>();
            if (u > max) {
                throw ValidationError(field(key), "value " + std::to_string(u) + " exceeds " + std::to_string(max));
            }
            return u;
        }
        const auto s = v.get<std::int64_t>();
        if (s < 0) {
            throw ValidationError(field(key), "must be non-negative, got " + std::to_string(s));
        }
        if (static_cast<std::uint64_t>(s) > max) {
            throw ValidationError(field(key), "value " + std::to_string(s) + " exceeds " + std::to_string(max));
        }
        return static_cast<std::uint64_t>(s);
    }
    std::uint64_t uint(const std::string& key, std::uint64_t fallback, std::uint64_t max) {
        return has(key) ? uint(key, max) : fallback;
    }

    Nanoseconds ns(const std::string& key) {
        return Nanoseconds(static_cast<std::int64_t>(uint(key, static_cast<std::uint64_t>(INT64_MAX / 1000))));
    }
    Nanoseconds ns(const std::string& key, Nanoseconds fallback) { return has(key) ? ns(key) : fallback; }

    const json& array(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_array()) {
            throw ValidationError(field(key), "expected an array");
        }
        return v;
    }

    std::vector<std::string> strings(const std::string& key) {
        const json& v = array(key);
        std::vector<std::string> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_string()) {
                throw ValidationError(field(key) + "[" + std::to_string(i) + "]", "expected a string");
            }
            out.push_back(v[i].get<std::string>());
        }
        return out;
    }

    template <typename Enum>
    Enum choice(const std::string& key, std::initializer_list<std::pair<const char*, Enum>> options,
                std::optional<Enum> fallback = std::nullopt) {
        if (!has(key) && fallback) {
            return *fallback;
        }
        const std::string s = str(key);
        std::string allowed;
        for (const auto& [name, value] : options) {
            if (s == name) {
                return value;
            }
            allowed += allowed.empty() ? name : std::string(", ") + name;
        }
        throw ValidationError(field(key), "'" + s + "' is not one of: " + allowed);
    }

    [[nodiscard]] std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (used_.count(it.key()) == 0) {
                throw ValidationError(field(it.key()), "unknown key");
            }
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

std::uint16_t vid_field(Reader& r, const std::string& key) {
    const auto v = r.uint(key, 0xFFFF);
    if (!StreamHandle::valid_vid(static_cast<std::uint32_t>(v))) {
        throw ValidationError(r.field(key), "VLAN ID " + std::to_string(v) + " outside [1, 4094]");
    }
    return static_cast<std::uint16_t>(v);
}

sim::NodeConfig parse_node(const json& j, const std::string& path) {
    Reader r(j, path);
    sim::NodeConfig n;
    n.name = r.str("name");
    n.kind = r.choice<sim::NodeKind>("kind", {{"host", sim::NodeKind::host}, {"bridge", sim::NodeKind::bridge}});
    n.ports = r.strings("ports");
    n.processing_delay = r.ns("processing_delay_ns", Nanoseconds{0});
    r.finish();
    return n;
}

sim::LinkConfig parse_link(const json& j, const std::string& path) {
    Reader r(j, path);
    sim::LinkConfig l;
    l.id = r.str("id");
    l.a = r.str("a");
    l.b = r.str("b");
    l.propagation_delay = r.ns("propagation_delay_ns");
    l.bit_rate_bps = r.uint("bit_rate_bps");
    if (l.bit_rate_bps == 0) {
        throw ValidationError(r.field("bit_rate_bps"), "must be positive");
    }
    if (r.has("schedule")) {
        const json& s = r.array("schedule");
        for (std::size_t i = 0; i < s.size(); ++i) {
            Reader e(s[i], index_path(r.field("schedule"), i));
            sim::LinkStateChange change;
            change.at = e.ns("at_ns");
            change.up = e.choice<bool>("state", {{"up", true}, {"down", false}});
            e.finish();
            if (!l.schedule.empty() && change.at <= l.schedule.back().at) {
                throw ValidationError(index_path(r.field("schedule"), i), "times must be strictly increasing");
            }
            l.schedule.push_back(change);
        }
    }
    r.finish();
    return l;
}

struct EliminationDefaults {
    RecoveryConfig recovery;
    bool strip_rtag = true;
};

RecoveryConfig parse_recovery(Reader& r, const RecoveryConfig& fallback) {
    RecoveryConfig c = fallback;
    c.history_length = r.uint("history_length", fallback.history_length, RecoveryConfig::max_history);
    if (c.history_length < RecoveryConfig::min_history) {
        throw ValidationError(r.field("history_length"), "must be in [2, 4096]");
    }
    c.reset_timeout = r.ns("reset_timeout_ns", fallback.reset_timeout);
    if (c.reset_timeout <= Nanoseconds::zero()) {
        throw ValidationError(r.field("reset_timeout_ns"), "must be positive");
    }
    return c;
}

sim::StreamFunctionConfig parse_function(const json& j, const std::string& path, const EliminationDefaults& defaults) {
    Reader r(j, path);
    sim::StreamFunctionConfig f;
    f.node = r.str("node");
    f.stream = vid_field(r, "stream");
    f.ingress = r.strings("ingress");
    f.egress = r.strings("egress");
    if (f.ingress.empty()) {
        throw ValidationError(r.field("ingress"), "must list at least one port");
    }
    if (f.egress.empty()) {
        throw ValidationError(r.field("egress"), "must list at least one port");
    }
    if (r.has("eliminate")) {
        Reader e(r.raw("eliminate"), r.field("eliminate"));
        sim::EliminationConfig ec;
        ec.recovery = parse_recovery(e, defaults.recovery);
        ec.strip_rtag = e.boolean("strip_rtag", defaults.strip_rtag);
        e.finish();
        f.eliminate = ec;
    }
    if (r.has("replicate")) {
        Reader rep(r.raw("replicate"), r.field("replicate"));
        sim::ReplicationConfig rc;
        rc.skip_if_tagged = rep.boolean("skip_if_tagged", true);
        rep.finish();
        f.replicate = rc;
    }
    r.finish();
    return f;
}

sim::TrafficSpec parse_traffic(const json& j, const std::string& path) {
    Reader r(j, path);
    sim::TrafficSpec t;
    t.name = r.str("name");
    if (t.name.empty() || t.name.find_first_of("/\\ ") != std::string::npos) {
        throw ValidationError(r.field("name"), "must be non-empty without spaces or path separators");
    }
    t.mode = r.choice<sim::TrafficMode>("mode", {{"periodic", sim::TrafficMode::periodic},
                                                 {"adaptive", sim::TrafficMode::adaptive}});
    if (t.mode == sim::TrafficMode::periodic) {
        t.interval = r.ns("interval_ns");
        if (t.interval <= Nanoseconds::zero()) {
            throw ValidationError(r.field("interval_ns"), "must be positive");
        }
    } else {
        t.interval = r.ns("interval_ns", t.interval);
    }
    t.count = static_cast<std::uint32_t>(r.uint("count", UINT32_MAX));
    if (t.count < 1) {
        throw ValidationError(r.field("count"), "must be at least 1");
    }
    t.size = r.uint("size", 65535);
    t.stream = vid_field(r, "stream");
    t.reply_stream = vid_field(r, "reply_stream");
    t.source = r.str("source");
    t.destination = r.str("destination");
    t.start = r.ns("start_ns", Nanoseconds{0});
    t.reply_timeout = r.ns("reply_timeout_ns", t.reply_timeout);
    r.finish();
    return t;
}

ScenarioConfig from_json(const json& doc) {
    Reader root(doc, "");
    const std::string schema = root.str("schema");
    if (schema != schema_id) {
        throw ValidationError("schema", "unsupported schema '" + schema + "', expected '" + std::string(schema_id) + "'");
    }
    ScenarioConfig c;
    c.name = root.str("name");
    if (c.name.empty() || c.name.find_first_of("/\\ ") != std::string::npos) {
        throw ValidationError("name", "must be non-empty without spaces or path separators");
    }
    c.description = root.str("description", "");

    {
        Reader topo(root.raw("topology"), "topology");
        const json& nodes = topo.array("nodes");
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            c.network.nodes.push_back(parse_node(nodes[i], index_path("topology.nodes", i)));
        }
        const json& links = topo.array("links");
        for (std::size_t i = 0; i < links.size(); ++i) {
            c.network.links.push_back(parse_link(links[i], index_path("topology.links", i)));
        }
        c.network.mtu = topo.uint("mtu", constants::default_mtu, 65535);
        if (c.network.mtu < 64) {
            throw ValidationError("topology.mtu", "must be at least 64");
        }
        topo.finish();
    }

    {
        Reader fr(root.raw("frer"), "frer");
        const json& streams = fr.array("streams");
        for (std::size_t i = 0; i < streams.size(); ++i) {
            const std::string p = index_path("frer.streams", i);
            if (!streams[i].is_number_integer() || streams[i].get<std::int64_t>() < 1 ||
                streams[i].get<std::int64_t>() > 4094) {
                throw ValidationError(p, "expected a VLAN ID in [1, 4094]");
            }
            c.network.frer.streams.push_back(static_cast<std::uint16_t>(streams[i].get<std::int64_t>()));
        }
        EliminationDefaults defaults;
        defaults.recovery = parse_recovery(fr, defaults.recovery);
        defaults.strip_rtag = fr.boolean("strip_rtag", true);
        c.network.frer.reset_check = fr.choice<sim::ResetCheck>(
            "reset_check", {{"exact", sim::ResetCheck::exact}, {"sweep", sim::ResetCheck::sweep}}, sim::ResetCheck::exact);
        c.network.frer.sweep_interval = fr.ns("sweep_interval_ns", c.network.frer.sweep_interval);
        if (c.network.frer.sweep_interval <= Nanoseconds::zero()) {
            throw ValidationError("frer.sweep_interval_ns", "must be positive");
        }
        const json& fns = fr.array("functions");
        for (std::size_t i = 0; i < fns.size(); ++i) {
            c.network.frer.functions.push_back(parse_function(fns[i], index_path("frer.functions", i), defaults));
        }
        fr.finish();
    }

    {
        const json& traffic = root.array("traffic");
        for (std::size_t i = 0; i < traffic.size(); ++i) {
            c.traffic.push_back(parse_traffic(traffic[i], index_path("traffic", i)));
        }
    }

    {
        Reader run(root.raw("run"), "run");
        c.run.t_end = run.ns("t_end_ns");
        c.run.seed = run.uint("seed", 0, UINT64_MAX);
        c.network.seed = c.run.seed;
        c.network.jitter = run.ns("jitter_ns", Nanoseconds{0});
        c.run.output_dir = run.str("output_dir", "");
        run.finish();
    }
    root.finish();
    return c;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(source, line, col, e.what());
    }
    ScenarioConfig c = from_json(doc);
    validate(c);
    return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open scenario file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string());
}

void validate(const ScenarioConfig& config) {
    if (config.run.t_end <= Nanoseconds::zero()) {
        throw ValidationError("run.t_end_ns", "must be positive");
    }
    std::set<std::string> names;
    for (std::size_t i = 0; i < config.traffic.size(); ++i) {
        if (!names.insert(config.traffic[i].name).second) {
            throw ValidationError(index_path("traffic", i) + ".name", "duplicate traffic name '" +
                                                                            config.traffic[i].name + "'");
        }
    }
    try {
        sim::Simulation s(config.network);
        for (const auto& t : config.traffic) {
            (void)s.attach_traffic(t);
        }
    } catch (const sim::ConfigError& e) {
        throw ValidationError("topology", e.what());
    }
}

namespace {

const char* kind_name(sim::NodeKind k) { return k == sim::NodeKind::host ? "host" : "bridge"; }

}  // namespace

ojson to_json(const ScenarioConfig& c) {
    ojson doc;
    doc["schema"] = schema_id;
    doc["name"] = c.name;
    if (!c.description.empty()) {
        doc["description"] = c.description;
    }

    ojson nodes = ojson::array();
    for (const auto& n : c.network.nodes) {
        ojson node;
        node["name"] = n.name;
        node["kind"] = kind_name(n.kind);
        node["ports"] = n.ports;
        node["processing_delay_ns"] = n.processing_delay.count();
        nodes.push_back(std::move(node));
    }
    ojson links = ojson::array();
    for (const auto& l : c.network.links) {
        ojson link;
        link["id"] = l.id;
        link["a"] = l.a;
        link["b"] = l.b;
        link["propagation_delay_ns"] = l.propagation_delay.count();
        link["bit_rate_bps"] = l.bit_rate_bps;
        ojson schedule = ojson::array();
        for (const auto& s : l.schedule) {
            schedule.push_back(ojson{{"at_ns", s.at.count()}, {"state", s.up ? "up" : "down"}});
        }
        link["schedule"] = std::move(schedule);
        links.push_back(std::move(link));
    }
    doc["topology"] = ojson{{"nodes", std::move(nodes)}, {"links", std::move(links)}, {"mtu", c.network.mtu}};

    ojson functions = ojson::array();
    for (const auto& f : c.network.frer.functions) {
        ojson fn;
        fn["node"] = f.node;
        fn["stream"] = f.stream;
        fn["ingress"] = f.ingress;
        fn["egress"] = f.egress;
        if (f.eliminate) {
            fn["eliminate"] = ojson{{"history_length", f.eliminate->recovery.history_length},
                                    {"reset_timeout_ns", f.eliminate->recovery.reset_timeout.count()},
                                    {"strip_rtag", f.eliminate->strip_rtag}};
        }
        if (f.replicate) {
            fn["replicate"] = ojson{{"skip_if_tagged", f.replicate->skip_if_tagged}};
        }
        functions.push_back(std::move(fn));
    }
    ojson frer;
    frer["streams"] = c.network.frer.streams;
    frer["reset_check"] = c.network.frer.reset_check == sim::ResetCheck::exact ? "exact" : "sweep";
    frer["sweep_interval_ns"] = c.network.frer.sweep_interval.count();
    frer["functions"] = std::move(functions);
    doc["frer"] = std::move(frer);

    ojson traffic = ojson::array();
    for (const auto& t : c.traffic) {
        ojson tj;
        tj["name"] = t.name;
        tj["mode"] = t.mode == sim::TrafficMode::periodic ? "periodic" : "adaptive";
        tj["interval_ns"] = t.interval.count();
        tj["count"] = t.count;
        tj["size"] = t.size;
        tj["stream"] = t.stream;
        tj["reply_stream"] = t.reply_stream;
        tj["source"] = t.source;
        tj["destination"] = t.destination;
        tj["start_ns"] = t.start.count();
        tj["reply_timeout_ns"] = t.reply_timeout.count();
        traffic.push_back(std::move(tj));
    }
    doc["traffic"] = std::move(traffic);

    ojson run;
    run["t_end_ns"] = c.run.t_end.count();
    run["seed"] = c.run.seed;
    run["jitter_ns"] = c.network.jitter.count();
    if (!c.run.output_dir.empty()) {
        run["output_dir"] = c.run.output_dir;
    }
    doc["run"] = std::move(run);
    return doc;
}

std::optional<std::string_view> find_builtin(std::string_view name) {
    for (const auto& b : builtin_scenarios()) {
        if (b.name == name) {
            return b.text;
        }
    }
    return std::nullopt;
}

sim::SimTime nearest_rank(const std::vector<sim::SimTime>& sorted, std::uint32_t p_milli) {
    if (sorted.empty()) {
        throw std::invalid_argument("nearest_rank of an empty list");
    }
    const std::uint64_t n = sorted.size();
    std::uint64_t rank = (static_cast<std::uint64_t>(p_milli) * n + 99'999) / 100'000;
    rank = std::clamp<std::uint64_t>(rank, 1, n);
    return sorted[rank - 1];
}

TrafficSummary summarize(const std::string& name, const std::vector<sim::MeasurementRecord>& records) {
    TrafficSummary s;
    s.name = name;
    s.sent = records.size();
    std::vector<sim::SimTime> rtts;
    rtts.reserve(records.size());
    for (const auto& r : records) {
        if (auto rtt = r.rtt()) {
            rtts.push_back(*rtt);
        }
    }
    s.received = rtts.size();
    s.lost = s.sent - s.received;
    if (rtts.empty()) {
        return s;
    }
    std::sort(rtts.begin(), rtts.end());
    RttStats st;
    st.min = rtts.front();
    st.max = rtts.back();
    long double total = 0;
    for (auto r : rtts) {
        total += static_cast<long double>(r.count());
    }
    st.mean_ns = static_cast<double>(total / rtts.size() / 1000.0L);
    st.p50 = nearest_rank(rtts, 50'000);
    st.p99 = nearest_rank(rtts, 99'000);
    st.p999 = nearest_rank(rtts, 99'900);
    s.rtt = st;
    s.cdf.reserve(rtts.size());
    for (std::size_t i = 0; i < rtts.size(); ++i) {
        s.cdf.push_back(CdfPoint{rtts[i], static_cast<double>(i + 1) / static_cast<double>(rtts.size())});
    }
    return s;
}

RunResult run(const ScenarioConfig& config, std::optional<std::uint64_t> seed_override) {
    sim::NetworkConfig net = config.network;
    if (seed_override) {
        net.seed = *seed_override;
    }
    sim::Simulation simulation(net);
    std::vector<sim::SinkHandle> sinks;
    for (const auto& t : config.traffic) {
        sinks.push_back(simulation.attach_traffic(t));
    }
    simulation.run_until(sim::to_sim(config.run.t_end));

    RunResult result;
    result.summary.scenario = config.name;
    result.summary.seed = net.seed;
    result.summary.t_end = config.run.t_end;
    for (std::size_t i = 0; i < sinks.size(); ++i) {
        result.records.push_back(simulation.records(sinks[i]));
        result.summary.traffic.push_back(summarize(config.traffic[i].name, result.records.back()));
    }
    result.summary.elimination = simulation.elimination_counters();
    result.summary.simulation = simulation.stats();
    result.trace_digest = simulation.trace_digest();
    return result;
}

std::string format_ns(sim::SimTime t) {
    const std::int64_t ps = t.count();
    const bool negative = ps < 0;
    const std::uint64_t mag = negative ? static_cast<std::uint64_t>(-ps) : static_cast<std::uint64_t>(ps);
    std::string out = (negative ? "-" : "") + std::to_string(mag / 1000);
    std::uint64_t frac = mag % 1000;
    if (frac != 0) {
        std::string digits = std::to_string(frac);
        digits.insert(0, 3 - digits.size(), '0');
        while (digits.back() == '0') {
            digits.pop_back();
        }
        out += "." + digits;
    }
    return out;
}

std::string records_csv(const std::vector<sim::MeasurementRecord>& records) {
    std::string out = "index,send_ns,reply_ns,rtt_ns\n";
    for (const auto& r : records) {
        out += std::to_string(r.request_seq);
        out += ',';
        out += format_ns(r.send_time);
        out += ',';
        if (r.reply_time) {
            out += format_ns(*r.reply_time);
            out += ',';
            out += format_ns(*r.rtt());
        } else {
            out += ',';
        }
        out += '\n';
    }
    return out;
}

namespace {

double ns_value(sim::SimTime t) { return static_cast<double>(t.count()) / 1000.0; }

}  // namespace

ojson summary_json(const StatsSummary& s) {
    ojson doc;
    doc["schema"] = summary_schema_id;
    doc["scenario"] = s.scenario;
    doc["seed"] = s.seed;
    doc["t_end_ns"] = s.t_end.count();

    std::uint64_t sent = 0;
    std::uint64_t received = 0;
    ojson traffic = ojson::array();
    for (const auto& t : s.traffic) {
        sent += t.sent;
        received += t.received;
        ojson tj;
        tj["name"] = t.name;
        tj["sent"] = t.sent;
        tj["received"] = t.received;
        tj["lost"] = t.lost;
        if (t.rtt) {
            tj["rtt_ns"] = ojson{{"min", ns_value(t.rtt->min)}, {"mean", t.rtt->mean_ns},
                                 {"p50", ns_value(t.rtt->p50)}, {"p99", ns_value(t.rtt->p99)},
                                 {"p99.9", ns_value(t.rtt->p999)}, {"max", ns_value(t.rtt->max)}};
        } else {
            tj["rtt_ns"] = nullptr;
        }
        ojson cdf = ojson::array();
        for (const auto& p : t.cdf) {
            cdf.push_back(ojson::array({ns_value(p.rtt), p.fraction}));
        }
        tj["cdf"] = std::move(cdf);
        traffic.push_back(std::move(tj));
    }
    doc["sent"] = sent;
    doc["received"] = received;
    doc["lost"] = sent - received;
    doc["traffic"] = std::move(traffic);

    ojson elim = ojson::array();
    for (const auto& e : s.elimination) {
        elim.push_back(ojson{{"node", e.node},
                             {"stream", e.stream},
                             {"ingress", e.ingress},
                             {"passed", e.counters.passed},
                             {"discarded_duplicate", e.counters.discarded_duplicate},
                             {"discarded_rogue", e.counters.discarded_rogue},
                             {"tagless", e.counters.tagless},
                             {"resets", e.counters.resets}});
    }
    doc["elimination"] = std::move(elim);

    const auto& st = s.simulation;
    doc["simulation"] = ojson{{"events", st.events},
                              {"frames_delivered", st.frames_delivered},
                              {"dropped_link_down", st.dropped_link_down},
                              {"dropped_unconnected", st.dropped_unconnected},
                              {"dropped_unroutable", st.dropped_unroutable},
                              {"dropped_malformed", st.dropped_malformed},
                              {"dropped_elimination", st.dropped_elimination},
                              {"duplicate_replies", st.duplicate_replies}};
    return doc;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

}  // namespace

std::vector<std::filesystem::path> emit(const RunResult& result, const ScenarioConfig& config, Format format,
                                        const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    if (format != Format::summary) {
        for (std::size_t i = 0; i < result.records.size(); ++i) {
            const auto path = dir / (config.name + "." + config.traffic.at(i).name + ".csv");
            write_file(path, records_csv(result.records[i]));
            written.push_back(path);
        }
    }
    if (format != Format::csv) {
        const auto path = dir / (config.name + ".summary.json");
        write_file(path, summary_json(result.summary).dump(2) + "\n");
        written.push_back(path);
    }
    return written;
}

}  // namespace frer::scenario
