#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "frer/frame.hpp"
#include "frer/recovery.hpp"
#include "frer/replication.hpp"
#include "frer/scenario.hpp"

namespace py = pybind11;
using namespace frer;

namespace {

std::vector<std::uint8_t> to_vec(const py::bytes& b) {
    const std::string_view s = b;
    return {s.begin(), s.end()};
}

py::bytes to_bytes(std::span<const std::uint8_t> o) {
    return {reinterpret_cast<const char*>(o.data()), o.size()};
}

Nanoseconds ns(std::int64_t v) { return Nanoseconds(v); }

py::object to_py(const nlohmann::ordered_json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

py::dict counters_dict(const Counters& c) {
    py::dict d;
    d["passed"] = c.passed;
    d["discarded_duplicate"] = c.discarded_duplicate;
    d["discarded_rogue"] = c.discarded_rogue;
    d["tagless"] = c.tagless;
    d["resets"] = c.resets;
    return d;
}

scenario::ScenarioConfig resolve(const std::string& name_or_path) {
    if (const auto text = scenario::find_builtin(name_or_path)) {
        return scenario::parse_scenario(*text, name_or_path);
    }
    return scenario::load_scenario(name_or_path);
}

}  // namespace

PYBIND11_MODULE(_frer, m) {
    m.doc() = "Frame replication and elimination: codec, recovery, scenarios";

    auto codec_error = py::register_exception<CodecError>(m, "CodecError", PyExc_ValueError);
    (void)codec_error;
    py::register_exception<scenario::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<scenario::ValidationError>(m, "ValidationError", PyExc_ValueError);

    m.def(
        "build_vlan_frame",
        [](std::uint16_t vid, std::size_t size, std::uint8_t pcp, std::uint16_t inner_ethertype, const py::bytes& payload) {
            return to_bytes(build_vlan_frame({}, {}, VlanTag{constants::tpid_8021q, pcp, false, vid}, inner_ethertype,
                                             to_vec(payload), size));
        },
        py::arg("vid"), py::arg("size"), py::arg("pcp") = 0, py::arg("inner_ethertype") = 0x0800,
        py::arg("payload") = py::bytes());

    m.def(
        "parse_frame",
        [](const py::bytes& frame) {
            const auto bytes = to_vec(frame);
            const auto h = parse_frame(bytes);
            py::dict d;
            d["vid"] = h.vlan ? py::cast(h.vlan->vid) : py::none();
            d["pcp"] = h.vlan ? py::cast(h.vlan->pcp) : py::none();
            d["sequence"] = h.rtag ? py::cast(h.rtag->sequence) : py::none();
            d["inner_ethertype"] = h.inner_ethertype;
            d["payload_offset"] = h.payload_offset;
            return d;
        },
        py::arg("frame"));

    m.def(
        "push_rtag",
        [](const py::bytes& frame, std::uint16_t seq, std::size_t mtu) {
            return to_bytes(push_rtag(Frame(to_vec(frame)), seq, mtu).octets());
        },
        py::arg("frame"), py::arg("seq"), py::arg("mtu") = constants::default_mtu);

    m.def(
        "pop_rtag",
        [](const py::bytes& frame) {
            const auto [f, seq] = pop_rtag(Frame(to_vec(frame)));
            return py::make_tuple(to_bytes(f.octets()), seq);
        },
        py::arg("frame"));

    m.def(
        "has_rtag", [](const py::bytes& frame) { return has_rtag(std::span<const std::uint8_t>(to_vec(frame))); },
        py::arg("frame"));

    py::enum_<Decision>(m, "Decision")
        .value("PASS", Decision::pass)
        .value("DISCARD_DUPLICATE", Decision::discard_duplicate)
        .value("DISCARD_ROGUE", Decision::discard_rogue);

    py::class_<SequenceGenerator>(m, "SequenceGenerator")
        .def(py::init([](std::uint16_t vid, std::uint16_t start) { return SequenceGenerator(StreamHandle(vid), start); }),
             py::arg("vid"), py::arg("start") = 0)
        .def("next_sequence", &SequenceGenerator::next_sequence)
        .def_property_readonly("peek", &SequenceGenerator::peek);

    py::class_<ReplicationEntry>(m, "ReplicationEntry")
        .def(py::init([](std::uint16_t vid, const std::vector<std::uint32_t>& egress, bool skip_if_tagged,
                         std::uint16_t first_seq) {
                 std::vector<PortId> ports;
                 for (auto p : egress) {
                     ports.push_back(PortId{p});
                 }
                 return ReplicationEntry(StreamHandle(vid), std::move(ports), skip_if_tagged, first_seq);
             }),
             py::arg("vid"), py::arg("egress"), py::arg("skip_if_tagged") = true, py::arg("first_seq") = 0)
        .def_property_readonly("next_sequence", [](const ReplicationEntry& e) { return e.generator().peek(); });

    m.def(
        "replicate",
        [](const py::bytes& frame, ReplicationEntry& entry, std::size_t mtu) {
            py::list out;
            for (const auto& [port, f] : replicate(Frame(to_vec(frame)), entry, mtu)) {
                out.append(py::make_tuple(port.value, to_bytes(f.octets())));
            }
            return out;
        },
        py::arg("frame"), py::arg("entry"), py::arg("mtu") = constants::default_mtu);

    py::class_<SequenceRecovery>(m, "SequenceRecovery")
        .def(py::init([](std::uint16_t vid, std::size_t history_length, std::int64_t reset_timeout_ns) {
                 return SequenceRecovery(StreamHandle(vid), RecoveryConfig{history_length, ns(reset_timeout_ns)});
             }),
             py::arg("vid"), py::arg("history_length") = 64, py::arg("reset_timeout_ns") = 2'000'000'000)
        .def(
            "recover", [](SequenceRecovery& r, std::uint16_t seq, std::int64_t now) { return r.recover(seq, ns(now)); },
            py::arg("seq"), py::arg("now_ns") = 0)
        .def(
            "check_reset", [](SequenceRecovery& r, std::int64_t now) { return r.check_reset(ns(now)); },
            py::arg("now_ns"))
        .def_property_readonly("take_any", &SequenceRecovery::take_any)
        .def_property_readonly("recov_seq", &SequenceRecovery::recov_seq)
        .def_property_readonly("counters", [](const SequenceRecovery& r) { return counters_dict(r.counters()); })
        .def("__repr__", &SequenceRecovery::describe);

    m.def(
        "eliminate",
        [](const py::bytes& frame, SequenceRecovery& state, std::int64_t now, bool strip_rtag) {
            const auto r = eliminate(Frame(to_vec(frame)), state, ns(now), strip_rtag);
            py::object out = r.frame ? py::object(to_bytes(r.frame->octets())) : py::object(py::none());
            return py::make_tuple(r.decision, out, r.tagless);
        },
        py::arg("frame"), py::arg("state"), py::arg("now_ns") = 0, py::arg("strip_rtag") = true);

    m.def("list_builtin", [] {
        std::vector<std::string> names;
        for (const auto& b : scenario::builtin_scenarios()) {
            names.emplace_back(b.name);
        }
        return names;
    });

    m.def(
        "validate_scenario", [](const std::string& s) { scenario::validate(resolve(s)); }, py::arg("scenario"));

    m.def(
        "load_scenario", [](const std::string& s) { return to_py(scenario::to_json(resolve(s))); },
        py::arg("scenario"), "Fully expanded scenario as a dict; accepts a builtin name or a file path.");

    m.def(
        "run_scenario",
        [](const std::string& s, std::optional<std::uint64_t> seed, std::optional<std::string> out_dir) {
            const auto config = resolve(s);
            scenario::RunResult result;
            {
                py::gil_scoped_release release;
                result = scenario::run(config, seed);
            }
            if (out_dir) {
                (void)scenario::emit(result, config, scenario::Format::both, *out_dir);
            }
            return to_py(scenario::summary_json(result.summary));
        },
        py::arg("scenario"), py::arg("seed") = py::none(), py::arg("out_dir") = py::none(),
        "Runs a builtin name or scenario file and returns the summary dict.");
}
