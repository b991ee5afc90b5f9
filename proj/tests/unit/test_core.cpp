#include <algorithm>
#include <deque>
#include <map>
#include <random>

#include "doctest.h"
#include "frer/recovery.hpp"
#include "frer/replication.hpp"
#include "frer/stream.hpp"
#include "frer/testkit/oracle.hpp"

using namespace frer;
using namespace std::chrono_literals;

namespace {

Frame stream_frame(std::uint16_t vid, std::size_t size = 100) {
    VlanTag tag;
    tag.vid = vid;
    return Frame(build_vlan_frame({0xa}, {0xb}, tag, 0x0800, {}, size));
}

// Recovery positioned at recov_seq = `seq` (history = {0}).
SequenceRecovery primed(std::uint16_t seq, std::size_t h = 64) {
    SequenceRecovery r(StreamHandle(100), RecoveryConfig{h, 2s});
    REQUIRE(r.recover(seq, 0ns) == Decision::pass);
    return r;
}

// Oracle answer for a query at absolute index `abs` after accepting `start`.
Decision oracle_after(std::int64_t start, std::int64_t abs, std::size_t h = 64) {
    testkit::OracleState o(h);
    (void)testkit::oracle_recover(o, start);
    return testkit::oracle_recover(o, abs);
}

}  // namespace

TEST_CASE("StreamHandle validates the VLAN range") {
    CHECK_THROWS_AS(StreamHandle(0), std::invalid_argument);
    CHECK_THROWS_AS(StreamHandle(4095), std::invalid_argument);
    CHECK(StreamHandle(1).vid() == 1);
    CHECK(StreamHandle(4094).vid() == 4094);
}

TEST_CASE("identify_stream") {
    const StreamIdentifier configured({100});
    CHECK(identify_stream(parse_frame(stream_frame(100).octets()), configured) == StreamHandle(100));
    CHECK_FALSE(identify_stream(parse_frame(stream_frame(200).octets()), configured));
    std::vector<std::uint8_t> untagged(64, 0);
    untagged[12] = 0x08;
    CHECK_FALSE(identify_stream(parse_frame(untagged), configured));
}

TEST_CASE("SequenceGenerator") {
    SequenceGenerator g(StreamHandle(1), 7);
    CHECK(g.next_sequence() == 7);
    CHECK(g.peek() == 8);

    SequenceGenerator w(StreamHandle(1), 65535);
    CHECK(w.next_sequence() == 65535);
    CHECK(w.peek() == 0);

    SequenceGenerator z(StreamHandle(1));
    CHECK(z.next_sequence() == 0);
    CHECK(z.next_sequence() == 1);
}

TEST_CASE("ReplicationEntry validates its egress set") {
    CHECK_THROWS_AS(ReplicationEntry(StreamHandle(1), {}), std::invalid_argument);
    CHECK_THROWS_AS(ReplicationEntry(StreamHandle(1), {PortId{1}, PortId{1}}), std::invalid_argument);
}

TEST_CASE("replicate: untagged frame draws one sequence number") {
    ReplicationEntry entry(StreamHandle(100), {PortId{1}, PortId{2}});
    const auto copies = replicate(stream_frame(100), entry);
    REQUIRE(copies.size() == 2);
    CHECK(copies[0].first == PortId{1});
    CHECK(copies[1].first == PortId{2});
    CHECK(copies[0].second == copies[1].second);
    CHECK(parse_frame(copies[0].second.octets()).rtag->sequence == 0);
    CHECK(entry.generator().peek() == 1);
}

TEST_CASE("replicate: tagged frame passes through when skip_if_tagged") {
    ReplicationEntry entry(StreamHandle(100), {PortId{1}, PortId{2}}, true);
    const Frame tagged = push_rtag(stream_frame(100), 9);
    const auto copies = replicate(tagged, entry);
    REQUIRE(copies.size() == 2);
    for (const auto& [port, f] : copies) {
        CHECK(f == tagged);
    }
    CHECK(entry.generator().peek() == 0);

    ReplicationEntry strict(StreamHandle(100), {PortId{1}}, false);
    try {
        (void)replicate(tagged, strict);
        FAIL("expected AlreadyTagged");
    } catch (const CodecError& e) {
        CHECK(e.code() == CodecErrc::already_tagged);
    }
}

TEST_CASE("replicate: single egress and stream mismatch") {
    ReplicationEntry entry(StreamHandle(100), {PortId{4}});
    CHECK(replicate(stream_frame(100), entry).size() == 1);
    CHECK_THROWS_AS((void)replicate(stream_frame(101), entry), std::invalid_argument);
}

TEST_CASE("HistoryWindow matches a naive deque model") {
    std::mt19937 rng(3);
    for (std::size_t len : {2u, 3u, 63u, 64u, 65u, 130u}) {
        HistoryWindow w(len);
        std::deque<bool> model(len, false);
        for (int step = 0; step < 3000; ++step) {
            const int op = static_cast<int>(rng() % 3);
            if (op == 0) {
                const std::size_t i = rng() % len;
                w.set(i);
                model[i] = true;
            } else if (op == 1) {
                const std::size_t n = rng() % (len + 3);
                w.shift(n);
                for (std::size_t k = 0; k < std::min(n, len); ++k) {
                    model.push_front(false);
                    model.pop_back();
                }
            } else if (rng() % 50 == 0) {
                w.clear();
                std::fill(model.begin(), model.end(), false);
            }
            for (std::size_t i = 0; i < len; ++i) {
                REQUIRE(w.test(i) == model[i]);
            }
        }
    }
}

TEST_CASE("recover: fresh state takes any sequence") {
    SequenceRecovery r(StreamHandle(100));
    CHECK(r.take_any());
    CHECK(r.recover(12345, 5ns) == Decision::pass);
    CHECK(r.recov_seq() == 12345);
    CHECK_FALSE(r.take_any());
    CHECK(r.history_bit(0));
    CHECK(r.last_packet_time() == 5ns);
}

TEST_CASE("recover: duplicate and in-order successor") {
    auto r = primed(10);
    CHECK(r.recover(10, 0ns) == Decision::discard_duplicate);
    CHECK(r.recover(11, 0ns) == Decision::pass);
    CHECK(r.recov_seq() == 11);
}

TEST_CASE("recover: oracle-derived edge cases") {
    // Expected decisions come from the absolute-index oracle, then frozen.
    SUBCASE("forward jump beyond the window is rogue") {
        const Decision expected = oracle_after(10, 200);
        REQUIRE(expected == Decision::discard_rogue);
        auto r = primed(10);
        CHECK(r.recover(200, 0ns) == expected);
        CHECK(r.recov_seq() == 10);
        CHECK(r.counters().discarded_rogue == 1);
    }
    SUBCASE("successor across the wrap") {
        const Decision expected = oracle_after(65535, 65536);
        REQUIRE(expected == Decision::pass);
        auto r = primed(65535);
        CHECK(r.recover(0, 0ns) == expected);
        CHECK(r.recov_seq() == 0);
    }
    SUBCASE("late first copy behind the wrap") {
        // seq 5 is absolute 65541; seq 65530 is absolute 65530, 11 behind
        const Decision expected = oracle_after(65541, 65530);
        REQUIRE(expected == Decision::pass);
        auto r = primed(5);
        CHECK(sequence_delta(65530, 5) == -11);
        CHECK(r.recover(65530, 0ns) == expected);
        CHECK(r.recov_seq() == 5);
        CHECK(r.recover(65530, 0ns) == Decision::discard_duplicate);
    }
    SUBCASE("window edges") {
        for (std::int64_t offset : {-64, -63, 63, 64}) {
            const Decision expected = oracle_after(1000, 1000 + offset);
            auto r = primed(1000);
            CHECK(r.recover(static_cast<std::uint16_t>(1000 + offset), 0ns) == expected);
        }
    }
}

TEST_CASE("recover rejects bad configuration") {
    CHECK_THROWS_AS(SequenceRecovery(StreamHandle(1), RecoveryConfig{1, 2s}), std::invalid_argument);
    CHECK_THROWS_AS(SequenceRecovery(StreamHandle(1), RecoveryConfig{4097, 2s}), std::invalid_argument);
    CHECK_THROWS_AS(SequenceRecovery(StreamHandle(1), RecoveryConfig{64, 0s}), std::invalid_argument);
    CHECK_NOTHROW(SequenceRecovery(StreamHandle(1), RecoveryConfig{2, 1ns}));
    CHECK_NOTHROW(SequenceRecovery(StreamHandle(1), RecoveryConfig{4096, 1ns}));
}

TEST_CASE("check_reset") {
    SequenceRecovery r(StreamHandle(100));
    REQUIRE(r.recover(40, 0ns) == Decision::pass);

    CHECK_FALSE(r.check_reset(1900ms));
    CHECK_FALSE(r.take_any());
    CHECK(r.history_bit(0));

    CHECK(r.check_reset(2500ms));
    CHECK(r.take_any());
    CHECK_FALSE(r.history_bit(0));
    CHECK(r.counters().resets == 1);

    CHECK_FALSE(r.check_reset(10s));
    CHECK(r.counters().resets == 1);

    // the next packet is accepted regardless of its sequence
    CHECK(r.recover(40, 3s) == Decision::pass);
}

TEST_CASE("check_reset fires exactly at the timeout") {
    SequenceRecovery r(StreamHandle(100), RecoveryConfig{64, 2s});
    REQUIRE(r.recover(1, 1s) == Decision::pass);
    CHECK_FALSE(r.check_reset(3s - 1ns));
    CHECK(r.check_reset(3s));
}

TEST_CASE("eliminate: first replica wins") {
    SequenceRecovery state(StreamHandle(100));
    const Frame plain = stream_frame(100);
    const Frame tagged = push_rtag(plain, 3);
    const auto first = eliminate(tagged.with_ingress(PortId{1}, 10ns), state, 10ns, true);
    const auto second = eliminate(tagged.with_ingress(PortId{2}, 12ns), state, 12ns, true);
    REQUIRE(first.passed());
    CHECK(*first.frame == plain);
    CHECK(second.decision == Decision::discard_duplicate);
    CHECK_FALSE(second.frame);
}

TEST_CASE("eliminate: tagless frames pass and are counted") {
    SequenceRecovery state(StreamHandle(100));
    const Frame plain = stream_frame(100);
    const auto res = eliminate(plain, state, 0ns);
    CHECK(res.passed());
    CHECK(res.tagless);
    CHECK(*res.frame == plain);
    CHECK(state.counters().tagless == 1);
    CHECK(state.counters().passed == 0);
    CHECK(state.take_any());
}

TEST_CASE("eliminate: R-tag kept when strip_rtag is false") {
    SequenceRecovery state(StreamHandle(100));
    const Frame tagged = push_rtag(stream_frame(100), 8);
    const auto res = eliminate(tagged, state, 0ns, false);
    REQUIRE(res.passed());
    CHECK(has_rtag(*res.frame));
    CHECK(*res.frame == tagged);
}

TEST_CASE("property: first-copy-wins under random interleavings") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t h = 2 + rng() % 200;
        SequenceRecovery state(StreamHandle(100), RecoveryConfig{h, 2s});
        const std::uint16_t base = static_cast<std::uint16_t>(rng());
        const std::size_t copies = 2 + rng() % 3;
        // Each sequence appears `copies` times; every element lands within
        // h/2 of its slot so everything stays inside the window.
        std::vector<std::pair<std::size_t, std::uint16_t>> arrivals;
        const std::size_t n = 300;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < copies; ++c) {
                arrivals.emplace_back(i + rng() % std::max<std::size_t>(1, h / 2), static_cast<std::uint16_t>(base + i));
            }
        }
        std::stable_sort(arrivals.begin(), arrivals.end(), [](auto& a, auto& b) { return a.first < b.first; });
        std::map<std::uint16_t, int> passes;
        for (const auto& [key, seq] : arrivals) {
            if (state.recover(seq, 0ns) == Decision::pass) {
                ++passes[seq];
            }
        }
        REQUIRE(passes.size() == n);
        for (const auto& [seq, count] : passes) {
            REQUIRE(count == 1);
        }
        const auto& c = state.counters();
        REQUIRE(c.passed == n);
        REQUIRE(c.discarded_duplicate == n * (copies - 1));
        REQUIRE(c.discarded_rogue == 0);
    }
}

TEST_CASE("property: counter conservation on arbitrary input") {
    std::mt19937_64 rng(5);
    SequenceRecovery state(StreamHandle(9), RecoveryConfig{32, 1ms});
    std::uint64_t tagged = 0;
    const Frame plain = stream_frame(9);
    for (int i = 0; i < 20000; ++i) {
        const auto now = Nanoseconds(i * 1000);
        if (rng() % 7 == 0) {
            (void)eliminate(plain, state, now);
            continue;
        }
        if (rng() % 500 == 0) {
            (void)state.check_reset(now + 5ms);
        }
        (void)state.recover(static_cast<std::uint16_t>(rng()), now);
        ++tagged;
        const auto& c = state.counters();
        REQUIRE(c.passed + c.discarded_duplicate + c.discarded_rogue == tagged);
    }
    CHECK(state.counters().tagless > 0);
}

TEST_CASE("property: reset makes the next sequence pass") {
    std::mt19937_64 rng(17);
    SequenceRecovery state(StreamHandle(5));
    for (int i = 0; i < 1000; ++i) {
        const auto t = Nanoseconds(static_cast<std::int64_t>(i) * 3'000'000'000);
        (void)state.recover(static_cast<std::uint16_t>(rng()), t);
        REQUIRE(state.check_reset(t + 2s));
        REQUIRE(state.recover(static_cast<std::uint16_t>(rng()), t + 2s + 1ns) == Decision::pass);
    }
}

TEST_CASE("property: long in-order stream never discards") {
    SequenceRecovery state(StreamHandle(5));
    std::uint16_t seq = 60000;
    for (int i = 0; i < 200000; ++i) {
        REQUIRE(state.recover(seq++, Nanoseconds(i)) == Decision::pass);
    }
    CHECK(state.counters().discarded_duplicate == 0);
    CHECK(state.counters().discarded_rogue == 0);
    CHECK(state.counters().resets == 0);
}
