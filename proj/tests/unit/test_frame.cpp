#include <random>

#include "doctest.h"
#include "frer/frame.hpp"

using namespace frer;

namespace {

std::vector<std::uint8_t> vlan_frame(std::size_t size, std::uint16_t vid, std::uint8_t fill = 0xAB) {
    std::vector<std::uint8_t> payload(size - 18, fill);
    VlanTag tag;
    tag.vid = vid;
    tag.pcp = 5;
    return build_vlan_frame({1, 2, 3, 4, 5, 6}, {7, 8, 9, 10, 11, 12}, tag, 0x0800, payload, size);
}

}  // namespace

TEST_CASE("parse_frame: minimal untagged frame") {
    std::vector<std::uint8_t> f(14, 0);
    f[12] = 0x08;
    f[13] = 0x00;
    const auto h = parse_frame(f);
    CHECK_FALSE(h.vlan);
    CHECK_FALSE(h.rtag);
    CHECK(h.inner_ethertype == 0x0800);
    CHECK(h.payload_offset == 14);
}

TEST_CASE("parse_frame: hand-encoded VLAN + R-tag") {
    // dst, src, 0x8100, TCI(pcp=3, vid=100), 0xF1C1, 0x0000, seq=7, 0x0800, payload
    const std::vector<std::uint8_t> f = {
        0xff, 0xff, 0xff, 0xff, 0xff, 0xff,  // dst
        0x02, 0x00, 0x00, 0x00, 0x00, 0x01,  // src
        0x81, 0x00, 0x60, 0x64,              // TPID, TCI
        0xF1, 0xC1, 0x00, 0x00, 0x00, 0x07,  // R-tag
        0x08, 0x00,                          // inner ethertype
        0xde, 0xad};
    const auto h = parse_frame(f);
    REQUIRE(h.vlan);
    CHECK(h.vlan->vid == 100);
    CHECK(h.vlan->pcp == 3);
    CHECK_FALSE(h.vlan->dei);
    REQUIRE(h.rtag);
    CHECK(h.rtag->sequence == 7);
    CHECK(h.inner_ethertype == 0x0800);
    CHECK(h.payload_offset == 24);
}

TEST_CASE("parse_frame: reserved R-tag field is ignored on decode") {
    auto f = push_rtag(Frame(vlan_frame(64, 10)), 42);
    std::vector<std::uint8_t> bytes(f.octets().begin(), f.octets().end());
    bytes[18] = 0x12;
    bytes[19] = 0x34;
    const auto h = parse_frame(bytes);
    REQUIRE(h.rtag);
    CHECK(h.rtag->sequence == 42);
}

TEST_CASE("parse_frame: errors") {
    CHECK_THROWS_AS((void)parse_frame(std::vector<std::uint8_t>(10, 0)), CodecError);
    try {
        (void)parse_frame(std::vector<std::uint8_t>(10, 0));
    } catch (const CodecError& e) {
        CHECK(e.code() == CodecErrc::truncated_frame);
    }

    std::vector<std::uint8_t> cut(15, 0);
    cut[12] = 0x81;
    cut[13] = 0x00;
    try {
        (void)parse_frame(cut);
        FAIL("expected MalformedVlan");
    } catch (const CodecError& e) {
        CHECK(e.code() == CodecErrc::malformed_vlan);
    }

    auto tagged = push_rtag(Frame(vlan_frame(64, 10)), 1);
    std::vector<std::uint8_t> short_rtag(tagged.octets().begin(), tagged.octets().begin() + 20);
    try {
        (void)parse_frame(short_rtag);
        FAIL("expected TruncatedFrame");
    } catch (const CodecError& e) {
        CHECK(e.code() == CodecErrc::truncated_frame);
    }
}

TEST_CASE("push_rtag: layout") {
    const Frame in(vlan_frame(1000, 100));
    const Frame out = push_rtag(in, 5);
    REQUIRE(out.size() == 1006);
    const auto o = out.octets();
    const auto i = in.octets();
    CHECK(std::equal(i.begin(), i.begin() + 16, o.begin()));
    CHECK(o[16] == 0xF1);
    CHECK(o[17] == 0xC1);
    CHECK(o[18] == 0x00);
    CHECK(o[19] == 0x00);
    CHECK(o[20] == 0x00);
    CHECK(o[21] == 0x05);
    CHECK(std::equal(i.begin() + 16, i.end(), o.begin() + 22));
    CHECK(parse_frame(o).rtag->sequence == 5);
}

TEST_CASE("push_rtag / pop_rtag: errors and identity") {
    const Frame in(vlan_frame(128, 100));
    const Frame tagged = push_rtag(in, 5);
    const auto [restored, seq] = pop_rtag(tagged);
    CHECK(restored == in);
    CHECK(seq == 5);

    try {
        (void)push_rtag(tagged, 6);
        FAIL("expected AlreadyTagged");
    } catch (const CodecError& e) {
        CHECK(e.code() == CodecErrc::already_tagged);
    }

    std::vector<std::uint8_t> untagged(64, 0);
    untagged[12] = 0x08;
    try {
        (void)push_rtag(Frame(untagged), 1);
        FAIL("expected NoVlan");
    } catch (const CodecError& e) {
        CHECK(e.code() == CodecErrc::no_vlan);
    }
    try {
        (void)pop_rtag(Frame(untagged));
        FAIL("expected NoRtag");
    } catch (const CodecError& e) {
        CHECK(e.code() == CodecErrc::no_rtag);
    }
    try {
        (void)pop_rtag(in);
        FAIL("expected NoRtag");
    } catch (const CodecError& e) {
        CHECK(e.code() == CodecErrc::no_rtag);
    }
}

TEST_CASE("pop_rtag: maximum sequence value") {
    const auto [f, seq] = pop_rtag(push_rtag(Frame(vlan_frame(64, 7)), 65535));
    CHECK(seq == 65535);
    CHECK(f.size() == 64);
}

TEST_CASE("push_rtag respects the MTU cap") {
    const Frame big(vlan_frame(2046, 100));
    CHECK_THROWS_AS((void)push_rtag(big, 1), CodecError);
    CHECK(push_rtag(big, 1, 4096).size() == 2052);
    CHECK_THROWS_AS(Frame(std::vector<std::uint8_t>(2049, 0)), CodecError);
}

TEST_CASE("has_rtag") {
    const Frame plain(vlan_frame(64, 100));
    CHECK(has_rtag(push_rtag(plain, 3)));
    CHECK_FALSE(has_rtag(plain));
    std::vector<std::uint8_t> untagged(64, 0);
    untagged[12] = 0xF1;  // R-tag ethertype without a VLAN tag does not count
    untagged[13] = 0xC1;
    CHECK_FALSE(has_rtag(untagged));
    CHECK_FALSE(has_rtag(std::vector<std::uint8_t>(5, 0)));
}

TEST_CASE("codec never touches the payload") {
    std::mt19937 rng(7);
    std::vector<std::uint8_t> payload(200);
    for (auto& b : payload) {
        b = static_cast<std::uint8_t>(rng());
    }
    const Frame in(build_vlan_frame({1}, {2}, VlanTag{0x8100, 0, false, 300}, 0x88B5, payload, 218));
    const Frame out = push_rtag(in, 77);
    const auto h = parse_frame(out.octets());
    CHECK(std::equal(payload.begin(), payload.end(), out.octets().begin() + static_cast<std::ptrdiff_t>(h.payload_offset)));
}

TEST_CASE("property: push/pop round trip over random VLAN frames") {
    std::mt19937_64 rng(0xF1C1);
    std::uniform_int_distribution<std::size_t> size(18, 1500);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<std::uint32_t> seqs(0, 65535);
    std::uniform_int_distribution<std::uint16_t> vids(1, 4094);
    for (int n = 0; n < 2000; ++n) {
        std::vector<std::uint8_t> payload(size(rng) - 18);
        for (auto& b : payload) {
            b = static_cast<std::uint8_t>(byte(rng));
        }
        VlanTag tag{0x8100, static_cast<std::uint8_t>(byte(rng) & 7), (byte(rng) & 1) != 0, vids(rng)};
        std::uint16_t inner = static_cast<std::uint16_t>(byte(rng) << 8 | byte(rng));
        if (inner == constants::ethertype_rtag || inner == constants::tpid_8021q) {
            inner = 0x0800;
        }
        const Frame f(build_vlan_frame({}, {}, tag, inner, payload, payload.size() + 18));
        const auto s = static_cast<std::uint16_t>(seqs(rng));
        const Frame t = push_rtag(f, s);
        REQUIRE(t.size() == f.size() + 6);
        REQUIRE(parse_frame(t.octets()).rtag->sequence == s);
        const auto [back, got] = pop_rtag(t);
        REQUIRE(back == f);
        REQUIRE(got == s);
    }
}
