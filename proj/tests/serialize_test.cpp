#include <gtest/gtest.h>

#include <string>

#include "ecaprog/serialize.hpp"

using namespace ecaprog;

TEST(Serialize, AsciiZeroRule) {
    const auto d = evolve(rule_table(0), Configuration(4), 1);
    const auto bytes = serialize_diagram(d, SerializationMode::ascii);
    EXPECT_EQ(std::string(bytes.begin(), bytes.end()), "0000\n0000\n");
}

TEST(Serialize, PackedAllOnes) {
    const auto d = evolve(rule_table(255), Configuration::from_string("11111111"), 0);
    const auto bytes = serialize_diagram(d, SerializationMode::packed);
    ASSERT_EQ(bytes.size(), kPackedHeaderBytes + 1);
    EXPECT_EQ(bytes[0], 8);
    EXPECT_EQ(bytes[4], 0);
    EXPECT_EQ(bytes.back(), 0xFF);
}

TEST(Serialize, PackedBitOrderAndPadding) {
    // 3 x 3 cells = 9 bits: 100 010 001 -> 1000 1000 | 1000 0000
    SpaceTimeDiagram d;
    d.rows = {Configuration::from_string("100"), Configuration::from_string("010"), Configuration::from_string("001")};
    const auto bytes = serialize_diagram(d, SerializationMode::packed);
    ASSERT_EQ(bytes.size(), kPackedHeaderBytes + 2);
    EXPECT_EQ(bytes[4], 2);
    EXPECT_EQ(bytes[8], 0x88);
    EXPECT_EQ(bytes[9], 0x80);
}

TEST(Serialize, AsciiLength) {
    for (std::size_t w : {3u, 64u, 101u}) {
        for (std::size_t t : {0u, 1u, 40u}) {
            const auto d = evolve(rule_table(110), random_config(w, 0.5, w + t), t);
            EXPECT_EQ(serialize_diagram(d).size(), (w + 1) * (t + 1));
        }
    }
}

TEST(Serialize, RoundTrips) {
    for (std::size_t w : {3u, 7u, 64u, 130u}) {
        const auto d = evolve(rule_table(54), random_config(w, 0.5, w), 33);
        const auto a = serialize_diagram(d, SerializationMode::ascii);
        const auto pa = parse_ascii_diagram(std::string_view(reinterpret_cast<const char*>(a.data()), a.size()));
        EXPECT_EQ(pa.rows, d.rows);
        const auto pb = parse_packed_diagram(serialize_diagram(d, SerializationMode::packed));
        EXPECT_EQ(pb.rows, d.rows);
    }
}

TEST(Serialize, ParseErrors) {
    EXPECT_THROW(parse_ascii_diagram("0101\n011\n"), std::invalid_argument);
    EXPECT_THROW(parse_ascii_diagram("012\n"), std::invalid_argument);
    const std::vector<std::uint8_t> short_packed{8, 0, 0, 0, 3, 0, 0, 0, 0xFF};
    EXPECT_THROW(parse_packed_diagram(short_packed), std::invalid_argument);
    EXPECT_THROW(serialization_mode_from_name("png"), std::invalid_argument);
    EXPECT_EQ(serialization_mode_from_name("packed"), SerializationMode::packed);
}
