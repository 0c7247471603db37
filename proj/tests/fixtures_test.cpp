#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "ecaprog/compressor.hpp"

using namespace ecaprog;

namespace {

std::vector<std::uint8_t> from_hex(const std::string& s) {
    std::vector<std::uint8_t> out;
    if (s == "-") return out;
    for (std::size_t i = 0; i + 1 < s.size(); i += 2) out.push_back(static_cast<std::uint8_t>(std::stoi(s.substr(i, 2), nullptr, 16)));
    return out;
}

struct Fixture {
    std::string name;
    CompressorId id;
    std::vector<std::uint8_t> input;
    std::vector<std::uint8_t> stream;
};

std::vector<Fixture> load() {
    std::ifstream in(ECAPROG_SOURCE_DIR "/tests/fixtures/streams.txt");
    std::vector<Fixture> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string name, comp, input, stream;
        ls >> name >> comp >> input >> stream;
        out.push_back({name, compressor_by_name(comp), from_hex(input), from_hex(stream)});
    }
    return out;
}

}  // namespace

// Streams pinned bit for bit: any change to parsing or encoding shows here.
TEST(Fixtures, CompressedStreamsAreBitExact) {
    const auto fixtures = load();
    ASSERT_GE(fixtures.size(), 8u);
    for (const auto& f : fixtures) {
        EXPECT_EQ(compress(f.input, f.id), f.stream) << f.name;
        EXPECT_EQ(decompress(f.stream, f.id), f.input) << f.name;
        EXPECT_EQ(compressed_size_bits(f.input, f.id), 8 * f.stream.size()) << f.name;
    }
}
