#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "ecaprog/compressor.hpp"
#include "ecaprog/rng.hpp"

using namespace ecaprog;

namespace {

std::vector<std::uint8_t> random_bytes(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint8_t> v(n);
    for (auto& b : v) b = static_cast<std::uint8_t>(rng.next());
    return v;
}

std::vector<std::uint8_t> periodic_bytes(std::size_t n, std::size_t period, std::uint64_t seed) {
    const auto cycle = random_bytes(period, seed);
    std::vector<std::uint8_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = cycle[i % period];
    return v;
}

const std::vector<CompressorId>& all_compressors() {
    static const std::vector<CompressorId> ids{builtin_lzss(), rle_compressor()};
    return ids;
}

}  // namespace

TEST(Compressor, Registry) {
    EXPECT_EQ(compressor_by_name("builtin-lzss"), builtin_lzss());
    EXPECT_EQ(compressor_by_name("rle"), rle_compressor());
    EXPECT_THROW(compressor_by_name("gzip"), std::invalid_argument);
    EXPECT_EQ(compressor_names().size(), 2u);
}

TEST(Compressor, EmptyInputIsHeaderOnly) {
    for (const auto& id : all_compressors()) {
        const auto z = compress({}, id);
        EXPECT_EQ(z.size(), kStreamHeaderBytes);
        EXPECT_EQ(compressed_size_bits({}, id), 8 * kStreamHeaderBytes);
        EXPECT_TRUE(decompress(z, id).empty());
    }
}

TEST(Compressor, SmallRoundTrip) {
    for (const auto& id : all_compressors()) {
        const auto z = compress(as_bytes("abc"), id);
        const auto back = decompress(z, id);
        EXPECT_EQ(std::string(back.begin(), back.end()), "abc");
    }
}

TEST(Compressor, HeaderLayout) {
    const auto z = compress(as_bytes("aaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaa"), builtin_lzss());
    ASSERT_GE(z.size(), kStreamHeaderBytes);
    EXPECT_EQ(std::string(z.begin(), z.begin() + 4), "ECPZ");
    EXPECT_EQ(z[4], 1);
    EXPECT_EQ(z[5], 50);
    for (int i = 6; i < 13; ++i) EXPECT_EQ(z[i], 0);
}

TEST(Compressor, ConstantStringIsTiny) {
    const std::vector<std::uint8_t> ones(10000, '1');
    EXPECT_LT(compress(ones, builtin_lzss()).size(), 10000 * 5 / 100);
}

TEST(Compressor, RandomStringIsIncompressible) {
    const auto r = random_bytes(10000, 1);
    EXPECT_GE(compress(r, builtin_lzss()).size(), 10000 * 95 / 100);
}

TEST(Compressor, SelfConcatenationIsCheaper) {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = random_bytes(4 + rng.below(3000), rng.next());
        std::vector<std::uint8_t> xx(x);
        xx.insert(xx.end(), x.begin(), x.end());
        EXPECT_LT(compressed_size_bits(xx, builtin_lzss()), 2 * compressed_size_bits(x, builtin_lzss()));
    }
}

TEST(Compressor, OnesBeatRandomAtLength100) {
    const std::string ones(100, '1');
    std::string rnd;
    Rng rng(1);
    for (int i = 0; i < 100; ++i) rnd.push_back(rng.bernoulli(0.5) ? '1' : '0');
    EXPECT_LT(compressed_size_bits(as_bytes(ones), builtin_lzss()), compressed_size_bits(as_bytes(rnd), builtin_lzss()));
}

TEST(Compressor, SizeBitsMatchesStream) {
    Rng rng(8);
    for (const auto& id : all_compressors()) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto x = trial % 2 ? random_bytes(rng.below(5000), rng.next())
                                     : periodic_bytes(rng.below(5000), 1 + rng.below(40), rng.next());
            EXPECT_EQ(compressed_size_bits(x, id), 8 * compress(x, id).size());
        }
    }
}

TEST(Compressor, LongMatchesAndFarOffsets) {
    // A block repeated past the 258-byte match cap and at the window edge.
    auto block = random_bytes(300, 5);
    std::vector<std::uint8_t> x(block);
    const auto filler = random_bytes(32768 - 300, 6);
    x.insert(x.end(), filler.begin(), filler.end());
    x.insert(x.end(), block.begin(), block.end());
    x.insert(x.end(), block.begin(), block.end());
    const auto z = compress(x, builtin_lzss());
    EXPECT_EQ(decompress(z, builtin_lzss()), x);
}

TEST(Compressor, CustomParametersRoundTrip) {
    CompressorId id = builtin_lzss();
    id.name = "small-window";
    id.window = 512;
    id.min_match = 5;
    const auto x = periodic_bytes(20000, 700, 11);
    EXPECT_EQ(decompress(compress(x, id), id), x);
    id.window = 40000;
    EXPECT_THROW(compress(x, id), std::invalid_argument);
}

// Corrupt streams must be rejected, never silently truncated.

TEST(Decompress, RejectsBadMagic) {
    auto z = compress(as_bytes("hello hello hello"), builtin_lzss());
    z[0] = 'X';
    EXPECT_THROW(decompress(z, builtin_lzss()), FormatError);
}

TEST(Decompress, RejectsWrongAlgorithm) {
    const auto z = compress(as_bytes("hello hello hello"), builtin_lzss());
    EXPECT_THROW(decompress(z, rle_compressor()), FormatError);
}

TEST(Decompress, RejectsTruncation) {
    const auto x = periodic_bytes(4000, 17, 2);
    for (const auto& id : all_compressors()) {
        const auto z = compress(x, id);
        for (std::size_t cut : {std::size_t{3}, kStreamHeaderBytes - 1, kStreamHeaderBytes + 1, z.size() - 1}) {
            std::vector<std::uint8_t> t(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(cut));
            EXPECT_THROW(decompress(t, id), FormatError) << id.name << " cut " << cut;
        }
    }
}

TEST(Decompress, RejectsTrailingBytes) {
    for (const auto& id : all_compressors()) {
        auto z = compress(periodic_bytes(1000, 9, 3), id);
        z.push_back(0);
        EXPECT_THROW(decompress(z, id), FormatError);
    }
}

TEST(Decompress, RejectsLengthMismatch) {
    for (const auto& id : all_compressors()) {
        auto z = compress(periodic_bytes(1000, 9, 3), id);
        z[5] ^= 1;
        EXPECT_THROW(decompress(z, id), FormatError);
    }
}

TEST(Decompress, FuzzedStreamsNeverCrash) {
    Rng rng(99);
    for (const auto& id : all_compressors()) {
        const auto x = periodic_bytes(3000, 23, 4);
        const auto z = compress(x, id);
        for (int trial = 0; trial < 2000; ++trial) {
            auto c = z;
            const int flips = 1 + static_cast<int>(rng.below(4));
            for (int f = 0; f < flips; ++f) {
                c[kStreamHeaderBytes + rng.below(c.size() - kStreamHeaderBytes)] ^=
                    static_cast<std::uint8_t>(1u << rng.below(8));
            }
            try {
                const auto back = decompress(c, id);
                EXPECT_EQ(back.size(), x.size());
            } catch (const FormatError&) {
            }
        }
    }
}

// Properties

TEST(Property, LosslessRoundTrip) {
    Rng rng(2024);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = rng.below(4097);
        std::vector<std::uint8_t> x;
        switch (trial % 4) {
            case 0: x = random_bytes(n, rng.next()); break;
            case 1: x = periodic_bytes(n, 1 + rng.below(64), rng.next()); break;
            case 2: x.assign(n, static_cast<std::uint8_t>(rng.below(256))); break;
            default:
                x = random_bytes(n, rng.next());
                for (auto& b : x) b = static_cast<std::uint8_t>(b & 1);
        }
        for (const auto& id : all_compressors()) ASSERT_EQ(decompress(compress(x, id), id), x) << id.name;
    }
}

TEST(Property, UpperBound) {
    Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const auto x = random_bytes(rng.below(6000), rng.next());
        for (const auto& id : all_compressors()) {
            EXPECT_LE(compressed_size_bits(x, id), 8 * x.size() + 8 * kStreamHeaderBytes);
        }
    }
}

TEST(Property, MonotoneDiscrimination) {
    for (std::size_t len : {1000u, 4000u}) {
        const std::vector<std::uint8_t> constant(len, 'a');
        const auto periodic = periodic_bytes(len, 16, 21);
        const auto rnd = random_bytes(len, 22);
        const auto id = builtin_lzss();
        EXPECT_LT(compressed_size_bits(constant, id), compressed_size_bits(periodic, id));
        EXPECT_LT(compressed_size_bits(periodic, id), compressed_size_bits(rnd, id));
    }
}

TEST(Property, PrefixSizesEqualDirectCompression) {
    Rng rng(13);
    for (const auto& id : all_compressors()) {
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<std::uint8_t> x = periodic_bytes(3000 + rng.below(3000), 1 + rng.below(120), rng.next());
            // sprinkle noise so matches end at varied places
            for (int k = 0; k < 40; ++k) x[rng.below(x.size())] = static_cast<std::uint8_t>(rng.next());
            std::vector<std::size_t> cuts;
            for (std::size_t c = 0; c <= x.size(); c += 1 + rng.below(97)) cuts.push_back(c);
            cuts.push_back(x.size());
            const auto sizes = compressed_size_bits_prefixes(x, cuts, id);
            ASSERT_EQ(sizes.size(), cuts.size());
            for (std::size_t i = 0; i < cuts.size(); ++i) {
                const std::span<const std::uint8_t> prefix(x.data(), cuts[i]);
                ASSERT_EQ(sizes[i], compressed_size_bits(prefix, id)) << id.name << " cut " << cuts[i];
            }
        }
    }
}

TEST(Property, Deterministic) {
    const auto x = periodic_bytes(5000, 33, 1);
    EXPECT_EQ(compress(x, builtin_lzss()), compress(x, builtin_lzss()));
}

// Hand-assembled LZSS stream for "abcabcabc": three literals, then one match
// reaching back 3 bytes for 6 bytes.
TEST(Format, HandEncodedLzss) {
    std::vector<bool> bits;
    auto put = [&](std::uint32_t v, int n) {
        for (int i = n - 1; i >= 0; --i) bits.push_back(((v >> i) & 1u) != 0);
    };
    for (char c : std::string("abc")) {
        put(0, 1);
        put(static_cast<std::uint8_t>(c), 8);
    }
    put(1, 1);
    put(3 - 1, 15);
    put(6 - 3, 8);
    std::vector<std::uint8_t> want{'E', 'C', 'P', 'Z', 1, 9, 0, 0, 0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < bits.size(); i += 8) {
        std::uint8_t byte = 0;
        for (std::size_t j = 0; j < 8; ++j) byte = static_cast<std::uint8_t>((byte << 1) | (i + j < bits.size() && bits[i + j]));
        want.push_back(byte);
    }
    EXPECT_EQ(compress(as_bytes("abcabcabc"), builtin_lzss()), want);
}

// "aaaaab": a run of five (control 128 + 2), then one literal (control 0).
TEST(Format, HandEncodedRle) {
    const std::vector<std::uint8_t> want{'E', 'C', 'P', 'Z', 2, 6, 0, 0, 0, 0, 0, 0, 0, 130, 'a', 0, 'b'};
    EXPECT_EQ(compress(as_bytes("aaaaab"), rle_compressor()), want);
}

// Incompressible input is stored verbatim under the stored flag.
TEST(Format, StoredFallback) {
    const auto x = random_bytes(64, 77);
    const auto z = compress(x, builtin_lzss());
    ASSERT_EQ(z.size(), kStreamHeaderBytes + x.size());
    EXPECT_EQ(z[4], 0x81);
    EXPECT_TRUE(std::equal(x.begin(), x.end(), z.begin() + kStreamHeaderBytes));
}
