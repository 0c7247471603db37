#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ecaprog/lattice.hpp"
#include "ecaprog/rng.hpp"

using namespace ecaprog;

namespace {

const CodingTable& frozen_table() {
    static const CodingTable t = build_coding_table(3, kDefaultTableSamples, kDefaultTableSeed);
    return t;
}

Lattice random_lattice(std::size_t h, std::size_t w, std::uint64_t seed, double p = 0.5) {
    Rng rng(seed);
    Lattice l(h, w);
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) l.set(r, c, rng.bernoulli(p));
    }
    return l;
}

// Lattice tiled from observed blocks only.
Lattice observed_lattice(std::size_t tiles_h, std::size_t tiles_w, const CodingTable& t, std::uint64_t seed) {
    std::vector<std::uint32_t> patterns;
    for (const auto& [p, c] : t.counts) patterns.push_back(p);
    Rng rng(seed);
    Lattice l(tiles_h * 3, tiles_w * 3);
    for (std::size_t i = 0; i < tiles_h; ++i) {
        for (std::size_t j = 0; j < tiles_w; ++j) {
            const auto b = block_from_pattern(patterns[rng.below(patterns.size())], 3);
            for (unsigned r = 0; r < 3; ++r) {
                for (unsigned c = 0; c < 3; ++c) l.set(i * 3 + r, j * 3 + c, b.get(r, c));
            }
        }
    }
    return l;
}

}  // namespace

TEST(Lattice, TextAndPacking) {
    const auto l = Lattice::from_text("101\n010\n");
    EXPECT_EQ(l.height(), 2u);
    EXPECT_EQ(l.width(), 3u);
    EXPECT_EQ(l.popcount(), 3u);
    EXPECT_EQ(l.to_text(), "101\n010\n");
    const auto p = l.packed();
    ASSERT_EQ(p.size(), 9u);
    EXPECT_EQ(p[0], 3);
    EXPECT_EQ(p[4], 1);
    EXPECT_EQ(p[8], 0xA8);
    EXPECT_THROW(Lattice::from_text("10\n1\n"), std::invalid_argument);
    EXPECT_THROW(Lattice::from_text("12\n"), std::invalid_argument);
    EXPECT_THROW(Lattice::from_text("10"), std::invalid_argument);
    EXPECT_THROW(Lattice(0, 3), std::domain_error);
}

TEST(Lattice, BlockPatternRoundTrip) {
    for (unsigned b : {2u, 3u, 4u}) {
        for (std::uint32_t p = 0; p < (1u << (b * b)); p += 7) {
            EXPECT_EQ(block_pattern(block_from_pattern(p, b), 0, 0, b), p);
        }
    }
    const auto l = Lattice::from_text("100\n000\n000\n");
    EXPECT_EQ(block_pattern(l, 0, 0, 3), 1u << 8);
}

TEST(Lattice, Padding) {
    const auto l = random_lattice(7, 8, 1);
    const auto p = l.padded_to(3);
    EXPECT_EQ(p.height(), 9u);
    EXPECT_EQ(p.width(), 9u);
    EXPECT_EQ(p.popcount(), l.popcount());
}

TEST(CodingTable, TilingArithmeticAndDeterminism) {
    const auto& t = frozen_table();
    EXPECT_EQ(t.total, kDefaultTableSamples * 10 * 11);
    std::uint64_t sum = 0;
    for (const auto& [p, c] : t.counts) sum += c;
    EXPECT_EQ(sum, t.total);
    const auto small = build_coding_table(2, 1000, 5);
    EXPECT_EQ(small.total, 1000u * 16 * 16);
    const auto again = build_coding_table(2, 1000, 5);
    EXPECT_EQ(small.counts, again.counts);
    EXPECT_THROW(build_coding_table(5, 1000, 1), std::domain_error);
    EXPECT_THROW(build_coding_table(1, 1000, 1), std::domain_error);
    EXPECT_THROW(build_coding_table(3, 10, 1), std::domain_error);
}

TEST(CodingTable, FrozenTableHasEmptyBlockMostFrequent) {
    const auto& t = frozen_table();
    const auto zero = t.counts.at(0);
    for (const auto& [p, c] : t.counts) {
        if (p != 0) EXPECT_LT(c, zero) << "pattern " << p;
    }
    EXPECT_EQ(*t.k(0), t.min_k());
}

TEST(CodingTable, KValuesFiniteAndNonNegative) {
    const auto& t = frozen_table();
    for (const auto& [p, c] : t.counts) {
        const auto k = t.k(p);
        ASSERT_TRUE(k.has_value());
        EXPECT_GE(*k, 0.0);
        EXPECT_TRUE(std::isfinite(*k));
        EXPECT_NEAR(*k, -std::log2(double(c) / double(t.total)), 1e-12);
    }
    EXPECT_LE(t.min_k(), t.max_k());
}

TEST(CodingTable, TextRoundTrip) {
    std::stringstream s;
    write_coding_table(s, frozen_table());
    const auto back = read_coding_table(s);
    EXPECT_EQ(back.counts, frozen_table().counts);
    EXPECT_EQ(back.total, frozen_table().total);
    EXPECT_EQ(back.seed, frozen_table().seed);
}

TEST(CodingTable, ShippedFileIsReproducible) {
    std::ifstream in(ECAPROG_SOURCE_DIR "/data/coding_table_b3.txt");
    ASSERT_TRUE(in);
    std::stringstream shipped;
    shipped << in.rdbuf();
    std::stringstream fresh;
    write_coding_table(fresh, frozen_table());
    EXPECT_EQ(shipped.str(), fresh.str());
}

TEST(CodingTable, RejectsMalformedFiles) {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_coding_table(in);
    };
    const std::string head = "ecaprog-coding-table 1\nblock_size 2\ntotal 5\nsamples 1000\nseed 1\n";
    EXPECT_NO_THROW(parse(head + "0 3\n5 2\n"));
    EXPECT_THROW(parse("bogus 1\n"), std::runtime_error);
    EXPECT_THROW(parse("ecaprog-coding-table 2\n"), std::runtime_error);
    EXPECT_THROW(parse(head + "5 3\n0 2\n"), std::runtime_error);
    EXPECT_THROW(parse(head + "0 3\n5 1\n"), std::runtime_error);
    EXPECT_THROW(parse(head + "0 3\n99999 2\n"), std::runtime_error);
    EXPECT_THROW(parse(head + "0 3\n5 x\n"), std::runtime_error);
}

TEST(BlockComplexity, TableAndFallback) {
    const auto& t = frozen_table();
    const auto id = builtin_lzss();
    const auto zero = block_complexity(Lattice(3, 3), t, id);
    EXPECT_FALSE(zero.fallback);
    EXPECT_EQ(zero.value, t.min_k());
    const auto odd = block_complexity(Lattice(2, 5), t, id);
    EXPECT_TRUE(odd.fallback);
    EXPECT_GE(odd.value, 0.0);
    const auto b = block_from_pattern(0x1AB, 3);
    EXPECT_EQ(block_complexity(b, t, id).value, block_complexity(b, t, id).value);
}

TEST(BlockComplexity, UnobservedBlockFallsBack) {
    const auto& t = frozen_table();
    std::uint32_t missing = 0;
    while (t.counts.count(missing)) ++missing;
    ASSERT_LT(missing, 512u);
    const auto v = block_complexity(block_from_pattern(missing, 3), t, builtin_lzss());
    EXPECT_TRUE(v.fallback);
    EXPECT_GE(v.value, 0.0);
}

TEST(Bdm, EmptyLattice) {
    const auto& t = frozen_table();
    const auto r = bdm(Lattice(30, 30), t);
    EXPECT_EQ(r.tiles, 100u);
    EXPECT_EQ(r.distinct_blocks, 1u);
    EXPECT_FALSE(r.padded);
    EXPECT_NEAR(r.value, t.min_k() + std::log2(100.0), 1e-12);
}

TEST(Bdm, PaddingIsReported) {
    const auto r = bdm(Lattice(31, 30), frozen_table());
    EXPECT_TRUE(r.padded);
    EXPECT_EQ(r.tiles, 110u);
}

TEST(Bdm, RepetitionIsCheaperThanDistinctBlocks) {
    // Hand-made table so all four blocks share one k.
    CodingTable t;
    t.block_size = 3;
    t.counts = {{1, 10}, {2, 10}, {4, 10}, {8, 10}};
    t.total = 40;
    Lattice same(3, 12), distinct(3, 12);
    for (std::size_t j = 0; j < 4; ++j) {
        same.set(2, j * 3 + 2, true);
    }
    const std::uint32_t pats[] = {1, 2, 4, 8};
    for (std::size_t j = 0; j < 4; ++j) {
        const auto b = block_from_pattern(pats[j], 3);
        for (unsigned r = 0; r < 3; ++r) {
            for (unsigned c = 0; c < 3; ++c) distinct.set(r, j * 3 + c, b.get(r, c));
        }
    }
    EXPECT_LT(bdm(same, t).value, bdm(distinct, t).value);
}

TEST(Bdm, Rule30AboveRule0) {
    const auto init = random_config(60, 0.5, 1);
    const auto l30 = Lattice::from_diagram(evolve(rule_table(30), init, 59));
    const auto l0 = Lattice::from_diagram(evolve(rule_table(0), init, 59));
    EXPECT_GT(bdm(l30, frozen_table()).value, bdm(l0, frozen_table()).value);
}

// Properties

TEST(Property, EmptyIsMinimalAmongObservedLattices) {
    const auto& t = frozen_table();
    const double empty = bdm(Lattice(30, 30), t).value;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto l = observed_lattice(10, 10, t, s);
        EXPECT_LE(empty, bdm(l, t).value);
    }
}

TEST(Property, TraversalOrderInvariance) {
    // Swapping two whole tiles leaves the multiset of blocks unchanged.
    const auto& t = frozen_table();
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto l = random_lattice(12, 12, s);
        Lattice swapped = l;
        for (unsigned r = 0; r < 3; ++r) {
            for (unsigned c = 0; c < 3; ++c) {
                swapped.set(r, c, l.get(9 + r, 9 + c));
                swapped.set(9 + r, 9 + c, l.get(r, c));
            }
        }
        EXPECT_DOUBLE_EQ(bdm(l, t).value, bdm(swapped, t).value);
    }
}

TEST(Property, DuplicateTileIncrement) {
    const auto& t = frozen_table();
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto base = random_lattice(3, 30, s);
        Lattice grown(3, 33);
        for (unsigned r = 0; r < 3; ++r) {
            for (std::size_t c = 0; c < 30; ++c) grown.set(r, c, base.get(r, c));
            for (unsigned c = 0; c < 3; ++c) grown.set(r, 30 + c, base.get(r, c));
        }
        std::size_t m = 0;
        const auto first = block_pattern(base, 0, 0, 3);
        for (std::size_t c = 0; c < 30; c += 3) m += block_pattern(base, 0, c, 3) == first;
        const double inc = bdm(grown, t).value - bdm(base, t).value;
        EXPECT_NEAR(inc, std::log2(double(m + 1)) - std::log2(double(m)), 1e-9);
    }
}
