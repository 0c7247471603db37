#pragma once
// Two-dimensional complexity of binary lattices. Block complexities come from
// the coding theorem, K(x) = -log2 p(x), with p estimated by block
// frequencies in a seeded ensemble of random ECA evolutions; whole lattices
// are scored by block decomposition (BDM).

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecaprog/compressor.hpp"
#include "ecaprog/eca.hpp"

namespace ecaprog {

class Lattice {
 public:
    Lattice() = default;
    /// All-zero lattice; both dimensions must be >= 1.
    Lattice(std::size_t height, std::size_t width);

    static Lattice from_diagram(const SpaceTimeDiagram& diagram);
    /// Lines of '0'/'1', each newline-terminated, equal lengths >= 1.
    static Lattice from_text(std::string_view text);

    std::size_t height() const { return height_; }
    std::size_t width() const { return width_; }
    bool get(std::size_t row, std::size_t col) const { return cells_[row * width_ + col] != 0; }
    void set(std::size_t row, std::size_t col, bool v) { cells_[row * width_ + col] = v ? 1 : 0; }
    std::size_t popcount() const;

    /// Zero-extends on the right and bottom to multiples of b.
    Lattice padded_to(unsigned b) const;

    /// u32 width, u32 height - 1 (little-endian), cells row-major MSB-first;
    /// the same layout as a packed diagram.
    std::vector<std::uint8_t> packed() const;

    std::string to_text() const;

    friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<std::uint8_t> cells_;
};

/// b*b cells read row-major, the first cell as the most significant bit.
std::uint32_t block_pattern(const Lattice& lattice, std::size_t row, std::size_t col, unsigned b);

/// The b x b lattice whose block_pattern is `pattern`.
Lattice block_from_pattern(std::uint32_t pattern, unsigned b);

struct CodingTable {
    unsigned block_size = 3;
    std::map<std::uint32_t, std::uint64_t> counts;
    std::uint64_t total = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    /// -log2(count / total), or nullopt for unobserved patterns.
    std::optional<double> k(std::uint32_t pattern) const;
    double min_k() const;
    double max_k() const;
};

inline constexpr std::uint64_t kDefaultTableSeed = 1;
inline constexpr std::uint64_t kDefaultTableSamples = 20000;
inline constexpr std::size_t kEnsembleWidth = 32;
inline constexpr std::size_t kEnsembleSteps = 32;

/// Sample s uses Rng(mix_seed(seed, s)): one draw for the rule number, then
/// the width-32 density-0.5 input; 32 steps; non-overlapping b x b tiling of
/// the 33 x 32 diagram. b in {2, 3, 4}, samples >= 1000.
CodingTable build_coding_table(unsigned b, std::uint64_t samples, std::uint64_t seed);

/// Text format, version 1:
///   ecaprog-coding-table 1
///   block_size <b>
///   total <n>
///   samples <s>
///   seed <seed>
///   <pattern> <count>      (one line per observed pattern, ascending)
void write_coding_table(std::ostream& out, const CodingTable& table);
CodingTable read_coding_table(std::istream& in);

struct BlockValue {
    double value = 0.0;
    bool fallback = false;  // compressed-size surrogate, not a table value
};

/// Table value when block is b x b and observed; otherwise the compressed
/// size in bits of block.packed().
BlockValue block_complexity(const Lattice& block, const CodingTable& table, const CompressorId& id);

struct BdmResult {
    double value = 0.0;
    bool padded = false;
    std::size_t tiles = 0;
    std::size_t distinct_blocks = 0;
    std::size_t fallback_blocks = 0;  // distinct blocks scored by fallback
};

/// Sum over distinct tiles x of K(x) + log2(multiplicity(x)).
BdmResult bdm(const Lattice& lattice, const CodingTable& table, const CompressorId& id = builtin_lzss());

}  // namespace ecaprog
