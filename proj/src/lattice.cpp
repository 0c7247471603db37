#include "ecaprog/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ecaprog/rng.hpp"

namespace ecaprog {

Lattice::Lattice(std::size_t height, std::size_t width)
    : height_(height), width_(width), cells_(height * width, 0) {
    if (height < 1 || width < 1) throw std::domain_error("lattice dimensions must be >= 1");
}

Lattice Lattice::from_diagram(const SpaceTimeDiagram& diagram) {
    Lattice l(diagram.rows.size(), diagram.width());
    for (std::size_t r = 0; r < l.height_; ++r) {
        for (std::size_t c = 0; c < l.width_; ++c) l.set(r, c, diagram.rows[r].get(c));
    }
    return l;
}

Lattice Lattice::from_text(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) throw std::invalid_argument("lattice text must end with a newline");
        auto line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = nl + 1;
    }
    if (lines.empty() || lines.front().empty()) throw std::invalid_argument("empty lattice");
    Lattice l(lines.size(), lines.front().size());
    for (std::size_t r = 0; r < lines.size(); ++r) {
        if (lines[r].size() != l.width_) throw std::invalid_argument("lattice rows have different widths");
        for (std::size_t c = 0; c < l.width_; ++c) {
            const char ch = lines[r][c];
            if (ch != '0' && ch != '1') throw std::invalid_argument("lattice text must contain only '0' and '1'");
            l.set(r, c, ch == '1');
        }
    }
    return l;
}

std::size_t Lattice::popcount() const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

Lattice Lattice::padded_to(unsigned b) const {
    const std::size_t h = (height_ + b - 1) / b * b;
    const std::size_t w = (width_ + b - 1) / b * b;
    Lattice out(h, w);
    for (std::size_t r = 0; r < height_; ++r) {
        for (std::size_t c = 0; c < width_; ++c) out.set(r, c, get(r, c));
    }
    return out;
}

std::vector<std::uint8_t> Lattice::packed() const {
    std::vector<std::uint8_t> out;
    auto put_u32 = [&](std::uint32_t v) {
        for (unsigned i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    };
    put_u32(static_cast<std::uint32_t>(width_));
    put_u32(static_cast<std::uint32_t>(height_ - 1));
    std::uint8_t acc = 0;
    unsigned filled = 0;
    for (auto cell : cells_) {
        acc = static_cast<std::uint8_t>((acc << 1) | cell);
        if (++filled == 8) {
            out.push_back(acc);
            acc = 0;
            filled = 0;
        }
    }
    if (filled > 0) out.push_back(static_cast<std::uint8_t>(acc << (8 - filled)));
    return out;
}

std::string Lattice::to_text() const {
    std::string s;
    s.reserve(height_ * (width_ + 1));
    for (std::size_t r = 0; r < height_; ++r) {
        for (std::size_t c = 0; c < width_; ++c) s.push_back(get(r, c) ? '1' : '0');
        s.push_back('\n');
    }
    return s;
}

std::uint32_t block_pattern(const Lattice& lattice, std::size_t row, std::size_t col, unsigned b) {
    std::uint32_t p = 0;
    for (unsigned i = 0; i < b; ++i) {
        for (unsigned j = 0; j < b; ++j) p = (p << 1) | (lattice.get(row + i, col + j) ? 1u : 0u);
    }
    return p;
}

Lattice block_from_pattern(std::uint32_t pattern, unsigned b) {
    Lattice l(b, b);
    for (unsigned i = 0; i < b; ++i) {
        for (unsigned j = 0; j < b; ++j) {
            const unsigned shift = b * b - 1 - (i * b + j);
            l.set(i, j, ((pattern >> shift) & 1u) != 0);
        }
    }
    return l;
}

std::optional<double> CodingTable::k(std::uint32_t pattern) const {
    const auto it = counts.find(pattern);
    if (it == counts.end() || it->second == 0) return std::nullopt;
    return -std::log2(static_cast<double>(it->second) / static_cast<double>(total));
}

double CodingTable::min_k() const {
    std::uint64_t best = 0;
    for (const auto& [pattern, count] : counts) best = std::max(best, count);
    if (best == 0) throw std::domain_error("empty coding table");
    return -std::log2(static_cast<double>(best) / static_cast<double>(total));
}

double CodingTable::max_k() const {
    std::uint64_t least = std::numeric_limits<std::uint64_t>::max();
    for (const auto& [pattern, count] : counts) {
        if (count > 0) least = std::min(least, count);
    }
    if (counts.empty()) throw std::domain_error("empty coding table");
    return -std::log2(static_cast<double>(least) / static_cast<double>(total));
}

CodingTable build_coding_table(unsigned b, std::uint64_t samples, std::uint64_t seed) {
    if (b < 2 || b > 4) throw std::domain_error("block size must be 2, 3 or 4");
    if (samples < 1000) throw std::domain_error("coding table needs at least 1000 samples");
    CodingTable table;
    table.block_size = b;
    table.samples = samples;
    table.seed = seed;
    const std::size_t tile_rows = (kEnsembleSteps + 1) / b;
    const std::size_t tile_cols = kEnsembleWidth / b;
    for (std::uint64_t s = 0; s < samples; ++s) {
        Rng rng(mix_seed(seed, s));
        const Rule rule = Rule::from_number(static_cast<int>(rng.below(256)));
        Configuration init(kEnsembleWidth);
        for (std::size_t i = 0; i < kEnsembleWidth; ++i) init.set(i, rng.bernoulli(0.5));
        const auto lattice = Lattice::from_diagram(evolve(rule, init, kEnsembleSteps));
        for (std::size_t tr = 0; tr < tile_rows; ++tr) {
            for (std::size_t tc = 0; tc < tile_cols; ++tc) {
                ++table.counts[block_pattern(lattice, tr * b, tc * b, b)];
            }
        }
    }
    table.total = samples * tile_rows * tile_cols;
    return table;
}

void write_coding_table(std::ostream& out, const CodingTable& table) {
    out << "ecaprog-coding-table 1\n"
        << "block_size " << table.block_size << '\n'
        << "total " << table.total << '\n'
        << "samples " << table.samples << '\n'
        << "seed " << table.seed << '\n';
    for (const auto& [pattern, count] : table.counts) out << pattern << ' ' << count << '\n';
}

CodingTable read_coding_table(std::istream& in) {
    auto fail = [](const std::string& what) -> CodingTable { throw std::runtime_error("coding table: " + what); };
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != "ecaprog-coding-table") return fail("bad header");
    if (version != 1) return fail("unsupported version " + std::to_string(version));
    CodingTable t;
    std::string key;
    auto expect = [&](const char* name, auto& value) {
        if (!(in >> key >> value) || key != name) fail(std::string("expected ") + name);
    };
    expect("block_size", t.block_size);
    expect("total", t.total);
    expect("samples", t.samples);
    expect("seed", t.seed);
    if (t.block_size < 2 || t.block_size > 4) return fail("block size must be 2, 3 or 4");
    std::uint64_t pattern = 0;
    std::uint64_t count = 0;
    std::uint64_t sum = 0;
    bool have_prev = false;
    std::uint64_t prev = 0;
    while (in >> pattern >> count) {
        if (pattern >> (t.block_size * t.block_size)) return fail("pattern wider than b*b bits");
        if (have_prev && pattern <= prev) return fail("patterns must be strictly ascending");
        t.counts[static_cast<std::uint32_t>(pattern)] = count;
        sum += count;
        prev = pattern;
        have_prev = true;
    }
    if (!in.eof()) return fail("malformed entry");
    if (sum != t.total) return fail("counts do not sum to total");
    return t;
}

BlockValue block_complexity(const Lattice& block, const CodingTable& table, const CompressorId& id) {
    const unsigned b = table.block_size;
    if (block.height() == b && block.width() == b) {
        if (const auto k = table.k(block_pattern(block, 0, 0, b))) return {*k, false};
    }
    return {static_cast<double>(compressed_size_bits(block.packed(), id)), true};
}

BdmResult bdm(const Lattice& lattice, const CodingTable& table, const CompressorId& id) {
    const unsigned b = table.block_size;
    BdmResult result;
    const Lattice& src = lattice;
    Lattice padded;
    const bool needs_pad = lattice.height() % b != 0 || lattice.width() % b != 0;
    if (needs_pad) padded = lattice.padded_to(b);
    const Lattice& grid = needs_pad ? padded : src;
    result.padded = needs_pad;

    std::map<std::uint32_t, std::size_t> multiplicity;
    for (std::size_t r = 0; r < grid.height(); r += b) {
        for (std::size_t c = 0; c < grid.width(); c += b) {
            ++multiplicity[block_pattern(grid, r, c, b)];
            ++result.tiles;
        }
    }
    result.distinct_blocks = multiplicity.size();
    for (const auto& [pattern, m] : multiplicity) {
        BlockValue v;
        if (const auto k = table.k(pattern)) {
            v = {*k, false};
        } else {
            v = block_complexity(block_from_pattern(pattern, b), table, id);
        }
        if (v.fallback) ++result.fallback_blocks;
        result.value += v.value + std::log2(static_cast<double>(m));
    }
    return result;
}

}  // namespace ecaprog
