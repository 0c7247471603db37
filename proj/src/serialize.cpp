#include "ecaprog/serialize.hpp"

#include <stdexcept>
#include <string>

#include "ecaprog/simd.hpp"

namespace ecaprog {
namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (unsigned i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
    std::uint32_t v = 0;
    for (unsigned i = 0; i < 4; ++i) v |= std::uint32_t{in[at + i]} << (8 * i);
    return v;
}

}  // namespace

std::vector<std::uint8_t> serialize_diagram(const SpaceTimeDiagram& diagram, SerializationMode mode) {
    const std::size_t width = diagram.width();
    const std::size_t rows = diagram.rows.size();
    std::vector<std::uint8_t> out;
    if (mode == SerializationMode::ascii) {
        out.resize((width + 1) * rows);
        const auto& k = simd::active_kernels();
        char* dst = reinterpret_cast<char*>(out.data());
        for (const auto& row : diagram.rows) {
            k.expand_bits(row.words().data(), width, dst);
            dst[width] = '\n';
            dst += width + 1;
        }
        return out;
    }

    const std::uint64_t nbits = static_cast<std::uint64_t>(width) * rows;
    out.reserve(kPackedHeaderBytes + (nbits + 7) / 8);
    put_u32(out, static_cast<std::uint32_t>(width));
    put_u32(out, static_cast<std::uint32_t>(diagram.steps()));
    std::uint8_t acc = 0;
    unsigned filled = 0;
    for (const auto& row : diagram.rows) {
        for (std::size_t i = 0; i < width; ++i) {
            acc = static_cast<std::uint8_t>((acc << 1) | (row.get(i) ? 1u : 0u));
            if (++filled == 8) {
                out.push_back(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0) out.push_back(static_cast<std::uint8_t>(acc << (8 - filled)));
    return out;
}

SpaceTimeDiagram parse_ascii_diagram(std::string_view text) {
    SpaceTimeDiagram d;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) throw std::invalid_argument("diagram text must end with a newline");
        auto line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        auto row = Configuration::from_string(line);
        if (!d.rows.empty() && row.width() != d.rows.front().width()) {
            throw std::invalid_argument("diagram rows have different widths");
        }
        d.rows.push_back(std::move(row));
        pos = nl + 1;
    }
    if (d.rows.empty()) throw std::invalid_argument("empty diagram");
    return d;
}

SpaceTimeDiagram parse_packed_diagram(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kPackedHeaderBytes) throw std::invalid_argument("packed diagram shorter than header");
    const std::size_t width = get_u32(bytes, 0);
    const std::size_t steps = get_u32(bytes, 4);
    const std::uint64_t nbits = static_cast<std::uint64_t>(width) * (steps + 1);
    if (bytes.size() != kPackedHeaderBytes + (nbits + 7) / 8) {
        throw std::invalid_argument("packed diagram size does not match header");
    }
    SpaceTimeDiagram d;
    d.rows.reserve(steps + 1);
    std::uint64_t bit = 0;
    for (std::size_t r = 0; r <= steps; ++r) {
        Configuration row(width);
        for (std::size_t i = 0; i < width; ++i, ++bit) {
            if ((bytes[kPackedHeaderBytes + bit / 8] >> (7 - bit % 8)) & 1u) row.set(i, true);
        }
        d.rows.push_back(std::move(row));
    }
    return d;
}

SerializationMode serialization_mode_from_name(std::string_view name) {
    if (name == "ascii") return SerializationMode::ascii;
    if (name == "packed") return SerializationMode::packed;
    throw std::invalid_argument("unknown serialization mode: " + std::string(name));
}

}  // namespace ecaprog
