#pragma once
// Deterministic lossless compressors used as computable upper bounds on
// algorithmic complexity.
//
// Stream layout (all compressors):
//   bytes 0..3   magic "ECPZ"
//   byte  4      compressor id: 1 = lzss, 2 = rle; bit 7 set = stored payload
//   bytes 5..12  original length, unsigned 64-bit little-endian
//   bytes 13..   payload
//
// LZSS payload is a bit stream, most significant bit first, zero-padded to a
// byte boundary. Each token starts with a flag bit: 0 = literal (8 bits),
// 1 = match (15-bit offset-1, 8-bit length-min_match). RLE payload is a byte
// stream of control bytes: c < 128 means c+1 literal bytes follow, c >= 128
// means the next byte repeats c-128+3 times. When the encoded payload would be
// longer than the input, the input is stored verbatim instead.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ecaprog {

enum class Algorithm : std::uint8_t { lzss = 1, rle = 2 };

struct CompressorId {
    std::string name;
    Algorithm algorithm = Algorithm::lzss;
    std::uint32_t window = 32768;   // bytes; lzss only, at most 32768
    std::uint32_t min_match = 3;    // lzss only, 3..16; max match is min_match + 255

    friend bool operator==(const CompressorId&, const CompressorId&) = default;
};

/// Thrown by decompress() on any malformed stream.
class FormatError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kStreamHeaderBytes = 13;

CompressorId builtin_lzss();
CompressorId rle_compressor();

/// Registry lookup over compressor_names(); throws std::invalid_argument otherwise.
CompressorId compressor_by_name(std::string_view name);
std::vector<std::string> compressor_names();

std::vector<std::uint8_t> compress(std::span<const std::uint8_t> data, const CompressorId& id);
std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> stream, const CompressorId& id);

/// 8 * compress(data, id).size(), computed without materializing the stream.
std::uint64_t compressed_size_bits(std::span<const std::uint8_t> data, const CompressorId& id);

/// compressed_size_bits of data[0, L) for every L in prefix_lengths, in one
/// pass over data where the algorithm allows it.
std::vector<std::uint64_t> compressed_size_bits_prefixes(std::span<const std::uint8_t> data,
                                                         std::span<const std::size_t> prefix_lengths,
                                                         const CompressorId& id);

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace ecaprog
