#include "ecaprog/compressor.hpp"

#include <algorithm>
#include <array>
#include <cstring>

#include "ecaprog/simd.hpp"

namespace ecaprog {
namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'E', 'C', 'P', 'Z'};
constexpr std::uint8_t kStoredFlag = 0x80;

constexpr unsigned kOffsetBits = 15;
constexpr unsigned kLengthBits = 8;
constexpr std::uint64_t kLiteralBits = 1 + 8;
constexpr std::uint64_t kMatchBits = 1 + kOffsetBits + kLengthBits;

constexpr unsigned kHashBits = 15;

void validate(const CompressorId& id) {
    if (id.algorithm == Algorithm::lzss) {
        if (id.window < 1 || id.window > (1u << kOffsetBits)) {
            throw std::invalid_argument("lzss window must lie in [1, 32768]");
        }
        if (id.min_match < 3 || id.min_match > 16) {
            throw std::invalid_argument("lzss min_match must lie in [3, 16]");
        }
    } else if (id.algorithm != Algorithm::rle) {
        throw std::invalid_argument("unknown compressor algorithm");
    }
}

void write_header(std::vector<std::uint8_t>& out, std::uint8_t id_byte, std::uint64_t length) {
    out.insert(out.end(), kMagic.begin(), kMagic.end());
    out.push_back(id_byte);
    for (unsigned i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(length >> (8 * i)));
}

// ---------------------------------------------------------------------------
// LZSS

struct Token {
    std::uint32_t pos;
    std::uint32_t length;  // 1 for literals
    std::uint32_t offset;  // 0 for literals
};

// Greedy longest-match parse. Candidates come from 3-byte hash chains walked
// nearest-first; ties keep the nearest candidate.
template <class Sink>
void lzss_parse(std::span<const std::uint8_t> data, const CompressorId& id, Sink&& sink) {
    const std::size_t n = data.size();
    const std::size_t max_match = id.min_match + ((1u << kLengthBits) - 1);
    const auto& k = simd::active_kernels();
    std::vector<std::int32_t> head(std::size_t{1} << kHashBits, -1);
    std::vector<std::int32_t> prev(n, -1);

    auto hash_at = [&](std::size_t p) {
        const std::uint32_t v = (std::uint32_t{data[p]} << 16) | (std::uint32_t{data[p + 1]} << 8) | data[p + 2];
        return (v * 2654435761u) >> (32 - kHashBits);
    };
    auto insert = [&](std::size_t p) {
        if (p + 2 >= n) return;
        const auto h = hash_at(p);
        prev[p] = head[h];
        head[h] = static_cast<std::int32_t>(p);
    };

    std::size_t p = 0;
    while (p < n) {
        const std::size_t cap = std::min(max_match, n - p);
        std::size_t best_len = 0;
        std::size_t best_off = 0;
        if (cap >= id.min_match) {
            for (std::int32_t c = head[hash_at(p)]; c >= 0; c = prev[static_cast<std::size_t>(c)]) {
                const std::size_t cand = static_cast<std::size_t>(c);
                const std::size_t dist = p - cand;
                if (dist > id.window) break;
                if (best_len > 0 && data[cand + best_len] != data[p + best_len]) continue;
                const std::size_t len = k.match_length(&data[cand], &data[p], cap);
                if (len > best_len) {
                    best_len = len;
                    best_off = dist;
                    if (len == cap) break;
                }
            }
        }
        if (best_len >= id.min_match) {
            sink(Token{static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(best_len),
                       static_cast<std::uint32_t>(best_off)});
            for (std::size_t q = p; q < p + best_len; ++q) insert(q);
            p += best_len;
        } else {
            sink(Token{static_cast<std::uint32_t>(p), 1, 0});
            insert(p);
            ++p;
        }
    }
}

class BitWriter {
 public:
    explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

    void put(std::uint32_t value, unsigned bits) {
        for (unsigned i = bits; i-- > 0;) {
            acc_ = static_cast<std::uint8_t>((acc_ << 1) | ((value >> i) & 1u));
            if (++filled_ == 8) {
                out_.push_back(acc_);
                acc_ = 0;
                filled_ = 0;
            }
        }
    }

    void flush() {
        if (filled_ > 0) {
            out_.push_back(static_cast<std::uint8_t>(acc_ << (8 - filled_)));
            acc_ = 0;
            filled_ = 0;
        }
    }

 private:
    std::vector<std::uint8_t>& out_;
    std::uint8_t acc_ = 0;
    unsigned filled_ = 0;
};

class BitReader {
 public:
    explicit BitReader(std::span<const std::uint8_t> in) : in_(in) {}

    std::uint32_t get(unsigned bits) {
        std::uint32_t v = 0;
        for (unsigned i = 0; i < bits; ++i) {
            if (pos_ >= in_.size() * 8) throw FormatError("lzss stream truncated");
            const unsigned bit = (in_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
            v = (v << 1) | bit;
            ++pos_;
        }
        return v;
    }

    // Remaining bits must be zero padding within the final byte.
    void expect_end() const {
        if ((pos_ + 7) / 8 != in_.size()) throw FormatError("trailing bytes after lzss stream");
        for (std::size_t b = pos_; b < in_.size() * 8; ++b) {
            if ((in_[b / 8] >> (7 - b % 8)) & 1u) throw FormatError("nonzero lzss padding bits");
        }
    }

 private:
    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

std::vector<std::uint8_t> lzss_encode(std::span<const std::uint8_t> data, const CompressorId& id) {
    std::vector<std::uint8_t> out;
    out.reserve(data.size() / 2 + 16);
    BitWriter bw(out);
    lzss_parse(data, id, [&](const Token& t) {
        if (t.offset == 0) {
            bw.put(0, 1);
            bw.put(data[t.pos], 8);
        } else {
            bw.put(1, 1);
            bw.put(t.offset - 1, kOffsetBits);
            bw.put(t.length - id.min_match, kLengthBits);
        }
    });
    bw.flush();
    return out;
}

void lzss_decode(std::span<const std::uint8_t> payload, std::uint64_t length, const CompressorId& id,
                 std::vector<std::uint8_t>& out) {
    BitReader br(payload);
    while (out.size() < length) {
        if (br.get(1) == 0) {
            out.push_back(static_cast<std::uint8_t>(br.get(8)));
            continue;
        }
        const std::size_t offset = br.get(kOffsetBits) + 1;
        const std::size_t len = br.get(kLengthBits) + id.min_match;
        if (offset > out.size() || offset > id.window) throw FormatError("lzss match offset out of range");
        if (out.size() + len > length) throw FormatError("lzss match overruns declared length");
        const std::size_t from = out.size() - offset;
        for (std::size_t i = 0; i < len; ++i) out.push_back(out[from + i]);
    }
    br.expect_end();
}

// ---------------------------------------------------------------------------
// RLE

constexpr std::size_t kRleMinRun = 3;
constexpr std::size_t kRleMaxRun = 127 + kRleMinRun;
constexpr std::size_t kRleMaxLiteral = 128;

std::size_t run_length_at(std::span<const std::uint8_t> data, std::size_t p) {
    std::size_t r = 1;
    while (p + r < data.size() && r < kRleMaxRun && data[p + r] == data[p]) ++r;
    return r;
}

std::vector<std::uint8_t> rle_encode(std::span<const std::uint8_t> data) {
    std::vector<std::uint8_t> out;
    std::size_t p = 0;
    std::size_t lit_start = 0;
    auto flush_literals = [&](std::size_t end) {
        while (lit_start < end) {
            const std::size_t chunk = std::min(kRleMaxLiteral, end - lit_start);
            out.push_back(static_cast<std::uint8_t>(chunk - 1));
            out.insert(out.end(), data.begin() + static_cast<std::ptrdiff_t>(lit_start),
                       data.begin() + static_cast<std::ptrdiff_t>(lit_start + chunk));
            lit_start += chunk;
        }
    };
    while (p < data.size()) {
        const std::size_t r = run_length_at(data, p);
        if (r >= kRleMinRun) {
            flush_literals(p);
            out.push_back(static_cast<std::uint8_t>(128 + r - kRleMinRun));
            out.push_back(data[p]);
            p += r;
            lit_start = p;
        } else {
            p += r;
        }
    }
    flush_literals(data.size());
    return out;
}

void rle_decode(std::span<const std::uint8_t> payload, std::uint64_t length, std::vector<std::uint8_t>& out) {
    std::size_t i = 0;
    while (out.size() < length) {
        if (i >= payload.size()) throw FormatError("rle stream truncated");
        const std::uint8_t c = payload[i++];
        if (c < 128) {
            const std::size_t n = std::size_t{c} + 1;
            if (i + n > payload.size()) throw FormatError("rle literal run truncated");
            if (out.size() + n > length) throw FormatError("rle literal run overruns declared length");
            out.insert(out.end(), payload.begin() + static_cast<std::ptrdiff_t>(i),
                       payload.begin() + static_cast<std::ptrdiff_t>(i + n));
            i += n;
        } else {
            const std::size_t n = std::size_t{c} - 128 + kRleMinRun;
            if (i >= payload.size()) throw FormatError("rle repeat run truncated");
            if (out.size() + n > length) throw FormatError("rle repeat run overruns declared length");
            out.insert(out.end(), n, payload[i++]);
        }
    }
    if (i != payload.size()) throw FormatError("trailing bytes after rle stream");
}

std::vector<std::uint8_t> encode_payload(std::span<const std::uint8_t> data, const CompressorId& id) {
    return id.algorithm == Algorithm::lzss ? lzss_encode(data, id) : rle_encode(data);
}

std::uint64_t total_bits(std::uint64_t payload_bytes, std::uint64_t input_bytes) {
    return 8 * (kStreamHeaderBytes + std::min(payload_bytes, input_bytes));
}

}  // namespace

CompressorId builtin_lzss() { return CompressorId{"builtin-lzss", Algorithm::lzss, 32768, 3}; }

CompressorId rle_compressor() { return CompressorId{"rle", Algorithm::rle, 0, 0}; }

CompressorId compressor_by_name(std::string_view name) {
    if (name == "builtin-lzss") return builtin_lzss();
    if (name == "rle") return rle_compressor();
    throw std::invalid_argument("unknown compressor: " + std::string(name));
}

std::vector<std::string> compressor_names() { return {"builtin-lzss", "rle"}; }

std::vector<std::uint8_t> compress(std::span<const std::uint8_t> data, const CompressorId& id) {
    validate(id);
    auto payload = encode_payload(data, id);
    auto id_byte = static_cast<std::uint8_t>(id.algorithm);
    std::vector<std::uint8_t> out;
    if (payload.size() > data.size()) {
        id_byte |= kStoredFlag;
        out.reserve(kStreamHeaderBytes + data.size());
        write_header(out, id_byte, data.size());
        out.insert(out.end(), data.begin(), data.end());
    } else {
        out.reserve(kStreamHeaderBytes + payload.size());
        write_header(out, id_byte, data.size());
        out.insert(out.end(), payload.begin(), payload.end());
    }
    return out;
}

std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> stream, const CompressorId& id) {
    validate(id);
    if (stream.size() < kStreamHeaderBytes) throw FormatError("stream shorter than header");
    if (!std::equal(kMagic.begin(), kMagic.end(), stream.begin())) throw FormatError("bad magic");
    const std::uint8_t id_byte = stream[4];
    if ((id_byte & ~kStoredFlag) != static_cast<std::uint8_t>(id.algorithm)) {
        throw FormatError("stream was produced by a different compressor");
    }
    std::uint64_t length = 0;
    for (unsigned i = 0; i < 8; ++i) length |= std::uint64_t{stream[5 + i]} << (8 * i);
    const auto payload = stream.subspan(kStreamHeaderBytes);

    std::vector<std::uint8_t> out;
    if (id_byte & kStoredFlag) {
        if (payload.size() != length) throw FormatError("stored payload length mismatch");
        out.assign(payload.begin(), payload.end());
        return out;
    }
    // A token can expand to at most max_match bytes per 9 payload bits, and
    // rle to 130 bytes per 2; reject absurd lengths before reserving.
    if (length / 300 > payload.size() + 1) throw FormatError("declared length inconsistent with payload");
    out.reserve(length);
    if (id.algorithm == Algorithm::lzss) {
        lzss_decode(payload, length, id, out);
    } else {
        rle_decode(payload, length, out);
    }
    return out;
}

std::uint64_t compressed_size_bits(std::span<const std::uint8_t> data, const CompressorId& id) {
    const std::size_t len = data.size();
    return compressed_size_bits_prefixes(data, std::span<const std::size_t>(&len, 1), id).front();
}

std::vector<std::uint64_t> compressed_size_bits_prefixes(std::span<const std::uint8_t> data,
                                                         std::span<const std::size_t> prefix_lengths,
                                                         const CompressorId& id) {
    validate(id);
    for (auto L : prefix_lengths) {
        if (L > data.size()) throw std::invalid_argument("prefix length exceeds data size");
    }
    std::vector<std::uint64_t> out(prefix_lengths.size());
    if (id.algorithm == Algorithm::rle) {
        for (std::size_t i = 0; i < prefix_lengths.size(); ++i) {
            const auto payload = rle_encode(data.first(prefix_lengths[i]));
            out[i] = total_bits(payload.size(), prefix_lengths[i]);
        }
        return out;
    }

    // Greedy parsing of a prefix agrees with the full parse on every token that
    // ends inside the prefix. The token straddling the cut becomes one
    // truncated match if enough bytes remain, otherwise literals.
    const std::size_t max_prefix =
        prefix_lengths.empty() ? 0 : *std::max_element(prefix_lengths.begin(), prefix_lengths.end());
    std::vector<std::uint32_t> starts;
    std::vector<std::uint32_t> lengths;
    std::vector<std::uint64_t> cum_bits{0};
    lzss_parse(data.first(max_prefix), id, [&](const Token& t) {
        starts.push_back(t.pos);
        lengths.push_back(t.length);
        cum_bits.push_back(cum_bits.back() + (t.offset == 0 ? kLiteralBits : kMatchBits));
    });
    for (std::size_t i = 0; i < prefix_lengths.size(); ++i) {
        const std::size_t L = prefix_lengths[i];
        // First token ending past L.
        const auto it = std::upper_bound(starts.begin(), starts.end(), L,
                                         [](std::size_t v, std::uint32_t s) { return v <= s; });
        std::size_t j = static_cast<std::size_t>(it - starts.begin());  // tokens [0, j) start before L
        std::uint64_t bits = 0;
        if (j > 0 && starts[j - 1] + lengths[j - 1] > L) {
            const std::size_t rem = L - starts[j - 1];
            bits = cum_bits[j - 1] + (rem >= id.min_match ? kMatchBits : rem * kLiteralBits);
        } else {
            bits = cum_bits[j];
        }
        out[i] = total_bits((bits + 7) / 8, L);
    }
    return out;
}

}  // namespace ecaprog
