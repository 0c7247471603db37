#include "ecaprog/simd.hpp"

#include <bit>

namespace ecaprog::simd {
namespace {

void apply_rule_scalar(const std::uint64_t* left, const std::uint64_t* center,
                       const std::uint64_t* right, std::uint64_t* out,
                       std::size_t nwords, std::uint8_t rule_number) {
    for (std::size_t i = 0; i < nwords; ++i) {
        const std::uint64_t l = left[i];
        const std::uint64_t c = center[i];
        const std::uint64_t r = right[i];
        std::uint64_t acc = 0;
        for (unsigned v = 0; v < 8; ++v) {
            if (((rule_number >> v) & 1u) == 0) continue;
            const std::uint64_t ml = (v & 4u) ? l : ~l;
            const std::uint64_t mc = (v & 2u) ? c : ~c;
            const std::uint64_t mr = (v & 1u) ? r : ~r;
            acc |= ml & mc & mr;
        }
        out[i] = acc;
    }
}

std::size_t match_length_scalar(const std::uint8_t* a, const std::uint8_t* b,
                                std::size_t max_len) {
    std::size_t n = 0;
    // Eight bytes at a time, then the tail.
    while (n + 8 <= max_len) {
        std::uint64_t wa = 0;
        std::uint64_t wb = 0;
        for (unsigned k = 0; k < 8; ++k) {
            wa |= std::uint64_t{a[n + k]} << (8 * k);
            wb |= std::uint64_t{b[n + k]} << (8 * k);
        }
        const std::uint64_t diff = wa ^ wb;
        if (diff != 0) return n + static_cast<std::size_t>(std::countr_zero(diff)) / 8;
        n += 8;
    }
    while (n < max_len && a[n] == b[n]) ++n;
    return n;
}

void expand_bits_scalar(const std::uint64_t* words, std::size_t nbits, char* out) {
    for (std::size_t i = 0; i < nbits; ++i) {
        out[i] = ((words[i / 64] >> (i % 64)) & 1u) ? '1' : '0';
    }
}

}  // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{Isa::scalar, &apply_rule_scalar, &match_length_scalar,
                           &expand_bits_scalar};
    return k;
}

}  // namespace ecaprog::simd
