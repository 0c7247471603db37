// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <bit>
#include <cstring>

#include "ecaprog/simd.hpp"

namespace ecaprog::simd {

namespace {

void apply_rule_avx2(const std::uint64_t* left, const std::uint64_t* center,
                     const std::uint64_t* right, std::uint64_t* out,
                     std::size_t nwords, std::uint8_t rule_number) {
    const __m256i ones = _mm256_set1_epi64x(-1);
    std::size_t i = 0;
    for (; i + 4 <= nwords; i += 4) {
        const __m256i l = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(left + i));
        const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(center + i));
        const __m256i r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(right + i));
        const __m256i nl = _mm256_xor_si256(l, ones);
        const __m256i nc = _mm256_xor_si256(c, ones);
        const __m256i nr = _mm256_xor_si256(r, ones);
        __m256i acc = _mm256_setzero_si256();
        for (unsigned v = 0; v < 8; ++v) {
            if (((rule_number >> v) & 1u) == 0) continue;
            const __m256i ml = (v & 4u) ? l : nl;
            const __m256i mc = (v & 2u) ? c : nc;
            const __m256i mr = (v & 1u) ? r : nr;
            acc = _mm256_or_si256(acc, _mm256_and_si256(ml, _mm256_and_si256(mc, mr)));
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), acc);
    }
    if (i < nwords) {
        scalar_kernels().apply_rule(left + i, center + i, right + i, out + i, nwords - i,
                                    rule_number);
    }
}

std::size_t match_length_avx2(const std::uint8_t* a, const std::uint8_t* b,
                              std::size_t max_len) {
    std::size_t n = 0;
    while (n + 32 <= max_len) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + n));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + n));
        const auto eq = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
        if (eq != 0xFFFFFFFFu) return n + static_cast<std::size_t>(std::countr_zero(~eq));
        n += 32;
    }
    return n + scalar_kernels().match_length(a + n, b + n, max_len - n);
}

void expand_bits_avx2(const std::uint64_t* words, std::size_t nbits, char* out) {
    // Byte j of the output lane selects source byte j/8 and tests bit j%8.
    const __m256i shuffle = _mm256_setr_epi8(0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1,
                                             2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3);
    const __m256i bitmask = _mm256_set1_epi64x(static_cast<long long>(0x8040201008040201ULL));
    const __m256i zero_char = _mm256_set1_epi8('0');
    std::size_t i = 0;
    for (; i + 32 <= nbits; i += 32) {
        const auto chunk = static_cast<std::uint32_t>(words[i / 64] >> (i % 64));
        // The shuffle is lane-local; broadcasting puts the 4 source bytes in both lanes.
        const __m256i src = _mm256_set1_epi32(static_cast<int>(chunk));
        const __m256i spread = _mm256_shuffle_epi8(src, shuffle);
        const __m256i set = _mm256_cmpeq_epi8(_mm256_and_si256(spread, bitmask), bitmask);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_sub_epi8(zero_char, set));
    }
    for (; i < nbits; ++i) {
        out[i] = ((words[i / 64] >> (i % 64)) & 1u) ? '1' : '0';
    }
}

}  // namespace

const Kernels& avx2_kernels() {
    static const Kernels k{Isa::avx2, &apply_rule_avx2, &match_length_avx2, &expand_bits_avx2};
    return k;
}

}  // namespace ecaprog::simd
