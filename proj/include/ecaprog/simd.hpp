#pragma once
// Data-parallel inner loops with a scalar reference and optional AVX2 variants.
//
// Every kernel has a scalar implementation that is always built. Vector
// variants are compiled in separate translation units with their own target
// flags and picked at runtime from the CPU feature set, so the library runs
// on any x86-64 (or non-x86) machine. All variants must produce bit-identical
// results; tests/simd_equivalence_test.cpp checks this.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace ecaprog::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

struct Kernels {
    Isa isa;

    // out[i] = bit (4*l + 2*c + r) of rule_number, word-wise over nwords words.
    void (*apply_rule)(const std::uint64_t* left, const std::uint64_t* center,
                       const std::uint64_t* right, std::uint64_t* out,
                       std::size_t nwords, std::uint8_t rule_number);

    // Length of the common prefix of a and b, capped at max_len.
    std::size_t (*match_length)(const std::uint8_t* a, const std::uint8_t* b,
                                std::size_t max_len);

    // out[i] = '1' if bit i of words (LSB-first) is set, else '0'; i < nbits.
    void (*expand_bits)(const std::uint64_t* words, std::size_t nbits, char* out);
};

const Kernels& scalar_kernels();

// Variants this binary was built with and this CPU can execute.
std::vector<Isa> available_isas();

const Kernels& kernels_for(Isa isa);

// Best available ISA unless ECAPROG_SIMD=scalar is set in the environment.
const Kernels& active_kernels();

// Overrides the active ISA (tests and benchmarking). Throws if unavailable.
void set_active_isa(Isa isa);

}  // namespace ecaprog::simd
