#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ecaprog/simd.hpp"

namespace ecaprog::simd {

#if defined(ECAPROG_BUILD_AVX2)
const Kernels& avx2_kernels();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(ECAPROG_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Kernels* pick_default() {
    if (const char* env = std::getenv("ECAPROG_SIMD"); env != nullptr && std::string(env) == "scalar") {
        return &scalar_kernels();
    }
#if defined(ECAPROG_BUILD_AVX2)
    if (cpu_has_avx2()) return &avx2_kernels();
#endif
    return &scalar_kernels();
}

std::atomic<const Kernels*>& active_slot() {
    static std::atomic<const Kernels*> slot{pick_default()};
    return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out{Isa::scalar};
    if (cpu_has_avx2()) out.push_back(Isa::avx2);
    return out;
}

const Kernels& kernels_for(Isa isa) {
    switch (isa) {
        case Isa::scalar: return scalar_kernels();
        case Isa::avx2:
#if defined(ECAPROG_BUILD_AVX2)
            if (cpu_has_avx2()) return avx2_kernels();
#endif
            break;
    }
    throw std::runtime_error("SIMD variant not available: " + std::string(isa_name(isa)));
}

const Kernels& active_kernels() { return *active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) { active_slot().store(&kernels_for(isa), std::memory_order_relaxed); }

}  // namespace ecaprog::simd
