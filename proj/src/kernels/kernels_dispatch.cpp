#include <cstdlib>
#include <string>

#include "floodfuse/errors.hpp"
#include "floodfuse/kernels.hpp"

namespace floodfuse::kernels {

#if defined(__x86_64__) || defined(__i386__)
const Kernels* avx2_table();  // defined in kernels_avx2.cpp

const Kernels* avx2() {
    static const Kernels* table =
        __builtin_cpu_supports("avx2") ? avx2_table() : nullptr;
    return table;
}
#else
const Kernels* avx2() { return nullptr; }
#endif

const Kernels& active() {
    static const Kernels* selected = [] {
        const char* env = std::getenv("FLOODFUSE_SIMD");
        const std::string mode = env ? env : "auto";
        if (mode == "scalar") return &scalar();
        if (mode == "avx2") {
            const Kernels* simd = avx2();
            if (!simd) {
                throw InvalidArgumentError(
                    "FLOODFUSE_SIMD=avx2 requested but AVX2 is unavailable");
            }
            return simd;
        }
        const Kernels* simd = avx2();
        return simd ? simd : &scalar();
    }();
    return *selected;
}

}  // namespace floodfuse::kernels
