#include "krigopt/simd.hpp"

namespace krigopt::simd {

namespace {

Impl probe() {
#ifdef KRIGOPT_HAVE_AVX2
#if defined(__GNUC__) || defined(__clang__)
    if (__builtin_cpu_supports("avx2")) return Impl::Avx2;
#endif
#endif
    return Impl::Scalar;
}

}  // namespace

Impl active_impl() {
    static const Impl impl = probe();
    return impl;
}

const char* impl_name(Impl impl) {
    switch (impl) {
        case Impl::Scalar: return "scalar";
        case Impl::Avx2: return "avx2";
    }
    return "?";
}

void kernel_from_d2(KernelFamily family, double sigma2, double length_scale,
                    const double* d2, double* out, std::size_t n) {
    switch (active_impl()) {
#ifdef KRIGOPT_HAVE_AVX2
        case Impl::Avx2:
            kernel_from_d2_avx2(family, sigma2, length_scale, d2, out, n);
            return;
#endif
        default:
            kernel_from_d2_scalar(family, sigma2, length_scale, d2, out, n);
            return;
    }
}

}  // namespace krigopt::simd
