#pragma once

#include <cstddef>

#include "krigopt/kernel_family.hpp"

// Batched covariance evaluation: transform squared distances into kernel
// values. This is the arithmetic inner loop of covariance assembly and of
// acquisition sweeps over candidate grids, so it gets a scalar reference
// implementation plus a vectorized variant selected once at startup from
// CPU capabilities. The variants must agree to 1e-12 relative (tested).
namespace krigopt::simd {

enum class Impl { Scalar, Avx2 };

// Implementation chosen for this process (CPU probe, done once).
Impl active_impl();
const char* impl_name(Impl impl);

// out[i] = k(sqrt(d2[i])) for the given family / sigma2 / length_scale,
// using the runtime-selected implementation.
void kernel_from_d2(KernelFamily family, double sigma2, double length_scale,
                    const double* d2, double* out, std::size_t n);

// Reference path, always scalar libm. Used directly by equivalence tests.
void kernel_from_d2_scalar(KernelFamily family, double sigma2, double length_scale,
                           const double* d2, double* out, std::size_t n);

#ifdef KRIGOPT_HAVE_AVX2
void kernel_from_d2_avx2(KernelFamily family, double sigma2, double length_scale,
                         const double* d2, double* out, std::size_t n);
#endif

}  // namespace krigopt::simd
