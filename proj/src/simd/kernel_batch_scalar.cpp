#include <cmath>

#include "krigopt/simd.hpp"

namespace krigopt::simd {

void kernel_from_d2_scalar(KernelFamily family, double sigma2, double length_scale,
                           const double* d2, double* out, std::size_t n) {
    const double inv_l = 1.0 / length_scale;
    switch (family) {
        case KernelFamily::SquaredExponential: {
            const double c = -0.5 * inv_l * inv_l;
            for (std::size_t i = 0; i < n; ++i)
                out[i] = sigma2 * std::exp(c * d2[i]);
            break;
        }
        case KernelFamily::Matern32: {
            const double c = std::sqrt(3.0) * inv_l;
            for (std::size_t i = 0; i < n; ++i) {
                const double a = c * std::sqrt(d2[i]);
                out[i] = sigma2 * (1.0 + a) * std::exp(-a);
            }
            break;
        }
        case KernelFamily::Matern52: {
            const double c = std::sqrt(5.0) * inv_l;
            for (std::size_t i = 0; i < n; ++i) {
                const double a = c * std::sqrt(d2[i]);
                out[i] = sigma2 * (1.0 + a + a * a / 3.0) * std::exp(-a);
            }
            break;
        }
    }
}

}  // namespace krigopt::simd
