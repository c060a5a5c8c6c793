#include "krigopt/kernels.hpp"

#include <cmath>
#include <vector>

#include "krigopt/simd.hpp"

namespace krigopt {

double distance(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("distance: dimension mismatch");
    return (a - b).norm();
}

double kernel_value(const KernelSpec& spec, double d) {
    if (d < 0.0) throw std::invalid_argument("kernel_value: negative distance");
    const double s2 = spec.process_variance;
    const double l = spec.length_scale;
    switch (spec.family) {
        case KernelFamily::SquaredExponential:
            return s2 * std::exp(-d * d / (2.0 * l * l));
        case KernelFamily::Matern32: {
            const double a = std::sqrt(3.0) * d / l;
            return s2 * (1.0 + a) * std::exp(-a);
        }
        case KernelFamily::Matern52: {
            const double a = std::sqrt(5.0) * d / l;
            return s2 * (1.0 + a + a * a / 3.0) * std::exp(-a);
        }
    }
    return 0.0;
}

Matrix covariance_matrix(const KernelSpec& spec, const Matrix& points) {
    const Eigen::Index p = points.rows();
    if (p < 1) throw std::invalid_argument("covariance_matrix: empty point set");
    Matrix cov(p, p);
    std::vector<double> d2(static_cast<std::size_t>(p));
    std::vector<double> row(static_cast<std::size_t>(p));
    for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j)
            d2[static_cast<std::size_t>(j)] = (points.row(i) - points.row(j)).squaredNorm();
        simd::kernel_from_d2(spec.family, spec.process_variance, spec.length_scale,
                             d2.data(), row.data(), static_cast<std::size_t>(i) + 1);
        for (Eigen::Index j = 0; j <= i; ++j) {
            cov(i, j) = row[static_cast<std::size_t>(j)];
            cov(j, i) = cov(i, j);
        }
    }
    // exact sigma^2 on the diagonal regardless of rounding in the batch path
    cov.diagonal().setConstant(spec.process_variance);
    return cov;
}

Vector cross_covariance(const KernelSpec& spec, const Matrix& points, const Vector& query) {
    const Eigen::Index p = points.rows();
    if (p < 1) throw std::invalid_argument("cross_covariance: empty point set");
    if (points.cols() != query.size())
        throw std::invalid_argument("cross_covariance: dimension mismatch");
    std::vector<double> d2(static_cast<std::size_t>(p));
    for (Eigen::Index i = 0; i < p; ++i)
        d2[static_cast<std::size_t>(i)] = (points.row(i).transpose() - query).squaredNorm();
    Vector k(p);
    simd::kernel_from_d2(spec.family, spec.process_variance, spec.length_scale,
                         d2.data(), k.data(), static_cast<std::size_t>(p));
    return k;
}

}  // namespace krigopt
