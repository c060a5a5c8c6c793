#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "krigopt/kernel_family.hpp"

namespace krigopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Stationary kernel: family plus process variance sigma^2 and an isotropic
// length-scale in unit-box input units.
struct KernelSpec {
    KernelFamily family = KernelFamily::SquaredExponential;
    double process_variance = 1.0;
    double length_scale = 1.0;

    KernelSpec() = default;
    KernelSpec(KernelFamily f, double sigma2, double l)
        : family(f), process_variance(sigma2), length_scale(l) {
        if (!(sigma2 > 0.0)) throw std::invalid_argument("process_variance must be > 0");
        if (!(l > 0.0)) throw std::invalid_argument("length_scale must be > 0");
    }
};

// Euclidean distance; inputs are expected in unit-box scale.
double distance(const Vector& a, const Vector& b);

// Kernel value at distance d >= 0.
double kernel_value(const KernelSpec& spec, double d);

// p x p covariance matrix over rows of `points` (p x dim). No nugget; the
// linear-solve layers add their own diagonal shift.
Matrix covariance_matrix(const KernelSpec& spec, const Matrix& points);

// k-vector between a query point and each row of `points`.
Vector cross_covariance(const KernelSpec& spec, const Matrix& points, const Vector& query);

// Diagonal shift applied before any factorization of a covariance matrix.
inline double nugget(double sigma2) { return 1e-8 * sigma2; }

}  // namespace krigopt
