#include "krigopt/dataset.hpp"

#include <stdexcept>

#include "krigopt/stats.hpp"

namespace krigopt {

Vector Dataset::sample_means() const {
    Vector m(num_points());
    for (Eigen::Index i = 0; i < num_points(); ++i)
        m(i) = mean(outputs[static_cast<std::size_t>(i)]);
    return m;
}

Vector Dataset::variance_of_means() const {
    Vector v(num_points());
    for (Eigen::Index i = 0; i < num_points(); ++i) {
        const auto& reps = outputs[static_cast<std::size_t>(i)];
        v(i) = sample_variance(reps) / static_cast<double>(reps.size());
    }
    return v;
}

void Dataset::add(const Vector& point, std::vector<double> reps) {
    if (points.rows() == 0) {
        points.resize(1, point.size());
        points.row(0) = point.transpose();
    } else {
        if (point.size() != points.cols())
            throw std::invalid_argument("Dataset::add: dimension mismatch");
        points.conservativeResize(points.rows() + 1, Eigen::NoChange);
        points.row(points.rows() - 1) = point.transpose();
    }
    outputs.push_back(std::move(reps));
}

void Dataset::validate() const {
    if (num_points() < 1) throw std::invalid_argument("Dataset: empty");
    if (static_cast<Eigen::Index>(outputs.size()) != num_points())
        throw std::invalid_argument("Dataset: outputs/points size mismatch");
    for (const auto& reps : outputs)
        if (reps.empty()) throw std::invalid_argument("Dataset: point without replications");
    for (Eigen::Index i = 0; i < num_points(); ++i)
        for (Eigen::Index j = i + 1; j < num_points(); ++j)
            if ((points.row(i) - points.row(j)).norm() <= 1e-12)
                throw std::invalid_argument("Dataset: duplicate design points");
}

}  // namespace krigopt
