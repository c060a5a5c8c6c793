#pragma once

#include <vector>

#include "krigopt/kernels.hpp"

namespace krigopt {

// Design points with per-replication outputs. Points are stored as rows;
// the kriging layers expect them already scaled to the unit box.
struct Dataset {
    Matrix points;                               // p x dim
    std::vector<std::vector<double>> outputs;    // ragged, >= 1 per point

    Eigen::Index num_points() const { return points.rows(); }
    Eigen::Index dim() const { return points.cols(); }

    // Arithmetic mean of each point's replications.
    Vector sample_means() const;

    // Unbiased sample variance / replication count per point; 0 when n_i = 1.
    Vector variance_of_means() const;

    void add(const Vector& point, std::vector<double> reps);

    // Throws unless p >= 1, every point has >= 1 replication and all points
    // are pairwise distinct beyond 1e-12.
    void validate() const;
};

}  // namespace krigopt
