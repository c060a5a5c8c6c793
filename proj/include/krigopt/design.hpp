#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "krigopt/kernels.hpp"

namespace krigopt {

// Box decision space, optionally integer-valued per dimension and filtered
// by a feasibility predicate (evaluated in problem units).
struct Domain {
    Vector lower;
    Vector upper;
    std::vector<bool> integral;                   // empty = all continuous
    std::function<bool(const Vector&)> feasible;  // empty = everything feasible

    Eigen::Index dim() const { return lower.size(); }
    bool is_integral(Eigen::Index d) const {
        return !integral.empty() && integral[static_cast<std::size_t>(d)];
    }
    bool is_feasible(const Vector& x) const { return !feasible || feasible(x); }
    void validate() const;
};

// The (s, S) inventory decision space: integer 1 <= s < S <= 100.
Domain inventory_domain(double lo = 1.0, double hi = 100.0);

// Stratified Latin hypercube sample of n points in domain units, one point
// per equal-width stratum per dimension. Integral dimensions round to the
// nearest integer; infeasible or colliding points are repaired first by
// re-jittering within their strata (<= 100 attempts), then by swapping
// stratum assignments across points. Deterministic per seed.
Matrix latin_hypercube(int n, const Domain& domain, std::uint64_t seed);

// Full integer lattice of the domain filtered by the feasibility predicate,
// in lexicographic order (stable candidate indices). All dimensions must be
// integral.
Matrix candidate_grid(const Domain& domain);

// Affine map to/from the unit box.
Vector scale_to_unit(const Domain& domain, const Vector& point);
Vector unscale(const Domain& domain, const Vector& point01);
Matrix scale_rows_to_unit(const Domain& domain, const Matrix& points);

}  // namespace krigopt
