#include "krigopt/design.hpp"

#include <cmath>
#include <stdexcept>

#include "krigopt/rng.hpp"

namespace krigopt {

void Domain::validate() const {
    if (lower.size() < 1 || lower.size() != upper.size())
        throw std::invalid_argument("Domain: bad bounds");
    for (Eigen::Index d = 0; d < dim(); ++d)
        if (!(lower(d) < upper(d)))
            throw std::invalid_argument("Domain: lower must be < upper");
    if (!integral.empty() && static_cast<Eigen::Index>(integral.size()) != dim())
        throw std::invalid_argument("Domain: integral flag size mismatch");
}

Domain inventory_domain(double lo, double hi) {
    Domain d;
    d.lower = Vector::Constant(2, lo);
    d.upper = Vector::Constant(2, hi);
    d.integral = {true, true};
    d.feasible = [](const Vector& x) { return x(0) < x(1); };
    return d;
}

namespace {

double realize_coord(const Domain& domain, Eigen::Index d, int stratum, int n, double u) {
    const double v01 = (static_cast<double>(stratum) + u) / static_cast<double>(n);
    double v = domain.lower(d) + v01 * (domain.upper(d) - domain.lower(d));
    if (domain.is_integral(d)) v = std::round(v);
    return v;
}

bool collides(const Matrix& pts, Eigen::Index i, Eigen::Index j) {
    return (pts.row(i) - pts.row(j)).norm() <= 1e-12;
}

bool collides_any(const Matrix& pts, Eigen::Index i) {
    for (Eigen::Index j = 0; j < pts.rows(); ++j)
        if (j != i && collides(pts, i, j)) return true;
    return false;
}

}  // namespace

Matrix latin_hypercube(int n, const Domain& domain, std::uint64_t seed) {
    domain.validate();
    if (n < 1) throw std::invalid_argument("latin_hypercube: n must be >= 1");
    const Eigen::Index dim = domain.dim();
    Rng rng(Rng::derive({seed, 0x6c6873ULL}));

    // stratum permutation per dimension
    std::vector<std::vector<int>> strata(static_cast<std::size_t>(dim));
    for (Eigen::Index d = 0; d < dim; ++d) {
        auto& perm = strata[static_cast<std::size_t>(d)];
        perm.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[static_cast<std::size_t>(i)],
                      perm[static_cast<std::size_t>(rng.uniform_int(0, i))]);
    }

    Matrix pts(n, dim);
    auto realize_point = [&](int i) {
        for (Eigen::Index d = 0; d < dim; ++d)
            pts(i, d) = realize_coord(domain, d, strata[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)],
                                      n, rng.uniform());
    };
    auto feasible = [&](int i) { return domain.is_feasible(pts.row(i).transpose()); };
    // re-jitter within the assigned strata until feasible, keeping the last
    // draw otherwise
    auto jitter_feasible = [&](int i, int tries) {
        for (int t = 0; t < tries; ++t) {
            realize_point(i);
            if (feasible(i)) return true;
        }
        return false;
    };
    for (int i = 0; i < n; ++i) jitter_feasible(i, 50);

    auto first_infeasible = [&]() {
        for (int i = 0; i < n; ++i)
            if (!feasible(i)) return i;
        return -1;
    };

    // Random-walk repair on the stratum assignment: swap one dimension's
    // stratum between the infeasible point and a random partner, keeping the
    // move whenever it does not increase the number of infeasible points.
    // Exact rows are restored on rejection so feasible points stay intact.
    int guard = 500 * n * static_cast<int>(dim);
    for (int i = first_infeasible(); i >= 0; i = first_infeasible()) {
        if (--guard < 0)
            throw std::runtime_error("latin_hypercube: feasibility repair failed");
        const int j = static_cast<int>(rng.uniform_int(0, n - 1));
        if (j == i) continue;
        const auto d = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(dim) - 1));
        const int before = 1 + (feasible(j) ? 0 : 1);
        const Vector row_i = pts.row(i).transpose();
        const Vector row_j = pts.row(j).transpose();
        std::swap(strata[d][static_cast<std::size_t>(i)], strata[d][static_cast<std::size_t>(j)]);
        const int after = (jitter_feasible(i, 20) ? 0 : 1) + (jitter_feasible(j, 20) ? 0 : 1);
        if (after > before) {
            std::swap(strata[d][static_cast<std::size_t>(i)], strata[d][static_cast<std::size_t>(j)]);
            pts.row(i) = row_i.transpose();
            pts.row(j) = row_j.transpose();
        }
    }

    // integer rounding can collide points; re-jitter within the strata,
    // sweeping until the whole design is collision-free
    for (int sweep = 0; sweep < 20; ++sweep) {
        bool clean = true;
        for (int i = 0; i < n; ++i) {
            int attempts = 0;
            while ((collides_any(pts, i) || !feasible(i)) && attempts < 200) {
                realize_point(i);
                ++attempts;
            }
            if (collides_any(pts, i) || !feasible(i)) clean = false;
        }
        if (clean) return pts;
    }
    throw std::runtime_error("latin_hypercube: could not separate colliding points");
}

Matrix candidate_grid(const Domain& domain) {
    domain.validate();
    const Eigen::Index dim = domain.dim();
    for (Eigen::Index d = 0; d < dim; ++d)
        if (!domain.is_integral(d))
            throw std::invalid_argument(
                "candidate_grid: non-integral domain, supply an explicit candidate file");

    std::vector<long> lo(static_cast<std::size_t>(dim)), hi(static_cast<std::size_t>(dim)),
        cur(static_cast<std::size_t>(dim));
    for (Eigen::Index d = 0; d < dim; ++d) {
        lo[static_cast<std::size_t>(d)] = static_cast<long>(std::ceil(domain.lower(d)));
        hi[static_cast<std::size_t>(d)] = static_cast<long>(std::floor(domain.upper(d)));
    }
    cur = lo;
    std::vector<Vector> rows;
    Vector x(dim);
    while (true) {
        for (Eigen::Index d = 0; d < dim; ++d)
            x(d) = static_cast<double>(cur[static_cast<std::size_t>(d)]);
        if (domain.is_feasible(x)) rows.push_back(x);
        // lexicographic odometer, last dimension fastest
        Eigen::Index d = dim - 1;
        for (;; --d) {
            if (++cur[static_cast<std::size_t>(d)] <= hi[static_cast<std::size_t>(d)]) break;
            cur[static_cast<std::size_t>(d)] = lo[static_cast<std::size_t>(d)];
            if (d == 0) goto done;
        }
    }
done:
    if (rows.empty()) throw std::runtime_error("candidate_grid: no feasible lattice points");
    Matrix grid(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i)
        grid.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    return grid;
}

Vector scale_to_unit(const Domain& domain, const Vector& point) {
    if (point.size() != domain.dim())
        throw std::invalid_argument("scale_to_unit: dimension mismatch");
    Vector out(point.size());
    for (Eigen::Index d = 0; d < point.size(); ++d) {
        if (point(d) < domain.lower(d) - 1e-12 || point(d) > domain.upper(d) + 1e-12)
            throw std::invalid_argument("scale_to_unit: point outside bounds");
        out(d) = (point(d) - domain.lower(d)) / (domain.upper(d) - domain.lower(d));
    }
    return out;
}

Vector unscale(const Domain& domain, const Vector& point01) {
    if (point01.size() != domain.dim())
        throw std::invalid_argument("unscale: dimension mismatch");
    Vector out(point01.size());
    for (Eigen::Index d = 0; d < point01.size(); ++d) {
        if (point01(d) < -1e-12 || point01(d) > 1.0 + 1e-12)
            throw std::invalid_argument("unscale: point outside the unit box");
        out(d) = domain.lower(d) + point01(d) * (domain.upper(d) - domain.lower(d));
    }
    return out;
}

Matrix scale_rows_to_unit(const Domain& domain, const Matrix& points) {
    Matrix out(points.rows(), points.cols());
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        out.row(i) = scale_to_unit(domain, points.row(i).transpose()).transpose();
    return out;
}

}  // namespace krigopt
