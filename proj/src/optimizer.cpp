#include "krigopt/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "krigopt/rng.hpp"

namespace krigopt {

namespace {

constexpr std::uint64_t kInitLabel = 0x696e6974ULL;
constexpr std::uint64_t kFitLabel = 0x666974ULL;
constexpr std::uint64_t kEvalLabel = 0x6576616cULL;
constexpr std::uint64_t kRepairLabel = 0x726570ULL;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

Eigen::Index quadratic_basis_size(Eigen::Index dim) {
    return 1 + dim + dim + dim * (dim - 1) / 2;
}

Vector quadratic_basis(const Vector& x) {
    const Eigen::Index dim = x.size();
    Vector b(quadratic_basis_size(dim));
    Eigen::Index k = 0;
    b(k++) = 1.0;
    for (Eigen::Index i = 0; i < dim; ++i) b(k++) = x(i);
    for (Eigen::Index i = 0; i < dim; ++i) b(k++) = x(i) * x(i);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = i + 1; j < dim; ++j) b(k++) = x(i) * x(j);
    return b;
}

// Unvisited candidate maximizing the minimum distance to the evaluated
// points; used when the responses are too flat to fit anything.
std::optional<Eigen::Index> maximin_select(const Matrix& candidates01,
                                           const std::vector<bool>& visited,
                                           const Matrix& evaluated01) {
    std::optional<Eigen::Index> best;
    double best_score = -1.0;
    for (Eigen::Index i = 0; i < candidates01.rows(); ++i) {
        if (visited[static_cast<std::size_t>(i)]) continue;
        double min_d = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < evaluated01.rows(); ++j)
            min_d = std::min(min_d, (candidates01.row(i) - evaluated01.row(j)).norm());
        if (min_d > best_score) {
            best_score = min_d;
            best = i;
        }
    }
    return best;
}

}  // namespace

Algorithm parse_algorithm(const std::string& name) {
    if (name == "sk-mei") return Algorithm::SkMei;
    if (name == "ok-ei") return Algorithm::OkEi;
    if (name == "poly-reg") return Algorithm::PolyReg;
    throw std::invalid_argument("unknown algorithm: " + name);
}

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::SkMei: return "sk-mei";
        case Algorithm::OkEi: return "ok-ei";
        case Algorithm::PolyReg: return "poly-reg";
    }
    return "?";
}

InitialDesign make_initial_design(const Problem& problem, int n_initial, int reps_per_point,
                                  std::uint64_t seed) {
    InitialDesign d;
    d.points = latin_hypercube(n_initial, problem.domain, Rng::derive({seed, kInitLabel}));
    d.evals.reserve(static_cast<std::size_t>(n_initial));
    for (int i = 0; i < n_initial; ++i)
        d.evals.push_back(evaluate(problem.evaluator, d.points.row(i).transpose(), reps_per_point,
                                   Rng::derive({seed, kEvalLabel, static_cast<std::uint64_t>(i)})));
    return d;
}

Vector fit_quadratic(const Matrix& points01, const Vector& sample_means) {
    const Eigen::Index p = points01.rows();
    const Eigen::Index nb = quadratic_basis_size(points01.cols());
    if (p < nb)
        throw std::runtime_error("fit_quadratic: fewer points than basis functions");
    Matrix design(p, nb);
    for (Eigen::Index i = 0; i < p; ++i)
        design.row(i) = quadratic_basis(points01.row(i).transpose()).transpose();
    Eigen::ColPivHouseholderQR<Matrix> qr(design);
    if (qr.rank() < nb)
        throw std::runtime_error("fit_quadratic: rank-deficient design matrix");
    return qr.solve(sample_means);
}

double quadratic_value(const Vector& coeffs, const Vector& point01) {
    return coeffs.dot(quadratic_basis(point01));
}

std::optional<Eigen::Index> poly_select_infill(const Vector& coeffs, const Matrix& candidates01,
                                               const std::vector<bool>& visited) {
    std::optional<Eigen::Index> best;
    double best_value = 0.0;
    for (Eigen::Index i = 0; i < candidates01.rows(); ++i) {
        if (visited[static_cast<std::size_t>(i)]) continue;
        const double v = quadratic_value(coeffs, candidates01.row(i).transpose());
        if (!best || v < best_value) {
            best = i;
            best_value = v;
        }
    }
    return best;
}

std::pair<Vector, double> identify_best(const RunHistory& history) {
    if (history.records.empty()) throw std::invalid_argument("identify_best: empty history");
    const IterationRecord* best = &history.records.front();
    for (const auto& rec : history.records)
        if (rec.sample_mean < best->sample_mean) best = &rec;
    return {best->point, best->sample_mean};
}

RunHistory run(const OptimizerConfig& config, const Problem& problem,
               const InitialDesign* shared) {
    if (config.n_initial < 1 || config.n_infill < 0 || config.reps_per_point < 1)
        throw std::invalid_argument("run: bad counts");

    const Matrix candidates01 = scale_rows_to_unit(problem.domain, problem.candidates);
    std::vector<bool> visited(static_cast<std::size_t>(candidates01.rows()), false);

    RunHistory history;
    Dataset data;  // unit-box points

    InitialDesign local;
    const InitialDesign* init = shared;
    if (!init) {
        local = make_initial_design(problem, config.n_initial, config.reps_per_point,
                                    config.master_seed);
        init = &local;
    }

    auto mark_visited = [&](const Vector& point01) {
        for (Eigen::Index i = 0; i < candidates01.rows(); ++i)
            if ((candidates01.row(i).transpose() - point01).norm() <= 1e-12)
                visited[static_cast<std::size_t>(i)] = true;
    };

    double incumbent = std::numeric_limits<double>::infinity();
    auto record = [&](int iter, const Vector& point, const EvalResult& r, double seconds) {
        incumbent = std::min(incumbent, r.sample_mean);
        history.records.push_back(
            {iter, point, r.sample_mean, r.variance_of_mean, incumbent, seconds, r.raw});
    };

    for (Eigen::Index i = 0; i < init->points.rows(); ++i) {
        const Vector point = init->points.row(i).transpose();
        const Vector point01 = scale_to_unit(problem.domain, point);
        data.add(point01, init->evals[static_cast<std::size_t>(i)].raw);
        mark_visited(point01);
        record(0, point, init->evals[static_cast<std::size_t>(i)], 0.0);
    }

    const Criterion criterion =
        config.algorithm == Algorithm::SkMei ? Criterion::MEI : Criterion::EI;

    for (int iter = 1; iter <= config.n_infill; ++iter) {
        const double t_start = now_seconds();
        const Vector means = data.sample_means();
        const double range = means.maxCoeff() - means.minCoeff();

        std::optional<Eigen::Index> choice;
        if (range <= 1e-12) {
            choice = maximin_select(candidates01, visited, data.points);
        } else if (config.algorithm == Algorithm::PolyReg) {
            try {
                const Vector coeffs = fit_quadratic(data.points, means);
                choice = poly_select_infill(coeffs, candidates01, visited);
            } catch (const std::exception&) {
                // rank-deficient fit: re-select one infill at random, seeded
                Rng rng(Rng::derive({config.master_seed, kRepairLabel,
                                     static_cast<std::uint64_t>(iter)}));
                std::vector<Eigen::Index> open;
                for (Eigen::Index i = 0; i < candidates01.rows(); ++i)
                    if (!visited[static_cast<std::size_t>(i)]) open.push_back(i);
                if (!open.empty())
                    choice = open[static_cast<std::size_t>(
                        rng.uniform_int(0, static_cast<std::int64_t>(open.size()) - 1))];
            }
        } else {
            FitConfig fit = config.fit;
            fit.seed = Rng::derive({config.master_seed, kFitLabel,
                                    static_cast<std::uint64_t>(iter)});
            std::optional<KrigingModel> model;
            for (int attempt = 0; attempt < 2 && !model; ++attempt) {
                try {
                    model = config.algorithm == Algorithm::SkMei
                                ? KrigingModel::fit_sk(data, config.kernel, fit)
                                : KrigingModel::fit_ok(data, config.kernel, fit);
                } catch (const std::exception& e) {
                    // retry once with fresh multistart seeds, then abort
                    if (attempt >= 1) {
                        history.aborted = true;
                        history.abort_reason = e.what();
                    }
                    fit.seed = Rng::derive({fit.seed, 1ULL});
                }
            }
            if (history.aborted) break;
            const AcquisitionContext ctx = make_context(*model);
            choice = select_infill(criterion, ctx, candidates01, visited, config.kappa);
        }

        if (!choice) break;  // candidate set exhausted
        visited[static_cast<std::size_t>(*choice)] = true;

        const Vector point = problem.candidates.row(*choice).transpose();
        const EvalResult r =
            evaluate(problem.evaluator, point, config.reps_per_point,
                     Rng::derive({config.master_seed, kEvalLabel,
                                  static_cast<std::uint64_t>(config.n_initial + iter - 1)}));
        data.add(candidates01.row(*choice).transpose(), r.raw);
        record(iter, point, r, now_seconds() - t_start);

        if (config.stop_early && config.stop_early(iter, incumbent)) break;
    }

    std::tie(history.best_point, history.best_mean) = identify_best(history);
    return history;
}

}  // namespace krigopt
