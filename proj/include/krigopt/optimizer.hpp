#pragma once

#include <functional>
#include <string>

#include "krigopt/acquisition.hpp"
#include "krigopt/problem.hpp"

namespace krigopt {

enum class Algorithm { SkMei, OkEi, PolyReg };

Algorithm parse_algorithm(const std::string& name);
const char* algorithm_name(Algorithm a);

struct OptimizerConfig {
    Algorithm algorithm = Algorithm::SkMei;
    KernelFamily kernel = KernelFamily::SquaredExponential;
    double kappa = 2.0;  // only used when acquisition is overridden to LCB
    int n_initial = 10;
    int n_infill = 100;
    int reps_per_point = 5;
    std::uint64_t master_seed = 0;
    FitConfig fit;
    // Optional early-termination hook; the benchmark uses budget only.
    std::function<bool(int iter, double incumbent_best)> stop_early;
};

struct IterationRecord {
    int iter = 0;  // 0 for the initial design, then 1..n_infill
    Vector point;  // problem units
    double sample_mean = 0.0;
    double variance_of_mean = 0.0;
    double incumbent_best = 0.0;
    double seconds = 0.0;
    std::vector<double> raw;
};

struct RunHistory {
    std::vector<IterationRecord> records;
    Vector best_point;
    double best_mean = 0.0;
    bool aborted = false;
    std::string abort_reason;
};

// Shared initial design: points plus their evaluations, so multiple
// algorithms can start from identical data within a macroreplication.
struct InitialDesign {
    Matrix points;  // problem units
    std::vector<EvalResult> evals;
};

InitialDesign make_initial_design(const Problem& problem, int n_initial, int reps_per_point,
                                  std::uint64_t seed);

// Sequential optimize loop: initial design, then fit / select / evaluate
// until the infill budget is spent, then identify the best sample mean.
// Deterministic per master seed. When `shared` is given its points and
// evaluations are used instead of drawing a fresh design.
RunHistory run(const OptimizerConfig& config, const Problem& problem,
               const InitialDesign* shared = nullptr);

// Full second-order polynomial OLS fit (basis 1, x_i, x_i^2, x_i x_j) on
// unit-scaled points. Throws on rank deficiency.
Vector fit_quadratic(const Matrix& points01, const Vector& sample_means);

double quadratic_value(const Vector& coeffs, const Vector& point01);

// Unvisited candidate minimizing the fitted quadratic; lowest index on ties.
std::optional<Eigen::Index> poly_select_infill(const Vector& coeffs, const Matrix& candidates01,
                                               const std::vector<bool>& visited);

// Argmin of sample means over the evaluated points (first index on ties).
std::pair<Vector, double> identify_best(const RunHistory& history);

}  // namespace krigopt
