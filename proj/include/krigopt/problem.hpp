#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "krigopt/design.hpp"
#include "krigopt/inventory.hpp"

namespace krigopt {

// Smooth multimodal 1D test function on [0, 1]:
//   f(x) = (6x - 2)^2 sin(12x - 4)
// Global minimum at x* ~= 0.757249 with f(x*) ~= -6.02074.
double synthetic_1d(double x);
constexpr double kSynthetic1dMinimizer = 0.7572487;

// Heteroscedastic noisy variant: adds zero-mean Gaussian noise with
// standard deviation noise_scale * (0.5 + x). noise_scale = 0 reduces to
// the deterministic function.
double synthetic_1d_noisy(double x, double noise_scale, std::uint64_t seed);

// Black-box evaluator: point in problem units, substream seed -> one
// replication output.
using Evaluator = std::function<double(const Vector&, std::uint64_t)>;

struct EvalResult {
    double sample_mean = 0.0;
    double variance_of_mean = 0.0;  // s^2 / n, 0 for a single replication
    std::vector<double> raw;
};

// n_reps independent evaluator calls on consecutive substream seeds
// derived from seed_stream.
EvalResult evaluate(const Evaluator& evaluator, const Vector& point, int n_reps,
                    std::uint64_t seed_stream);

// A registered optimization problem: evaluator, decision domain and the
// finite candidate set the acquisition sweep runs over.
struct Problem {
    std::string name;
    Domain domain;
    Matrix candidates;  // problem units, stable row order
    Evaluator evaluator;
};

// (s,S) inventory problem with its 4950-point candidate grid.
Problem inventory_problem(InventoryParams params = {});

// Deterministic / noisy synthetic 1D problem over a uniform candidate grid.
Problem synthetic_problem(int n_candidates = 1001, double noise_scale = 0.0);

Problem make_problem(const std::string& name);

}  // namespace krigopt
