#include "krigopt/problem.hpp"

#include <cmath>
#include <stdexcept>

#include "krigopt/rng.hpp"
#include "krigopt/stats.hpp"

namespace krigopt {

double synthetic_1d(double x) {
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("synthetic_1d: x must be in [0, 1]");
    const double a = 6.0 * x - 2.0;
    return a * a * std::sin(12.0 * x - 4.0);
}

double synthetic_1d_noisy(double x, double noise_scale, std::uint64_t seed) {
    const double f = synthetic_1d(x);
    if (noise_scale == 0.0) return f;
    Rng rng(seed);
    return f + noise_scale * (0.5 + x) * rng.normal();
}

EvalResult evaluate(const Evaluator& evaluator, const Vector& point, int n_reps,
                    std::uint64_t seed_stream) {
    if (n_reps < 1) throw std::invalid_argument("evaluate: n_reps must be >= 1");
    EvalResult r;
    r.raw.reserve(static_cast<std::size_t>(n_reps));
    for (int i = 0; i < n_reps; ++i)
        r.raw.push_back(evaluator(point, Rng::derive({seed_stream, static_cast<std::uint64_t>(i)})));
    r.sample_mean = mean(r.raw);
    r.variance_of_mean = sample_variance(r.raw) / static_cast<double>(n_reps);
    return r;
}

Problem inventory_problem(InventoryParams params) {
    Problem p;
    p.name = "inventory";
    p.domain = inventory_domain();
    p.candidates = candidate_grid(p.domain);
    p.evaluator = [params](const Vector& x, std::uint64_t seed) {
        return simulate_inventory(static_cast<int>(std::lround(x(0))),
                                  static_cast<int>(std::lround(x(1))), params, seed)
            .avg_monthly_total_cost;
    };
    return p;
}

Problem synthetic_problem(int n_candidates, double noise_scale) {
    Problem p;
    p.name = noise_scale == 0.0 ? "synthetic1d" : "synthetic1d-noisy";
    p.domain.lower = Vector::Zero(1);
    p.domain.upper = Vector::Ones(1);
    p.candidates.resize(n_candidates, 1);
    for (int i = 0; i < n_candidates; ++i)
        p.candidates(i, 0) = static_cast<double>(i) / static_cast<double>(n_candidates - 1);
    p.evaluator = [noise_scale](const Vector& x, std::uint64_t seed) {
        return synthetic_1d_noisy(x(0), noise_scale, seed);
    };
    return p;
}

Problem make_problem(const std::string& name) {
    if (name == "inventory") return inventory_problem();
    if (name == "synthetic1d") return synthetic_problem();
    if (name == "synthetic1d-noisy") return synthetic_problem(1001, 1.0);
    throw std::invalid_argument("unknown problem: " + name);
}

}  // namespace krigopt
