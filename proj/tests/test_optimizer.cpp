#include <doctest.h>

#include <atomic>
#include <cmath>
#include <set>
#include <utility>

#include "krigopt/optimizer.hpp"

using namespace krigopt;

namespace {

OptimizerConfig small_config(Algorithm alg, int n_infill) {
    OptimizerConfig cfg;
    cfg.algorithm = alg;
    cfg.n_initial = 6;
    cfg.n_infill = n_infill;
    cfg.reps_per_point = 3;
    cfg.master_seed = 17;
    cfg.fit = FitConfig{4, 120, 0};
    return cfg;
}

}  // namespace

TEST_CASE("algorithm names round trip") {
    for (auto a : {Algorithm::SkMei, Algorithm::OkEi, Algorithm::PolyReg})
        CHECK(parse_algorithm(algorithm_name(a)) == a);
    CHECK_THROWS_AS(parse_algorithm("sa"), std::invalid_argument);
}

TEST_CASE("zero infill budget returns the initial-design incumbent") {
    const Problem prob = synthetic_problem(101);
    const RunHistory h = run(small_config(Algorithm::OkEi, 0), prob);
    CHECK(h.records.size() == 6);
    for (const auto& r : h.records) CHECK(r.iter == 0);
    double best = 1e18;
    for (const auto& r : h.records) best = std::min(best, r.sample_mean);
    CHECK(h.best_mean == best);
    CHECK_FALSE(h.aborted);
}

TEST_CASE("history accounting on a short run") {
    const Problem prob = synthetic_problem(201);
    const RunHistory h = run(small_config(Algorithm::OkEi, 5), prob);
    REQUIRE(h.records.size() == 11);
    // initial design rows first, then infill iterations 1..5
    for (int i = 0; i < 6; ++i) CHECK(h.records[static_cast<std::size_t>(i)].iter == 0);
    for (int i = 6; i < 11; ++i) CHECK(h.records[static_cast<std::size_t>(i)].iter == i - 5);
    // incumbent trace is the running minimum of the sample means
    double best = 1e18;
    for (const auto& r : h.records) {
        best = std::min(best, r.sample_mean);
        CHECK(r.incumbent_best == doctest::Approx(best).epsilon(1e-12));
        CHECK(static_cast<int>(r.raw.size()) == 3);
    }
    CHECK(h.best_mean == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("every evaluated point is a distinct candidate satisfying the constraint") {
    const Problem prob = inventory_problem();
    OptimizerConfig cfg = small_config(Algorithm::SkMei, 4);
    cfg.master_seed = 3;
    const RunHistory h = run(cfg, prob);
    std::set<std::pair<long, long>> seen;
    for (const auto& r : h.records) {
        const long s = std::lround(r.point(0));
        const long S = std::lround(r.point(1));
        CHECK(s >= 1);
        CHECK(S <= 100);
        CHECK(s < S);
        CHECK(seen.insert({s, S}).second);  // no point revisited
    }
}

TEST_CASE("evaluator call budget is exactly (initial + infill) * reps") {
    Problem prob = synthetic_problem(101);
    std::atomic<long> calls{0};
    const Evaluator inner = prob.evaluator;
    prob.evaluator = [&](const Vector& x, std::uint64_t seed) {
        ++calls;
        return inner(x, seed);
    };
    const RunHistory h = run(small_config(Algorithm::OkEi, 4), prob);
    CHECK_FALSE(h.aborted);
    CHECK(calls.load() == (6 + 4) * 3);
}

TEST_CASE("runs are deterministic per master seed") {
    const Problem prob = inventory_problem();
    const OptimizerConfig cfg = small_config(Algorithm::SkMei, 3);
    const RunHistory a = run(cfg, prob);
    const RunHistory b = run(cfg, prob);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].sample_mean == b.records[i].sample_mean);
        CHECK((a.records[i].point - b.records[i].point).cwiseAbs().maxCoeff() == 0.0);
    }
    OptimizerConfig other = cfg;
    other.master_seed = 18;
    const RunHistory c = run(other, prob);
    bool differs = false;
    for (std::size_t i = 0; i < std::min(a.records.size(), c.records.size()); ++i)
        if (a.records[i].sample_mean != c.records[i].sample_mean) differs = true;
    CHECK(differs);
}

TEST_CASE("shared initial design reproduces its evaluations verbatim") {
    const Problem prob = inventory_problem();
    const InitialDesign design = make_initial_design(prob, 6, 3, 99);
    OptimizerConfig cfg = small_config(Algorithm::OkEi, 2);
    const RunHistory h = run(cfg, prob, &design);
    for (int i = 0; i < 6; ++i) {
        const auto& r = h.records[static_cast<std::size_t>(i)];
        CHECK((r.point - design.points.row(i).transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(r.sample_mean == design.evals[static_cast<std::size_t>(i)].sample_mean);
        CHECK(r.raw == design.evals[static_cast<std::size_t>(i)].raw);
    }
}

TEST_CASE("deterministic 1D runs find the known minimum") {
    // 20 infills on the smooth test function should land within 1e-2 of the
    // optimal value on at least 18 of 20 seeds.
    const Problem prob = synthetic_problem(501);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        OptimizerConfig cfg = small_config(Algorithm::OkEi, 20);
        cfg.reps_per_point = 1;
        cfg.master_seed = seed;
        const RunHistory h = run(cfg, prob);
        if (h.best_mean < -6.02074 + 1e-2) ++hits;
    }
    CHECK(hits >= 18);
}

TEST_CASE("quadratic least squares") {
    SUBCASE("exactly recovers a quadratic surface") {
        Matrix pts(9, 2);
        int k = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                pts(k, 0) = i / 2.0;
                pts(k, 1) = j / 2.0;
                ++k;
            }
        Vector f(9);
        for (int i = 0; i < 9; ++i) {
            const double x = pts(i, 0), y = pts(i, 1);
            f(i) = 2.0 - x + 3.0 * y + 0.5 * x * x - 1.5 * y * y + 2.5 * x * y;
        }
        const Vector coeffs = fit_quadratic(pts, f);
        for (int i = 0; i < 9; ++i)
            CHECK(quadratic_value(coeffs, pts.row(i).transpose()) ==
                  doctest::Approx(f(i)).epsilon(1e-8));
        Vector q(2);
        q << 0.3, 0.7;
        CHECK(quadratic_value(coeffs, q) ==
              doctest::Approx(2.0 - 0.3 + 3.0 * 0.7 + 0.5 * 0.09 - 1.5 * 0.49 +
                              2.5 * 0.3 * 0.7)
                  .epsilon(1e-8));
    }
    SUBCASE("constant data gives a constant fit") {
        Matrix pts(8, 1);
        for (int i = 0; i < 8; ++i) pts(i, 0) = i / 7.0;
        const Vector coeffs = fit_quadratic(pts, Vector::Constant(8, 3.5));
        for (double x : {0.1, 0.6, 0.95}) {
            Vector q(1);
            q << x;
            CHECK(quadratic_value(coeffs, q) == doctest::Approx(3.5).epsilon(1e-8));
        }
    }
    SUBCASE("rank-deficient designs are rejected") {
        Matrix pts(3, 2);  // 3 points cannot identify 6 coefficients
        pts << 0, 0, 0.5, 0.5, 1, 1;
        CHECK_THROWS_AS(fit_quadratic(pts, Vector::Zero(3)), std::runtime_error);
    }
}

TEST_CASE("quadratic infill selection") {
    // Bowl centered at 0.6: the nearest unvisited candidate to the vertex wins.
    Matrix pts(7, 1);
    Vector f(7);
    for (int i = 0; i < 7; ++i) {
        pts(i, 0) = i / 6.0;
        f(i) = (pts(i, 0) - 0.6) * (pts(i, 0) - 0.6);
    }
    const Vector coeffs = fit_quadratic(pts, f);
    Matrix candidates(11, 1);
    for (int i = 0; i <= 10; ++i) candidates(i, 0) = i / 10.0;
    const auto idx = poly_select_infill(coeffs, candidates, std::vector<bool>(11, false));
    REQUIRE(idx.has_value());
    CHECK(candidates(*idx, 0) == doctest::Approx(0.6));
    // ties resolve to the lowest index
    Matrix dup(3, 1);
    dup << 0.6, 0.6, 0.6;
    const auto tie = poly_select_infill(coeffs, dup, std::vector<bool>(3, false));
    REQUIRE(tie.has_value());
    CHECK(*tie == 0);
}

TEST_CASE("polynomial-regression algorithm runs to completion") {
    const Problem prob = inventory_problem();
    OptimizerConfig cfg = small_config(Algorithm::PolyReg, 5);
    cfg.n_initial = 10;
    const RunHistory h = run(cfg, prob);
    CHECK_FALSE(h.aborted);
    CHECK(h.records.size() == 15);
}

TEST_CASE("best identification replays the stored records") {
    const Problem prob = synthetic_problem(101);
    const RunHistory h = run(small_config(Algorithm::OkEi, 3), prob);
    const auto [point, value] = identify_best(h);
    CHECK(value == h.best_mean);
    CHECK((point - h.best_point).cwiseAbs().maxCoeff() == 0.0);
    bool found = false;
    for (const auto& r : h.records)
        if (r.sample_mean == value &&
            (r.point - point).cwiseAbs().maxCoeff() == 0.0)
            found = true;
    CHECK(found);
}

TEST_CASE("early-stop hook truncates the run") {
    const Problem prob = synthetic_problem(101);
    OptimizerConfig cfg = small_config(Algorithm::OkEi, 20);
    cfg.stop_early = [](int iter, double) { return iter >= 5; };
    const RunHistory h = run(cfg, prob);
    CHECK(h.records.size() <= 6 + 5);
}
