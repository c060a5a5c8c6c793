#pragma once

#include <map>
#include <string>
#include <vector>

#include "krigopt/optimizer.hpp"

namespace krigopt {

struct BenchmarkConfig {
    std::vector<Algorithm> algorithms = {Algorithm::SkMei, Algorithm::OkEi, Algorithm::PolyReg};
    std::string problem = "inventory";
    int macroreplications = 25;
    bool shared_initial_design = true;  // same initial points AND evaluations per macrorep
    int n_initial = 10;
    int n_infill = 100;
    int reps_per_point = 5;
    KernelFamily kernel = KernelFamily::SquaredExponential;
    std::uint64_t master_seed = 0;
    int workers = 1;
    std::string out_dir;  // empty = no files written
};

BenchmarkConfig benchmark_config_from_kv(const std::map<std::string, std::string>& kv);

struct CellResult {
    Algorithm algorithm;
    int macroreplication = 0;
    bool ok = false;
    std::string error;
    RunHistory history;
};

struct BenchmarkResults {
    BenchmarkConfig config;
    std::vector<CellResult> cells;  // algorithm-major, macroreplication-minor

    const CellResult& cell(Algorithm a, int macro) const;
};

// Runs every (algorithm, macroreplication) cell, up to `workers` in
// parallel. Individual failures are recorded and the benchmark continues.
// With out_dir set, persists per-run history CSVs and a manifest.
BenchmarkResults run_benchmark(const BenchmarkConfig& config);

struct ConvergenceSeries {
    std::string algorithm;
    std::vector<double> mean;        // incumbent-best averaged over macroreps, per iteration
    std::vector<double> half_width;  // 95% t-interval half-width
    int macroreplications = 0;       // successful cells contributing
};

struct ConvergenceSummary {
    int n_infill = 0;
    std::vector<ConvergenceSeries> series;
};

// Per-iteration cross-macroreplication mean and 95% t-interval of the
// incumbent-best trace (iteration 0 = post-initial-design incumbent).
ConvergenceSummary summarize(const BenchmarkResults& results);

// Deterministic standalone SVG: one line plus shaded band per algorithm.
std::string render_convergence_svg(const ConvergenceSummary& summary);

// Summary CSV: iter, then (mean, lo, hi) per algorithm.
std::string summary_csv(const ConvergenceSummary& summary);

}  // namespace krigopt
