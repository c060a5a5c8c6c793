#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "krigopt/harness.hpp"
#include "krigopt/io.hpp"
#include "krigopt/rng.hpp"

namespace {

using namespace krigopt;

InventoryParams inventory_params_from_file(const std::string& path) {
    InventoryParams p;
    if (path.empty()) return p;
    const auto kv = read_kv_file(path);
    auto get = [&](const std::string& k, double fallback) {
        auto it = kv.find(k);
        return it == kv.end() ? fallback : std::stod(it->second);
    };
    p.review_period = get("review_period", p.review_period);
    p.horizon_months = static_cast<int>(get("horizon_months", p.horizon_months));
    p.interdemand_mean = get("interdemand_mean", p.interdemand_mean);
    p.lead_time_lo = get("lead_time_lo", p.lead_time_lo);
    p.lead_time_hi = get("lead_time_hi", p.lead_time_hi);
    p.order_fixed_cost = get("order_fixed_cost", p.order_fixed_cost);
    p.holding_cost = get("holding_cost", p.holding_cost);
    p.backlog_cost = get("backlog_cost", p.backlog_cost);
    for (int i = 0; i < 4; ++i)
        p.demand_prob[i] = get("demand_p" + std::to_string(i + 1), p.demand_prob[i]);
    return p;
}

int cmd_simulate(int s, int S, int reps, std::uint64_t seed, const std::string& params_file,
                 const std::string& out_path) {
    const InventoryParams params = inventory_params_from_file(params_file);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        out = &file;
    }
    *out << "rep,seed,total_cost,avg_total,avg_ordering,avg_holding,avg_backlog\n";
    for (int r = 0; r < reps; ++r) {
        const auto rep_seed = Rng::derive({seed, static_cast<std::uint64_t>(r)});
        const SimulationOutput o = simulate_inventory(s, S, params, rep_seed);
        *out << r + 1 << "," << rep_seed << "," << format_double(o.total_cost) << ","
             << format_double(o.avg_monthly_total_cost) << ","
             << format_double(o.avg_ordering_cost) << "," << format_double(o.avg_holding_cost)
             << "," << format_double(o.avg_backlog_cost) << "\n";
    }
    return 0;
}

int cmd_fit(const std::string& data_path, const std::string& kernel, const std::string& mode,
            std::uint64_t seed, const std::string& out_path) {
    Dataset data = read_dataset_csv(data_path);
    // scale inputs to the unit box over the observed column ranges
    Vector lo(data.dim()), hi(data.dim());
    for (Eigen::Index d = 0; d < data.dim(); ++d) {
        lo(d) = data.points.col(d).minCoeff();
        hi(d) = data.points.col(d).maxCoeff();
        if (hi(d) <= lo(d)) hi(d) = lo(d) + 1.0;
        data.points.col(d) = (data.points.col(d).array() - lo(d)) / (hi(d) - lo(d));
    }
    FitConfig fc;
    fc.seed = seed;
    const KernelFamily family = parse_kernel_family(kernel);
    const KrigingModel model = mode == "sk" ? KrigingModel::fit_sk(data, family, fc)
                                            : KrigingModel::fit_ok(data, family, fc);
    write_model_file(out_path, model, data_path, lo, hi);
    const KernelSpec spec = model.kernel();
    std::cout << "kernel = " << kernel_family_name(spec.family)
              << "\nsigma2 = " << format_double(spec.process_variance)
              << "\nlength_scale = " << format_double(spec.length_scale)
              << "\nbeta0 = " << format_double(model.beta0())
              << "\nlog_likelihood = " << format_double(model.diagnostics().log_likelihood)
              << "\n";
    return 0;
}

int cmd_predict(const std::string& model_path, const std::string& queries_path,
                const std::string& out_path) {
    const LoadedModel loaded = read_model_file(model_path);
    const Matrix queries = read_points_csv(queries_path);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        out = &file;
    }
    *out << "mean,mse\n";
    for (Eigen::Index i = 0; i < queries.rows(); ++i) {
        Vector q = queries.row(i).transpose();
        for (Eigen::Index d = 0; d < q.size(); ++d)
            q(d) = (q(d) - loaded.scale_lo(d)) / (loaded.scale_hi(d) - loaded.scale_lo(d));
        const Prediction p = loaded.model.predict(q);
        *out << format_double(p.mean) << "," << format_double(p.mse) << "\n";
    }
    return 0;
}

int cmd_optimize(const std::string& algorithm, const std::string& problem_name,
                 const std::string& kernel, int n_initial, int n_infill, int reps,
                 std::uint64_t seed, const std::string& out_path) {
    const Problem problem = make_problem(problem_name);
    OptimizerConfig config;
    config.algorithm = parse_algorithm(algorithm);
    config.kernel = parse_kernel_family(kernel);
    config.n_initial = n_initial;
    config.n_infill = n_infill;
    config.reps_per_point = reps;
    config.master_seed = seed;
    const RunHistory history = run(config, problem);
    write_history_csv(out_path, history, problem.domain.dim(), /*include_seconds=*/true);
    std::cout << "best_point =";
    for (Eigen::Index d = 0; d < history.best_point.size(); ++d)
        std::cout << " " << format_double(history.best_point(d));
    std::cout << "\nbest_mean = " << format_double(history.best_mean) << "\n";
    return history.aborted ? 1 : 0;
}

int cmd_bench(const std::string& config_path, const std::string& out_dir, int workers,
              std::uint64_t master_seed) {
    BenchmarkConfig config = benchmark_config_from_kv(read_kv_file(config_path));
    config.out_dir = out_dir;
    config.workers = workers;
    config.master_seed = master_seed;
    const BenchmarkResults results = run_benchmark(config);
    const ConvergenceSummary summary = summarize(results);
    namespace fs = std::filesystem;
    {
        std::ofstream csv(fs::path(out_dir) / "summary.csv");
        csv << summary_csv(summary);
        std::ofstream svg(fs::path(out_dir) / "convergence.svg");
        svg << render_convergence_svg(summary);
    }
    bool all_ok = true;
    for (const auto& cell : results.cells) {
        if (!cell.ok) {
            all_ok = false;
            std::cerr << "cell failed: " << algorithm_name(cell.algorithm) << " m"
                      << cell.macroreplication << ": " << cell.error << "\n";
        }
    }
    std::cout << "cells = " << results.cells.size() << (all_ok ? " (all ok)" : " (failures)")
              << "\n";
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kriging-based simulation optimization toolkit"};
    app.require_subcommand(1);

    // simulate
    int s = 20, S = 80, reps = 5;
    std::uint64_t seed = 0;
    std::string params_file, out_path;
    auto* sim = app.add_subcommand("simulate", "run the (R,s,S) inventory simulation");
    sim->add_option("--s", s, "reorder point");
    sim->add_option("--S", S, "order-up-to level");
    sim->add_option("--reps", reps, "replications");
    sim->add_option("--seed", seed, "seed");
    sim->add_option("--params", params_file, "simulator parameter file (key = value)");
    sim->add_option("--out", out_path, "output CSV (default stdout)");

    // fit
    std::string data_path, kernel = "se", mode = "ok", model_out = "model.txt";
    auto* fit = app.add_subcommand("fit", "fit a kriging model to a dataset CSV");
    fit->add_option("--data", data_path, "dataset CSV (x1..xdim then replication columns)")
        ->required();
    fit->add_option("--kernel", kernel, "se | matern32 | matern52");
    fit->add_option("--mode", mode, "ok | sk");
    fit->add_option("--seed", seed, "multistart seed");
    fit->add_option("--out", model_out, "model summary file");

    // predict
    std::string model_path, queries_path;
    auto* predict = app.add_subcommand("predict", "predict mean/mse at query points");
    predict->add_option("--model", model_path, "model summary file")->required();
    predict->add_option("--queries", queries_path, "query CSV")->required();
    predict->add_option("--out", out_path, "output CSV (default stdout)");

    // optimize
    std::string algorithm = "sk-mei", problem_name = "inventory", history_out = "history.csv";
    int n_initial = 10, n_infill = 100;
    auto* optimize = app.add_subcommand("optimize", "run one sequential optimization");
    optimize->add_option("--algorithm", algorithm, "sk-mei | ok-ei | poly-reg");
    optimize->add_option("--problem", problem_name, "inventory | synthetic1d | synthetic1d-noisy");
    optimize->add_option("--kernel", kernel, "se | matern32 | matern52");
    optimize->add_option("--n-initial", n_initial, "initial design size");
    optimize->add_option("--n-infill", n_infill, "infill budget");
    optimize->add_option("--reps", reps, "replications per point");
    optimize->add_option("--seed", seed, "master seed");
    optimize->add_option("--out", history_out, "history CSV");

    // bench
    std::string bench_config, bench_out = "bench-out";
    int workers = 1;
    std::uint64_t master_seed = 0;
    auto* bench = app.add_subcommand("bench", "macroreplication benchmark");
    bench->add_option("--config", bench_config, "benchmark config file")->required();
    bench->add_option("--out", bench_out, "output directory");
    bench->add_option("--workers", workers, "parallel workers");
    bench->add_option("--master-seed", master_seed, "master seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) return cmd_simulate(s, S, reps, seed, params_file, out_path);
        if (*fit) return cmd_fit(data_path, kernel, mode, seed, model_out);
        if (*predict) return cmd_predict(model_path, queries_path, out_path);
        if (*optimize)
            return cmd_optimize(algorithm, problem_name, kernel, n_initial, n_infill, reps, seed,
                                history_out);
        if (*bench) return cmd_bench(bench_config, bench_out, workers, master_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
