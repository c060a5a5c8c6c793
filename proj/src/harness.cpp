#include "krigopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "krigopt/io.hpp"
#include "krigopt/rng.hpp"
#include "krigopt/stats.hpp"

namespace krigopt {

namespace {

constexpr std::uint64_t kMacroInitLabel = 0x6d616372ULL;
constexpr std::uint64_t kCellLabel = 0x63656c6cULL;

std::uint64_t initial_design_seed(const BenchmarkConfig& cfg, int macro) {
    return Rng::derive({cfg.master_seed, kMacroInitLabel, static_cast<std::uint64_t>(macro)});
}

std::uint64_t cell_seed(const BenchmarkConfig& cfg, std::size_t alg_index, int macro) {
    return Rng::derive({cfg.master_seed, kCellLabel, static_cast<std::uint64_t>(alg_index),
                        static_cast<std::uint64_t>(macro)});
}

// Incumbent-best value per iteration 0..n_infill; iteration 0 is the
// post-initial-design incumbent, shorter runs are padded with their last
// value.
std::vector<double> incumbent_trace(const RunHistory& history, int n_infill) {
    std::vector<double> trace(static_cast<std::size_t>(n_infill) + 1,
                              std::numeric_limits<double>::quiet_NaN());
    for (const auto& rec : history.records)
        trace[static_cast<std::size_t>(rec.iter)] = rec.incumbent_best;
    for (std::size_t i = 1; i < trace.size(); ++i)
        if (std::isnan(trace[i])) trace[i] = trace[i - 1];
    return trace;
}

std::string cell_file_name(Algorithm a, int macro) {
    std::ostringstream name;
    name << "history_" << algorithm_name(a) << "_m";
    if (macro < 10) name << '0';
    name << macro << ".csv";
    return name.str();
}

}  // namespace

BenchmarkConfig benchmark_config_from_kv(const std::map<std::string, std::string>& kv) {
    BenchmarkConfig cfg;
    auto get = [&](const std::string& k) -> const std::string* {
        auto it = kv.find(k);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (const auto* v = get("algorithms")) {
        cfg.algorithms.clear();
        std::stringstream ss(*v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto a = item.find_first_not_of(' ');
            const auto b = item.find_last_not_of(' ');
            cfg.algorithms.push_back(parse_algorithm(item.substr(a, b - a + 1)));
        }
    }
    if (const auto* v = get("problem")) cfg.problem = *v;
    if (const auto* v = get("macroreps")) cfg.macroreplications = std::stoi(*v);
    if (const auto* v = get("n_initial")) cfg.n_initial = std::stoi(*v);
    if (const auto* v = get("n_infill")) cfg.n_infill = std::stoi(*v);
    if (const auto* v = get("reps")) cfg.reps_per_point = std::stoi(*v);
    if (const auto* v = get("kernel")) cfg.kernel = parse_kernel_family(*v);
    if (const auto* v = get("shared_initial_design"))
        cfg.shared_initial_design = *v == "true" || *v == "1";
    return cfg;
}

const CellResult& BenchmarkResults::cell(Algorithm a, int macro) const {
    for (const auto& c : cells)
        if (c.algorithm == a && c.macroreplication == macro) return c;
    throw std::out_of_range("no such benchmark cell");
}

BenchmarkResults run_benchmark(const BenchmarkConfig& config) {
    if (config.algorithms.empty() || config.macroreplications < 1)
        throw std::invalid_argument("run_benchmark: bad config");

    const Problem problem = make_problem(config.problem);

    // shared initial designs, one per macroreplication
    std::vector<InitialDesign> initials;
    if (config.shared_initial_design) {
        initials.reserve(static_cast<std::size_t>(config.macroreplications));
        for (int m = 0; m < config.macroreplications; ++m)
            initials.push_back(make_initial_design(problem, config.n_initial,
                                                   config.reps_per_point,
                                                   initial_design_seed(config, m)));
    }

    BenchmarkResults results;
    results.config = config;
    results.cells.resize(config.algorithms.size() *
                         static_cast<std::size_t>(config.macroreplications));

    std::atomic<std::size_t> next{0};
    const std::size_t n_cells = results.cells.size();
    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= n_cells) return;
            const std::size_t ai = idx / static_cast<std::size_t>(config.macroreplications);
            const int macro = static_cast<int>(idx % static_cast<std::size_t>(config.macroreplications));
            CellResult& cell = results.cells[idx];
            cell.algorithm = config.algorithms[ai];
            cell.macroreplication = macro;
            OptimizerConfig oc;
            oc.algorithm = cell.algorithm;
            oc.kernel = config.kernel;
            oc.n_initial = config.n_initial;
            oc.n_infill = config.n_infill;
            oc.reps_per_point = config.reps_per_point;
            oc.master_seed = cell_seed(config, ai, macro);
            try {
                cell.history = run(oc, problem,
                                   config.shared_initial_design
                                       ? &initials[static_cast<std::size_t>(macro)]
                                       : nullptr);
                cell.ok = !cell.history.aborted;
                if (!cell.ok) cell.error = cell.history.abort_reason;
            } catch (const std::exception& e) {
                cell.ok = false;
                cell.error = e.what();
            }
        }
    };

    const int n_workers = std::clamp(config.workers, 1, static_cast<int>(n_cells));
    std::vector<std::thread> threads;
    for (int i = 1; i < n_workers; ++i) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();

    if (!config.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(config.out_dir);
        for (const auto& cell : results.cells)
            if (cell.ok)
                write_history_csv((fs::path(config.out_dir) /
                                   cell_file_name(cell.algorithm, cell.macroreplication))
                                      .string(),
                                  cell.history, problem.domain.dim(),
                                  /*include_seconds=*/false);
        std::map<std::string, std::string> manifest;
        std::string algs;
        for (const auto& a : config.algorithms) {
            if (!algs.empty()) algs += ",";
            algs += algorithm_name(a);
        }
        manifest["algorithms"] = algs;
        manifest["problem"] = config.problem;
        manifest["macroreps"] = std::to_string(config.macroreplications);
        manifest["n_initial"] = std::to_string(config.n_initial);
        manifest["n_infill"] = std::to_string(config.n_infill);
        manifest["reps"] = std::to_string(config.reps_per_point);
        manifest["kernel"] = kernel_family_name(config.kernel);
        manifest["master_seed"] = std::to_string(config.master_seed);
        manifest["shared_initial_design"] = config.shared_initial_design ? "true" : "false";
        int files = 0;
        std::string failed;
        for (const auto& cell : results.cells) {
            if (cell.ok) {
                ++files;
            } else {
                if (!failed.empty()) failed += ";";
                failed += cell_file_name(cell.algorithm, cell.macroreplication) + ":" + cell.error;
            }
        }
        manifest["history_files"] = std::to_string(files);
        if (!failed.empty()) manifest["failed_cells"] = failed;
        write_kv_file((std::filesystem::path(config.out_dir) / "manifest.txt").string(), manifest);
    }
    return results;
}

ConvergenceSummary summarize(const BenchmarkResults& results) {
    ConvergenceSummary summary;
    summary.n_infill = results.config.n_infill;
    for (Algorithm a : results.config.algorithms) {
        std::vector<std::vector<double>> traces;
        for (const auto& cell : results.cells)
            if (cell.algorithm == a && cell.ok)
                traces.push_back(incumbent_trace(cell.history, results.config.n_infill));
        const int m = static_cast<int>(traces.size());
        if (m < 2)
            throw std::runtime_error(
                std::string("summarize: need >= 2 successful macroreplications for ") +
                algorithm_name(a));
        const double t = student_t_quantile(0.975, m - 1);
        ConvergenceSeries series;
        series.algorithm = algorithm_name(a);
        series.macroreplications = m;
        for (int it = 0; it <= results.config.n_infill; ++it) {
            std::vector<double> vals;
            vals.reserve(traces.size());
            for (const auto& tr : traces) vals.push_back(tr[static_cast<std::size_t>(it)]);
            const double mu = mean(vals);
            const double sd = std::sqrt(sample_variance(vals));
            series.mean.push_back(mu);
            series.half_width.push_back(t * sd / std::sqrt(static_cast<double>(m)));
        }
        summary.series.push_back(std::move(series));
    }
    return summary;
}

std::string summary_csv(const ConvergenceSummary& summary) {
    std::ostringstream out;
    out << "iter";
    for (const auto& s : summary.series)
        out << "," << s.algorithm << "_mean," << s.algorithm << "_lo," << s.algorithm << "_hi";
    out << "\n";
    for (int it = 0; it <= summary.n_infill; ++it) {
        out << it;
        for (const auto& s : summary.series) {
            const auto i = static_cast<std::size_t>(it);
            out << "," << format_double(s.mean[i]) << ","
                << format_double(s.mean[i] - s.half_width[i]) << ","
                << format_double(s.mean[i] + s.half_width[i]);
        }
        out << "\n";
    }
    return out.str();
}

std::string render_convergence_svg(const ConvergenceSummary& summary) {
    if (summary.series.empty()) throw std::invalid_argument("render_convergence_svg: empty summary");
    const double width = 800.0, height = 500.0;
    const double ml = 70.0, mr = 20.0, mt = 20.0, mb = 55.0;
    const double plot_w = width - ml - mr, plot_h = height - mt - mb;

    double y_lo = std::numeric_limits<double>::infinity();
    double y_hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : summary.series)
        for (std::size_t i = 0; i < s.mean.size(); ++i) {
            y_lo = std::min(y_lo, s.mean[i] - s.half_width[i]);
            y_hi = std::max(y_hi, s.mean[i] + s.half_width[i]);
        }
    if (y_hi <= y_lo) y_hi = y_lo + 1.0;
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    const double x_max = static_cast<double>(summary.n_infill);
    auto px = [&](double it) { return ml + plot_w * (x_max > 0 ? it / x_max : 0.5); };
    auto py = [&](double v) { return mt + plot_h * (1.0 - (v - y_lo) / (y_hi - y_lo)); };
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return std::string(buf);
    };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    // axes
    svg << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt + plot_h) << "\" x2=\""
        << fmt(ml + plot_w) << "\" y2=\"" << fmt(mt + plot_h)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(ml)
        << "\" y2=\"" << fmt(mt + plot_h) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // ticks
    for (int k = 0; k <= 5; ++k) {
        const double it = x_max * k / 5.0;
        svg << "<text x=\"" << fmt(px(it)) << "\" y=\"" << fmt(mt + plot_h + 18)
            << "\" font-size=\"12\" text-anchor=\"middle\">" << format_double(std::round(it))
            << "</text>\n";
        const double v = y_lo + (y_hi - y_lo) * k / 5.0;
        char vbuf[32];
        std::snprintf(vbuf, sizeof(vbuf), "%.4g", v);
        svg << "<text x=\"" << fmt(ml - 8) << "\" y=\"" << fmt(py(v) + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">" << vbuf << "</text>\n";
    }
    svg << "<text x=\"" << fmt(ml + plot_w / 2) << "\" y=\"" << fmt(height - 12)
        << "\" font-size=\"14\" text-anchor=\"middle\">infill iteration</text>\n";
    svg << "<text x=\"16\" y=\"" << fmt(mt + plot_h / 2)
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << fmt(mt + plot_h / 2) << ")\">best expected total cost</text>\n";

    for (std::size_t si = 0; si < summary.series.size(); ++si) {
        const auto& s = summary.series[si];
        const char* color = colors[si % 5];
        // confidence band
        svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
        for (std::size_t i = 0; i < s.mean.size(); ++i)
            svg << fmt(px(static_cast<double>(i))) << ","
                << fmt(py(s.mean[i] + s.half_width[i])) << " ";
        for (std::size_t i = s.mean.size(); i-- > 0;)
            svg << fmt(px(static_cast<double>(i))) << ","
                << fmt(py(s.mean[i] - s.half_width[i])) << " ";
        svg << "\"/>\n";
        // mean line
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.mean.size(); ++i)
            svg << fmt(px(static_cast<double>(i))) << "," << fmt(py(s.mean[i])) << " ";
        svg << "\"/>\n";
        // legend
        const double ly = mt + 16.0 + 18.0 * static_cast<double>(si);
        svg << "<line x1=\"" << fmt(ml + plot_w - 150) << "\" y1=\"" << fmt(ly) << "\" x2=\""
            << fmt(ml + plot_w - 120) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << fmt(ml + plot_w - 114) << "\" y=\"" << fmt(ly + 4)
            << "\" font-size=\"12\">" << s.algorithm << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace krigopt
