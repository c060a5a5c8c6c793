#include "krigopt/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace krigopt {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    // round-trippable for IEEE double
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // prefer the shortest representation that parses back exactly
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[40];
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
        if (std::strtod(shorter, nullptr) == v) return shorter;
    }
    return buf;
}

Dataset read_dataset_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty dataset CSV: " + path);
    const auto header = split_csv_line(line);
    Eigen::Index dim = 0;
    while (dim < static_cast<Eigen::Index>(header.size())) {
        const std::string expect = "x" + std::to_string(dim + 1);
        if (trim(header[static_cast<std::size_t>(dim)]) != expect) break;
        ++dim;
    }
    if (dim == 0) throw std::runtime_error("dataset CSV must start with x1..xdim columns: " + path);

    Dataset data;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (static_cast<Eigen::Index>(cells.size()) < dim + 1)
            throw std::runtime_error("dataset CSV row too short: " + line);
        Vector x(dim);
        for (Eigen::Index d = 0; d < dim; ++d)
            x(d) = std::stod(cells[static_cast<std::size_t>(d)]);
        std::vector<double> reps;
        for (std::size_t c = static_cast<std::size_t>(dim); c < cells.size(); ++c) {
            const std::string cell = trim(cells[c]);
            if (cell.empty()) continue;
            reps.push_back(std::stod(cell));
        }
        if (reps.empty()) throw std::runtime_error("dataset CSV row without outputs: " + line);
        data.add(x, std::move(reps));
    }
    data.validate();
    return data;
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
    auto out = open_out(path);
    std::size_t max_reps = 0;
    for (const auto& reps : data.outputs) max_reps = std::max(max_reps, reps.size());
    for (Eigen::Index d = 0; d < data.dim(); ++d) out << (d ? ",x" : "x") << d + 1;
    for (std::size_t r = 0; r < max_reps; ++r) out << ",y" << r + 1;
    out << "\n";
    for (Eigen::Index i = 0; i < data.num_points(); ++i) {
        for (Eigen::Index d = 0; d < data.dim(); ++d)
            out << (d ? "," : "") << format_double(data.points(i, d));
        const auto& reps = data.outputs[static_cast<std::size_t>(i)];
        for (std::size_t r = 0; r < max_reps; ++r) {
            out << ",";
            if (r < reps.size()) out << format_double(reps[r]);
        }
        out << "\n";
    }
}

Matrix read_points_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty points CSV: " + path);
    const Eigen::Index dim = static_cast<Eigen::Index>(split_csv_line(line).size());
    std::vector<Vector> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        Vector x(dim);
        for (Eigen::Index d = 0; d < dim; ++d)
            x(d) = std::stod(cells[static_cast<std::size_t>(d)]);
        rows.push_back(x);
    }
    Matrix pts(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i)
        pts.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    return pts;
}

std::map<std::string, std::string> read_kv_file(const std::string& path) {
    auto in = open_in(path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("bad key-value line: " + line);
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
}

void write_kv_file(const std::string& path, const std::map<std::string, std::string>& kv) {
    auto out = open_out(path);
    for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
}

void write_model_file(const std::string& path, const KrigingModel& model,
                      const std::string& dataset_path, const Vector& scale_lo,
                      const Vector& scale_hi) {
    const KernelSpec spec = model.kernel();
    std::map<std::string, std::string> kv;
    kv["kernel"] = kernel_family_name(spec.family);
    kv["sigma2"] = format_double(spec.process_variance);
    kv["length_scale"] = format_double(spec.length_scale);
    kv["beta0"] = format_double(model.beta0());
    kv["log_likelihood"] = format_double(model.diagnostics().log_likelihood);
    kv["noise_mode"] =
        model.noise_mode() == NoiseMode::Stochastic ? "stochastic" : "deterministic";
    kv["dataset"] = dataset_path;
    kv["dim"] = std::to_string(scale_lo.size());
    for (Eigen::Index d = 0; d < scale_lo.size(); ++d) {
        kv["scale_lo" + std::to_string(d + 1)] = format_double(scale_lo(d));
        kv["scale_hi" + std::to_string(d + 1)] = format_double(scale_hi(d));
    }
    write_kv_file(path, kv);
}

LoadedModel read_model_file(const std::string& path) {
    const auto kv = read_kv_file(path);
    auto need = [&](const std::string& k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end()) throw std::runtime_error("model file missing key: " + k);
        return it->second;
    };
    Dataset data = read_dataset_csv(need("dataset"));
    const Eigen::Index dim = std::stoi(need("dim"));
    if (dim != data.dim()) throw std::runtime_error("model file dim mismatch with dataset");
    Vector lo(dim), hi(dim);
    for (Eigen::Index d = 0; d < dim; ++d) {
        lo(d) = std::stod(need("scale_lo" + std::to_string(d + 1)));
        hi(d) = std::stod(need("scale_hi" + std::to_string(d + 1)));
    }
    for (Eigen::Index i = 0; i < data.num_points(); ++i)
        for (Eigen::Index d = 0; d < dim; ++d)
            data.points(i, d) = (data.points(i, d) - lo(d)) / (hi(d) - lo(d));
    const KernelSpec spec(parse_kernel_family(need("kernel")), std::stod(need("sigma2")),
                          std::stod(need("length_scale")));
    const NoiseMode mode =
        need("noise_mode") == "stochastic" ? NoiseMode::Stochastic : NoiseMode::Deterministic;
    return LoadedModel{KrigingModel::with_hyperparameters(data, spec, mode), lo, hi};
}

void write_history_csv(const std::string& path, const RunHistory& history, Eigen::Index dim,
                       bool include_seconds) {
    auto out = open_out(path);
    out << "iter";
    for (Eigen::Index d = 0; d < dim; ++d) out << ",x" << d + 1;
    out << ",mean,var_of_mean,incumbent";
    if (include_seconds) out << ",seconds";
    out << "\n";
    for (const auto& rec : history.records) {
        out << rec.iter;
        for (Eigen::Index d = 0; d < dim; ++d) out << "," << format_double(rec.point(d));
        out << "," << format_double(rec.sample_mean) << "," << format_double(rec.variance_of_mean)
            << "," << format_double(rec.incumbent_best);
        if (include_seconds) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.3f", rec.seconds);
            out << "," << buf;
        }
        out << "\n";
    }
}

RunHistory read_history_csv(const std::string& path, Eigen::Index dim) {
    auto in = open_in(path);
    std::string line;
    std::getline(in, line);  // header
    RunHistory h;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        IterationRecord rec;
        rec.iter = std::stoi(cells[0]);
        rec.point.resize(dim);
        for (Eigen::Index d = 0; d < dim; ++d)
            rec.point(d) = std::stod(cells[static_cast<std::size_t>(1 + d)]);
        rec.sample_mean = std::stod(cells[static_cast<std::size_t>(1 + dim)]);
        rec.variance_of_mean = std::stod(cells[static_cast<std::size_t>(2 + dim)]);
        rec.incumbent_best = std::stod(cells[static_cast<std::size_t>(3 + dim)]);
        h.records.push_back(std::move(rec));
    }
    if (!h.records.empty())
        std::tie(h.best_point, h.best_mean) = identify_best(h);
    return h;
}

}  // namespace krigopt
