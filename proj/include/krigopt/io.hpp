#pragma once

#include <map>
#include <string>

#include "krigopt/dataset.hpp"
#include "krigopt/kriging.hpp"
#include "krigopt/optimizer.hpp"

namespace krigopt {

// Shortest round-trippable decimal form, '.' decimal point, locale-free.
std::string format_double(double v);

// Dataset CSV: header x1..xdim then one column per replication output;
// trailing blanks allow ragged replication counts.
Dataset read_dataset_csv(const std::string& path);
void write_dataset_csv(const std::string& path, const Dataset& data);

// Query CSV: header x1..xdim, one point per row.
Matrix read_points_csv(const std::string& path);

// Flat key-value text file ("key = value" lines, '#' comments).
std::map<std::string, std::string> read_kv_file(const std::string& path);
void write_kv_file(const std::string& path, const std::map<std::string, std::string>& kv);

// Model summary: kernel family, sigma2, length_scale, beta0, log-likelihood,
// noise mode, the input-scaling bounds and the dataset path needed to
// rebuild the factorization.
void write_model_file(const std::string& path, const KrigingModel& model,
                      const std::string& dataset_path, const Vector& scale_lo,
                      const Vector& scale_hi);
struct LoadedModel {
    KrigingModel model;
    Vector scale_lo;
    Vector scale_hi;
};
LoadedModel read_model_file(const std::string& path);

// RunHistory CSV: iter, x1..xdim, mean, var_of_mean, incumbent[, seconds].
// The benchmark omits the wall-time column so reruns are byte-identical.
void write_history_csv(const std::string& path, const RunHistory& history, Eigen::Index dim,
                       bool include_seconds);
RunHistory read_history_csv(const std::string& path, Eigen::Index dim);

}  // namespace krigopt
