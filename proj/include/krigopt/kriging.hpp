#pragma once

#include <Eigen/Cholesky>
#include <cstdint>

#include "krigopt/dataset.hpp"
#include "krigopt/kernels.hpp"

namespace krigopt {

enum class NoiseMode { Deterministic, Stochastic };

struct Prediction {
    double mean = 0.0;  // mu(x), output units
    double mse = 0.0;   // s^2(x), output units squared, clamped at 0
};

struct FitConfig {
    int n_starts = 8;              // Latin hypercube starts over the log-parameter box
    int max_evals_per_start = 200; // likelihood evaluation budget per start
    std::uint64_t seed = 0;        // start-placement stream
};

struct FitDiagnostics {
    double log_likelihood = 0.0;
    int restarts_used = 0;
    bool single_replication_warning = false;
};

// GLS estimate of the constant trend: (1' C^-1 f) / (1' C^-1 1), with all
// solves through the supplied factorization.
double estimate_beta0(const Eigen::LLT<Matrix>& factored, const Vector& responses);

// Gaussian log-density of the responses (sample means) under the constant
// trend beta0_hat(spec) and covariance K (+ K_eps for Stochastic) + nugget.
// Points are used as given (unit-box scale expected); responses in original
// units. Returns -inf if the system cannot be factored.
double log_marginal_likelihood(const Dataset& data, const KernelSpec& spec,
                               NoiseMode mode);

// Fitted kriging surrogate. Immutable after construction; predictions from
// the same model may run concurrently.
class KrigingModel {
public:
    // Ordinary kriging: replication noise ignored, model interpolates the
    // sample means. Requires p >= 2 distinct points.
    static KrigingModel fit_ok(const Dataset& data, KernelFamily family,
                               const FitConfig& config);

    // Stochastic kriging: the diagonal of sample-mean variances enters the
    // likelihood and the factored system.
    static KrigingModel fit_sk(const Dataset& data, KernelFamily family,
                               const FitConfig& config);

    // Skip hyperparameter search and build the model at fixed (sigma2, l).
    // Used when reloading persisted models and in scaling tests.
    static KrigingModel with_hyperparameters(const Dataset& data, const KernelSpec& spec,
                                             NoiseMode mode);

    Prediction predict(const Vector& query) const;

    NoiseMode noise_mode() const { return mode_; }
    // Kernel in output units (internal fitting standardizes responses).
    KernelSpec kernel() const;
    double beta0() const { return center_ + scale_ * beta0_std_; }
    const FitDiagnostics& diagnostics() const { return diagnostics_; }
    const Dataset& data() const { return data_; }
    const Matrix& points() const { return data_.points; }

    // Max relative error of the factorization reproducing the covariance
    // system it was built from.
    double factorization_residual() const;

private:
    KrigingModel() = default;
    static KrigingModel fit(const Dataset& data, KernelFamily family,
                            const FitConfig& config, NoiseMode mode);
    void build(const KernelSpec& spec_std);

    Dataset data_;
    NoiseMode mode_ = NoiseMode::Deterministic;
    double center_ = 0.0;  // response standardization: y = (f - center)/scale
    double scale_ = 1.0;
    Vector y_std_;          // standardized sample means
    Vector noise_std_;      // standardized variance-of-mean diagonal
    KernelSpec spec_std_;   // sigma2 in standardized units
    double beta0_std_ = 0.0;
    Eigen::LLT<Matrix> factored_;
    Vector alpha_;          // C^-1 (y - 1 beta0)
    Vector cinv_one_;       // C^-1 1
    double one_cinv_one_ = 0.0;
    FitDiagnostics diagnostics_;
};

}  // namespace krigopt
