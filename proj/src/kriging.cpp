#include "krigopt/kriging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "krigopt/rng.hpp"
#include "krigopt/stats.hpp"

namespace krigopt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454835607;

struct StdProblem {
    const Matrix& points;
    const Vector& y;
    const Vector& noise_diag;  // standardized variance-of-mean entries
};

Matrix system_matrix(const StdProblem& prob, const KernelSpec& spec) {
    Matrix c = covariance_matrix(spec, prob.points);
    c.diagonal() += prob.noise_diag;
    c.diagonal().array() += nugget(spec.process_variance);
    return c;
}

double lml_impl(const StdProblem& prob, const KernelSpec& spec) {
    const Eigen::Index p = prob.points.rows();
    Eigen::LLT<Matrix> llt(system_matrix(prob, spec));
    if (llt.info() != Eigen::Success) return kNegInf;
    const double beta0 = estimate_beta0(llt, prob.y);
    const Vector r = prob.y.array() - beta0;
    const double quad = r.dot(llt.solve(r));
    double logdet = 0.0;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < p; ++i) logdet += 2.0 * std::log(l(i, i));
    const double ll = -0.5 * (quad + logdet + static_cast<double>(p) * kLog2Pi);
    return std::isfinite(ll) ? ll : kNegInf;
}

struct SearchBox {
    double lo[2];  // (log sigma2, log l)
    double hi[2];
};

// Bounded coordinate descent with shrinking steps, capped at max_evals
// likelihood evaluations. Returns the best parameter pair and its value.
struct LocalResult {
    double theta[2];
    double value;
};

template <typename F>
LocalResult coordinate_descent(F&& objective, const SearchBox& box, const double start[2],
                               int max_evals) {
    LocalResult cur{{start[0], start[1]}, kNegInf};
    int evals = 0;
    cur.value = objective(cur.theta);
    ++evals;
    double step[2] = {(box.hi[0] - box.lo[0]) / 8.0, (box.hi[1] - box.lo[1]) / 8.0};
    while (evals < max_evals && (step[0] > 1e-4 || step[1] > 1e-4)) {
        bool improved = false;
        for (int c = 0; c < 2 && evals < max_evals; ++c) {
            for (double dir : {+1.0, -1.0}) {
                if (evals >= max_evals) break;
                double cand[2] = {cur.theta[0], cur.theta[1]};
                cand[c] = std::clamp(cand[c] + dir * step[c], box.lo[c], box.hi[c]);
                if (cand[c] == cur.theta[c]) continue;
                const double v = objective(cand);
                ++evals;
                if (v > cur.value) {
                    cur.theta[c] = cand[c];
                    cur.value = v;
                    improved = true;
                    break;  // keep moving this coordinate next sweep
                }
            }
        }
        if (!improved) {
            step[0] *= 0.5;
            step[1] *= 0.5;
        }
    }
    return cur;
}

}  // namespace

double estimate_beta0(const Eigen::LLT<Matrix>& factored, const Vector& responses) {
    if (factored.info() != Eigen::Success)
        throw std::runtime_error("estimate_beta0: singular covariance system");
    const Vector ones = Vector::Ones(responses.size());
    const Vector cinv_one = factored.solve(ones);
    const double denom = ones.dot(cinv_one);
    if (!(denom > 0.0) || !std::isfinite(denom))
        throw std::runtime_error("estimate_beta0: non-positive 1'C^-1 1 (condition issue)");
    return cinv_one.dot(responses) / denom;
}

double log_marginal_likelihood(const Dataset& data, const KernelSpec& spec,
                               NoiseMode mode) {
    const Vector y = data.sample_means();
    Vector noise = Vector::Zero(data.num_points());
    if (mode == NoiseMode::Stochastic) noise = data.variance_of_means();
    StdProblem prob{data.points, y, noise};
    return lml_impl(prob, spec);
}

KrigingModel KrigingModel::fit(const Dataset& data, KernelFamily family,
                               const FitConfig& config, NoiseMode mode) {
    data.validate();
    if (data.num_points() < 2)
        throw std::invalid_argument("fit: need at least 2 design points");

    KrigingModel model;
    model.data_ = data;
    model.mode_ = mode;

    const Vector means = data.sample_means();
    model.center_ = means.mean();
    const double var = (means.array() - model.center_).square().sum() /
                       std::max<double>(1.0, static_cast<double>(means.size() - 1));
    model.scale_ = var > 1e-300 ? std::sqrt(var) : 1.0;
    model.y_std_ = (means.array() - model.center_) / model.scale_;
    if (mode == NoiseMode::Stochastic) {
        model.noise_std_ = data.variance_of_means() / (model.scale_ * model.scale_);
        for (const auto& reps : data.outputs)
            if (reps.size() < 2) model.diagnostics_.single_replication_warning = true;
    } else {
        model.noise_std_ = Vector::Zero(data.num_points());
    }

    StdProblem prob{data.points, model.y_std_, model.noise_std_};
    // Bounds on (log sigma2, log l): sigma2 relative to the (standardized,
    // hence unit) variance of the sample means, l in unit-box units.
    const SearchBox box{{std::log(1e-6), std::log(0.01)}, {std::log(1e3), std::log(10.0)}};

    auto objective = [&](const double theta[2]) {
        const KernelSpec spec(family, std::exp(theta[0]), std::exp(theta[1]));
        return lml_impl(prob, spec);
    };

    // Latin hypercube start placement over the log-parameter box.
    Rng rng(Rng::derive({config.seed, 0x66697473ULL}));
    const int n = std::max(1, config.n_starts);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    Matrix starts(n, 2);
    for (int c = 0; c < 2; ++c) {
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[static_cast<std::size_t>(i)],
                      perm[static_cast<std::size_t>(rng.uniform_int(0, i))]);
        for (int i = 0; i < n; ++i) {
            const double u = (perm[static_cast<std::size_t>(i)] + rng.uniform()) / n;
            starts(i, c) = box.lo[c] + u * (box.hi[c] - box.lo[c]);
        }
    }

    bool have_best = false;
    LocalResult best{{0.0, 0.0}, kNegInf};
    for (int i = 0; i < n; ++i) {
        const double s0[2] = {starts(i, 0), starts(i, 1)};
        const LocalResult r = coordinate_descent(objective, box, s0, config.max_evals_per_start);
        if (r.value == kNegInf) continue;
        const double tol = 1e-10 * std::max(1.0, std::fabs(best.value));
        if (!have_best || r.value > best.value + tol ||
            (std::fabs(r.value - best.value) <= tol && r.theta[1] < best.theta[1])) {
            best = r;
            have_best = true;
        }
    }
    model.diagnostics_.restarts_used = n;
    if (!have_best)
        throw std::runtime_error("fit: all multistart restarts failed to produce a finite likelihood");

    model.build(KernelSpec(family, std::exp(best.theta[0]), std::exp(best.theta[1])));
    model.diagnostics_.log_likelihood = log_marginal_likelihood(data, model.kernel(), mode);
    return model;
}

KrigingModel KrigingModel::fit_ok(const Dataset& data, KernelFamily family,
                                  const FitConfig& config) {
    return fit(data, family, config, NoiseMode::Deterministic);
}

KrigingModel KrigingModel::fit_sk(const Dataset& data, KernelFamily family,
                                  const FitConfig& config) {
    return fit(data, family, config, NoiseMode::Stochastic);
}

KrigingModel KrigingModel::with_hyperparameters(const Dataset& data, const KernelSpec& spec,
                                                NoiseMode mode) {
    data.validate();
    KrigingModel model;
    model.data_ = data;
    model.mode_ = mode;
    const Vector means = data.sample_means();
    model.center_ = means.mean();
    const double var = (means.array() - model.center_).square().sum() /
                       std::max<double>(1.0, static_cast<double>(means.size() - 1));
    model.scale_ = var > 1e-300 ? std::sqrt(var) : 1.0;
    model.y_std_ = (means.array() - model.center_) / model.scale_;
    model.noise_std_ = mode == NoiseMode::Stochastic
                           ? Vector(data.variance_of_means() / (model.scale_ * model.scale_))
                           : Vector(Vector::Zero(data.num_points()));
    model.build(KernelSpec(spec.family, spec.process_variance / (model.scale_ * model.scale_),
                           spec.length_scale));
    model.diagnostics_.log_likelihood = log_marginal_likelihood(data, spec, mode);
    return model;
}

void KrigingModel::build(const KernelSpec& spec_std) {
    spec_std_ = spec_std;
    StdProblem prob{data_.points, y_std_, noise_std_};
    factored_.compute(system_matrix(prob, spec_std));
    if (factored_.info() != Eigen::Success)
        throw std::runtime_error("fit: covariance factorization failed");
    beta0_std_ = estimate_beta0(factored_, y_std_);
    const Vector ones = Vector::Ones(y_std_.size());
    cinv_one_ = factored_.solve(ones);
    one_cinv_one_ = ones.dot(cinv_one_);
    alpha_ = factored_.solve(Vector(y_std_.array() - beta0_std_));
}

KernelSpec KrigingModel::kernel() const {
    return KernelSpec(spec_std_.family, spec_std_.process_variance * scale_ * scale_,
                      spec_std_.length_scale);
}

Prediction KrigingModel::predict(const Vector& query) const {
    if (query.size() != data_.dim())
        throw std::invalid_argument("predict: dimension mismatch");
    const Vector k = cross_covariance(spec_std_, data_.points, query);
    const double mu_std = beta0_std_ + k.dot(alpha_);
    const double kck = k.dot(factored_.solve(k));
    const double one_ck = k.dot(cinv_one_);
    const double gamma = 1.0 - one_ck;
    double mse_std = spec_std_.process_variance - kck + gamma * gamma / one_cinv_one_;
    if (mse_std < -1e-8 * spec_std_.process_variance)
        throw std::runtime_error("predict: MSE went negative beyond tolerance (broken factorization)");
    mse_std = std::max(0.0, mse_std);
    return Prediction{center_ + scale_ * mu_std, scale_ * scale_ * mse_std};
}

double KrigingModel::factorization_residual() const {
    StdProblem prob{data_.points, y_std_, noise_std_};
    const Matrix c = system_matrix(prob, spec_std_);
    const Matrix recon = factored_.matrixL() * Matrix(factored_.matrixL()).transpose();
    return (recon - c).cwiseAbs().maxCoeff() / c.cwiseAbs().maxCoeff();
}

}  // namespace krigopt
