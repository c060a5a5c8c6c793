#include "krigopt/acquisition.hpp"

#include <cmath>
#include <limits>

#include "krigopt/stats.hpp"

namespace krigopt {

namespace {
constexpr double kDegenerateSd = 1e-12;
}  // namespace

double pi_value(double f_min, double mu, double sd) {
    if (sd < kDegenerateSd) return mu < f_min ? 1.0 : 0.0;
    return normal_cdf((f_min - mu) / sd);
}

double ei_value(double f_min, double mu, double sd) {
    const double delta = f_min - mu;
    if (sd < kDegenerateSd) return std::max(delta, 0.0);
    const double z = delta / sd;
    // the analytic value is nonnegative; cancellation far in the tail can
    // leave a negative denormal
    return std::max(0.0, delta * normal_cdf(z) + sd * normal_pdf(z));
}

double aei_noise_multiplier(double tau2, double mse) {
    if (tau2 <= 0.0) return 1.0;
    return 1.0 - std::sqrt(tau2) / std::sqrt(tau2 + mse);
}

double lcb_value(double mu, double sd, double kappa) {
    if (kappa < 0.0) throw std::invalid_argument("lower_confidence_bound: kappa < 0");
    return mu - kappa * sd;
}

Criterion parse_criterion(const std::string& name) {
    if (name == "pi") return Criterion::PI;
    if (name == "ei") return Criterion::EI;
    if (name == "mei") return Criterion::MEI;
    if (name == "aei") return Criterion::AEI;
    if (name == "lcb") return Criterion::LCB;
    throw std::invalid_argument("unknown acquisition criterion: " + name);
}

const char* criterion_name(Criterion c) {
    switch (c) {
        case Criterion::PI: return "pi";
        case Criterion::EI: return "ei";
        case Criterion::MEI: return "mei";
        case Criterion::AEI: return "aei";
        case Criterion::LCB: return "lcb";
    }
    return "?";
}

AcquisitionContext make_context(const KrigingModel& model, AeiNoiseMode aei_mode) {
    AcquisitionContext ctx;
    ctx.model = &model;
    ctx.aei_mode = aei_mode;
    const Vector means = model.data().sample_means();
    if (model.noise_mode() == NoiseMode::Deterministic) {
        Eigen::Index best = 0;
        ctx.f_min = means.minCoeff(&best);
        ctx.x_min = model.points().row(best).transpose();
        ctx.mu_at_x_min = ctx.f_min;
    } else {
        // observed design point with the smallest SK predictor value
        Eigen::Index best = 0;
        double best_mu = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < model.points().rows(); ++i) {
            const double mu = model.predict(model.points().row(i).transpose()).mean;
            if (mu < best_mu) {
                best_mu = mu;
                best = i;
            }
        }
        ctx.x_min = model.points().row(best).transpose();
        ctx.mu_at_x_min = best_mu;
        ctx.f_min = means.minCoeff();
        ctx.tau2 = model.data().variance_of_means().mean();
    }
    return ctx;
}

double probability_of_improvement(const AcquisitionContext& ctx, const Vector& query) {
    const Prediction p = ctx.model->predict(query);
    return pi_value(ctx.f_min, p.mean, std::sqrt(p.mse));
}

double expected_improvement(const AcquisitionContext& ctx, const Vector& query) {
    const Prediction p = ctx.model->predict(query);
    return ei_value(ctx.f_min, p.mean, std::sqrt(p.mse));
}

double modified_expected_improvement(const AcquisitionContext& ctx, const Vector& query) {
    const Prediction p = ctx.model->predict(query);
    return ei_value(ctx.mu_at_x_min, p.mean, std::sqrt(p.mse));
}

double augmented_expected_improvement(const AcquisitionContext& ctx, const Vector& query) {
    const Prediction p = ctx.model->predict(query);
    double tau2 = ctx.tau2;
    if (ctx.aei_mode == AeiNoiseMode::NearestPoint) {
        const Matrix& pts = ctx.model->points();
        Eigen::Index nearest = 0;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < pts.rows(); ++i) {
            const double d = (pts.row(i).transpose() - query).squaredNorm();
            if (d < best) {
                best = d;
                nearest = i;
            }
        }
        tau2 = ctx.model->data().variance_of_means()(nearest);
    }
    const double improvement = ei_value(ctx.mu_at_x_min, p.mean, std::sqrt(p.mse));
    return improvement * aei_noise_multiplier(tau2, p.mse);
}

double lower_confidence_bound(const AcquisitionContext& ctx, const Vector& query,
                              double kappa) {
    const Prediction p = ctx.model->predict(query);
    return lcb_value(p.mean, std::sqrt(p.mse), kappa);
}

double criterion_value(Criterion c, const AcquisitionContext& ctx, const Vector& query,
                       double kappa) {
    switch (c) {
        case Criterion::PI: return probability_of_improvement(ctx, query);
        case Criterion::EI: return expected_improvement(ctx, query);
        case Criterion::MEI: return modified_expected_improvement(ctx, query);
        case Criterion::AEI: return augmented_expected_improvement(ctx, query);
        case Criterion::LCB: return lower_confidence_bound(ctx, query, kappa);
    }
    return 0.0;
}

std::optional<Eigen::Index> select_infill(Criterion c, const AcquisitionContext& ctx,
                                          const Matrix& candidates,
                                          const std::vector<bool>& visited,
                                          double kappa) {
    const bool minimize = c == Criterion::LCB;
    std::optional<Eigen::Index> best;
    double best_value = 0.0;
    for (Eigen::Index i = 0; i < candidates.rows(); ++i) {
        if (visited[static_cast<std::size_t>(i)]) continue;
        const double v = criterion_value(c, ctx, candidates.row(i).transpose(), kappa);
        if (!best || (minimize ? v < best_value : v > best_value)) {
            best = i;
            best_value = v;
        }
    }
    return best;
}

}  // namespace krigopt
