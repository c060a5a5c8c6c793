#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "krigopt/kriging.hpp"

namespace krigopt {

enum class Criterion { PI, EI, MEI, AEI, LCB };

Criterion parse_criterion(const std::string& name);
const char* criterion_name(Criterion c);

// How AEI obtains its noise-variance estimate tau^2.
enum class AeiNoiseMode {
    Homogeneous,   // average of the per-point variance-of-mean entries
    NearestPoint,  // per-point value at the design point nearest the query
};

// Everything a criterion needs besides the query point. Build with
// make_context so f_min / x_min / tau2 follow the model's noise mode:
// deterministic models use the best observed sample mean, stochastic models
// use the observed point minimizing the SK predictor.
struct AcquisitionContext {
    const KrigingModel* model = nullptr;
    double f_min = 0.0;        // deterministic mode reference
    Vector x_min;              // stochastic mode: observed argmin of the SK predictor
    double mu_at_x_min = 0.0;  // SK predictor value at x_min
    double tau2 = 0.0;         // AEI noise variance (homogeneous default)
    AeiNoiseMode aei_mode = AeiNoiseMode::Homogeneous;
};

AcquisitionContext make_context(const KrigingModel& model,
                                AeiNoiseMode aei_mode = AeiNoiseMode::Homogeneous);

// Scalar forms. `sd` below the 1e-12 degeneracy threshold switches to the
// exact-knowledge limits.
double pi_value(double f_min, double mu, double sd);
double ei_value(double f_min, double mu, double sd);
double aei_noise_multiplier(double tau2, double mse);
double lcb_value(double mu, double sd, double kappa);

double probability_of_improvement(const AcquisitionContext& ctx, const Vector& query);
double expected_improvement(const AcquisitionContext& ctx, const Vector& query);
double modified_expected_improvement(const AcquisitionContext& ctx, const Vector& query);
double augmented_expected_improvement(const AcquisitionContext& ctx, const Vector& query);
double lower_confidence_bound(const AcquisitionContext& ctx, const Vector& query,
                              double kappa);

double criterion_value(Criterion c, const AcquisitionContext& ctx, const Vector& query,
                       double kappa = 2.0);

// Argmax (argmin for LCB) of the criterion over unvisited candidate rows.
// Ties resolve to the lowest index. Empty optional when every candidate is
// visited; the optimize loop treats that as termination.
std::optional<Eigen::Index> select_infill(Criterion c, const AcquisitionContext& ctx,
                                          const Matrix& candidates,
                                          const std::vector<bool>& visited,
                                          double kappa = 2.0);

}  // namespace krigopt
