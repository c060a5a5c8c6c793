#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "krigopt/kriging.hpp"
#include "krigopt/rng.hpp"
#include "oracles.hpp"

using namespace krigopt;

namespace {

Vector vec1(double a) {
    Vector v(1);
    v << a;
    return v;
}

Dataset grid_1d(const std::vector<double>& xs, const std::vector<double>& fs) {
    Dataset data;
    for (std::size_t i = 0; i < xs.size(); ++i) data.add(vec1(xs[i]), {fs[i]});
    return data;
}

}  // namespace

TEST_CASE("trend estimate on simple systems") {
    SUBCASE("single point returns its response") {
        Matrix c(1, 1);
        c << 1.5;
        Eigen::LLT<Matrix> llt(c);
        CHECK(estimate_beta0(llt, vec1(7.25)) == doctest::Approx(7.25).epsilon(1e-14));
    }
    SUBCASE("identity covariance averages the responses") {
        Eigen::LLT<Matrix> llt(Matrix(Matrix::Identity(3, 3)));
        Vector f(3);
        f << 1.0, 2.0, 3.0;
        CHECK(estimate_beta0(llt, f) == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("random system matches the dense-inverse form") {
        Rng rng(11);
        const KernelSpec spec(KernelFamily::Matern52, 1.2, 0.4);
        Matrix pts(6, 2);
        Vector f(6);
        for (int i = 0; i < 6; ++i) {
            pts(i, 0) = rng.uniform();
            pts(i, 1) = rng.uniform();
            f(i) = rng.normal();
        }
        const Matrix c = oracle::dense_system(spec, pts, Vector::Zero(6));
        Eigen::LLT<Matrix> llt(c);
        const Matrix cinv = c.inverse();
        const Vector ones = Vector::Ones(6);
        const double expect = ones.dot(cinv * f) / ones.dot(cinv * ones);
        CHECK(estimate_beta0(llt, f) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("log marginal likelihood") {
    SUBCASE("single unit-variance point is the standard normal log-density at zero") {
        // beta0 equals the lone response, so the quadratic term vanishes and
        // only the log-determinant and constant remain.
        Dataset data;
        data.add(vec1(0.5), {3.0});
        const double ll = log_marginal_likelihood(
            data, KernelSpec(KernelFamily::SquaredExponential, 1.0, 1.0),
            NoiseMode::Deterministic);
        CHECK(ll == doctest::Approx(-0.5 * std::log(2.0 * M_PI * (1.0 + 1e-8))).epsilon(1e-10));
    }
    SUBCASE("invariant under response translation") {
        Rng rng(3);
        Dataset data = oracle::random_dataset(rng, 6, 2, 4);
        const KernelSpec spec(KernelFamily::Matern32, 0.8, 0.5);
        const double base = log_marginal_likelihood(data, spec, NoiseMode::Stochastic);
        for (auto& reps : data.outputs)
            for (auto& v : reps) v += 42.0;
        CHECK(log_marginal_likelihood(data, spec, NoiseMode::Stochastic) ==
              doctest::Approx(base).epsilon(1e-9));
    }
    SUBCASE("random datasets match the dense-inverse reference") {
        Rng rng(17);
        for (int trial = 0; trial < 20; ++trial) {
            const Dataset data = oracle::random_dataset(rng, 5, 1, 3);
            const KernelSpec spec(KernelFamily::SquaredExponential,
                                  rng.uniform(0.3, 3.0), rng.uniform(0.1, 1.0));
            for (auto mode : {NoiseMode::Deterministic, NoiseMode::Stochastic}) {
                const Vector noise = mode == NoiseMode::Stochastic
                                         ? Vector(data.variance_of_means())
                                         : Vector(Vector::Zero(5));
                const double expect =
                    oracle::log_likelihood(spec, data.points, data.sample_means(), noise);
                CHECK(log_marginal_likelihood(data, spec, mode) ==
                      doctest::Approx(expect).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("ordinary kriging interpolates the sample means") {
    const std::vector<double> xs{0.0, 0.2, 0.45, 0.7, 0.9};
    const std::vector<double> fs{1.2, -0.4, 0.9, 2.6, 0.1};
    const Dataset data = grid_1d(xs, fs);
    const double range = 3.0;  // max - min of fs
    for (auto family : {KernelFamily::SquaredExponential, KernelFamily::Matern32,
                        KernelFamily::Matern52}) {
        const auto model = KrigingModel::fit_ok(data, family, FitConfig{8, 200, 99});
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const Prediction p = model.predict(vec1(xs[i]));
            CHECK(std::fabs(p.mean - fs[i]) <= 1e-6 * range);
            CHECK(p.mse <= 1e-6 * model.kernel().process_variance);
        }
        CHECK(model.factorization_residual() <= 1e-10);
    }
}

TEST_CASE("ordinary kriging reverts to the trend far from the data") {
    const Dataset data = grid_1d({0.1, 0.3, 0.5}, {1.0, 3.0, 2.0});
    const KernelSpec spec(KernelFamily::SquaredExponential, 1.0, 0.2);
    const auto model = KrigingModel::with_hyperparameters(data, spec, NoiseMode::Deterministic);
    const Prediction p = model.predict(vec1(40.0));
    CHECK(p.mean == doctest::Approx(model.beta0()).epsilon(1e-9));
    // far-field MSE exceeds the process variance by the trend-estimation term
    CHECK(p.mse > spec.process_variance);
}

TEST_CASE("ordinary kriging prediction matches the dense-inverse reference") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const Dataset data = oracle::random_dataset(rng, 6, 2, 1, 0.0);
        const KernelSpec spec(KernelFamily::Matern52, rng.uniform(0.5, 2.0),
                              rng.uniform(0.2, 0.8));
        const auto model =
            KrigingModel::with_hyperparameters(data, spec, NoiseMode::Deterministic);
        for (int q = 0; q < 20; ++q) {
            Vector query(2);
            query << rng.uniform(), rng.uniform();
            const Prediction got = model.predict(query);
            const Prediction expect = oracle::predict(spec, data.points, data.sample_means(),
                                                      Vector::Zero(6), query);
            CHECK(got.mean == doctest::Approx(expect.mean).epsilon(1e-8));
            CHECK(got.mse == doctest::Approx(expect.mse).epsilon(1e-8));
        }
    }
}

TEST_CASE("trend uncertainty only increases the MSE") {
    // The estimated-trend MSE adds a nonnegative term to the known-trend form.
    Rng rng(47);
    const Dataset data = oracle::random_dataset(rng, 5, 1, 1, 0.0);
    const KernelSpec spec(KernelFamily::SquaredExponential, 1.0, 0.3);
    const auto model =
        KrigingModel::with_hyperparameters(data, spec, NoiseMode::Deterministic);
    for (int q = 0; q < 50; ++q) {
        const Vector query = vec1(rng.uniform(-0.5, 1.5));
        const double known = oracle::mse_known_beta0(spec, data.points, Vector::Zero(5), query);
        CHECK(model.predict(query).mse >= known - 1e-12);
    }
}

TEST_CASE("fit result is invariant to the ordering of design points") {
    Rng rng(53);
    Dataset data = oracle::random_dataset(rng, 6, 1, 3);
    const auto a = KrigingModel::fit_sk(data, KernelFamily::Matern32, FitConfig{8, 200, 5});

    Dataset reversed;
    for (int i = 5; i >= 0; --i) {
        reversed.add(data.points.row(i).transpose(),
                     std::vector<double>(data.outputs[static_cast<std::size_t>(i)]));
    }
    const auto b = KrigingModel::fit_sk(reversed, KernelFamily::Matern32, FitConfig{8, 200, 5});

    for (double x : {0.05, 0.37, 0.81}) {
        const Prediction pa = a.predict(vec1(x));
        const Prediction pb = b.predict(vec1(x));
        CHECK(pa.mean == doctest::Approx(pb.mean).epsilon(1e-8));
        CHECK(pa.mse == doctest::Approx(pb.mse).epsilon(1e-8));
    }
}

TEST_CASE("constant responses give a flat predictor at that level") {
    const Dataset data = grid_1d({0.1, 0.4, 0.6, 0.9}, {5.0, 5.0, 5.0, 5.0});
    const KernelSpec spec(KernelFamily::SquaredExponential, 1.0, 0.3);
    const auto model =
        KrigingModel::with_hyperparameters(data, spec, NoiseMode::Deterministic);
    CHECK(model.beta0() == doctest::Approx(5.0).epsilon(1e-10));
    for (double x : {0.0, 0.33, 0.77, 1.0})
        CHECK(model.predict(vec1(x)).mean == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("length-scale recovery on dense noiseless samples") {
    // Draw from a known squared-exponential process and check the fitted
    // length-scale lands within a factor of 3 in at least 90 of 100 trials.
    const double true_l = 0.3;
    const KernelSpec truth(KernelFamily::SquaredExponential, 1.0, true_l);
    int ok = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(1000 + static_cast<std::uint64_t>(trial));
        Matrix pts(8, 1);
        for (int i = 0; i < 8; ++i) pts(i, 0) = (i + rng.uniform()) / 8.0;
        Matrix c = oracle::dense_system(truth, pts, Vector::Zero(8));
        Eigen::LLT<Matrix> llt(c);
        Vector z(8);
        for (int i = 0; i < 8; ++i) z(i) = rng.normal();
        const Vector f = Matrix(llt.matrixL()) * z;
        Dataset data;
        for (int i = 0; i < 8; ++i) data.add(pts.row(i).transpose(), {f(i)});
        const auto model = KrigingModel::fit_ok(data, KernelFamily::SquaredExponential,
                                                FitConfig{8, 200, 7});
        const double l = model.kernel().length_scale;
        if (l > true_l / 3.0 && l < true_l * 3.0) ++ok;
    }
    CHECK(ok >= 90);
}

TEST_CASE("fitted hyperparameters sit at a local likelihood maximum") {
    // Finite-difference check along each log-parameter axis.
    Rng rng(61);
    const Dataset data = oracle::random_dataset(rng, 7, 1, 3);
    const auto model = KrigingModel::fit_sk(data, KernelFamily::SquaredExponential,
                                            FitConfig{8, 400, 21});
    const KernelSpec spec = model.kernel();
    const double base = log_marginal_likelihood(data, spec, NoiseMode::Stochastic);
    const double h = 5e-3;
    for (double ds2 : {-h, h}) {
        const KernelSpec bumped(spec.family, spec.process_variance * std::exp(ds2),
                                spec.length_scale);
        CHECK(log_marginal_likelihood(data, bumped, NoiseMode::Stochastic) <= base + 1e-6);
    }
    for (double dl : {-h, h}) {
        const KernelSpec bumped(spec.family, spec.process_variance,
                                spec.length_scale * std::exp(dl));
        CHECK(log_marginal_likelihood(data, bumped, NoiseMode::Stochastic) <= base + 1e-6);
    }
}

TEST_CASE("stochastic kriging with zero spread reduces to ordinary kriging") {
    // Replications identical at each point: the variance-of-means diagonal is
    // exactly zero and both modes build the same system.
    Rng rng(71);
    Dataset data;
    for (int i = 0; i < 6; ++i) {
        const double v = rng.normal();
        data.add(vec1((i + rng.uniform()) / 6.0), {v, v, v});
    }
    const auto ok = KrigingModel::fit_ok(data, KernelFamily::Matern52, FitConfig{8, 200, 13});
    const auto sk = KrigingModel::fit_sk(data, KernelFamily::Matern52, FitConfig{8, 200, 13});
    for (int q = 0; q < 100; ++q) {
        const Vector query = vec1(rng.uniform());
        const Prediction po = ok.predict(query);
        const Prediction ps = sk.predict(query);
        CHECK(po.mean == doctest::Approx(ps.mean).epsilon(1e-8));
        CHECK(ps.mse == doctest::Approx(po.mse).epsilon(1e-8));
    }
}

TEST_CASE("stochastic kriging prediction matches the dense-inverse reference") {
    Rng rng(83);
    for (int trial = 0; trial < 10; ++trial) {
        const Dataset data = oracle::random_dataset(rng, 6, 1, 4);
        const KernelSpec spec(KernelFamily::SquaredExponential, rng.uniform(0.5, 2.0),
                              rng.uniform(0.2, 0.8));
        const auto model =
            KrigingModel::with_hyperparameters(data, spec, NoiseMode::Stochastic);
        for (int q = 0; q < 20; ++q) {
            const Vector query = vec1(rng.uniform());
            const Prediction got = model.predict(query);
            const Prediction expect = oracle::predict(spec, data.points, data.sample_means(),
                                                      data.variance_of_means(), query);
            CHECK(got.mean == doctest::Approx(expect.mean).epsilon(1e-8));
            CHECK(got.mse == doctest::Approx(expect.mse).epsilon(1e-8));
        }
    }
}

TEST_CASE("stochastic kriging smooths rather than interpolates noisy points") {
    Rng rng(97);
    Dataset data;
    for (int i = 0; i < 6; ++i) {
        std::vector<double> reps;
        const double base = std::sin(6.0 * i / 5.0);
        for (int r = 0; r < 5; ++r) reps.push_back(base + 0.8 * rng.normal());
        data.add(vec1(i / 5.0), reps);
    }
    const auto model =
        KrigingModel::fit_sk(data, KernelFamily::SquaredExponential, FitConfig{8, 200, 9});
    const Vector means = data.sample_means();
    bool any_off_mean = false;
    for (int i = 0; i < 6; ++i) {
        const Prediction p = model.predict(vec1(i / 5.0));
        CHECK(p.mse > 0.0);
        if (std::fabs(p.mean - means(i)) > 1e-6) any_off_mean = true;
    }
    CHECK(any_off_mean);
}

TEST_CASE("a very noisy point is shrunk toward the trend") {
    Dataset data;
    data.add(vec1(0.2), {1.0, 1.0, 1.0});
    data.add(vec1(0.8), {1.0, 1.0, 1.0});
    // wildly scattered replications at the middle point
    data.add(vec1(0.5), {-200.0, 220.0, 15.0});
    const KernelSpec spec(KernelFamily::SquaredExponential, 1.0, 0.15);
    const auto model = KrigingModel::with_hyperparameters(data, spec, NoiseMode::Stochastic);
    const Prediction p = model.predict(vec1(0.5));
    const double noisy_mean = data.sample_means()(2);
    // prediction moves essentially all the way from the sample mean to beta0
    CHECK(std::fabs(p.mean - model.beta0()) < std::fabs(p.mean - noisy_mean));
    CHECK(p.mse > 0.0);
}

TEST_CASE("noise-free design points keep zero trend-adjustment residual") {
    // Gamma of the MSE expression vanishes at a design point when the noise
    // diagonal is zero there.
    const Dataset data = grid_1d({0.1, 0.5, 0.9}, {2.0, -1.0, 0.5});
    const KernelSpec spec(KernelFamily::Matern32, 1.0, 0.4);
    const auto model =
        KrigingModel::with_hyperparameters(data, spec, NoiseMode::Deterministic);
    for (int i = 0; i < 3; ++i)
        CHECK(model.predict(data.points.row(i).transpose()).mse <= 1e-6);
}

TEST_CASE("single-replication data in stochastic mode raises the diagnostic flag") {
    Dataset data = grid_1d({0.1, 0.5, 0.9}, {2.0, -1.0, 0.5});
    const auto model =
        KrigingModel::fit_sk(data, KernelFamily::SquaredExponential, FitConfig{4, 100, 1});
    CHECK(model.diagnostics().single_replication_warning);

    Rng rng(5);
    const Dataset multi = oracle::random_dataset(rng, 4, 1, 3);
    const auto model2 =
        KrigingModel::fit_sk(multi, KernelFamily::SquaredExponential, FitConfig{4, 100, 1});
    CHECK_FALSE(model2.diagnostics().single_replication_warning);
}

TEST_CASE("fit rejects too-small or invalid datasets") {
    Dataset one;
    one.add(vec1(0.5), {1.0});
    CHECK_THROWS_AS(KrigingModel::fit_ok(one, KernelFamily::SquaredExponential, FitConfig{}),
                    std::invalid_argument);
    Dataset ok = grid_1d({0.2, 0.8}, {1.0, 2.0});
    const auto model =
        KrigingModel::fit_ok(ok, KernelFamily::SquaredExponential, FitConfig{4, 100, 0});
    CHECK_THROWS_AS(model.predict(Vector::Zero(2)), std::invalid_argument);
}
