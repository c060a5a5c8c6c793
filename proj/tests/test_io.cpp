#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "krigopt/io.hpp"
#include "krigopt/rng.hpp"
#include "oracles.hpp"

using namespace krigopt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("doubles print in shortest round-trippable form") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-3.25) == "-3.25");
    Rng rng(13);
    for (int i = 0; i < 2000; ++i) {
        const double v = rng.normal() * std::pow(10.0, rng.uniform(-12.0, 12.0));
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("dataset CSV round trips ragged replication counts") {
    TempDir dir("krigopt_io_dataset");
    Dataset data;
    Vector x(2);
    x << 0.25, 0.75;
    data.add(x, {1.5, 2.25, -0.125});
    x << 0.6, 0.1;
    data.add(x, {3.0});
    x << 0.9, 0.4;
    data.add(x, {0.0, 7.5});

    const std::string path = (dir.path / "data.csv").string();
    write_dataset_csv(path, data);
    const Dataset back = read_dataset_csv(path);
    REQUIRE(back.num_points() == 3);
    CHECK((back.points - data.points).cwiseAbs().maxCoeff() == 0.0);
    for (std::size_t i = 0; i < 3; ++i) CHECK(back.outputs[i] == data.outputs[i]);

    CHECK_THROWS_AS(read_dataset_csv((dir.path / "missing.csv").string()), std::runtime_error);
}

TEST_CASE("points CSV reads a query list") {
    TempDir dir("krigopt_io_points");
    const std::string path = (dir.path / "q.csv").string();
    {
        std::ofstream out(path);
        out << "x1,x2\n0.5,0.25\n1,2\n";
    }
    const Matrix pts = read_points_csv(path);
    REQUIRE(pts.rows() == 2);
    CHECK(pts(0, 0) == 0.5);
    CHECK(pts(0, 1) == 0.25);
    CHECK(pts(1, 1) == 2.0);
}

TEST_CASE("key-value files round trip and skip comments") {
    TempDir dir("krigopt_io_kv");
    const std::string path = (dir.path / "cfg.txt").string();
    write_kv_file(path, {{"alpha", "1.5"}, {"name", "test run"}});
    {
        std::ofstream out(path, std::ios::app);
        out << "# trailing comment\nextra = 7\n";
    }
    const auto kv = read_kv_file(path);
    CHECK(kv.at("alpha") == "1.5");
    CHECK(kv.at("name") == "test run");
    CHECK(kv.at("extra") == "7");
    CHECK(kv.size() == 3);
}

TEST_CASE("model files rebuild an equivalent predictor") {
    TempDir dir("krigopt_io_model");
    Rng rng(23);
    const Dataset data = oracle::random_dataset(rng, 6, 2, 4);
    const auto model = KrigingModel::fit_sk(data, KernelFamily::Matern32, FitConfig{4, 150, 2});

    // dataset stored in problem units; the model file records the unit-box map
    const Vector lo = Vector::Zero(2);
    const Vector hi = Vector::Ones(2);
    const std::string data_path = (dir.path / "data.csv").string();
    const std::string model_path = (dir.path / "model.txt").string();
    write_dataset_csv(data_path, data);
    write_model_file(model_path, model, data_path, lo, hi);

    const LoadedModel loaded = read_model_file(model_path);
    CHECK(loaded.scale_lo == lo);
    CHECK(loaded.scale_hi == hi);
    CHECK(loaded.model.noise_mode() == NoiseMode::Stochastic);
    CHECK(loaded.model.kernel().family == KernelFamily::Matern32);
    CHECK(loaded.model.kernel().process_variance ==
          doctest::Approx(model.kernel().process_variance).epsilon(1e-12));
    for (int q = 0; q < 20; ++q) {
        Vector query(2);
        query << rng.uniform(), rng.uniform();
        const Prediction a = model.predict(query);
        const Prediction b = loaded.model.predict(query);
        CHECK(a.mean == doctest::Approx(b.mean).epsilon(1e-10));
        CHECK(a.mse == doctest::Approx(b.mse).epsilon(1e-10));
    }
}

TEST_CASE("history CSV round trips with and without the wall-time column") {
    TempDir dir("krigopt_io_history");
    RunHistory h;
    Rng rng(31);
    double incumbent = 1e18;
    for (int i = 0; i < 5; ++i) {
        IterationRecord r;
        r.iter = i < 3 ? 0 : i - 2;
        r.point = Vector(2);
        r.point << rng.uniform(1.0, 100.0), rng.uniform(1.0, 100.0);
        r.sample_mean = rng.normal() * 10.0;
        r.variance_of_mean = rng.uniform(0.0, 2.0);
        incumbent = std::min(incumbent, r.sample_mean);
        r.incumbent_best = incumbent;
        r.seconds = rng.uniform(0.0, 1.0);
        h.records.push_back(r);
    }

    for (bool seconds : {false, true}) {
        const std::string path =
            (dir.path / (seconds ? "with.csv" : "without.csv")).string();
        write_history_csv(path, h, 2, seconds);
        const RunHistory back = read_history_csv(path, 2);
        REQUIRE(back.records.size() == 5);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(back.records[i].iter == h.records[i].iter);
            CHECK((back.records[i].point - h.records[i].point).cwiseAbs().maxCoeff() == 0.0);
            CHECK(back.records[i].sample_mean == h.records[i].sample_mean);
            CHECK(back.records[i].variance_of_mean == h.records[i].variance_of_mean);
            CHECK(back.records[i].incumbent_best == h.records[i].incumbent_best);
        }
        const auto [point, value] = identify_best(back);
        CHECK(value == incumbent);
    }
}
