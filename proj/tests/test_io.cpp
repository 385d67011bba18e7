#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "lineshape/io.hpp"
#include "lineshape/pipeline.hpp"
#include "lineshape/signal_model.hpp"

using namespace lineshape;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("lineshape_io_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

ExperimentConfig sample_config() {
    ExperimentConfig cfg;
    cfg.n = 200;
    cfg.components = {
        {{1.0, 0.25, 0.7, 0.0, 0.0, ModelClass::Cisoid}, false},
        {{1.0, 0.0, 0.5, 1.0 / 200.0, 0.0, ModelClass::Lorentzian}, true},
        {{1.0, 0.0, 1.5, 1.0 / 150.0, 1e-5, ModelClass::Voigt}, true},
    };
    cfg.noise_variances = {1e-4, 1e-3, 1e-2};
    cfg.repetitions = 17;
    cfg.seed = 42;
    cfg.fit.beta_bins = 20;
    cfg.alpha = 0.02;
    cfg.classify.ring_width = 9;
    return cfg;
}

}  // namespace

TEST_CASE("config survives a JSON round trip losslessly") {
    ExperimentConfig cfg = sample_config();
    std::string text = config_to_json(cfg);
    ExperimentConfig back = config_from_json(text);

    CHECK(back.n == cfg.n);
    REQUIRE(back.components.size() == cfg.components.size());
    for (size_t i = 0; i < cfg.components.size(); ++i) {
        CHECK(back.components[i].params.r == cfg.components[i].params.r);
        CHECK(back.components[i].params.phi == cfg.components[i].params.phi);
        CHECK(back.components[i].params.omega == cfg.components[i].params.omega);
        CHECK(back.components[i].params.beta == cfg.components[i].params.beta);
        CHECK(back.components[i].params.gamma == cfg.components[i].params.gamma);
        CHECK(back.components[i].params.cls == cfg.components[i].params.cls);
        CHECK(back.components[i].random_phase == cfg.components[i].random_phase);
    }
    CHECK(back.noise_variances == cfg.noise_variances);
    CHECK(back.repetitions == cfg.repetitions);
    CHECK(back.seed == cfg.seed);
    CHECK(back.fit.beta_bins == cfg.fit.beta_bins);
    CHECK(back.alpha == cfg.alpha);
    CHECK(back.classify.ring_width == cfg.classify.ring_width);

    // a second round trip is exactly stable
    CHECK(config_to_json(back) == text);
}

TEST_CASE("load_config reads a file and validates") {
    TempDir tmp;
    {
        std::ofstream out(tmp.file("cfg.json"));
        out << config_to_json(sample_config());
    }
    ExperimentConfig cfg = load_config(tmp.file("cfg.json"));
    CHECK(cfg.repetitions == 17);
    CHECK(cfg.components.size() == 3);
    CHECK_THROWS(load_config(tmp.file("missing.json")));
}

TEST_CASE("bad configs are rejected with the offending key named") {
    CHECK_THROWS_AS(config_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(R"({"grid": {"n": 1}})"), std::invalid_argument);
    CHECK_THROWS_AS(
        config_from_json(R"({"grid": {"n": 64}, "repetitions": 0})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        config_from_json(
            R"({"grid": {"n": 64}, "components": [{"class": "waveletish", "r": 1.0, "omega": 0.5}]})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        config_from_json(
            R"({"grid": {"n": 64}, "components": [{"class": "cisoid", "r": -2.0, "omega": 0.5}]})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        config_from_json(R"({"grid": {"n": 64}, "noise_variances": [-0.5]})"),
        std::invalid_argument);

    try {
        config_from_json(R"({"grid": {"n": 64}, "noise_variances": [-0.5]})");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("noise variance") != std::string::npos);
    }
}

TEST_CASE("custom time grids round trip") {
    ExperimentConfig cfg;
    cfg.custom_times = {0.0, 0.5, 1.5, 3.0, 6.0};
    cfg.components = {{{1.0, 0.0, 0.3, 0.0, 0.0, ModelClass::Cisoid}, false}};
    cfg.noise_variances = {1e-3};
    ExperimentConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.custom_times == cfg.custom_times);
    CHECK(back.grid().times == cfg.custom_times);
}

TEST_CASE("signal CSV round trip preserves samples bit for bit") {
    TempDir tmp;
    TimeGrid grid = TimeGrid::unit(64);
    std::vector<ComponentParams> comps{{1.0, 0.7, 1.3, 1e-2, 0.0, ModelClass::Lorentzian}};
    SignalRecord rec = synthesize(comps, grid, 1e-3, 1234);
    save_signal_csv(tmp.file("sig.csv"), rec, 1234);
    SignalRecord back = load_signal_csv(tmp.file("sig.csv"));
    REQUIRE(back.samples.size() == rec.samples.size());
    for (size_t n = 0; n < rec.samples.size(); ++n) {
        CHECK(back.samples[n].real() == rec.samples[n].real());
        CHECK(back.samples[n].imag() == rec.samples[n].imag());
        CHECK(back.grid.times[n] == rec.grid.times[n]);
    }
    REQUIRE(back.noise_variance.has_value());
    CHECK(*back.noise_variance == 1e-3);
}

TEST_CASE("malformed signal CSV reports the line number") {
    TempDir tmp;
    {
        std::ofstream out(tmp.file("bad.csv"));
        out << "# n 4\n0,0,1.0,2.0\n1,1,not_a_number,0.0\n";
    }
    try {
        load_signal_csv(tmp.file("bad.csv"));
        FAIL("expected a parse failure");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("write_report emits the fitted components and verdicts") {
    TimeGrid grid = TimeGrid::unit(128);
    std::vector<ComponentParams> truth{
        {1.0, 0.4, 2 * 3.14159 * 20 / 128, 0.0, 0.0, ModelClass::Cisoid}};
    SignalRecord rec = synthesize(truth, grid, 1e-4, 5);
    PipelineReport rep = run_pipeline(rec, {});
    std::ostringstream out;
    write_report(out, rep);
    std::string text = out.str();
    CHECK(text.find("steps_executed") != std::string::npos);
    CHECK(text.find("cisoid") != std::string::npos);
    CHECK(text.find("noise_variance_estimate") != std::string::npos);
    CHECK(text.find("omega") != std::string::npos);
    CHECK(text.find("sufficient") != std::string::npos);
}

TEST_CASE("experiment validation rejects inconsistent settings") {
    ExperimentConfig cfg = sample_config();
    cfg.noise_variances.clear();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = sample_config();
    cfg.repetitions = -3;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = sample_config();
    cfg.custom_times = {3.0, 1.0};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    CHECK_NOTHROW(sample_config().validate());
}
