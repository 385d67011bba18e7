#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lineshape/pipeline.hpp"
#include "lineshape/types.hpp"

namespace lineshape {

struct ComponentSpec {
    ComponentParams params;
    bool random_phase = false;  // draw phi uniformly per repetition
};

struct ExperimentConfig {
    std::size_t n = 200;
    std::vector<double> custom_times;  // overrides the unit grid when non-empty
    std::vector<ComponentSpec> components;
    std::vector<double> noise_variances{1e-4, 1e-3, 1e-2};
    int repetitions = 200;
    std::uint64_t seed = 1;
    FitConfig fit;
    double alpha = 0.01;
    ClassifyOptions classify;

    TimeGrid grid() const;
    void validate() const;
};

// JSON on disk; throws std::invalid_argument with the offending key on bad input.
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);

// CSV with a metadata header: "# key value" lines, then index,t,re,im rows.
void save_signal_csv(const std::string& path, const SignalRecord& signal,
                     std::uint64_t seed);
SignalRecord load_signal_csv(const std::string& path);

void write_report(std::ostream& out, const PipelineReport& report);

}  // namespace lineshape
