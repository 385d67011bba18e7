#pragma once

#include <vector>

#include "lineshape/estimation.hpp"
#include "lineshape/spectrum_test.hpp"
#include "lineshape/types.hpp"

namespace lineshape {

struct ClassifiedComponent {
    ComponentParams params;
    std::vector<WhitenessVerdict> verdict_history;
    ModelClass final_class = ModelClass::Cisoid;
};

struct PipelineReport {
    std::vector<ClassifiedComponent> components;
    SignalRecord residual;
    double noise_variance_estimate = 0.0;
    int steps_executed = 1;  // 1, 3 or 5
    // Snapshots of the mismatched stage fits, before escalation.
    std::vector<ComponentParams> stage1_components;
    std::vector<ComponentParams> stage3_components;
};

struct PipelineConfig {
    FitConfig fit;
    double alpha = 0.01;
    ClassifyOptions classify;
    int polish_passes = 3;

    void validate() const;
};

// Sequential escalation: fit everything as cisoids, test each component's
// residual neighborhood, refit the insufficient ones as Lorentzians, test
// again, refit the remaining ones as Voigts, then polish all survivors
// jointly in their final classes. Components judged sufficient are frozen
// with their parameters; insufficient ones have their reconstruction
// returned to the working residual so the next class refits that energy
// from scratch.
PipelineReport run_pipeline(const SignalRecord& signal, const PipelineConfig& config);

// Mean residual periodogram over the complement of the neighborhoods.
double estimate_noise_variance(const SignalRecord& residual,
                               const std::vector<NeighborhoodSet>& neighborhoods);

}  // namespace lineshape
