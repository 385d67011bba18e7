#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lineshape/types.hpp"

namespace lineshape {

struct FitConfig {
    int max_components = 8;
    int omega_pad = 8;        // zero-padding factor for the coarse frequency scan
    int beta_bins = 25;       // log grid size including the 0 endpoint
    int gamma_bins = 25;
    double refine_tol = 1e-11;
    int refine_max_iters = 30;  // shrinking-window passes per component fit
    int cycle_passes = 2;       // rounds of cyclic re-refinement in fit_multi
    int neighborhood_width = 3;
    double alpha_stop = 0.01;
    int separation_width = 3;  // candidate peaks must clear existing components by this many bins

    void validate() const;
};

struct FitResult {
    std::vector<ComponentParams> components;
    SignalRecord residual;
    double cost = 0.0;
};

// Constraints used when a caller already knows roughly where a component is.
struct SearchConstraints {
    std::vector<double> excluded_omegas;  // keep coarse peaks away from these
    std::optional<std::pair<double, double>> omega_window;  // center, half width
    std::optional<std::pair<double, double>> beta_window;   // lo, hi
};

// Least-squares amplitude and phase against the template with the given
// nonlinear parameters. Throws DegenerateEnvelope when the template has
// underflowed to numerical zero on the grid.
std::pair<double, double> solve_amp_phase(const SignalRecord& signal, double omega,
                                          double beta, double gamma);

// One component: coarse search (padded-periodogram peaks for omega, log grids
// for the active decay parameters) followed by coordinate-wise golden-section
// refinement with the amplitude solved exactly at every probe.
ComponentParams fit_single(const SignalRecord& signal, ModelClass cls, const FitConfig& config,
                           const SearchConstraints& constraints = {});

// Greedy deflation: fit, subtract, repeat while detect_component still finds
// structure, then re-refine each component cyclically against the residual of
// the others. frozen_omegas mark spectral regions owned by components fitted
// elsewhere; seeds warm-start known components before detection begins.
FitResult fit_multi(const SignalRecord& signal, ModelClass cls, const FitConfig& config,
                    const std::vector<double>& frozen_omegas = {},
                    const std::vector<SearchConstraints>& seeds = {});

}  // namespace lineshape
