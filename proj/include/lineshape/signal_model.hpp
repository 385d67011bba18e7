#pragma once

#include <cstdint>
#include <vector>

#include "lineshape/types.hpp"

namespace lineshape {

// Decay envelope exp(-beta t - gamma t^2).
double envelope(double t, double beta, double gamma);

// r * envelope * exp(i(phi + omega t)).
cplx component_value(double t, const ComponentParams& psi);

// Sum of components plus circularly symmetric complex white Gaussian noise
// of total variance sigma2 (sigma2/2 per real and imaginary part).
SignalRecord synthesize(const std::vector<ComponentParams>& components,
                        const TimeGrid& grid, double sigma2, std::uint64_t seed);

// Residual sum of squares of the model against the signal.
double nls_cost(const SignalRecord& signal, const std::vector<ComponentParams>& components);

// Model reconstruction on the signal's grid.
std::vector<cplx> reconstruct(const std::vector<ComponentParams>& components,
                              const TimeGrid& grid);

}  // namespace lineshape
