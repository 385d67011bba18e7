#pragma once

#include <cstddef>
#include <vector>

#include "lineshape/types.hpp"

namespace lineshape {

// Dense symmetric matrix over the stacked parameter vector
// (r, phi, omega, beta, gamma) per component, in component order.
struct FisherMatrix {
    std::size_t dim = 0;
    std::vector<double> values;  // row-major dim x dim

    double at(std::size_t i, std::size_t j) const { return values[i * dim + j]; }
};

// F[i][j] = (2/sigma2) Re sum_n conj(d mu/d theta_i) d mu/d theta_j with the
// analytic partials of the component template.
FisherMatrix fisher_information(const std::vector<ComponentParams>& components,
                                const TimeGrid& grid, double sigma2);

// True when the parameter participates in its component's model class:
// (r, phi, omega) always, beta for Lorentzian and Voigt, gamma for Voigt.
std::vector<bool> active_mask(const std::vector<ComponentParams>& components);

// Diagonal of the inverse of the active submatrix: variance lower bounds for
// the active parameters, in mask order. Throws SingularFisher when the
// submatrix conditioning exceeds 1e12.
std::vector<double> crlb_diag(const FisherMatrix& fisher, const std::vector<bool>& active);

}  // namespace lineshape
