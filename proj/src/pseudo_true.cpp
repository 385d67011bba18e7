#include "lineshape/pseudo_true.hpp"

#include <cmath>
#include <vector>

#include "lineshape/signal_model.hpp"

namespace lineshape {

double expected_fit_cost(const ComponentParams& theta, const ComponentParams& psi,
                         const TimeGrid& grid) {
    if (theta.cls == ModelClass::Voigt)
        throw std::invalid_argument("expected_fit_cost templates are cisoid or lorentzian");
    double acc = 0.0;
    for (double t : grid.times)
        acc += std::norm(component_value(t, psi) - component_value(t, theta));
    return acc;
}

PseudoTrueResult pseudo_true_cisoid(const ComponentParams& psi, const TimeGrid& grid) {
    double mean_env = 0.0;
    for (double t : grid.times) mean_env += envelope(t, psi.beta, psi.gamma);
    mean_env /= static_cast<double>(grid.size());
    PseudoTrueResult res;
    res.r0 = psi.r * mean_env;
    res.phi0 = psi.phi;
    res.omega0 = psi.omega;
    return res;
}

double psi_sign_function(double beta0, const ComponentParams& psi, const TimeGrid& grid) {
    const std::size_t n = grid.size();
    // a_i = true envelope at t_i, b_i = exp(-beta0 t_i); the pairwise
    // differences keep the sign exact where the expanded product-of-sums
    // form would cancel catastrophically.
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = envelope(grid.times[i], psi.beta, psi.gamma);
        b[i] = std::exp(-beta0 * grid.times[i]);
    }
    double acc = 0.0;
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i < m; ++i) {
            const double dt = grid.times[m] - grid.times[i];
            acc += dt * b[m] * b[i] * (a[i] * b[m] - a[m] * b[i]);
        }
    }
    return acc;
}

PseudoTrueResult pseudo_true_lorentzian(const ComponentParams& psi, const TimeGrid& grid,
                                        double tol) {
    grid.validate();
    const std::size_t n = grid.size();
    PseudoTrueResult res;
    res.phi0 = psi.phi;
    res.omega0 = psi.omega;

    const double t_last = grid.times[n - 1];
    const double t_prev = grid.times[n - 2];
    const double width = psi.gamma * (t_last + t_prev);
    res.bracket = std::make_pair(psi.beta, psi.beta + width);

    double beta0;
    if (psi.gamma == 0.0) {
        beta0 = psi.beta;
    } else {
        double lo = psi.beta;
        double hi = psi.beta + width;
        if (!(psi_sign_function(lo, psi, grid) > 0.0))
            throw BracketFailure("sign function not positive at the lower bracket end");
        if (psi_sign_function(hi, psi, grid) > 0.0)
            throw BracketFailure("sign function still positive at the upper bracket end");
        // An endpoint built from the next pair of instants down often also
        // brackets the root; use it when it does, it only shrinks the search.
        if (n >= 3) {
            const double hi2 = psi.beta + psi.gamma * (t_prev + grid.times[n - 3]);
            if (hi2 > lo && hi2 < hi && psi_sign_function(hi2, psi, grid) <= 0.0) hi = hi2;
        }
        if (tol <= 0.0) tol = 1e-12 * (1.0 + width);
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (psi_sign_function(mid, psi, grid) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        beta0 = 0.5 * (lo + hi);
    }
    res.beta0 = beta0;

    double num = 0.0, den = 0.0;
    for (double t : grid.times) {
        const double e0 = std::exp(-beta0 * t);
        num += envelope(t, psi.beta, psi.gamma) * e0;
        den += e0 * e0;
    }
    res.r0 = psi.r * num / den;
    return res;
}

}  // namespace lineshape
