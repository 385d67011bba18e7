#pragma once

#include <optional>
#include <utility>

#include "lineshape/types.hpp"

namespace lineshape {

struct PseudoTrueResult {
    double r0 = 0.0;
    double phi0 = 0.0;
    double omega0 = 0.0;
    std::optional<double> beta0;
    std::optional<std::pair<double, double>> bracket;  // (lo, hi], beta0 inside
};

// Noise-free template mismatch sum |mu(t; psi) - mu(t; theta)|^2 over the
// grid. For fixed noise variance this is the KL divergence between the two
// induced Gaussians up to an affine constant, so its minimizer over theta is
// the pseudo-true parameter.
double expected_fit_cost(const ComponentParams& theta, const ComponentParams& psi,
                         const TimeGrid& grid);

// Best undamped description of a damped component: r0 = (r/N) sum envelope,
// omega and phi carry over unchanged.
PseudoTrueResult pseudo_true_cisoid(const ComponentParams& psi, const TimeGrid& grid);

// Sign agrees with the derivative of the mismatch objective in beta0.
// Pairwise form: sum_{m>n} (t_m - t_n) e^{-beta0(t_m+t_n)}
//   (e^{-beta t_n - gamma t_n^2 - beta0 t_m} - e^{-beta t_m - gamma t_m^2 - beta0 t_n}),
// kept as per-pair differences so the sign survives floating point.
double psi_sign_function(double beta0, const ComponentParams& psi, const TimeGrid& grid);

// Best purely exponential description of a quadratically damped component.
// gamma = 0 returns beta0 = beta exactly; otherwise bisection on
// psi_sign_function inside (beta, beta + gamma(t_N + t_{N-1})]. When the
// endpoint built from the second and third largest instants also brackets a
// sign change the tighter interval speeds the bisection; the reported
// bracket stays the wider, guaranteed one.
PseudoTrueResult pseudo_true_lorentzian(const ComponentParams& psi, const TimeGrid& grid,
                                        double tol = 0.0);

}  // namespace lineshape
