#pragma once

#include <vector>

#include "lineshape/types.hpp"

namespace lineshape {

struct Periodogram {
    std::vector<double> values;  // Phi(omega_k) at omega_k = 2 pi k / n
    std::size_t n = 0;
};

struct NeighborhoodSet {
    double center_omega = 0.0;
    std::vector<int> indices;
    int half_width = 0;
};

struct WhitenessVerdict {
    double xi = 0.0;
    int d1 = 0;  // F numerator dof actually used
    int d2 = 0;
    double p_value = 1.0;
    bool sufficient = true;
    double alpha_level = 0.0;
};

struct XiStat {
    double xi = 0.0;
    int i_count = 0;  // |I| bins in the target neighborhood
    int c_count = 0;  // |C| bins in the shared complement
};

// Phi(omega_k) = |sum_n y_n exp(-i omega_k t_n)|^2 / N at the N Fourier bins.
Periodogram periodogram(const SignalRecord& signal);

// Bins within half_width of round(omega n / 2pi), modulo n.
NeighborhoodSet neighborhood(double omega, int half_width, std::size_t n);

// Ratio of the mean periodogram over the target neighborhood to the mean over
// the complement of the union of all neighborhoods. Bin 0 is excluded from
// the complement (it holds any DC offset, not noise).
XiStat xi_statistic(const Periodogram& per, const std::vector<NeighborhoodSet>& neighborhoods,
                    const NeighborhoodSet& target);

// F distribution via the regularized incomplete beta function.
double f_cdf(double x, double d1, double d2);
double f_upper_quantile(double alpha, double d1, double d2);

// One-sided upper-tail test of xi against F(d1, d2).
//
// Callers pass d1 = 2|I|, d2 = 2|C|: each periodogram bin of complex white
// noise is exponential, i.e. chi-squared with two degrees of freedom, so a
// ratio of bin means is F-distributed with twice the bin counts. The
// F(|I|, |C|) parameterization under-rejects by about 4x at alpha = 0.05;
// see the distribution tests.
WhitenessVerdict f_quantile_test(double xi, int d1, int d2, double alpha);

struct ClassifyOptions {
    int exclusion_width = 5;   // drop bins this close to another component from I
    int ring_width = 10;       // local background ring, half_width+1 .. half_width+ring_width
    int peak_half_width = 1;   // narrow window for the local prominence test
};

// Per-component sufficiency verdicts on a fitted model's residual.
//
// Two tests must both reject to flag a component: the global ratio against
// the shared complement, and a local one against a median-estimated
// background ring. Mismatch energy of neighboring components leaks across
// the whole spectrum, so either test alone misfires: the global one flags
// well-modeled components sitting in a raised complement, the local one is
// blind when the ring is raised too.
std::vector<WhitenessVerdict> classify_residual(const SignalRecord& residual,
                                                const std::vector<double>& omegas,
                                                int half_width, double alpha,
                                                const ClassifyOptions& opts = {});

struct DetectionResult {
    bool found = false;
    double xi_global = 0.0;
    double crit_global = 0.0;
    double xi_local = 0.0;
    double crit_local = 0.0;
    int peak_bin = -1;
};

// Is there another component in this residual spectrum? The strongest bin
// outside the known components' neighborhoods is tested like a candidate
// component, Bonferroni-corrected for the number of disjoint windows that
// could have produced it.
DetectionResult detect_component(const Periodogram& per, const std::vector<double>& known_omegas,
                                 int half_width, double alpha_stop, int separation_width);

}  // namespace lineshape
