#include "lineshape/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "lineshape/signal_model.hpp"
#include "lineshape/spectrum_test.hpp"
#include "internal.hpp"

namespace lineshape {

using detail::ProfiledCost;
using detail::angdist;
using detail::golden_min;

namespace {

std::vector<double> log_grid(double lo, double hi, int count) {
    std::vector<double> g{0.0};
    const double step = std::log(hi / lo) / std::max(1, count - 2);
    for (int i = 0; i < count - 1; ++i) g.push_back(lo * std::exp(step * i));
    return g;
}

// Padded periodogram via a per-sample phase recurrence; the coarse peak
// picker only needs a few digits.
std::vector<double> padded_periodogram(const SignalRecord& y, int pad) {
    const std::size_t n = y.samples.size();
    const std::size_t m = n * pad;
    std::vector<cplx> acc(m, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        const cplx w = std::polar(1.0, -2.0 * M_PI * y.grid.times[i] / static_cast<double>(m));
        cplx z{1.0, 0.0};
        for (std::size_t j = 0; j < m; ++j) {
            acc[j] += y.samples[i] * z;
            z *= w;
        }
    }
    std::vector<double> per(m);
    for (std::size_t j = 0; j < m; ++j) per[j] = std::norm(acc[j]) / static_cast<double>(n);
    return per;
}

}  // namespace

void FitConfig::validate() const {
    if (max_components < 1) throw std::invalid_argument("max_components must be >= 1");
    if (omega_pad < 1) throw std::invalid_argument("omega_pad must be >= 1");
    if (beta_bins < 2 || gamma_bins < 2)
        throw std::invalid_argument("decay grids need at least two points");
    if (!(refine_tol > 0.0)) throw std::invalid_argument("refine_tol must be positive");
    if (refine_max_iters < 1) throw std::invalid_argument("refine_max_iters must be >= 1");
    if (cycle_passes < 0) throw std::invalid_argument("cycle_passes must be >= 0");
    if (neighborhood_width < 1) throw std::invalid_argument("neighborhood_width must be >= 1");
    if (!(alpha_stop > 0.0 && alpha_stop < 1.0))
        throw std::invalid_argument("alpha_stop must be in (0,1)");
    if (separation_width < 0) throw std::invalid_argument("separation_width must be >= 0");
}

std::pair<double, double> solve_amp_phase(const SignalRecord& signal, double omega,
                                          double beta, double gamma) {
    const auto& t = signal.grid.times;
    double bb = 0.0;
    cplx by{0.0, 0.0};
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double e = envelope(t[i], beta, gamma);
        bb += e * e;
        by += e * std::polar(1.0, -(omega * t[i])) * signal.samples[i];
    }
    if (bb < 1e-280)
        throw DegenerateEnvelope("template underflowed on the whole grid");
    const cplx c = by / bb;
    double phi = std::arg(c);
    if (phi < 0.0) phi += 2.0 * M_PI;
    return {std::abs(c), phi};
}

ComponentParams fit_single(const SignalRecord& signal, ModelClass cls, const FitConfig& config,
                           const SearchConstraints& constraints) {
    config.validate();
    const std::size_t n = signal.samples.size();
    const double span = signal.grid.span();
    const double bin = 2.0 * M_PI / static_cast<double>(n);

    const auto per = padded_periodogram(signal, config.omega_pad);
    const std::size_t m = per.size();
    const double dw = 2.0 * M_PI / static_cast<double>(m);

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return per[a] > per[b]; });

    auto admissible = [&](std::size_t j) {
        const double w = dw * static_cast<double>(j);
        for (double ex : constraints.excluded_omegas)
            if (angdist(w, ex) <= config.separation_width * bin) return false;
        if (constraints.omega_window &&
            angdist(w, constraints.omega_window->first) > constraints.omega_window->second)
            return false;
        return true;
    };

    std::vector<std::size_t> cands;
    for (std::size_t rank = 0; rank < std::min<std::size_t>(m, 200) && cands.size() < 3; ++rank) {
        const std::size_t j = order[rank];
        if (per[j] <= 0.0 || !admissible(j)) continue;
        bool separated = true;
        for (std::size_t jj : cands) {
            const std::size_t d = j > jj ? j - jj : jj - j;
            if (std::min(d, m - d) <= static_cast<std::size_t>(config.omega_pad))
                separated = false;
        }
        if (separated) cands.push_back(j);
    }
    if (cands.empty()) throw NoCandidate("no admissible peak in the periodogram");

    std::vector<double> beta_grid{0.0};
    if (cls != ModelClass::Cisoid)
        beta_grid = log_grid(1e-4 / span, 10.0 / span, config.beta_bins);
    if (constraints.beta_window) {
        beta_grid.clear();
        const double lo = std::max(0.0, constraints.beta_window->first);
        const double hi = constraints.beta_window->second;
        for (int i = 0; i < 12; ++i)
            beta_grid.push_back(lo + (hi - lo) * i / 11.0);
    }
    std::vector<double> gamma_grid{0.0};
    if (cls == ModelClass::Voigt)
        gamma_grid = log_grid(1e-4 / (span * span), 10.0 / (span * span), config.gamma_bins);

    ProfiledCost cost(signal);
    double best = std::numeric_limits<double>::infinity();
    double om = 0.0, bt = 0.0, gm = 0.0;
    for (std::size_t j : cands) {
        cost.set_omega(dw * static_cast<double>(j));
        for (double g : gamma_grid) {
            for (double b : beta_grid) {
                const double c = cost.eval_env(b, g);
                if (c < best - 1e-15) {
                    best = c;
                    om = dw * static_cast<double>(j);
                    bt = b;
                    gm = g;
                }
            }
        }
    }

    double wom = 2.0 * dw;
    double wb = bt > 0.0 ? bt : beta_grid.size() > 1 ? beta_grid[1] : 0.01;
    double wg = gm > 0.0 ? gm : gamma_grid.size() > 1 ? gamma_grid[1] : 0.0;
    const double tol_b = config.refine_tol * 1e-2;
    const double tol_g = config.refine_tol * 1e-4;

    for (int pass = 0; pass < config.refine_max_iters; ++pass) {
        cost.set_env(bt, gm);
        const double cur = cost.eval_omega(om);
        const double om_n =
            golden_min([&](double w) { return cost.eval_omega(w); }, om - wom, om + wom,
                       std::max(config.refine_tol, wom * 1e-3));
        if (cost.eval_omega(om_n) < cur) om = om_n;
        cost.set_omega(om);
        if (cls != ModelClass::Cisoid) {
            double lo = std::max(0.0, bt - wb);
            double hi = bt + wb;
            if (constraints.beta_window) {
                lo = std::max(lo, constraints.beta_window->first);
                hi = std::min(hi, constraints.beta_window->second);
                if (hi <= lo) hi = lo + 1e-12;
            }
            const double b_n = golden_min([&](double b) { return cost.eval_env(b, gm); }, lo, hi,
                                          std::max(tol_b, (hi - lo) * 1e-3));
            if (cost.eval_env(b_n, gm) < cost.eval_env(bt, gm)) bt = b_n;
        }
        if (cls == ModelClass::Voigt) {
            const double lo = std::max(0.0, gm - wg);
            const double hi = gm + wg;
            const double g_n = golden_min([&](double g) { return cost.eval_env(bt, g); }, lo, hi,
                                          std::max(tol_g, (hi - lo) * 1e-3));
            if (cost.eval_env(bt, g_n) < cost.eval_env(bt, gm)) gm = g_n;
        }
        wom *= 0.55;
        wb *= 0.55;
        wg *= 0.55;
        if (wom < config.refine_tol && (cls == ModelClass::Cisoid || wb < tol_b) &&
            (cls != ModelClass::Voigt || wg < tol_g))
            break;
    }

    const auto [r, phi] = solve_amp_phase(signal, om, bt, gm);
    ComponentParams out;
    out.r = r;
    out.phi = phi;
    out.omega = om < 0.0 ? om + 2.0 * M_PI : std::fmod(om, 2.0 * M_PI);
    out.beta = cls == ModelClass::Cisoid ? 0.0 : bt;
    out.gamma = cls == ModelClass::Voigt ? gm : 0.0;
    out.cls = cls;
    return out;
}

namespace {

void subtract(SignalRecord& res, const ComponentParams& psi) {
    for (std::size_t i = 0; i < res.samples.size(); ++i)
        res.samples[i] -= component_value(res.grid.times[i], psi);
}

void add_back(SignalRecord& res, const ComponentParams& psi) {
    for (std::size_t i = 0; i < res.samples.size(); ++i)
        res.samples[i] += component_value(res.grid.times[i], psi);
}

double energy(const SignalRecord& s) {
    double e = 0.0;
    for (const auto& v : s.samples) e += std::norm(v);
    return e;
}

}  // namespace

FitResult fit_multi(const SignalRecord& signal, ModelClass cls, const FitConfig& config,
                    const std::vector<double>& frozen_omegas,
                    const std::vector<SearchConstraints>& seeds) {
    config.validate();
    const std::size_t n = signal.samples.size();
    const double bin = 2.0 * M_PI / static_cast<double>(n);
    SignalRecord res = signal;
    std::vector<ComponentParams> comps;
    const double e0 = energy(signal);

    for (const auto& seed : seeds) {
        ComponentParams c = fit_single(res, cls, config, seed);
        if (c.r <= 0.0) continue;
        comps.push_back(c);
        subtract(res, c);
    }

    while (static_cast<int>(comps.size()) < config.max_components) {
        if (energy(res) <= 1e-18 * std::max(e0, 1e-300)) break;
        std::vector<double> known = frozen_omegas;
        for (const auto& c : comps) known.push_back(c.omega);
        const auto det = detect_component(periodogram(res), known, config.neighborhood_width,
                                          config.alpha_stop, config.separation_width);
        if (!det.found) break;
        SearchConstraints sc;
        sc.excluded_omegas = known;
        ComponentParams c;
        try {
            c = fit_single(res, cls, config, sc);
        } catch (const NoCandidate&) {
            break;
        }
        if (c.r <= 0.0) break;
        comps.push_back(c);
        subtract(res, c);
    }

    for (int pass = 0; pass < config.cycle_passes; ++pass) {
        for (auto& comp : comps) {
            add_back(res, comp);
            SearchConstraints sc;
            sc.omega_window = {comp.omega, 2.0 * bin};
            ComponentParams refit = fit_single(res, cls, config, sc);
            // keep the refit only when it actually lowers the cost
            ProfiledCost cost(res);
            if (cost.eval(refit.omega, refit.beta, refit.gamma) <
                cost.eval(comp.omega, comp.beta, comp.gamma))
                comp = refit;
            subtract(res, comp);
        }
    }

    std::sort(comps.begin(), comps.end(),
              [](const ComponentParams& a, const ComponentParams& b) { return a.r > b.r; });
    FitResult out;
    out.components = comps;
    out.residual = res;
    out.residual.noise_variance = signal.noise_variance;
    out.cost = energy(res);
    return out;
}

}  // namespace lineshape
