#include "lineshape/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "lineshape/signal_model.hpp"
#include "internal.hpp"

namespace lineshape {

namespace {

struct Staged {
    ComponentParams params;
    std::vector<WhitenessVerdict> history;
};

SignalRecord residual_of(const SignalRecord& signal,
                         const std::vector<ComponentParams>& comps) {
    SignalRecord res = signal;
    const auto model = reconstruct(comps, signal.grid);
    for (std::size_t i = 0; i < res.samples.size(); ++i) res.samples[i] -= model[i];
    return res;
}

// Cyclic local refinement of all components in their final classes; each one
// is refit against the signal minus the others. Windows start at two DFT
// bins in omega and half the current value in the decay parameters.
void polish(const SignalRecord& signal, std::vector<Staged>& comps, int passes) {
    const double bin = 2.0 * M_PI / static_cast<double>(signal.samples.size());
    const double span = signal.grid.span();
    for (int pass = 0; pass < passes; ++pass) {
        for (std::size_t i = 0; i < comps.size(); ++i) {
            std::vector<ComponentParams> others;
            for (std::size_t j = 0; j < comps.size(); ++j)
                if (j != i) others.push_back(comps[j].params);
            const SignalRecord target = residual_of(signal, others);
            detail::ProfiledCost cost(target);

            ComponentParams& c = comps[i].params;
            double om = c.omega, bt = c.beta, gm = c.gamma;
            double wom = 2.0 * bin;
            double wb = std::max(0.5 * bt, 1e-3 / span);
            double wg = std::max(0.5 * gm, 1e-3 / (span * span));
            for (int it = 0; it < 24; ++it) {
                cost.set_env(bt, gm);
                const double om_n = detail::golden_min(
                    [&](double w) { return cost.eval_omega(w); }, om - wom, om + wom,
                    std::max(1e-12, wom * 1e-3));
                if (cost.eval_omega(om_n) < cost.eval_omega(om)) om = om_n;
                cost.set_omega(om);
                if (c.cls != ModelClass::Cisoid) {
                    const double b_n = detail::golden_min(
                        [&](double b) { return cost.eval_env(b, gm); }, std::max(0.0, bt - wb),
                        bt + wb, std::max(1e-14, wb * 1e-3));
                    if (cost.eval_env(b_n, gm) < cost.eval_env(bt, gm)) bt = b_n;
                }
                if (c.cls == ModelClass::Voigt) {
                    const double g_n = detail::golden_min(
                        [&](double g) { return cost.eval_env(bt, g); }, std::max(0.0, gm - wg),
                        gm + wg, std::max(1e-16, wg * 1e-3));
                    if (cost.eval_env(bt, g_n) < cost.eval_env(bt, gm)) gm = g_n;
                }
                wom *= 0.55;
                wb *= 0.55;
                wg *= 0.55;
            }
            const auto [r, phi] = solve_amp_phase(target, om, bt, gm);
            c.r = r;
            c.phi = phi;
            c.omega = om < 0.0 ? om + 2.0 * M_PI : std::fmod(om, 2.0 * M_PI);
            c.beta = bt;
            c.gamma = gm;
        }
    }
}

}  // namespace

void PipelineConfig::validate() const {
    fit.validate();
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
    if (polish_passes < 0) throw std::invalid_argument("polish_passes must be >= 0");
    if (classify.exclusion_width < 0 || classify.ring_width < 1 || classify.peak_half_width < 0)
        throw std::invalid_argument("bad classify window widths");
}

double estimate_noise_variance(const SignalRecord& residual,
                               const std::vector<NeighborhoodSet>& neighborhoods) {
    const Periodogram per = periodogram(residual);
    std::vector<bool> covered(per.n, false);
    covered[0] = true;
    for (const auto& nb : neighborhoods)
        for (int k : nb.indices) covered[k] = true;
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < per.n; ++k) {
        if (covered[k]) continue;
        acc += per.values[k];
        ++count;
    }
    if (count == 0) throw EmptyComplement("neighborhoods cover every bin");
    return acc / static_cast<double>(count);
}

PipelineReport run_pipeline(const SignalRecord& signal, const PipelineConfig& config) {
    config.validate();
    signal.grid.validate();
    const std::size_t n = signal.samples.size();
    if (signal.grid.size() != n)
        throw std::invalid_argument("signal and grid lengths differ");
    const int W = config.fit.neighborhood_width;
    const double bin = 2.0 * M_PI / static_cast<double>(n);
    const double span = signal.grid.span();

    PipelineReport report;
    report.steps_executed = 1;

    std::vector<Staged> frozen;

    FitResult stage1 = fit_multi(signal, ModelClass::Cisoid, config.fit);
    report.stage1_components = stage1.components;

    std::vector<ComponentParams> pending = stage1.components;
    SignalRecord work_residual = stage1.residual;

    if (!pending.empty()) {
        std::vector<double> omegas;
        for (const auto& c : pending) omegas.push_back(c.omega);
        const auto verdicts =
            classify_residual(work_residual, omegas, W, config.alpha, config.classify);
        std::vector<ComponentParams> insufficient;
        for (std::size_t i = 0; i < pending.size(); ++i) {
            if (verdicts[i].sufficient)
                frozen.push_back({pending[i], {verdicts[i]}});
            else
                insufficient.push_back(pending[i]);
        }

        if (!insufficient.empty()) {
            report.steps_executed = 3;
            SignalRecord work = work_residual;
            for (const auto& c : insufficient)
                for (std::size_t i = 0; i < n; ++i)
                    work.samples[i] += component_value(work.grid.times[i], c);

            std::vector<double> frozen_omegas;
            for (const auto& f : frozen) frozen_omegas.push_back(f.params.omega);
            FitResult stage3 =
                fit_multi(work, ModelClass::Lorentzian, config.fit, frozen_omegas);
            report.stage3_components = stage3.components;
            work_residual = stage3.residual;

            std::vector<double> all_omegas;
            for (const auto& c : stage3.components) all_omegas.push_back(c.omega);
            all_omegas.insert(all_omegas.end(), frozen_omegas.begin(), frozen_omegas.end());
            std::vector<ComponentParams> insufficient3;
            if (!stage3.components.empty()) {
                const auto verdicts3 = classify_residual(work_residual, all_omegas, W,
                                                         config.alpha, config.classify);
                for (std::size_t i = 0; i < stage3.components.size(); ++i) {
                    if (verdicts3[i].sufficient)
                        frozen.push_back({stage3.components[i], {verdicts3[i]}});
                    else
                        insufficient3.push_back(stage3.components[i]);
                }
            }

            if (!insufficient3.empty()) {
                report.steps_executed = 5;
                SignalRecord work5 = work_residual;
                for (const auto& c : insufficient3)
                    for (std::size_t i = 0; i < n; ++i)
                        work5.samples[i] += component_value(work5.grid.times[i], c);

                // The earlier stage's decay estimate overshoots by at most
                // gamma (t_N + t_{N-1}), which bounds the beta search here.
                const double gamma_max = 10.0 / (span * span);
                const double overshoot =
                    gamma_max * (signal.grid.times[n - 1] + signal.grid.times[n - 2]);
                std::vector<SearchConstraints> seeds;
                for (const auto& c : insufficient3) {
                    SearchConstraints sc;
                    sc.omega_window = {c.omega, 3.0 * bin};
                    sc.beta_window = {std::max(0.0, c.beta - overshoot), c.beta};
                    seeds.push_back(sc);
                }
                frozen_omegas.clear();
                for (const auto& f : frozen) frozen_omegas.push_back(f.params.omega);
                FitResult stage5 =
                    fit_multi(work5, ModelClass::Voigt, config.fit, frozen_omegas, seeds);
                for (const auto& c : stage5.components) frozen.push_back({c, {}});
                work_residual = stage5.residual;
            }
        }
    }

    polish(signal, frozen, config.polish_passes);

    std::sort(frozen.begin(), frozen.end(),
              [](const Staged& a, const Staged& b) { return a.params.r > b.params.r; });

    std::vector<ComponentParams> final_params;
    for (const auto& f : frozen) final_params.push_back(f.params);
    report.residual = residual_of(signal, final_params);

    std::vector<NeighborhoodSet> neighborhoods;
    for (const auto& f : frozen)
        neighborhoods.push_back(neighborhood(f.params.omega, W, n));
    report.noise_variance_estimate = estimate_noise_variance(report.residual, neighborhoods);

    if (!frozen.empty()) {
        // informational final check on the polished residual
        std::vector<double> omegas;
        for (const auto& f : frozen) omegas.push_back(f.params.omega);
        const auto final_verdicts =
            classify_residual(report.residual, omegas, W, config.alpha, config.classify);
        for (std::size_t i = 0; i < frozen.size(); ++i)
            frozen[i].history.push_back(final_verdicts[i]);
    }

    for (auto& f : frozen) {
        ClassifiedComponent cc;
        cc.params = f.params;
        cc.verdict_history = std::move(f.history);
        cc.final_class = f.params.cls;
        report.components.push_back(std::move(cc));
    }
    return report;
}

}  // namespace lineshape
