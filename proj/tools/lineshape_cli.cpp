#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "lineshape/crlb.hpp"
#include "lineshape/estimation.hpp"
#include "lineshape/io.hpp"
#include "lineshape/pipeline.hpp"
#include "lineshape/pseudo_true.hpp"
#include "lineshape/rng.hpp"
#include "lineshape/signal_model.hpp"
#include "lineshape/spectrum_test.hpp"
#include "svg.hpp"

namespace {

using namespace lineshape;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

double wrap_signed(double d) {
    d = std::fmod(d + kPi, 2 * kPi);
    if (d < 0) d += 2 * kPi;
    return d - kPi;
}

double circ_dist(double a, double b) { return std::abs(wrap_signed(a - b)); }

// Frequency convention note: omegas are radian frequencies on [0, 2pi) over
// the unit grid; periodogram bin k sits at 2 pi k / N.

std::vector<ComponentParams> realize_components(const ExperimentConfig& cfg,
                                                std::uint64_t phase_seed) {
    Xoshiro256pp prng(phase_seed);
    std::vector<ComponentParams> out;
    out.reserve(cfg.components.size());
    for (const auto& spec : cfg.components) {
        ComponentParams c = spec.params;
        if (spec.random_phase) c.phi = 2 * kPi * prng.uniform();
        out.push_back(c);
    }
    return out;
}

PipelineConfig pipeline_config(const ExperimentConfig& cfg) {
    PipelineConfig pc;
    pc.fit = cfg.fit;
    pc.alpha = cfg.alpha;
    pc.classify = cfg.classify;
    return pc;
}

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha;
    std::optional<int> neighborhood_width;
};

ExperimentConfig load_with_overrides(const CommonOpts& common) {
    ExperimentConfig cfg =
        common.config_path.empty() ? ExperimentConfig{} : load_config(common.config_path);
    if (common.seed) cfg.seed = *common.seed;
    if (common.alpha) cfg.alpha = *common.alpha;
    if (common.neighborhood_width) cfg.fit.neighborhood_width = *common.neighborhood_width;
    cfg.validate();
    return cfg;
}

// Noise and phase streams for repetition `rep` at noise level `noise_idx`,
// derived so results do not depend on scheduling order.
std::uint64_t noise_seed(const ExperimentConfig& cfg, std::size_t noise_idx, int rep) {
    std::uint64_t s = static_cast<std::uint64_t>(noise_idx) * cfg.repetitions +
                      static_cast<std::uint64_t>(rep);
    return Xoshiro256pp::derive(cfg.seed, 2 * s);
}
std::uint64_t phase_seed(const ExperimentConfig& cfg, std::size_t noise_idx, int rep) {
    std::uint64_t s = static_cast<std::uint64_t>(noise_idx) * cfg.repetitions +
                      static_cast<std::uint64_t>(rep);
    return Xoshiro256pp::derive(cfg.seed, 2 * s + 1);
}

int cmd_simulate(const CommonOpts& common, const std::string& out_path, int sigma_index) {
    ExperimentConfig cfg = load_with_overrides(common);
    if (sigma_index < 0 || static_cast<std::size_t>(sigma_index) >= cfg.noise_variances.size())
        throw std::invalid_argument("sigma-index out of range");
    double sigma2 = cfg.noise_variances[static_cast<std::size_t>(sigma_index)];
    auto comps = realize_components(cfg, phase_seed(cfg, static_cast<std::size_t>(sigma_index), 0));
    SignalRecord rec = synthesize(comps, cfg.grid(), sigma2,
                                  noise_seed(cfg, static_cast<std::size_t>(sigma_index), 0));
    save_signal_csv(out_path, rec, cfg.seed);
    std::cout << "wrote " << rec.samples.size() << " samples to " << out_path
              << " (sigma2 = " << sigma2 << ")\n";
    return 0;
}

int cmd_estimate(const CommonOpts& common, const std::string& signal_path,
                 const std::string& out_path, const std::string& residual_path) {
    ExperimentConfig cfg = load_with_overrides(common);
    SignalRecord rec = load_signal_csv(signal_path);
    PipelineReport report = run_pipeline(rec, pipeline_config(cfg));
    if (out_path.empty()) {
        write_report(std::cout, report);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open report output: " + out_path);
        write_report(out, report);
        std::cout << "wrote report to " << out_path << "\n";
    }
    if (!residual_path.empty()) {
        save_signal_csv(residual_path, report.residual, cfg.seed);
        std::cout << "wrote residual to " << residual_path << "\n";
    }
    return 0;
}

struct RepOutcome {
    bool ok = false;
    std::string error;
    int k_hat = 0;
    bool all_correct = false;
    // per true component
    std::vector<bool> matched, class_ok;
    std::vector<double> omega_err, beta_err, gamma_err;  // final estimates
    std::vector<double> step1_omega_err, step3_beta_err;
};

RepOutcome analyze_rep(const SignalRecord& rec, const std::vector<ComponentParams>& truth,
                       const ExperimentConfig& cfg) {
    const double nd = static_cast<double>(rec.grid.size());
    const double match_tol = 3 * 2 * kPi / nd;
    RepOutcome out;
    const std::size_t kt = truth.size();
    out.matched.assign(kt, false);
    out.class_ok.assign(kt, false);
    out.omega_err.assign(kt, std::nan(""));
    out.beta_err.assign(kt, std::nan(""));
    out.gamma_err.assign(kt, std::nan(""));
    out.step1_omega_err.assign(kt, std::nan(""));
    out.step3_beta_err.assign(kt, std::nan(""));
    try {
        PipelineReport rep = run_pipeline(rec, pipeline_config(cfg));
        out.ok = true;
        out.k_hat = static_cast<int>(rep.components.size());
        for (std::size_t k = 0; k < kt; ++k) {
            const ClassifiedComponent* best = nullptr;
            double best_d = match_tol;
            for (const auto& c : rep.components) {
                double d = circ_dist(c.params.omega, truth[k].omega);
                if (d < best_d) {
                    best_d = d;
                    best = &c;
                }
            }
            if (!best) continue;
            out.matched[k] = true;
            out.class_ok[k] = best->final_class == truth[k].cls;
            out.omega_err[k] = wrap_signed(best->params.omega - truth[k].omega);
            out.beta_err[k] = best->params.beta - truth[k].beta;
            out.gamma_err[k] = best->params.gamma - truth[k].gamma;
        }
        out.all_correct = out.k_hat == static_cast<int>(kt);
        for (std::size_t k = 0; k < kt; ++k)
            out.all_correct = out.all_correct && out.matched[k] && out.class_ok[k];
        for (std::size_t k = 0; k < kt; ++k) {
            double best_d = match_tol;
            for (const auto& c : rep.stage1_components) {
                double d = circ_dist(c.omega, truth[k].omega);
                if (d < best_d) {
                    best_d = d;
                    out.step1_omega_err[k] = wrap_signed(c.omega - truth[k].omega);
                }
            }
            if (truth[k].cls == ModelClass::Cisoid) continue;
            best_d = match_tol;
            for (const auto& c : rep.stage3_components) {
                double d = circ_dist(c.omega, truth[k].omega);
                if (d < best_d) {
                    best_d = d;
                    out.step3_beta_err[k] = c.beta - truth[k].beta;
                }
            }
        }
    } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
    }
    return out;
}

struct CrlbRow {
    double omega = std::nan("");
    double beta = std::nan("");
    double gamma = std::nan("");
};

std::vector<CrlbRow> crlb_roots(const std::vector<ComponentParams>& comps, const TimeGrid& grid,
                                double sigma2) {
    FisherMatrix f = fisher_information(comps, grid, sigma2);
    auto mask = active_mask(comps);
    auto diag = crlb_diag(f, mask);
    std::vector<CrlbRow> rows(comps.size());
    std::size_t pos = 0;
    for (std::size_t k = 0; k < comps.size(); ++k) {
        pos += 2;  // r, phi
        rows[k].omega = std::sqrt(diag[pos++]);
        if (comps[k].cls != ModelClass::Cisoid) rows[k].beta = std::sqrt(diag[pos++]);
        if (comps[k].cls == ModelClass::Voigt) rows[k].gamma = std::sqrt(diag[pos++]);
    }
    return rows;
}

void write_cdf_csv(std::ofstream& out, double sigma2, std::uint64_t seed,
                   std::size_t truth_idx, std::vector<double> errors) {
    errors.erase(std::remove_if(errors.begin(), errors.end(),
                                [](double v) { return std::isnan(v); }),
                 errors.end());
    std::sort(errors.begin(), errors.end());
    const double n = static_cast<double>(errors.size());
    for (std::size_t i = 0; i < errors.size(); ++i) {
        out << sigma2 << ',' << seed << ',' << truth_idx << ',' << std::setprecision(17)
            << errors[i] << ',' << (static_cast<double>(i) + 1.0) / n << '\n';
    }
}

double rmse(const std::vector<double>& vals) {
    double acc = 0.0;
    std::size_t n = 0;
    for (double v : vals)
        if (!std::isnan(v)) {
            acc += v * v;
            ++n;
        }
    return n ? std::sqrt(acc / static_cast<double>(n)) : std::nan("");
}

int cmd_montecarlo(const CommonOpts& common, const std::string& out_dir, int workers, bool full,
                   bool svg) {
    ExperimentConfig cfg = load_with_overrides(common);
    if (full) cfg.repetitions = 500;
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    const TimeGrid grid = cfg.grid();
    const std::size_t kt = cfg.components.size();
    fs::create_directories(out_dir);

    std::ofstream reps_csv(fs::path(out_dir) / "reps.csv");
    std::ofstream results_csv(fs::path(out_dir) / "results.csv");
    std::ofstream step1_csv(fs::path(out_dir) / "step1_omega_cdf.csv");
    std::ofstream step3_csv(fs::path(out_dir) / "step3_beta_cdf.csv");
    if (!reps_csv || !results_csv || !step1_csv || !step3_csv)
        throw std::invalid_argument("cannot open output files in " + out_dir);
    reps_csv << "sigma2,seed,rep,truth,status,k_hat,all_correct,matched,class_ok,"
                "omega_err,beta_err,gamma_err,step1_omega_err,step3_beta_err\n";
    results_csv << "sigma2,seed,truth,class,correct_rate,class_rate,n_correct,n_reps,n_failed,"
                   "rmse_omega,crlb_root_omega,rmse_beta,crlb_root_beta,rmse_gamma,"
                   "crlb_root_gamma\n";
    step1_csv << "sigma2,seed,truth,error,cdf\n";
    step3_csv << "sigma2,seed,truth,error,cdf\n";

    struct SummaryPoint {
        double sigma2;
        double correct_rate;
        std::vector<double> class_rate;
    };
    std::vector<SummaryPoint> summary;
    std::vector<std::vector<double>> svg_step1(kt), svg_step3(kt);  // lowest sigma2 only

    for (std::size_t si = 0; si < cfg.noise_variances.size(); ++si) {
        const double sigma2 = cfg.noise_variances[si];
        std::vector<RepOutcome> outcomes(static_cast<std::size_t>(cfg.repetitions));
        std::vector<std::vector<ComponentParams>> truths(
            static_cast<std::size_t>(cfg.repetitions));

        auto worker = [&](int lo, int hi) {
            for (int rep = lo; rep < hi; ++rep) {
                auto comps = realize_components(cfg, phase_seed(cfg, si, rep));
                SignalRecord rec = synthesize(comps, grid, sigma2, noise_seed(cfg, si, rep));
                truths[static_cast<std::size_t>(rep)] = comps;
                outcomes[static_cast<std::size_t>(rep)] = analyze_rep(rec, comps, cfg);
            }
        };
        int nw = std::min(workers, cfg.repetitions);
        std::vector<std::thread> pool;
        int chunk = (cfg.repetitions + nw - 1) / nw;
        for (int w = 0; w < nw; ++w) {
            int lo = w * chunk, hi = std::min(cfg.repetitions, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& t : pool) t.join();

        int n_failed = 0, n_correct = 0;
        std::vector<int> class_hits(kt, 0);
        std::vector<std::vector<double>> om_err(kt), be_err(kt), ga_err(kt), s1(kt), s3(kt);
        for (int rep = 0; rep < cfg.repetitions; ++rep) {
            const auto& o = outcomes[static_cast<std::size_t>(rep)];
            if (!o.ok) ++n_failed;
            if (o.all_correct) ++n_correct;
            for (std::size_t k = 0; k < kt; ++k) {
                reps_csv << sigma2 << ',' << cfg.seed << ',' << rep << ',' << k << ','
                         << (o.ok ? "ok" : "error") << ',' << o.k_hat << ',' << o.all_correct
                         << ',' << (o.ok && o.matched[k]) << ',' << (o.ok && o.class_ok[k])
                         << ',' << o.omega_err[k] << ',' << o.beta_err[k] << ','
                         << o.gamma_err[k] << ',' << o.step1_omega_err[k] << ','
                         << o.step3_beta_err[k] << '\n';
                if (!o.ok) continue;
                if (o.matched[k] && o.class_ok[k]) ++class_hits[k];
                if (o.all_correct) {
                    om_err[k].push_back(o.omega_err[k]);
                    be_err[k].push_back(o.beta_err[k]);
                    ga_err[k].push_back(o.gamma_err[k]);
                }
                s1[k].push_back(o.step1_omega_err[k]);
                s3[k].push_back(o.step3_beta_err[k]);
            }
        }

        // bounds at the nominal truth; phases do not move the bounds for
        // well-separated components
        std::vector<ComponentParams> nominal;
        for (const auto& spec : cfg.components) nominal.push_back(spec.params);
        std::vector<CrlbRow> bounds;
        try {
            bounds = crlb_roots(nominal, grid, sigma2);
        } catch (const SingularFisher&) {
            bounds.assign(kt, CrlbRow{});
        }

        SummaryPoint sp;
        sp.sigma2 = sigma2;
        sp.correct_rate = static_cast<double>(n_correct) / cfg.repetitions;
        for (std::size_t k = 0; k < kt; ++k) {
            double class_rate = static_cast<double>(class_hits[k]) / cfg.repetitions;
            sp.class_rate.push_back(class_rate);
            results_csv << sigma2 << ',' << cfg.seed << ',' << k << ','
                        << to_string(cfg.components[k].params.cls) << ','
                        << sp.correct_rate << ',' << class_rate << ',' << n_correct << ','
                        << cfg.repetitions << ',' << n_failed << ',' << rmse(om_err[k]) << ','
                        << bounds[k].omega << ',' << rmse(be_err[k]) << ',' << bounds[k].beta
                        << ',' << rmse(ga_err[k]) << ',' << bounds[k].gamma << '\n';
            write_cdf_csv(step1_csv, sigma2, cfg.seed, k, s1[k]);
            write_cdf_csv(step3_csv, sigma2, cfg.seed, k, s3[k]);
            if (si == 0) {
                svg_step1[k] = s1[k];
                svg_step3[k] = s3[k];
            }
        }
        summary.push_back(sp);
        std::cout << "sigma2 = " << sigma2 << ": correct rate " << sp.correct_rate << " ("
                  << n_correct << "/" << cfg.repetitions << ", " << n_failed << " failed)\n";
    }

    if (svg) {
        const std::vector<std::string> palette{"#1f6feb", "#d1242f", "#1a7f37", "#8250df"};
        std::vector<svgplot::Series> cls_series;
        for (std::size_t k = 0; k < kt; ++k) {
            svgplot::Series s;
            s.color = palette[k % palette.size()];
            s.label = std::string(to_string(cfg.components[k].params.cls)) + " " +
                      std::to_string(k);
            for (const auto& sp : summary) {
                s.x.push_back(sp.sigma2);
                s.y.push_back(sp.class_rate[k]);
            }
            cls_series.push_back(std::move(s));
        }
        svgplot::Series all;
        all.color = "#000000";
        all.label = "all correct";
        for (const auto& sp : summary) {
            all.x.push_back(sp.sigma2);
            all.y.push_back(sp.correct_rate);
        }
        cls_series.push_back(std::move(all));
        svgplot::write_svg_plot((fs::path(out_dir) / "classification.svg").string(), cls_series,
                                {"classification rate vs noise variance", "sigma2", "rate", true,
                                 false});

        auto cdf_plot = [&](const std::vector<std::vector<double>>& per_truth,
                            const std::string& name, const std::string& xlabel) {
            std::vector<svgplot::Series> series;
            for (std::size_t k = 0; k < kt; ++k) {
                std::vector<double> vals = per_truth[k];
                vals.erase(std::remove_if(vals.begin(), vals.end(),
                                          [](double v) { return std::isnan(v); }),
                           vals.end());
                if (vals.empty()) continue;
                std::sort(vals.begin(), vals.end());
                svgplot::Series s;
                s.color = palette[k % palette.size()];
                s.label = std::string(to_string(cfg.components[k].params.cls)) + " " +
                          std::to_string(k);
                for (std::size_t i = 0; i < vals.size(); ++i) {
                    s.x.push_back(vals[i]);
                    s.y.push_back((static_cast<double>(i) + 1.0) /
                                  static_cast<double>(vals.size()));
                }
                series.push_back(std::move(s));
            }
            if (!series.empty())
                svgplot::write_svg_plot((fs::path(out_dir) / name).string(), series,
                                        {"empirical CDF at the lowest noise level", xlabel,
                                         "cdf", false, false});
        };
        cdf_plot(svg_step1, "step1_omega_cdf.svg", "step-1 omega error");
        cdf_plot(svg_step3, "step3_beta_cdf.svg", "step-3 beta error");
    }

    std::cout << "wrote results to " << out_dir << "\n";
    return 0;
}

int cmd_pseudotrue(double r, double phi, double omega, double beta, double gamma, int n,
                   bool check, const std::string& out_path) {
    ModelClass cls = gamma > 0   ? ModelClass::Voigt
                     : beta > 0 ? ModelClass::Lorentzian
                                : ModelClass::Cisoid;
    ComponentParams psi = validated({r, phi, omega, beta, gamma, cls});
    TimeGrid grid = TimeGrid::unit(static_cast<std::size_t>(n));

    std::ostringstream table;
    table << "template,parameter,value\n" << std::setprecision(17);
    PseudoTrueResult cis = pseudo_true_cisoid(psi, grid);
    table << "cisoid,r0," << cis.r0 << "\n";
    table << "cisoid,phi0," << cis.phi0 << "\n";
    table << "cisoid,omega0," << cis.omega0 << "\n";

    PseudoTrueResult lor = pseudo_true_lorentzian(psi, grid);
    if (lor.beta0) {
        table << "lorentzian,beta0," << *lor.beta0 << "\n";
        table << "lorentzian,beta_bias," << *lor.beta0 - beta << "\n";
    }
    if (lor.bracket) {
        table << "lorentzian,bracket_lo," << lor.bracket->first << "\n";
        table << "lorentzian,bracket_hi," << lor.bracket->second << "\n";
    }

    if (check) {
        // profile amplitude and phase exactly, scan the remaining coordinate
        SignalRecord clean = synthesize({psi}, grid, 0.0, 0);
        auto scan_cost = [&](double om, double b0) {
            auto [rr, pp] = solve_amp_phase(clean, om, b0, 0.0);
            ComponentParams cand{rr, pp, om,
                                 b0, 0.0, b0 > 0 ? ModelClass::Lorentzian : ModelClass::Cisoid};
            return nls_cost(clean, {cand});
        };
        double best_om = omega, best_cost = scan_cost(omega, 0.0);
        const double half = 2 * kPi / n;
        for (int i = -2000; i <= 2000; ++i) {
            double om = omega + half * i / 2000.0;
            double c = scan_cost(om, 0.0);
            if (c < best_cost) {
                best_cost = c;
                best_om = om;
            }
        }
        table << "check,cisoid_omega_scan_gap," << wrap_signed(best_om - cis.omega0) << "\n";

        if (lor.beta0 && lor.bracket) {
            double lo = lor.bracket->first, hi = lor.bracket->second;
            double best_b = lo, best_bc = scan_cost(omega, lo == 0.0 ? 1e-12 : lo);
            for (int i = 0; i <= 4000; ++i) {
                double b0 = lo + (hi - lo) * i / 4000.0;
                double c = scan_cost(omega, b0 == 0.0 ? 1e-12 : b0);
                if (c < best_bc) {
                    best_bc = c;
                    best_b = b0;
                }
            }
            table << "check,lorentzian_beta_scan_gap," << best_b - *lor.beta0 << "\n";
        }
    }

    if (out_path.empty()) {
        std::cout << table.str();
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open output: " + out_path);
        out << table.str();
        std::cout << "wrote table to " << out_path << "\n";
    }
    return 0;
}

int cmd_crlb(const CommonOpts& common, const std::vector<double>& sigma_override,
             const std::string& out_path) {
    ExperimentConfig cfg = load_with_overrides(common);
    std::vector<double> sigmas = sigma_override.empty() ? cfg.noise_variances : sigma_override;
    std::vector<ComponentParams> comps;
    for (const auto& spec : cfg.components) comps.push_back(spec.params);
    if (comps.empty()) throw std::invalid_argument("config has no components");

    std::ostringstream table;
    table << "sigma2,component,class,parameter,crlb_root\n" << std::setprecision(10);
    for (double s2 : sigmas) {
        if (s2 <= 0) throw std::invalid_argument("sigma2 must be positive");
        auto rows = crlb_roots(comps, cfg.grid(), s2);
        for (std::size_t k = 0; k < comps.size(); ++k) {
            table << s2 << ',' << k << ',' << to_string(comps[k].cls) << ",omega,"
                  << rows[k].omega << "\n";
            if (comps[k].cls != ModelClass::Cisoid)
                table << s2 << ',' << k << ',' << to_string(comps[k].cls) << ",beta,"
                      << rows[k].beta << "\n";
            if (comps[k].cls == ModelClass::Voigt)
                table << s2 << ',' << k << ',' << to_string(comps[k].cls) << ",gamma,"
                      << rows[k].gamma << "\n";
        }
    }
    if (out_path.empty()) {
        std::cout << table.str();
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open output: " + out_path);
        out << table.str();
        std::cout << "wrote table to " << out_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Estimation and classification of polynomially damped complex sinusoids"};
    app.require_subcommand(1);

    CommonOpts common;
    std::uint64_t seed_val = 0;
    double alpha_val = 0.0;
    int width_val = 0;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* c = sub->add_option("--config", common.config_path, "experiment config (JSON)");
        if (config_required) c->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", seed_val, "master seed override")
            ->each([&](const std::string&) { common.seed = seed_val; });
        sub->add_option("--alpha", alpha_val, "classification test level override")
            ->each([&](const std::string&) { common.alpha = alpha_val; });
        sub->add_option("--neighborhood-width", width_val, "test neighborhood half width W")
            ->each([&](const std::string&) { common.neighborhood_width = width_val; });
    };

    auto* sim = app.add_subcommand("simulate", "synthesize a signal file from a config");
    std::string sim_out = "signal.csv";
    int sim_sigma_index = 0;
    add_common(sim, true);
    sim->add_option("--out", sim_out, "output CSV path");
    sim->add_option("--sigma-index", sim_sigma_index,
                    "which entry of noise_variances to use (default first)");

    auto* est = app.add_subcommand("estimate", "run the full pipeline on a signal file");
    std::string est_signal, est_out, est_residual;
    add_common(est, false);
    est->add_option("--signal", est_signal, "input signal CSV")
        ->required()
        ->check(CLI::ExistingFile);
    est->add_option("--out", est_out, "report path (stdout when omitted)");
    est->add_option("--residual-out", est_residual, "write the final residual CSV here");

    auto* mc = app.add_subcommand("montecarlo", "repeat the experiment over noise levels");
    std::string mc_out = "mc_out";
    int mc_workers = 1;
    bool mc_full = false, mc_svg = false;
    add_common(mc, true);
    mc->add_option("--out", mc_out, "output directory");
    mc->add_option("--workers", mc_workers, "concurrent repetitions");
    mc->add_flag("--full", mc_full, "500-repetition profile");
    mc->add_flag("--svg", mc_svg, "emit SVG plots next to the CSVs");

    auto* pt = app.add_subcommand("pseudotrue", "pseudo-true parameters of a single component");
    double pt_r = 1.0, pt_phi = 0.0, pt_omega = 0.0, pt_beta = 0.0, pt_gamma = 0.0;
    int pt_n = 200;
    bool pt_check = false;
    std::string pt_out;
    pt->add_option("--r", pt_r, "amplitude");
    pt->add_option("--phi", pt_phi, "phase");
    pt->add_option("--omega", pt_omega, "frequency (radians per sample)");
    pt->add_option("--beta", pt_beta, "linear decay");
    pt->add_option("--gamma", pt_gamma, "quadratic decay");
    pt->add_option("--n", pt_n, "grid length")->check(CLI::Range(2, 100000));
    pt->add_flag("--check", pt_check, "cross-check against a dense profiled scan");
    pt->add_option("--out", pt_out, "CSV path (stdout when omitted)");

    auto* cr = app.add_subcommand("crlb", "root-CRLB table for the configured components");
    std::vector<double> cr_sigmas;
    std::string cr_out;
    add_common(cr, true);
    cr->add_option("--sigma2", cr_sigmas, "noise variances (overrides the config list)");
    cr->add_option("--out", cr_out, "CSV path (stdout when omitted)");

    try {
        app.parse(argc, argv);
        if (sim->parsed()) return cmd_simulate(common, sim_out, sim_sigma_index);
        if (est->parsed()) return cmd_estimate(common, est_signal, est_out, est_residual);
        if (mc->parsed()) return cmd_montecarlo(common, mc_out, mc_workers, mc_full, mc_svg);
        if (pt->parsed())
            return cmd_pseudotrue(pt_r, pt_phi, pt_omega, pt_beta, pt_gamma, pt_n, pt_check,
                                  pt_out);
        if (cr->parsed()) return cmd_crlb(common, cr_sigmas, cr_out);
        return 1;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
}
