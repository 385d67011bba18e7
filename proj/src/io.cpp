#include "lineshape/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "lineshape/signal_model.hpp"

namespace lineshape {

using nlohmann::json;

TimeGrid ExperimentConfig::grid() const {
    if (!custom_times.empty()) {
        TimeGrid g;
        g.times = custom_times;
        return g;
    }
    return TimeGrid::unit(n);
}

void ExperimentConfig::validate() const {
    grid().validate();
    if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    if (noise_variances.empty())
        throw std::invalid_argument("noise_variances must list at least one level");
    for (double s2 : noise_variances)
        if (s2 < 0.0) throw std::invalid_argument("noise variances must be nonnegative");
    for (const auto& spec : components) validated(spec.params);
    fit.validate();
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
}

namespace {

template <typename T>
void read_if(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            if (g.contains("times"))
                cfg.custom_times = g.at("times").get<std::vector<double>>();
            else
                cfg.n = g.at("n").get<std::size_t>();
        }
        if (j.contains("components")) {
            for (const auto& c : j.at("components")) {
                ComponentSpec spec;
                spec.params.cls = model_class_from_string(c.at("class").get<std::string>());
                read_if(c, "r", spec.params.r);
                read_if(c, "omega", spec.params.omega);
                read_if(c, "beta", spec.params.beta);
                read_if(c, "gamma", spec.params.gamma);
                if (c.contains("phase") && c.at("phase").get<std::string>() == "random")
                    spec.random_phase = true;
                else
                    read_if(c, "phi", spec.params.phi);
                cfg.components.push_back(spec);
            }
        }
        read_if(j, "noise_variances", cfg.noise_variances);
        read_if(j, "repetitions", cfg.repetitions);
        read_if(j, "seed", cfg.seed);
        if (j.contains("fit")) {
            const auto& f = j.at("fit");
            read_if(f, "max_components", cfg.fit.max_components);
            read_if(f, "omega_pad", cfg.fit.omega_pad);
            read_if(f, "beta_bins", cfg.fit.beta_bins);
            read_if(f, "gamma_bins", cfg.fit.gamma_bins);
            read_if(f, "refine_tol", cfg.fit.refine_tol);
            read_if(f, "refine_max_iters", cfg.fit.refine_max_iters);
            read_if(f, "cycle_passes", cfg.fit.cycle_passes);
            read_if(f, "separation_width", cfg.fit.separation_width);
        }
        if (j.contains("test")) {
            const auto& t = j.at("test");
            read_if(t, "alpha", cfg.alpha);
            read_if(t, "alpha_stop", cfg.fit.alpha_stop);
            read_if(t, "neighborhood_width", cfg.fit.neighborhood_width);
            read_if(t, "exclusion_width", cfg.classify.exclusion_width);
            read_if(t, "ring_width", cfg.classify.ring_width);
            read_if(t, "peak_half_width", cfg.classify.peak_half_width);
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config error: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json j;
    if (!cfg.custom_times.empty())
        j["grid"]["times"] = cfg.custom_times;
    else
        j["grid"]["n"] = cfg.n;
    j["components"] = json::array();
    for (const auto& spec : cfg.components) {
        json c;
        c["class"] = to_string(spec.params.cls);
        c["r"] = spec.params.r;
        if (spec.random_phase)
            c["phase"] = "random";
        else
            c["phi"] = spec.params.phi;
        c["omega"] = spec.params.omega;
        c["beta"] = spec.params.beta;
        c["gamma"] = spec.params.gamma;
        j["components"].push_back(c);
    }
    j["noise_variances"] = cfg.noise_variances;
    j["repetitions"] = cfg.repetitions;
    j["seed"] = cfg.seed;
    j["fit"] = {{"max_components", cfg.fit.max_components},
                {"omega_pad", cfg.fit.omega_pad},
                {"beta_bins", cfg.fit.beta_bins},
                {"gamma_bins", cfg.fit.gamma_bins},
                {"refine_tol", cfg.fit.refine_tol},
                {"refine_max_iters", cfg.fit.refine_max_iters},
                {"cycle_passes", cfg.fit.cycle_passes},
                {"separation_width", cfg.fit.separation_width}};
    j["test"] = {{"alpha", cfg.alpha},
                 {"alpha_stop", cfg.fit.alpha_stop},
                 {"neighborhood_width", cfg.fit.neighborhood_width},
                 {"exclusion_width", cfg.classify.exclusion_width},
                 {"ring_width", cfg.classify.ring_width},
                 {"peak_half_width", cfg.classify.peak_half_width}};
    return j.dump(2) + "\n";
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

void save_signal_csv(const std::string& path, const SignalRecord& signal,
                     std::uint64_t seed) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::invalid_argument("cannot open output file: " + path);
    std::fprintf(f, "# n %zu\n", signal.samples.size());
    std::fprintf(f, "# seed %" PRIu64 "\n", seed);
    if (signal.noise_variance)
        std::fprintf(f, "# sigma2 %.17g\n", *signal.noise_variance);
    std::fprintf(f, "# columns index,t,re,im\n");
    for (std::size_t i = 0; i < signal.samples.size(); ++i)
        std::fprintf(f, "%zu,%.17g,%.17g,%.17g\n", i, signal.grid.times[i],
                     signal.samples[i].real(), signal.samples[i].imag());
    std::fclose(f);
}

SignalRecord load_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open signal file: " + path);
    SignalRecord rec;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream meta(line.substr(1));
            std::string key;
            meta >> key;
            if (key == "sigma2") {
                double v;
                if (meta >> v) rec.noise_variance = v;
            }
            continue;
        }
        double idx, t, re, im;
        char c1, c2, c3;
        std::istringstream row(line);
        if (!(row >> idx >> c1 >> t >> c2 >> re >> c3 >> im) || c1 != ',' || c2 != ',' ||
            c3 != ',')
            throw std::invalid_argument("bad signal row at line " + std::to_string(lineno) +
                                        " of " + path);
        rec.grid.times.push_back(t);
        rec.samples.emplace_back(re, im);
    }
    if (rec.samples.size() < 2)
        throw std::invalid_argument("signal file has fewer than two samples: " + path);
    rec.grid.validate();
    return rec;
}

void write_report(std::ostream& out, const PipelineReport& report) {
    out << "steps_executed " << report.steps_executed << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", report.noise_variance_estimate);
    out << "noise_variance_estimate " << buf << "\n";
    out << "components " << report.components.size() << "\n";
    for (std::size_t i = 0; i < report.components.size(); ++i) {
        const auto& c = report.components[i];
        out << "component " << i << "\n";
        out << "  class " << to_string(c.final_class) << "\n";
        const double vals[5] = {c.params.r, c.params.phi, c.params.omega, c.params.beta,
                                c.params.gamma};
        const char* names[5] = {"r", "phi", "omega", "beta", "gamma"};
        for (int k = 0; k < 5; ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", vals[k]);
            out << "  " << names[k] << " " << buf << "\n";
        }
        out << "  verdicts " << c.verdict_history.size() << "\n";
        for (const auto& v : c.verdict_history) {
            std::snprintf(buf, sizeof buf, "%.6g", v.xi);
            out << "    xi " << buf << " d1 " << v.d1 << " d2 " << v.d2;
            std::snprintf(buf, sizeof buf, "%.6g", v.p_value);
            out << " p " << buf << " sufficient " << (v.sufficient ? 1 : 0) << "\n";
        }
    }
    double energy = 0.0;
    for (const auto& v : report.residual.samples) energy += std::norm(v);
    std::snprintf(buf, sizeof buf, "%.17g", energy);
    out << "residual_energy " << buf << "\n";
}

}  // namespace lineshape
