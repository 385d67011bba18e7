#include "lineshape/signal_model.hpp"

#include <cmath>
#include <sstream>

#include "lineshape/rng.hpp"

namespace lineshape {

const char* to_string(ModelClass c) {
    switch (c) {
        case ModelClass::Cisoid: return "cisoid";
        case ModelClass::Lorentzian: return "lorentzian";
        case ModelClass::Voigt: return "voigt";
    }
    return "?";
}

ModelClass model_class_from_string(const std::string& s) {
    if (s == "cisoid" || s == "sinusoid") return ModelClass::Cisoid;
    if (s == "lorentzian") return ModelClass::Lorentzian;
    if (s == "voigt") return ModelClass::Voigt;
    throw std::invalid_argument("unknown model class: " + s);
}

ComponentParams validated(ComponentParams psi) {
    if (!(psi.r > 0.0)) throw std::invalid_argument("component amplitude must be positive");
    if (!(psi.beta >= 0.0)) throw std::invalid_argument("beta must be nonnegative");
    if (!(psi.gamma >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");
    if (psi.cls == ModelClass::Cisoid && (psi.beta != 0.0 || psi.gamma != 0.0))
        throw std::invalid_argument("cisoid component cannot decay");
    if (psi.cls == ModelClass::Lorentzian && psi.gamma != 0.0)
        throw std::invalid_argument("lorentzian component cannot have quadratic decay");
    psi.phi = std::fmod(psi.phi, 2.0 * M_PI);
    if (psi.phi < 0.0) psi.phi += 2.0 * M_PI;
    return psi;
}

TimeGrid TimeGrid::unit(std::size_t n) {
    TimeGrid g;
    g.times.resize(n);
    for (std::size_t i = 0; i < n; ++i) g.times[i] = static_cast<double>(i);
    return g;
}

void TimeGrid::validate() const {
    if (times.size() < 2) throw std::invalid_argument("grid needs at least two instants");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("grid instants must be strictly increasing");
}

double envelope(double t, double beta, double gamma) {
    return std::exp(-beta * t - gamma * t * t);
}

cplx component_value(double t, const ComponentParams& psi) {
    return psi.r * envelope(t, psi.beta, psi.gamma) *
           std::polar(1.0, psi.phi + psi.omega * t);
}

std::vector<cplx> reconstruct(const std::vector<ComponentParams>& components,
                              const TimeGrid& grid) {
    std::vector<cplx> out(grid.size(), cplx{0.0, 0.0});
    for (const auto& psi : components)
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] += component_value(grid.times[i], psi);
    return out;
}

SignalRecord synthesize(const std::vector<ComponentParams>& components,
                        const TimeGrid& grid, double sigma2, std::uint64_t seed) {
    if (sigma2 < 0.0) throw std::invalid_argument("noise variance must be nonnegative");
    grid.validate();
    SignalRecord rec;
    rec.grid = grid;
    rec.samples = reconstruct(components, grid);
    rec.noise_variance = sigma2;
    if (sigma2 > 0.0) {
        Xoshiro256pp rng(seed);
        for (auto& y : rec.samples) y += rng.complex_gaussian(sigma2);
    }
    return rec;
}

double nls_cost(const SignalRecord& signal, const std::vector<ComponentParams>& components) {
    double acc = 0.0;
    for (std::size_t i = 0; i < signal.samples.size(); ++i) {
        cplx model{0.0, 0.0};
        for (const auto& psi : components)
            model += component_value(signal.grid.times[i], psi);
        acc += std::norm(signal.samples[i] - model);
    }
    return acc;
}

}  // namespace lineshape
