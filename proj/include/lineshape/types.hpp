#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lineshape {

using cplx = std::complex<double>;

enum class ModelClass { Cisoid, Lorentzian, Voigt };

const char* to_string(ModelClass c);
ModelClass model_class_from_string(const std::string& s);

// One component of the signal: r * exp(-beta t - gamma t^2) * exp(i(phi + omega t)).
// The class tag restricts which decay parameters may be nonzero.
struct ComponentParams {
    double r = 1.0;
    double phi = 0.0;
    double omega = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    ModelClass cls = ModelClass::Cisoid;
};

// Normalizes phi into [0, 2pi) and throws std::invalid_argument on
// out-of-range or class-inconsistent parameters.
ComponentParams validated(ComponentParams psi);

struct TimeGrid {
    std::vector<double> times;

    static TimeGrid unit(std::size_t n);  // t_n = 0, 1, ..., n-1
    std::size_t size() const { return times.size(); }
    double span() const { return times.back() - times.front(); }
    void validate() const;  // strictly increasing, size >= 2
};

struct SignalRecord {
    std::vector<cplx> samples;
    TimeGrid grid;
    std::optional<double> noise_variance;
};

struct DegenerateEnvelope : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoCandidate : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyComplement : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BracketFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularFisher : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lineshape
