#include "lineshape/rng.hpp"

#include <cmath>

namespace lineshape {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}
}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
}

std::uint64_t Xoshiro256pp::next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256pp::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Xoshiro256pp::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; u clamped away from 0 so the log stays finite.
    double u = uniform();
    while (u <= 0.0) u = uniform();
    const double v = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u));
    const double ang = 2.0 * M_PI * v;
    spare_ = mag * std::sin(ang);
    have_spare_ = true;
    return mag * std::cos(ang);
}

std::complex<double> Xoshiro256pp::complex_gaussian(double sigma2) {
    const double s = std::sqrt(sigma2 / 2.0);
    const double re = gaussian();
    const double im = gaussian();
    return {s * re, s * im};
}

std::uint64_t Xoshiro256pp::derive(std::uint64_t master, std::uint64_t stream) {
    // The (stream+1)-th output of splitmix64 seeded at master, computed
    // directly from the closed-form state advance.
    std::uint64_t state = master + 0x9E3779B97F4A7C15ull * stream;
    return splitmix64(state);
}

}  // namespace lineshape
