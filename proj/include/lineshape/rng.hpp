#pragma once

#include <complex>
#include <cstdint>

namespace lineshape {

// splitmix64 step; also used to expand seeds and derive per-stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// xoshiro256++ with splitmix64 seeding and a Box-Muller Gaussian transform.
// Chosen over std::mt19937 because the stream is fully specified here and
// reproducible across platforms and languages.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed);

    std::uint64_t next();
    double uniform();      // [0, 1), 53-bit resolution
    double gaussian();     // standard normal
    std::complex<double> complex_gaussian(double sigma2);  // circular, total variance sigma2

    // k-th derived seed of a master seed; cheap and scheduling-order free.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t stream);

  private:
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace lineshape
