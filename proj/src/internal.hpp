#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "lineshape/signal_model.hpp"
#include "lineshape/types.hpp"

namespace lineshape::detail {

inline double angdist(double a, double b) {
    return std::abs(std::atan2(std::sin(a - b), std::cos(a - b)));
}

inline double golden_min(const std::function<double(double)>& f, double lo, double hi,
                         double tol) {
    static const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; b - a > tol && it < 120; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// NLS cost of a single-component template with the amplitude profiled out:
// cost = |y|^2 - |<b,y>|^2 / <b,b>. The template magnitude does not depend
// on omega, so <b,b> is reused across frequency probes and the carrier
// product across decay probes.
class ProfiledCost {
  public:
    explicit ProfiledCost(const SignalRecord& y) : y_(y) {
        energy_ = 0.0;
        for (const auto& v : y.samples) energy_ += std::norm(v);
    }

    double energy() const { return energy_; }

    double eval(double omega, double beta, double gamma) {
        set_env(beta, gamma);
        return eval_omega(omega);
    }

    void set_env(double beta, double gamma) {
        const auto& t = y_.grid.times;
        env_.resize(t.size());
        bb_ = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            env_[i] = envelope(t[i], beta, gamma);
            bb_ += env_[i] * env_[i];
        }
    }

    double eval_omega(double omega) const {
        if (bb_ < 1e-300) return energy_;
        cplx by{0.0, 0.0};
        const auto& t = y_.grid.times;
        for (std::size_t i = 0; i < t.size(); ++i)
            by += env_[i] * y_.samples[i] * std::polar(1.0, -omega * t[i]);
        return energy_ - std::norm(by) / bb_;
    }

    void set_omega(double omega) {
        const auto& t = y_.grid.times;
        u_.resize(t.size());
        for (std::size_t i = 0; i < t.size(); ++i)
            u_[i] = y_.samples[i] * std::polar(1.0, -omega * t[i]);
    }

    double eval_env(double beta, double gamma) const {
        const auto& t = y_.grid.times;
        cplx by{0.0, 0.0};
        double bb = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double e = envelope(t[i], beta, gamma);
            by += e * u_[i];
            bb += e * e;
        }
        if (bb < 1e-300) return energy_;
        return energy_ - std::norm(by) / bb;
    }

  private:
    const SignalRecord& y_;
    double energy_ = 0.0;
    double bb_ = 0.0;
    std::vector<double> env_;
    std::vector<cplx> u_;
};

}  // namespace lineshape::detail
