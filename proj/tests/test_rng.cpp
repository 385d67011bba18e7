#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "lineshape/rng.hpp"

using lineshape::Xoshiro256pp;
using lineshape::splitmix64;

TEST_CASE("splitmix64 matches the reference sequence") {
    std::uint64_t state = 0;
    CHECK(splitmix64(state) == 0xE220A8397B1DCDAFull);
    CHECK(splitmix64(state) == 0x6E789E6AA1B965F4ull);
    CHECK(splitmix64(state) == 0x06C45D188009454Full);

    std::uint64_t s42 = 42;
    CHECK(splitmix64(s42) == 0xBDD732262FEB6E95ull);
}

TEST_CASE("identical seeds give identical streams") {
    Xoshiro256pp a(123456789), b(123456789);
    for (int i = 0; i < 64; ++i) CHECK(a.next() == b.next());
    for (int i = 0; i < 64; ++i) CHECK(a.uniform() == b.uniform());
    for (int i = 0; i < 64; ++i) CHECK(a.gaussian() == b.gaussian());
    for (int i = 0; i < 64; ++i) {
        auto za = a.complex_gaussian(0.3);
        auto zb = b.complex_gaussian(0.3);
        CHECK(za == zb);
    }
}

TEST_CASE("different seeds diverge immediately") {
    Xoshiro256pp a(1), b(2);
    int equal = 0;
    for (int i = 0; i < 16; ++i)
        if (a.next() == b.next()) ++equal;
    CHECK(equal == 0);
}

TEST_CASE("uniform lies in [0, 1) with the right first two moments") {
    Xoshiro256pp g(2024);
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        double u = g.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sumsq += u * u;
    }
    double mean = sum / n;
    double var = sumsq / n - mean * mean;
    CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.03));
}

TEST_CASE("uniform is next() >> 11 scaled by 2^-53") {
    Xoshiro256pp a(77), b(77);
    for (int i = 0; i < 32; ++i) {
        double expect = static_cast<double>(b.next() >> 11) * 0x1.0p-53;
        CHECK(a.uniform() == expect);
    }
}

TEST_CASE("gaussian moments match a standard normal") {
    Xoshiro256pp g(5150);
    const int n = 100000;
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (int i = 0; i < n; ++i) {
        double x = g.gaussian();
        s1 += x;
        s2 += x * x;
        s3 += x * x * x;
        s4 += x * x * x * x;
    }
    CHECK(std::abs(s1 / n) < 0.02);
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.03));
    CHECK(std::abs(s3 / n) < 0.05);
    CHECK(s4 / n == doctest::Approx(3.0).epsilon(0.08));
}

TEST_CASE("complex noise is circular with total variance sigma2") {
    const double sigma2 = 0.37;
    Xoshiro256pp g(99);
    const int n = 20000;
    double re_sum = 0, im_sum = 0, re_sq = 0, im_sq = 0, cross = 0, mag = 0;
    for (int i = 0; i < n; ++i) {
        auto z = g.complex_gaussian(sigma2);
        re_sum += z.real();
        im_sum += z.imag();
        re_sq += z.real() * z.real();
        im_sq += z.imag() * z.imag();
        cross += z.real() * z.imag();
        mag += std::norm(z);
    }
    CHECK(std::abs(re_sum / n) < 0.02);
    CHECK(std::abs(im_sum / n) < 0.02);
    CHECK(mag / n == doctest::Approx(sigma2).epsilon(0.05));
    CHECK(re_sq / n == doctest::Approx(sigma2 / 2).epsilon(0.05));
    CHECK(im_sq / n == doctest::Approx(sigma2 / 2).epsilon(0.05));
    CHECK(std::abs(cross / n) < 0.01);
}

TEST_CASE("derived stream seeds are deterministic and distinct") {
    const std::uint64_t master = 314159;
    CHECK(Xoshiro256pp::derive(master, 0) == Xoshiro256pp::derive(master, 0));
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t k = 0; k < 100; ++k) seeds.push_back(Xoshiro256pp::derive(master, k));
    for (size_t i = 0; i < seeds.size(); ++i)
        for (size_t j = i + 1; j < seeds.size(); ++j) CHECK(seeds[i] != seeds[j]);
}

TEST_CASE("derived streams are pairwise decorrelated") {
    const std::uint64_t master = 8675309;
    Xoshiro256pp a(Xoshiro256pp::derive(master, 0));
    Xoshiro256pp b(Xoshiro256pp::derive(master, 1));
    const int n = 20000;
    double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
    for (int i = 0; i < n; ++i) {
        double x = a.gaussian(), y = b.gaussian();
        sa += x;
        sb += y;
        sab += x * y;
        saa += x * x;
        sbb += y * y;
    }
    double cov = sab / n - (sa / n) * (sb / n);
    double corr = cov / std::sqrt((saa / n) * (sbb / n));
    CHECK(std::abs(corr) < 0.03);
}
