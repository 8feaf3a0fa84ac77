#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace testing_support {

// SplitMix64; fixed seeds keep every property run reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

private:
    std::uint64_t state_;
};

// Solution of lap w = 1 on (-1,1)^2 with w = 0 on the boundary, by separation
// of variables: w = -(1 - x^2)/2 + sum_{k odd} c_k cos(k pi x/2) cosh(k pi y/2)/cosh(k pi/2).
inline double poisson_square_w(double x, double y, int terms = 400) {
    constexpr double pi = std::numbers::pi;
    double s = -(1.0 - x * x) / 2.0;
    for (int k = 1; k < 2 * terms; k += 2) {
        const double kp = k * pi / 2.0;
        const double ay = std::abs(y);
        const double ratio = std::exp(-kp * (1.0 - ay)) * (1.0 + std::exp(-2.0 * kp * ay)) / (1.0 + std::exp(-2.0 * kp));
        const double sign = ((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        s += 16.0 * sign / (k * k * k * pi * pi * pi) * std::cos(kp * x) * ratio;
    }
    return s;
}

}  // namespace testing_support
