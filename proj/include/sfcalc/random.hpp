#pragma once

#include <cstdint>
#include <random>

#include "sfcalc/qmatrix.hpp"

namespace sfcalc {

inline std::mt19937_64 seeded_rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline Quaternion random_quaternion(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double w = u(rng), x = u(rng), y = u(rng), z = u(rng);
    return {w, x, y, z};
}

inline ImaginaryUnit random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        const double a = g(rng), b = g(rng), c = g(rng);
        if (a * a + b * b + c * c > 1e-12) return {a, b, c};
    }
}

inline QMatrix random_qmatrix(int n, std::mt19937_64& rng) {
    QMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = random_quaternion(rng);
    return m;
}

} // namespace sfcalc
