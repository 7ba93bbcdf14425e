#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace fockport::detail {

/// ln(n!) in extended precision. Tabulated for small n, lgamma beyond.
inline long double log_factorial(int n) {
    static constexpr int kTable = 256;
    static const std::array<long double, kTable> table = [] {
        std::array<long double, kTable> t{};
        t[0] = 0.0L;
        for (int i = 1; i < kTable; ++i) t[i] = t[i - 1] + std::log(static_cast<long double>(i));
        return t;
    }();
    if (n < kTable) return table[static_cast<std::size_t>(n)];
    return std::lgamma(static_cast<long double>(n) + 1.0L);
}

/// i^k for integer k.
inline std::complex<double> i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

/// (-1)^k for integer k.
constexpr double sign_power(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

/// e^{i theta}
inline std::complex<double> unit_phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

inline constexpr double kPi = std::numbers::pi;

}  // namespace fockport::detail
