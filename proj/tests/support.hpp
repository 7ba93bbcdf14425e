#pragma once

#include <random>

#include "fockport/su2_kernel.hpp"

namespace fockport::test {

inline SpinState random_state(SpinJ j, std::mt19937& rng) {
    std::normal_distribution<double> g;
    Amplitudes a(j.dimension());
    for (auto& z : a) z = Complex(g(rng), g(rng));
    return SpinState::normalized(j, std::move(a));
}

}  // namespace fockport::test
