#pragma once

#include <utility>
#include <vector>

#include "fockport/su2_kernel.hpp"

namespace fockport {

/// |n_a>_a |n_b>_b
struct TwoModeIndex {
    int n_a = 0;
    int n_b = 0;

    friend constexpr bool operator==(TwoModeIndex, TwoModeIndex) = default;
};

[[nodiscard]] std::pair<SpinJ, SpinProjection> two_mode_to_spin(TwoModeIndex idx);
[[nodiscard]] TwoModeIndex spin_to_two_mode(SpinJ j, SpinProjection m);

/// Relative-phase eigenstate label: phi_r = phi0 + 2 pi r / (N + 1).
struct RelativePhaseSpec {
    int total_photons = 0;
    int r = 0;
    double phi0 = 0.0;

    [[nodiscard]] double phase() const;
};

/// Relative-phase eigenstate in Schwinger form, sum_m e^{i m phi_r} |j m> / sqrt(N+1).
[[nodiscard]] SpinState relative_phase_state(const RelativePhaseSpec& spec);

/// Arbitrary phase profile theta_n over n = 0..N.
struct GeneralPhaseSpec {
    int total_photons = 0;
    std::vector<double> thetas;
};

/// sum_n e^{i theta_n} |n>_a |N-n>_b / sqrt(N+1).
[[nodiscard]] SpinState general_phase_state(const GeneralPhaseSpec& spec);

/// Truncated, renormalized coherent state |alpha> with alpha real.
struct CoherentTarget {
    double alpha = 0.0;
    int k_max = 0;
    std::vector<double> coeffs;  ///< c_k, k = 0..k_max
    double discarded_tail = 0.0;  ///< sum_{k > k_max} |c_k|^2 before renormalization

    [[nodiscard]] double weight(int k) const {
        return (k >= 0 && k <= k_max) ? coeffs[static_cast<std::size_t>(k)] * coeffs[static_cast<std::size_t>(k)]
                                      : 0.0;
    }
};

inline constexpr double kDefaultTailTolerance = 1e-12;

/// Smallest k_max whose discarded Poisson tail is below tail_tol, then renormalized.
[[nodiscard]] CoherentTarget coherent_coefficients(double alpha, double tail_tol = kDefaultTailTolerance);

}  // namespace fockport
