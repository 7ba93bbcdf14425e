#pragma once

// Beam-splitter generated approximations of relative-phase (EPR) states.
//
// A "quantum filtered" input keeps only the lowest |m| components of the
// back-rotated relative-phase state; sending it through a beam splitter gives
// a two-mode state sum_n s_n |n>_A |N-n>_B whose amplitude moduli are nearly
// flat.

#include <vector>

#include "fockport/states.hpp"
#include "fockport/su2_kernel.hpp"

namespace fockport {

/// Filter level mu in {0, 1/2, 1, 3/2}, stored as 2 mu. Integer levels need
/// N even, half-integer levels need N odd.
struct FilterOrder {
    int twice_level = 0;

    static constexpr FilterOrder j0() { return {0}; }
    static constexpr FilterOrder two_point() { return {1}; }
    static constexpr FilterOrder three_point() { return {2}; }
    static constexpr FilterOrder four_point() { return {3}; }

    [[nodiscard]] constexpr bool compatible_with(int total_photons) const noexcept {
        return (twice_level - total_photons) % 2 == 0;
    }

    friend constexpr bool operator==(FilterOrder, FilterOrder) = default;
};

/// Shared entanglement channel: s_n over n = 0..N (n photons on Alice's side).
struct QuasiEprResource {
    int total_photons = 0;
    Amplitudes s;

    static QuasiEprResource from_state(const SpinState& state);
    /// s_n = 1/sqrt(N+1), the ideal flat-phase EPR resource.
    static QuasiEprResource ideal(int total_photons);

    [[nodiscard]] Complex operator[](int n) const { return s[static_cast<std::size_t>(n)]; }
};

/// Moduli below this count as zero amplitudes.
inline constexpr double kZeroAmplitude = 1e-12;

struct EprQualityReport {
    double min_modulus = 0.0;
    int zero_count = 0;
    double flatness = 0.0;            ///< max|s_n| - min|s_n|
    double entropy = 0.0;             ///< -sum |s_n|^2 ln |s_n|^2, nats
    double normalized_entropy = 0.0;  ///< entropy / ln(N+1); 1 for a flat resource
};

/// f^j_{m'}(beta) = sum_m e^{i m (phi0 + pi/2)} d^j_{m' m}(beta)
[[nodiscard]] Complex f_coefficient(SpinJ j, SpinProjection m_out, double beta, double phi0 = 0.0);

inline constexpr double kDefaultFilterBeta = 1.5707963267948966;  // pi/2

/// Filtered beam-splitter input for N photons. Levels 0 and 1/2 are |j 0> and
/// (|j 1/2> + |j -1/2>)/sqrt2. Levels 1 and 3/2 keep the |m| <= mu amplitudes
/// i^{-m} f^j_m(beta_for_f) of the back-rotated relative-phase state and
/// divide by C_mu.
[[nodiscard]] SpinState filtered_input(int total_photons, FilterOrder order,
                                       double beta_for_f = kDefaultFilterBeta, double phi0 = 0.0);

/// (pi/2)(1 - 1/N)
[[nodiscard]] double beta_q(int total_photons);

[[nodiscard]] QuasiEprResource make_resource(const SpinState& input, double beta);

/// s_n = i^{-n+N/2} d^{N/2}_{n-N/2,0}(-beta), N even.
[[nodiscard]] QuasiEprResource j0_resource_closed_form(int total_photons, double beta);
/// s_n = i^{-n+N/2} [d_{n-N/2,1/2} - i d_{n-N/2,-1/2}](-beta) / sqrt2, N odd, with
/// i^x = e^{i pi x / 2}. Equals make_resource of the two-point input up to the
/// global phase e^{i pi / 4}.
[[nodiscard]] QuasiEprResource two_point_resource_closed_form(int total_photons, double beta);

[[nodiscard]] EprQualityReport quality(const QuasiEprResource& resource);

/// arg s_n in (-pi, pi]; values within 1e-12 of -pi are reported as pi.
[[nodiscard]] std::vector<double> phase_distribution(const QuasiEprResource& resource);

}  // namespace fockport
