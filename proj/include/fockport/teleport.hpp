#pragma once

// Number-sum / relative-phase teleportation of a coherent target through a
// (quasi-)EPR resource sum_n s_n |n>_A |N-n>_B.
//
// Alice measures N_T + N_A = q and the relative phase phi^{(q)}_s. Bob's field
// is left in C(q) sum_k e^{-i k phi_s} c_k s_{q-k} |k+N-q>_B, with k from
// k0 = max(0, q-N) to q. Bob shifts the photon number by q-N and undoes the
// known phases.

#include <optional>
#include <vector>

#include "fockport/quasi_epr.hpp"
#include "fockport/states.hpp"

namespace fockport {

/// P(q) at or below this is treated as exactly zero. Amplitudes that vanish
/// analytically come out of the rotation kernel at ~1e-16, so their outcome
/// probabilities sit near 1e-32 and the fidelity ratio there is pure roundoff.
inline constexpr double kUnreachableProbability = 1e-24;

struct MeasurementOutcome {
    int q = 0;
    int s_index = 0;
    double phi0 = 0.0;

    /// phi^{(q)}_s = phi0 + 2 pi s / (q + 1)
    [[nodiscard]] double phase() const;
};

/// Alice-side alternative to Bob's resource-phase correction: measure the
/// relative phase with the operator conjugated by e^{-i offset J_z}. The
/// resource's linear phase offset is then cancelled on Alice's side and Bob
/// only needs the measured phase.
struct AlicePhaseShift {
    double offset = 0.0;

    /// Extra phase per target photon number k picked up by the projection.
    [[nodiscard]] double phase_per_photon() const noexcept { return offset; }
};

/// Descriptor for measuring with e^{-i phi J_z} phi_TA e^{i phi J_z}.
[[nodiscard]] AlicePhaseShift shifted_phase_operator(double resource_phase_offset);

/// Slope phi if theta_n = theta_0 + n phi (within tol), i.e. the profile is
/// correctable by a plain phase shift; nullopt otherwise.
[[nodiscard]] std::optional<double> linear_phase_offset(const std::vector<double>& thetas, double tol = 1e-9);

/// Bob's field after Alice's measurement.
struct BobState {
    int total_photons = 0;  ///< N of the resource
    int q = 0;
    int k0 = 0;
    double norm_factor = 0.0;  ///< C(q)
    Amplitudes amplitudes;     ///< entry i is k = k0 + i, at Bob's Fock index k + N - q

    [[nodiscard]] int k_last() const noexcept { return k0 + static_cast<int>(amplitudes.size()) - 1; }
    [[nodiscard]] int fock_index(int k) const noexcept { return k + total_photons - q; }
};

/// Single-mode state, amplitude index = photon number.
struct FockState {
    Amplitudes amplitudes;
};

[[nodiscard]] BobState post_measurement_state(const CoherentTarget& target, const QuasiEprResource& resource,
                                              const MeasurementOutcome& outcome,
                                              const AlicePhaseShift& alice_shift = {});

/// Photon-number shift by q-N followed by the phase shift e^{i k (phi_r + phi_s)}.
/// resource_phase_offset is the slope phi_r of a linear resource phase profile.
[[nodiscard]] FockState reconstruct(const BobState& bob, double resource_phase_offset,
                                    const MeasurementOutcome& outcome);

/// Which Fock index carries the k^2 parity phase.
enum class ParityIndex {
    bob_field,  ///< Bob's field before the number shift, k + N - q
    shifted,    ///< after the shift, k
};

/// Multiplies the amplitude at Fock index k by e^{i (-1)^q (pi/2) k^2}.
[[nodiscard]] FockState parity_phase_correction(const FockState& state, int q);
[[nodiscard]] Complex parity_phase(int fock_index, int q);

struct FidelityOptions {
    bool parity_correction = false;
    ParityIndex parity_index = ParityIndex::bob_field;
};

/// F(q) = |sum |c_k|^2 s'_{q-k}|^2 / sum |c_k|^2 |s_{q-k}|^2, with s' the
/// parity-corrected amplitude when requested. Throws UnreachableOutcome when
/// P(q) = 0.
[[nodiscard]] double fidelity(const CoherentTarget& target, const QuasiEprResource& resource, int q,
                              const FidelityOptions& options = {});

/// sum_{k=k0}^{q} |c_k|^2, the ideal-resource value of F(q).
[[nodiscard]] double fidelity_bound(const CoherentTarget& target, int q, int total_photons);

/// P(q) = sum_{k=k0}^{q} |c_k|^2 |s_{q-k}|^2 = C(q)^{-2}, floored to 0 at kUnreachableProbability.
[[nodiscard]] double outcome_probability(const CoherentTarget& target, const QuasiEprResource& resource, int q);

/// Largest q with nonzero probability under truncation: N + k_max.
[[nodiscard]] int max_outcome(const CoherentTarget& target, const QuasiEprResource& resource);

struct TeleportOutcome {
    int q = 0;
    std::optional<double> fidelity;  ///< empty for unreachable outcomes
    double bound = 0.0;
    double probability = 0.0;
};

[[nodiscard]] TeleportOutcome evaluate_outcome(const CoherentTarget& target, const QuasiEprResource& resource,
                                               int q, const FidelityOptions& options = {});

/// One TeleportOutcome per q = 0..N+k_max.
[[nodiscard]] std::vector<TeleportOutcome> evaluate_all_outcomes(const CoherentTarget& target,
                                                                 const QuasiEprResource& resource,
                                                                 const FidelityOptions& options = {});

/// sum_q P(q) F(q) in ascending q.
[[nodiscard]] double average_fidelity(const CoherentTarget& target, const QuasiEprResource& resource,
                                      const FidelityOptions& options = {});

struct QRange {
    int lo = 0;
    int hi = -1;

    [[nodiscard]] bool empty() const noexcept { return hi < lo; }
    [[nodiscard]] bool contains(int q) const noexcept { return q >= lo && q <= hi; }
};

/// [alpha^2 + alpha, N - alpha^2 + alpha], rounded inward.
[[nodiscard]] QRange high_fidelity_region(double alpha, int total_photons);

/// |<truncated target on [lo, hi]|state>|^2 with the truncation renormalized.
[[nodiscard]] double overlap_with_truncated_target(const FockState& state, const CoherentTarget& target, int lo,
                                                   int hi);

}  // namespace fockport
