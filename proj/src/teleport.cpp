#include "fockport/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fockport/errors.hpp"
#include "special.hpp"

namespace fockport {

using detail::kPi;
using detail::unit_phase;

namespace {

constexpr double kUnreachableWeight = kUnreachableProbability;

struct KRange {
    int lo;
    int hi;
};

KRange k_range(const CoherentTarget& target, int q, int total_photons) {
    return {std::max(0, q - total_photons), std::min(q, target.k_max)};
}

void require_q(int q) {
    if (q < 0) throw DomainError("number-sum outcome q must be non-negative, got " + std::to_string(q));
}

}  // namespace

double MeasurementOutcome::phase() const {
    return phi0 + 2.0 * kPi * static_cast<double>(s_index) / static_cast<double>(q + 1);
}

AlicePhaseShift shifted_phase_operator(double resource_phase_offset) { return {resource_phase_offset}; }

std::optional<double> linear_phase_offset(const std::vector<double>& thetas, double tol) {
    if (thetas.size() < 2) return 0.0;
    const double slope = std::remainder(thetas[1] - thetas[0], 2.0 * kPi);
    for (std::size_t n = 1; n < thetas.size(); ++n) {
        const double step = std::remainder(thetas[n] - thetas[n - 1] - slope, 2.0 * kPi);
        if (std::abs(step) > tol) return std::nullopt;
    }
    return slope;
}

BobState post_measurement_state(const CoherentTarget& target, const QuasiEprResource& resource,
                                const MeasurementOutcome& outcome, const AlicePhaseShift& alice_shift) {
    require_q(outcome.q);
    if (outcome.s_index < 0 || outcome.s_index > outcome.q) {
        throw DomainError("phase outcome index must lie in [0, q]");
    }
    const int q = outcome.q;
    const KRange ks = k_range(target, q, resource.total_photons);
    if (ks.hi < ks.lo) throw UnreachableOutcome(q);

    BobState bob;
    bob.total_photons = resource.total_photons;
    bob.q = q;
    bob.k0 = ks.lo;
    double weight = 0.0;
    const double phi = outcome.phase() - alice_shift.phase_per_photon();
    for (int k = ks.lo; k <= ks.hi; ++k) {
        const Complex s = resource[q - k];
        weight += target.weight(k) * std::norm(s);
        bob.amplitudes.push_back(unit_phase(-k * phi) * target.coeffs[k] * s);
    }
    if (!(weight > kUnreachableWeight)) throw UnreachableOutcome(q);
    bob.norm_factor = 1.0 / std::sqrt(weight);
    for (auto& a : bob.amplitudes) a *= bob.norm_factor;
    return bob;
}

FockState reconstruct(const BobState& bob, double resource_phase_offset, const MeasurementOutcome& outcome) {
    FockState out;
    out.amplitudes.assign(static_cast<std::size_t>(bob.k_last()) + 1, Complex(0.0, 0.0));
    const double phi = resource_phase_offset + outcome.phase();
    for (std::size_t i = 0; i < bob.amplitudes.size(); ++i) {
        const int k = bob.k0 + static_cast<int>(i);
        out.amplitudes[k] = unit_phase(k * phi) * bob.amplitudes[i];
    }
    return out;
}

Complex parity_phase(int fock_index, int q) {
    // k^2 mod 4 is 0 or 1, so the phase is 1 or e^{+-i pi/2}.
    if (fock_index % 2 == 0) return {1.0, 0.0};
    return (q % 2 == 0) ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
}

FockState parity_phase_correction(const FockState& state, int q) {
    FockState out = state;
    for (std::size_t k = 0; k < out.amplitudes.size(); ++k) out.amplitudes[k] *= parity_phase(static_cast<int>(k), q);
    return out;
}

double fidelity(const CoherentTarget& target, const QuasiEprResource& resource, int q,
                const FidelityOptions& options) {
    require_q(q);
    const KRange ks = k_range(target, q, resource.total_photons);
    Complex overlap = 0.0;
    double weight = 0.0;
    for (int k = ks.lo; k <= ks.hi; ++k) {
        const double c2 = target.weight(k);
        Complex s = resource[q - k];
        weight += c2 * std::norm(s);
        if (options.parity_correction) {
            const int index = options.parity_index == ParityIndex::bob_field ? k + resource.total_photons - q : k;
            s *= parity_phase(index, q);
        }
        overlap += c2 * s;
    }
    if (!(weight > kUnreachableWeight)) throw UnreachableOutcome(q);
    return std::min(1.0, std::norm(overlap) / weight);
}

double fidelity_bound(const CoherentTarget& target, int q, int total_photons) {
    require_q(q);
    const KRange ks = k_range(target, q, total_photons);
    double mass = 0.0;
    for (int k = ks.lo; k <= ks.hi; ++k) mass += target.weight(k);
    return std::min(1.0, mass);
}

double outcome_probability(const CoherentTarget& target, const QuasiEprResource& resource, int q) {
    require_q(q);
    const KRange ks = k_range(target, q, resource.total_photons);
    double p = 0.0;
    for (int k = ks.lo; k <= ks.hi; ++k) p += target.weight(k) * std::norm(resource[q - k]);
    return p > kUnreachableWeight ? p : 0.0;
}

int max_outcome(const CoherentTarget& target, const QuasiEprResource& resource) {
    return resource.total_photons + target.k_max;
}

TeleportOutcome evaluate_outcome(const CoherentTarget& target, const QuasiEprResource& resource, int q,
                                 const FidelityOptions& options) {
    TeleportOutcome out;
    out.q = q;
    out.bound = fidelity_bound(target, q, resource.total_photons);
    out.probability = outcome_probability(target, resource, q);
    if (out.probability > kUnreachableWeight) out.fidelity = fidelity(target, resource, q, options);
    else out.probability = 0.0;
    return out;
}

std::vector<TeleportOutcome> evaluate_all_outcomes(const CoherentTarget& target, const QuasiEprResource& resource,
                                                   const FidelityOptions& options) {
    std::vector<TeleportOutcome> rows;
    const int last = max_outcome(target, resource);
    rows.reserve(static_cast<std::size_t>(last) + 1);
    for (int q = 0; q <= last; ++q) rows.push_back(evaluate_outcome(target, resource, q, options));
    return rows;
}

double average_fidelity(const CoherentTarget& target, const QuasiEprResource& resource,
                        const FidelityOptions& options) {
    double total = 0.0;
    for (const auto& row : evaluate_all_outcomes(target, resource, options)) {
        if (row.fidelity) total += row.probability * *row.fidelity;
    }
    return std::min(1.0, total);
}

QRange high_fidelity_region(double alpha, int total_photons) {
    if (!(alpha >= 0.0)) throw DomainError("alpha must be non-negative");
    const double a2 = alpha * alpha;
    constexpr double eps = 1e-9;
    const double lo = std::ceil(a2 + alpha - eps);
    const double hi = std::floor(static_cast<double>(total_photons) - a2 + alpha + eps);
    if (hi < lo) return {};
    return {static_cast<int>(lo), static_cast<int>(hi)};
}

double overlap_with_truncated_target(const FockState& state, const CoherentTarget& target, int lo, int hi) {
    lo = std::max(lo, 0);
    hi = std::min(hi, target.k_max);
    double mass = 0.0;
    Complex overlap = 0.0;
    for (int k = lo; k <= hi; ++k) {
        mass += target.weight(k);
        if (static_cast<std::size_t>(k) < state.amplitudes.size()) overlap += target.coeffs[k] * state.amplitudes[k];
    }
    if (!(mass > 0.0)) return 0.0;
    return std::norm(overlap) / mass;
}

}  // namespace fockport
