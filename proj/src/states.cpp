#include "fockport/states.hpp"

#include <cmath>
#include <string>

#include "fockport/errors.hpp"
#include "special.hpp"

namespace fockport {

std::pair<SpinJ, SpinProjection> two_mode_to_spin(TwoModeIndex idx) {
    if (idx.n_a < 0 || idx.n_b < 0) throw DomainError("photon counts must be non-negative");
    return {SpinJ(idx.n_a + idx.n_b), SpinProjection(idx.n_a - idx.n_b)};
}

TwoModeIndex spin_to_two_mode(SpinJ j, SpinProjection m) {
    require_projection(j, m);
    return {(j.twice_j + m.twice_m) / 2, (j.twice_j - m.twice_m) / 2};
}

namespace {

void require_photons(int n) {
    if (n < 0) throw DomainError("total photon number must be non-negative, got " + std::to_string(n));
}

}  // namespace

double RelativePhaseSpec::phase() const {
    return phi0 + 2.0 * detail::kPi * static_cast<double>(r) / static_cast<double>(total_photons + 1);
}

SpinState relative_phase_state(const RelativePhaseSpec& spec) {
    require_photons(spec.total_photons);
    if (spec.r < 0 || spec.r > spec.total_photons) {
        throw DomainError("relative phase index r must lie in [0, N], got " + std::to_string(spec.r));
    }
    const SpinJ j(spec.total_photons);
    const double phi = spec.phase();
    const double amp = 1.0 / std::sqrt(static_cast<double>(j.dimension()));
    Amplitudes a(j.dimension());
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = amp * detail::unit_phase(SpinProjection::at_index(j, i).value() * phi);
    }
    return SpinState(j, std::move(a));
}

SpinState general_phase_state(const GeneralPhaseSpec& spec) {
    require_photons(spec.total_photons);
    const SpinJ j(spec.total_photons);
    if (spec.thetas.size() != j.dimension()) {
        throw DomainError("general phase state: need N+1 = " + std::to_string(j.dimension()) + " phases, got " +
                          std::to_string(spec.thetas.size()));
    }
    const double amp = 1.0 / std::sqrt(static_cast<double>(j.dimension()));
    Amplitudes a(j.dimension());
    for (std::size_t n = 0; n < a.size(); ++n) {
        a[n] = amp * detail::unit_phase(std::remainder(spec.thetas[n], 2.0 * detail::kPi));
    }
    return SpinState(j, std::move(a));
}

CoherentTarget coherent_coefficients(double alpha, double tail_tol) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw DomainError("coherent amplitude alpha must be real and non-negative");
    }
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw DomainError("tail tolerance must lie in (0, 1)");

    CoherentTarget t;
    t.alpha = alpha;
    if (alpha == 0.0) {
        t.coeffs = {1.0};
        return t;
    }

    // Poisson weights p_k = e^{-a^2} a^{2k} / k!, far enough out that the
    // remaining mass is below double resolution; suffix sums give exact tails.
    const double mean = alpha * alpha;
    const int cap = static_cast<int>(std::ceil(mean + 40.0 * std::sqrt(mean) + 60.0));
    std::vector<double> log_p(static_cast<std::size_t>(cap) + 1);
    std::vector<double> p(log_p.size());
    for (int k = 0; k <= cap; ++k) {
        log_p[k] = -mean + 2.0 * k * std::log(alpha) - static_cast<double>(detail::log_factorial(k));
        p[k] = std::exp(log_p[k]);
    }
    std::vector<double> tail(p.size() + 1, 0.0);  // tail[k] = sum_{i >= k} p_i
    for (int k = cap; k >= 0; --k) tail[k] = tail[k + 1] + p[k];

    int k_max = 0;
    while (k_max < cap && tail[k_max + 1] >= tail_tol) ++k_max;

    t.k_max = k_max;
    t.discarded_tail = tail[k_max + 1];
    t.coeffs.resize(static_cast<std::size_t>(k_max) + 1);
    double mass = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        t.coeffs[k] = std::exp(0.5 * log_p[k]);
        mass += t.coeffs[k] * t.coeffs[k];
    }
    const double inv = 1.0 / std::sqrt(mass);
    for (auto& c : t.coeffs) c *= inv;
    return t;
}

}  // namespace fockport
