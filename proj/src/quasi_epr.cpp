#include "fockport/quasi_epr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fockport/errors.hpp"
#include "special.hpp"

namespace fockport {

using detail::kPi;

QuasiEprResource QuasiEprResource::from_state(const SpinState& state) {
    return {state.j().photons(), state.amplitudes()};
}

QuasiEprResource QuasiEprResource::ideal(int total_photons) {
    if (total_photons < 0) throw DomainError("total photon number must be non-negative");
    const double amp = 1.0 / std::sqrt(static_cast<double>(total_photons + 1));
    return {total_photons, Amplitudes(static_cast<std::size_t>(total_photons) + 1, Complex(amp, 0.0))};
}

Complex f_coefficient(SpinJ j, SpinProjection m_out, double beta, double phi0) {
    require_projection(j, m_out);
    // Row m' from column m' through d_{m'm} = (-1)^{m'-m} d_{mm'}.
    const WignerColumn col = wigner_d_column(j, m_out, beta);
    Complex f = 0.0;
    for (std::size_t i = 0; i < j.dimension(); ++i) {
        const SpinProjection m = SpinProjection::at_index(j, i);
        const double d = detail::sign_power((m_out.twice_m - m.twice_m) / 2) * col.values[i];
        f += d * detail::unit_phase(m.value() * (phi0 + kPi / 2.0));
    }
    return f;
}

SpinState filtered_input(int total_photons, FilterOrder order, double beta_for_f, double phi0) {
    if (total_photons < 0) throw DomainError("total photon number must be non-negative");
    if (order.twice_level < 0 || order.twice_level > 3) {
        throw DomainError("filter level must be one of 0, 1/2, 1, 3/2");
    }
    if (!order.compatible_with(total_photons)) {
        throw DomainError("filter level 2mu=" + std::to_string(order.twice_level) +
                          " has the wrong parity for N=" + std::to_string(total_photons));
    }
    const SpinJ j(total_photons);
    if (order.twice_level > j.twice_j) {
        throw DomainError("filter level exceeds j for N=" + std::to_string(total_photons));
    }
    Amplitudes a(j.dimension());
    switch (order.twice_level) {
        case 0:
            a[SpinProjection(0).index_in(j)] = 1.0;
            return SpinState(j, std::move(a));
        case 1: {
            const double h = 1.0 / std::sqrt(2.0);
            a[SpinProjection(1).index_in(j)] = h;
            a[SpinProjection(-1).index_in(j)] = h;
            return SpinState(j, std::move(a));
        }
        default:
            for (int tm = -order.twice_level; tm <= order.twice_level; tm += 2) {
                const SpinProjection m(tm);
                // Amplitude of the back-rotated relative-phase state: i^{-m} f_m.
                a[m.index_in(j)] = detail::unit_phase(-kPi / 2.0 * m.value()) * f_coefficient(j, m, beta_for_f, phi0);
            }
            // Dividing by C_mu = (sum |f_m|^2)^{1/2} is exactly a renormalization.
            return SpinState::normalized(j, std::move(a));
    }
}

double beta_q(int total_photons) {
    if (total_photons < 1) throw DomainError("beta_Q needs N >= 1");
    return (kPi / 2.0) * (1.0 - 1.0 / static_cast<double>(total_photons));
}

QuasiEprResource make_resource(const SpinState& input, double beta) {
    return QuasiEprResource::from_state(rotate_about_x(input, beta));
}

namespace {

Complex i_to_half_power(int twice_exponent) {
    return detail::unit_phase(kPi / 4.0 * static_cast<double>(twice_exponent));
}

// d_{m'm}(-beta) = (-1)^{m'-m} d_{m'm}(beta): the amplitude formulas are written
// for the opposite sign of the rotation angle.
double flipped_d(const WignerColumn& col, int n) {
    const int twice_mp = 2 * n - col.j.twice_j;
    return detail::sign_power((twice_mp - col.source_m.twice_m) / 2) * col.values[static_cast<std::size_t>(n)];
}

}  // namespace

QuasiEprResource j0_resource_closed_form(int total_photons, double beta) {
    if (total_photons < 0 || total_photons % 2 != 0) throw DomainError("j0 resource needs N even");
    const SpinJ j(total_photons);
    const WignerColumn col = wigner_d_column(j, SpinProjection(0), beta);
    QuasiEprResource r{total_photons, Amplitudes(j.dimension())};
    for (int n = 0; n <= total_photons; ++n) {
        const int twice_mp = 2 * n - total_photons;
        r.s[n] = i_to_half_power(-twice_mp) * flipped_d(col, n);
    }
    return r;
}

QuasiEprResource two_point_resource_closed_form(int total_photons, double beta) {
    if (total_photons < 1 || total_photons % 2 != 1) throw DomainError("two-point resource needs N odd");
    const SpinJ j(total_photons);
    const WignerColumn plus = wigner_d_column(j, SpinProjection(1), beta);
    const WignerColumn minus = wigner_d_column(j, SpinProjection(-1), beta);
    const Complex i(0.0, 1.0);
    QuasiEprResource r{total_photons, Amplitudes(j.dimension())};
    for (int n = 0; n <= total_photons; ++n) {
        const int twice_mp = 2 * n - total_photons;
        r.s[n] = i_to_half_power(-twice_mp) * (flipped_d(plus, n) - i * flipped_d(minus, n)) / std::sqrt(2.0);
    }
    return r;
}

EprQualityReport quality(const QuasiEprResource& resource) {
    EprQualityReport q;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& z : resource.s) {
        const double a = std::abs(z);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
        if (a < kZeroAmplitude) ++q.zero_count;
        const double p = a * a;
        if (p > 0.0) q.entropy -= p * std::log(p);
    }
    q.min_modulus = lo;
    q.flatness = hi - lo;
    const double max_entropy = std::log(static_cast<double>(resource.s.size()));
    q.normalized_entropy = max_entropy > 0.0 ? q.entropy / max_entropy : 1.0;
    return q;
}

std::vector<double> phase_distribution(const QuasiEprResource& resource) {
    std::vector<double> out;
    out.reserve(resource.s.size());
    for (const auto& z : resource.s) {
        double a = std::arg(z);
        if (a <= -kPi + 1e-12) a = kPi;
        out.push_back(a);
    }
    return out;
}

}  // namespace fockport
