#include "fockport/su2_kernel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "fockport/errors.hpp"
#include "special.hpp"

namespace fockport {

using detail::i_power;
using detail::sign_power;

SpinJ::SpinJ(int twice) : twice_j(twice) {
    if (twice < 0) throw DomainError("spin: 2j must be non-negative, got " + std::to_string(twice));
}

bool SpinProjection::valid_for(SpinJ j) const noexcept {
    return std::abs(twice_m) <= j.twice_j && ((twice_m - j.twice_j) % 2 == 0);
}

void require_projection(SpinJ j, SpinProjection m) {
    if (!m.valid_for(j)) {
        throw DomainError("projection 2m=" + std::to_string(m.twice_m) + " invalid for 2j=" +
                          std::to_string(j.twice_j));
    }
}

// ---------------------------------------------------------------------------
// SpinState

namespace {

double squared_norm(const Amplitudes& a) {
    double s = 0.0;
    for (const auto& z : a) s += std::norm(z);
    return s;
}

}  // namespace

SpinState::SpinState(SpinJ j, Amplitudes amplitudes) : j_(j), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != j_.dimension()) {
        throw DomainError("spin state: expected " + std::to_string(j_.dimension()) +
                          " amplitudes, got " + std::to_string(amplitudes_.size()));
    }
    const double n2 = squared_norm(amplitudes_);
    if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
        throw DomainError("spin state: amplitudes not normalized (|psi|^2 = " + std::to_string(n2) + ")");
    }
}

SpinState SpinState::normalized(SpinJ j, Amplitudes amplitudes) {
    const double n = std::sqrt(squared_norm(amplitudes));
    if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("spin state: cannot normalize zero vector");
    for (auto& z : amplitudes) z /= n;
    return SpinState(j, std::move(amplitudes));
}

SpinState SpinState::basis(SpinJ j, SpinProjection m) {
    require_projection(j, m);
    Amplitudes a(j.dimension());
    a[m.index_in(j)] = 1.0;
    return SpinState(j, std::move(a));
}

Complex SpinState::amplitude(SpinProjection m) const {
    require_projection(j_, m);
    return amplitudes_[m.index_in(j_)];
}

double SpinState::norm() const noexcept { return std::sqrt(squared_norm(amplitudes_)); }

Complex inner_product(const SpinState& bra, const SpinState& ket) {
    if (bra.j() != ket.j()) throw DomainError("inner product: spins differ");
    Complex s = 0.0;
    for (std::size_t i = 0; i < bra.size(); ++i) s += std::conj(bra[i]) * ket[i];
    return s;
}

namespace {

// <m+1|J_+|m> = sqrt((j-m)(j+m+1)), everything in doubled units.
double raising_coefficient(int twice_j, int twice_m) {
    const double p = static_cast<double>(twice_j - twice_m) * static_cast<double>(twice_j + twice_m + 2);
    return p > 0.0 ? 0.5 * std::sqrt(p) : 0.0;
}

// <m-1|J_-|m> = sqrt((j+m)(j-m+1))
double lowering_coefficient(int twice_j, int twice_m) {
    const double p = static_cast<double>(twice_j + twice_m) * static_cast<double>(twice_j - twice_m + 2);
    return p > 0.0 ? 0.5 * std::sqrt(p) : 0.0;
}

}  // namespace

Amplitudes apply_jx(const SpinState& state) {
    const int tj = state.j().twice_j;
    const std::size_t n = state.size();
    Amplitudes out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int tm = SpinProjection::at_index(state.j(), i).twice_m;
        if (i + 1 < n) out[i + 1] += 0.5 * raising_coefficient(tj, tm) * state[i];
        if (i > 0) out[i - 1] += 0.5 * lowering_coefficient(tj, tm) * state[i];
    }
    return out;
}

Amplitudes apply_jy(const SpinState& state) {
    const int tj = state.j().twice_j;
    const std::size_t n = state.size();
    const Complex half_i(0.0, 0.5);
    Amplitudes out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int tm = SpinProjection::at_index(state.j(), i).twice_m;
        // J_y = (J_+ - J_-) / 2i
        if (i + 1 < n) out[i + 1] += -half_i * raising_coefficient(tj, tm) * state[i];
        if (i > 0) out[i - 1] += half_i * lowering_coefficient(tj, tm) * state[i];
    }
    return out;
}

Amplitudes apply_jz(const SpinState& state) {
    Amplitudes out(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        out[i] = SpinProjection::at_index(state.j(), i).value() * state[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// BeamSplitterAngle

BeamSplitterAngle::BeamSplitterAngle(double beta) : beta_(beta) {
    if (!(beta >= 0.0 && beta <= detail::kPi)) {
        throw DomainError("beam splitter angle must lie in [0, pi], got " + std::to_string(beta));
    }
}

BeamSplitterAngle BeamSplitterAngle::from_reflectivity(double reflectivity) {
    if (!(reflectivity >= 0.0 && reflectivity <= 1.0)) {
        throw DomainError("reflectivity must lie in [0, 1], got " + std::to_string(reflectivity));
    }
    return BeamSplitterAngle(2.0 * std::acos(std::sqrt(reflectivity)));
}

BeamSplitterAngle BeamSplitterAngle::balanced() { return BeamSplitterAngle(detail::kPi / 2.0); }

BeamSplitterAngle BeamSplitterAngle::from_degrees(double degrees) {
    return BeamSplitterAngle(degrees * detail::kPi / 180.0);
}

double BeamSplitterAngle::degrees() const noexcept { return beta_ * 180.0 / detail::kPi; }

double BeamSplitterAngle::reflectivity() const noexcept {
    const double c = std::cos(beta_ / 2.0);
    return c * c;
}

// ---------------------------------------------------------------------------
// Wigner d

double wigner_d_finite_sum(SpinJ j, SpinProjection m_out, SpinProjection m_in, double beta) {
    require_projection(j, m_out);
    require_projection(j, m_in);
    const int tj = j.twice_j;
    const int j_plus_mp = (tj + m_out.twice_m) / 2;
    const int j_minus_mp = (tj - m_out.twice_m) / 2;
    const int j_plus_m = (tj + m_in.twice_m) / 2;
    const int j_minus_m = (tj - m_in.twice_m) / 2;
    const int delta = (m_in.twice_m - m_out.twice_m) / 2;  // m - m'

    using detail::log_factorial;
    const long double log_prefactor = 0.5L * (log_factorial(j_plus_mp) + log_factorial(j_minus_mp) +
                                              log_factorial(j_plus_m) + log_factorial(j_minus_m));
    const long double c = std::cos(static_cast<long double>(beta) / 2.0L);
    const long double s = std::sin(static_cast<long double>(beta) / 2.0L);

    const int k_lo = std::max(0, delta);
    const int k_hi = std::min(j_plus_m, j_minus_mp);
    long double sum = 0.0L;
    for (int k = k_lo; k <= k_hi; ++k) {
        const long double log_term = log_prefactor - log_factorial(j_plus_m - k) - log_factorial(k) -
                                     log_factorial(j_minus_mp - k) - log_factorial(k - delta);
        const int cos_power = j_plus_m + j_minus_mp - 2 * k;
        const int sin_power = 2 * k - delta;
        const long double term = std::exp(log_term) * std::pow(c, cos_power) * std::pow(s, sin_power);
        sum += ((k - delta) % 2 == 0) ? term : -term;
    }
    return static_cast<double>(sum);
}

namespace {

constexpr double kDegenerateSin = 1e-14;
constexpr double kRescaleAbove = 1e150;

void flush_tiny(std::vector<double>& v) {
    for (auto& x : v) {
        if (std::abs(x) < kUnderflowFlush) x = 0.0;
    }
}

// beta a multiple of pi: the rotation is a (signed) permutation.
std::vector<double> degenerate_column(SpinJ j, SpinProjection m_in, double beta) {
    std::vector<double> v(j.dimension(), 0.0);
    const double ch = std::cos(beta / 2.0);
    const double sh = std::sin(beta / 2.0);
    const int tj = j.twice_j;
    if (std::abs(ch) >= std::abs(sh)) {
        const double sign = (ch < 0.0) ? sign_power(tj) : 1.0;
        v[m_in.index_in(j)] = sign;
    } else {
        const double sign = sign_power((tj - m_in.twice_m) / 2) * ((sh < 0.0) ? sign_power(tj) : 1.0);
        v[SpinProjection(-m_in.twice_m).index_in(j)] = sign;
    }
    return v;
}

// Sign of the top-edge element d^j_{j,m} = (-1)^{j-m} sqrt(C(2j, j+m)) c^{j+m} s^{j-m}.
double top_edge_sign(SpinJ j, SpinProjection m_in, double beta) {
    const int j_plus_m = (j.twice_j + m_in.twice_m) / 2;
    const int j_minus_m = (j.twice_j - m_in.twice_m) / 2;
    double sign = sign_power(j_minus_m);
    if (std::cos(beta / 2.0) < 0.0) sign *= sign_power(j_plus_m);
    if (std::sin(beta / 2.0) < 0.0) sign *= sign_power(j_minus_m);
    return sign;
}

void scale_by_window_max(std::vector<double>& v, std::size_t first, std::size_t last) {
    double peak = 0.0;
    for (std::size_t i = first; i <= last; ++i) peak = std::max(peak, std::abs(v[i]));
    if (peak > 0.0) {
        for (auto& x : v) x /= peak;
    }
}

// Two-sided three-term recurrence in m':
//   up(m') d[m'+1] + dn(m') d[m'-1] = 2 (m - m' cos b) / sin b * d[m'].
// Each side recurses from its edge inward (the growing direction through the
// classically forbidden tail) to the band centre m' ~ m cos b, where the two
// pieces are matched by least squares over a three-point window.
std::vector<double> recurrence_column(SpinJ j, SpinProjection m_in, double beta) {
    const int tj = j.twice_j;
    const std::size_t n = j.dimension();
    const double cb = std::cos(beta);
    const double sb = std::sin(beta);
    const double m = m_in.value();
    auto diag = [&](std::size_t i) {
        const double mp = SpinProjection::at_index(j, i).value();
        return 2.0 * (m - mp * cb) / sb;
    };
    auto up = [&](std::size_t i) { return raising_coefficient(tj, SpinProjection::at_index(j, i).twice_m); };
    auto dn = [&](std::size_t i) { return lowering_coefficient(tj, SpinProjection::at_index(j, i).twice_m); };

    const double centre = std::round(m * cb + j.value());
    const std::size_t mid = static_cast<std::size_t>(std::clamp(centre, 1.0, static_cast<double>(n - 2)));

    // Downward from m' = j.
    std::vector<double> top(n, 0.0);
    top[n - 1] = top_edge_sign(j, m_in, beta);
    for (std::size_t i = n - 1; i >= mid; --i) {
        const double next = (i + 1 < n) ? up(i) * top[i + 1] : 0.0;
        top[i - 1] = (diag(i) * top[i] - next) / dn(i);
        if (std::abs(top[i - 1]) > kRescaleAbove) {
            for (std::size_t k = i - 1; k < n; ++k) top[k] /= kRescaleAbove;
        }
        if (i == mid) break;
    }

    // Upward from m' = -j.
    std::vector<double> bottom(n, 0.0);
    bottom[0] = 1.0;
    for (std::size_t i = 0; i <= mid; ++i) {
        const double prev = (i > 0) ? dn(i) * bottom[i - 1] : 0.0;
        bottom[i + 1] = (diag(i) * bottom[i] - prev) / up(i);
        if (std::abs(bottom[i + 1]) > kRescaleAbove) {
            for (std::size_t k = 0; k <= i + 1; ++k) bottom[k] /= kRescaleAbove;
        }
    }

    scale_by_window_max(top, mid - 1, mid + 1);
    scale_by_window_max(bottom, mid - 1, mid + 1);
    double tb = 0.0;
    double bb = 0.0;
    for (std::size_t i = mid - 1; i <= mid + 1; ++i) {
        tb += top[i] * bottom[i];
        bb += bottom[i] * bottom[i];
    }
    const double lambda = tb / bb;

    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (i < mid) ? lambda * bottom[i] : top[i];

    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    double sum = 0.0;
    for (double x : v) sum += (x / peak) * (x / peak);
    const double scale = 1.0 / (peak * std::sqrt(sum));
    for (auto& x : v) x *= scale;
    flush_tiny(v);
    return v;
}

}  // namespace

WignerColumn wigner_d_column(SpinJ j, SpinProjection m_in, double beta) {
    require_projection(j, m_in);
    WignerColumn col{j, m_in, beta, {}};
    if (std::abs(std::sin(beta)) < kDegenerateSin) {
        col.values = degenerate_column(j, m_in, beta);
    } else if (j.twice_j <= kFiniteSumMaxTwiceJ) {
        col.values.resize(j.dimension());
        for (std::size_t i = 0; i < j.dimension(); ++i) {
            col.values[i] = wigner_d_finite_sum(j, SpinProjection::at_index(j, i), m_in, beta);
        }
        flush_tiny(col.values);
    } else {
        col.values = recurrence_column(j, m_in, beta);
    }
    return col;
}

double wigner_d_element(SpinJ j, SpinProjection m_out, SpinProjection m_in, double beta) {
    require_projection(j, m_out);
    require_projection(j, m_in);
    if (j.twice_j <= kFiniteSumMaxTwiceJ) return wigner_d_finite_sum(j, m_out, m_in, beta);
    return wigner_d_column(j, m_in, beta).at(m_out);
}

// ---------------------------------------------------------------------------
// Rotations

Amplitudes ComplexMatrix::apply(std::span<const Complex> v) const {
    if (v.size() != cols) throw DomainError("matrix/vector size mismatch");
    Amplitudes out(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        Complex s = 0.0;
        for (std::size_t c = 0; c < cols; ++c) s += (*this)(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

ComplexMatrix brute_force_rotation(SpinJ j, double beta) {
    if (j.twice_j > kBruteForceMaxTwiceJ) {
        throw DomainError("brute_force_rotation: 2j=" + std::to_string(j.twice_j) + " exceeds cap " +
                          std::to_string(kBruteForceMaxTwiceJ));
    }
    const auto n = static_cast<Eigen::Index>(j.dimension());
    Eigen::MatrixXd jx = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double m = -j.value() + static_cast<double>(i);
        const double e = 0.5 * std::sqrt(j.value() * (j.value() + 1.0) - m * (m + 1.0));
        jx(i + 1, i) = e;
        jx(i, i + 1) = e;
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jx);
    const Eigen::MatrixXcd vecs = eig.eigenvectors().cast<Complex>();
    Eigen::VectorXcd phases(n);
    for (Eigen::Index k = 0; k < n; ++k) phases(k) = std::exp(Complex(0.0, -beta * eig.eigenvalues()(k)));
    const Eigen::MatrixXcd u = vecs * phases.asDiagonal() * vecs.adjoint();

    ComplexMatrix out(j.dimension(), j.dimension());
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = u(r, c);
        }
    }
    return out;
}

SpinState rotate_about_x(const SpinState& state, double beta) {
    const SpinJ j = state.j();
    const std::size_t n = state.size();
    Amplitudes out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Complex a = state[i];
        if (a == Complex(0.0, 0.0)) continue;
        const SpinProjection m = SpinProjection::at_index(j, i);
        const WignerColumn col = wigner_d_column(j, m, beta);
        for (std::size_t k = 0; k < n; ++k) {
            if (col.values[k] == 0.0) continue;
            const SpinProjection mp = SpinProjection::at_index(j, k);
            out[k] += i_power((mp.twice_m - m.twice_m) / 2) * (col.values[k] * a);
        }
    }
    return SpinState(j, std::move(out));
}

SpinState phase_shift(const SpinState& state, double theta) {
    Amplitudes out(state.amplitudes());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] *= detail::unit_phase(theta * SpinProjection::at_index(state.j(), i).value());
    }
    return SpinState(state.j(), std::move(out));
}

}  // namespace fockport
