#pragma once

// SU(2) rotation machinery for two-mode fields in the Schwinger picture.
//
// A two-mode Fock state |n_a>|n_b> is the spin eigenstate |j m>_z with
// j = (n_a + n_b)/2 and m = (n_a - n_b)/2. Spins are stored doubled so that
// half-integer values stay exact.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fockport {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

/// Total spin j, stored as 2j.
struct SpinJ {
    int twice_j = 0;

    constexpr SpinJ() = default;
    explicit SpinJ(int twice);

    /// j for N photons.
    static SpinJ from_photons(int total_photons) { return SpinJ(total_photons); }

    [[nodiscard]] constexpr int photons() const noexcept { return twice_j; }
    [[nodiscard]] constexpr std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(twice_j) + 1;
    }
    [[nodiscard]] constexpr double value() const noexcept { return 0.5 * twice_j; }

    friend constexpr bool operator==(SpinJ, SpinJ) = default;
};

/// Spin projection m, stored as 2m.
struct SpinProjection {
    int twice_m = 0;

    constexpr SpinProjection() = default;
    constexpr explicit SpinProjection(int twice) : twice_m(twice) {}

    /// Projection at vector index i (m = -j + i).
    static constexpr SpinProjection at_index(SpinJ j, std::size_t i) {
        return SpinProjection(2 * static_cast<int>(i) - j.twice_j);
    }

    [[nodiscard]] constexpr double value() const noexcept { return 0.5 * twice_m; }
    /// Vector index (n_a) of this projection inside the (2j+1)-dim space.
    [[nodiscard]] constexpr std::size_t index_in(SpinJ j) const noexcept {
        return static_cast<std::size_t>((twice_m + j.twice_j) / 2);
    }
    [[nodiscard]] bool valid_for(SpinJ j) const noexcept;

    friend constexpr bool operator==(SpinProjection, SpinProjection) = default;
};

/// Throws DomainError unless |m| <= j with matching parity.
void require_projection(SpinJ j, SpinProjection m);

/// Normalized state of fixed total photon number, amplitude i <-> m = -j + i.
class SpinState {
public:
    static constexpr double kNormTolerance = 1e-10;

    /// Takes amplitudes that are already normalized to within kNormTolerance.
    SpinState(SpinJ j, Amplitudes amplitudes);

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    static SpinState normalized(SpinJ j, Amplitudes amplitudes);
    static SpinState basis(SpinJ j, SpinProjection m);

    [[nodiscard]] SpinJ j() const noexcept { return j_; }
    [[nodiscard]] std::size_t size() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] const Amplitudes& amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] Complex operator[](std::size_t i) const { return amplitudes_[i]; }
    [[nodiscard]] Complex amplitude(SpinProjection m) const;
    [[nodiscard]] double norm() const noexcept;

private:
    SpinJ j_;
    Amplitudes amplitudes_;
};

[[nodiscard]] Complex inner_product(const SpinState& bra, const SpinState& ket);

/// Bare operator actions (results are not normalized).
[[nodiscard]] Amplitudes apply_jx(const SpinState& state);
[[nodiscard]] Amplitudes apply_jy(const SpinState& state);
[[nodiscard]] Amplitudes apply_jz(const SpinState& state);

/// Beam-splitter rotation angle. beta = 2 arccos(sqrt(R)), fixed to the + branch.
class BeamSplitterAngle {
public:
    explicit BeamSplitterAngle(double beta);
    static BeamSplitterAngle from_reflectivity(double reflectivity);
    static BeamSplitterAngle balanced();
    static BeamSplitterAngle from_degrees(double degrees);

    [[nodiscard]] double radians() const noexcept { return beta_; }
    [[nodiscard]] double degrees() const noexcept;
    [[nodiscard]] double reflectivity() const noexcept;
    [[nodiscard]] double transmittivity() const noexcept { return 1.0 - reflectivity(); }

private:
    double beta_;
};

/// Column d^j_{m',m}(beta) for every m' = -j..j, real by convention.
struct WignerColumn {
    SpinJ j;
    SpinProjection source_m;
    double beta = 0.0;
    std::vector<double> values;

    [[nodiscard]] double at(SpinProjection m_out) const { return values[m_out.index_in(j)]; }
};

/// Largest 2j evaluated with the explicit factorial sum; larger spins use the
/// three-term recurrence in m'.
inline constexpr int kFiniteSumMaxTwiceJ = 24;
/// Magnitudes below this are flushed to zero in computed columns.
inline constexpr double kUnderflowFlush = 1e-300;

[[nodiscard]] double wigner_d_element(SpinJ j, SpinProjection m_out, SpinProjection m_in, double beta);

/// Element by the finite factorial sum regardless of size; only trustworthy for
/// small j (cancellation). Exposed for cross-checks.
[[nodiscard]] double wigner_d_finite_sum(SpinJ j, SpinProjection m_out, SpinProjection m_in,
                                         double beta);

/// Stable for twice_j up to at least 20000; O(2j) work.
[[nodiscard]] WignerColumn wigner_d_column(SpinJ j, SpinProjection m_in, double beta);

/// Dense row-major complex matrix, used for the brute-force oracle.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Complex> data;

    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
    [[nodiscard]] Complex& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    [[nodiscard]] Complex operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    [[nodiscard]] Amplitudes apply(std::span<const Complex> v) const;
};

inline constexpr int kBruteForceMaxTwiceJ = 40;

/// exp(-i beta J_x) by eigendecomposition of the tridiagonal J_x matrix.
/// Independent of the d-matrix code path; refuses twice_j > kBruteForceMaxTwiceJ.
[[nodiscard]] ComplexMatrix brute_force_rotation(SpinJ j, double beta);

/// exp(-i beta J_x)|state>, amplitudes i^{m'-m} d^j_{m'm}(beta).
[[nodiscard]] SpinState rotate_about_x(const SpinState& state, double beta);

/// exp(i theta J_z)|state>: amplitude at m picks up e^{i theta m}.
[[nodiscard]] SpinState phase_shift(const SpinState& state, double theta);

}  // namespace fockport
