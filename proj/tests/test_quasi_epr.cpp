#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fockport/errors.hpp"
#include "fockport/quasi_epr.hpp"

using namespace fockport;
using std::numbers::pi;

namespace {

constexpr double kDeg = pi / 180.0;

QuasiEprResource j0_at(int n, double beta) { return make_resource(filtered_input(n, FilterOrder::j0()), beta); }

double phase_spread(const QuasiEprResource& r) {
    double lo = 10.0, hi = -10.0;
    const auto ph = phase_distribution(r);
    for (std::size_t i = 0; i < ph.size(); ++i) {
        if (std::abs(r.s[i]) < kZeroAmplitude) continue;
        lo = std::min(lo, ph[i]);
        hi = std::max(hi, ph[i]);
    }
    return hi - lo;
}

}  // namespace

TEST_CASE("filter order parity") {
    CHECK(FilterOrder::j0().compatible_with(20));
    CHECK_FALSE(FilterOrder::j0().compatible_with(21));
    CHECK(FilterOrder::two_point().compatible_with(21));
    CHECK(FilterOrder::three_point().compatible_with(4));
    CHECK(FilterOrder::four_point().compatible_with(7));
    CHECK_THROWS_AS(filtered_input(21, FilterOrder::j0()), DomainError);
    CHECK_THROWS_AS(filtered_input(20, FilterOrder::two_point()), DomainError);
    CHECK_THROWS_AS(filtered_input(1, FilterOrder::four_point()), DomainError);
    CHECK_THROWS_AS(filtered_input(20, FilterOrder{5}), DomainError);
}

TEST_CASE("f coefficients") {
    const SpinJ j(20);
    for (int tm : {-20, -3 * 2, 0, 8}) {
        const Complex f = f_coefficient(j, SpinProjection(tm), 0.0, 0.25);
        CHECK(std::abs(f - std::polar(1.0, 0.5 * tm * (0.25 + pi / 2))) < 1e-13);
    }
    double total = 0.0, tail = 0.0;
    for (int tm = -20; tm <= 20; tm += 2) {
        const double w = std::norm(f_coefficient(j, SpinProjection(tm), pi / 2));
        total += w;
        if (std::abs(tm) > 6) tail += w;
    }
    CHECK(total == doctest::Approx(21.0).epsilon(1e-12));
    CHECK(tail / total < 0.05);
    CHECK(tail / total == doctest::Approx(0.000926).epsilon(1e-2));
    CHECK(std::abs(f_coefficient(j, SpinProjection(0), pi / 2) - Complex(-3.2458314035367564, 0.0)) < 1e-12);
    CHECK(std::abs(f_coefficient(j, SpinProjection(2), pi / 2) - Complex(0.0, -2.222728942065028)) < 1e-12);
    CHECK(std::abs(f_coefficient(j, SpinProjection(-2), pi / 2) - Complex(0.0, 2.222728942065029)) < 1e-12);
    CHECK_THROWS_AS(f_coefficient(j, SpinProjection(1), 0.3), DomainError);
}

TEST_CASE("filtered inputs") {
    const SpinState j0 = filtered_input(20, FilterOrder::j0());
    CHECK(j0[10] == Complex(1.0, 0.0));
    const SpinState two = filtered_input(21, FilterOrder::two_point());
    CHECK(std::abs(two[10] - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(two[11] - std::sqrt(0.5)) < 1e-15);

    const SpinState three = filtered_input(20, FilterOrder::three_point());
    CHECK(three.norm() == doctest::Approx(1.0).epsilon(1e-14));
    int nonzero = 0;
    for (std::size_t i = 0; i < three.size(); ++i) nonzero += std::abs(three[i]) > 0.0;
    CHECK(nonzero == 3);
    const SpinJ j(20);
    const Complex f0 = f_coefficient(j, SpinProjection(0), pi / 2);
    const Complex f1 = f_coefficient(j, SpinProjection(2), pi / 2);
    // Kept amplitudes are i^{-m} f_m up to the common normalization.
    const Complex ratio = three[11] / three[10];
    CHECK(std::abs(ratio - Complex(0.0, -1.0) * f1 / f0) < 1e-13);
    CHECK(std::abs(three[9] - three[11]) < 1e-14);

    const SpinState four = filtered_input(21, FilterOrder::four_point());
    nonzero = 0;
    for (std::size_t i = 0; i < four.size(); ++i) nonzero += std::abs(four[i]) > 0.0;
    CHECK(nonzero == 4);
}

TEST_CASE("beta_Q formula") {
    CHECK(beta_q(20) / kDeg == doctest::Approx(85.5));
    CHECK(beta_q(2) / kDeg == doctest::Approx(45.0));
    CHECK(beta_q(40) / kDeg == doctest::Approx(87.75));
    CHECK(std::abs(beta_q(100000000) - pi / 2) < 1e-7);
    CHECK_THROWS_AS(beta_q(0), DomainError);
}

TEST_CASE("resource examples") {
    const QuasiEprResource half = j0_at(20, pi / 2);
    for (int n = 0; n <= 20; ++n) {
        if ((n - 10) % 2 != 0) CHECK(std::abs(half[n]) < 1e-12);
        else CHECK(std::abs(half[n]) > 1e-3);
    }
    const QuasiEprResource still = j0_at(20, 0.0);
    CHECK(half.s.size() == 21);
    CHECK(std::abs(still[10]) == doctest::Approx(1.0));
    const QuasiEprResource two = make_resource(filtered_input(21, FilterOrder::two_point()), pi / 2);
    const EprQualityReport q = quality(two);
    CHECK(q.zero_count == 0);
    CHECK(q.min_modulus > 0.0);
}

TEST_CASE("closed forms") {
    for (int n : {2, 10, 20, 40, 100}) {
        for (double beta : {0.4, beta_q(n), pi / 2, 2.2}) {
            const QuasiEprResource a = j0_at(n, beta);
            const QuasiEprResource b = j0_resource_closed_form(n, beta);
            for (int k = 0; k <= n; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-10);
        }
    }
    const Complex global = std::polar(1.0, pi / 4);
    for (int n : {1, 5, 21, 41, 101}) {
        for (double beta : {0.4, pi / 2, 2.2}) {
            const QuasiEprResource a = make_resource(filtered_input(n, FilterOrder::two_point()), beta);
            const QuasiEprResource b = two_point_resource_closed_form(n, beta);
            for (int k = 0; k <= n; ++k) CHECK(std::abs(a[k] - global * b[k]) < 1e-10);
        }
    }
    CHECK_THROWS_AS(j0_resource_closed_form(21, 0.3), DomainError);
    CHECK_THROWS_AS(two_point_resource_closed_form(20, 0.3), DomainError);
}

TEST_CASE("quality report") {
    for (int n : {0, 1, 7, 20}) {
        const EprQualityReport q = quality(QuasiEprResource::ideal(n));
        CHECK(q.flatness < 1e-15);
        CHECK(q.entropy == doctest::Approx(std::log(n + 1.0)).epsilon(1e-14));
        CHECK(q.normalized_entropy == doctest::Approx(1.0));
        CHECK(q.zero_count == 0);
    }
    CHECK(quality(j0_at(20, pi / 2)).zero_count == 10);
    CHECK(quality(j0_at(20, 85.5 * kDeg)).zero_count == 0);
    for (int n : {10, 21, 40}) {
        for (double beta : {0.3, 1.2, pi / 2}) {
            const QuasiEprResource r = make_resource(filtered_input(n, n % 2 ? FilterOrder::two_point() : FilterOrder::j0()), beta);
            CHECK(quality(r).entropy <= std::log(n + 1.0) + 1e-12);
            CHECK(quality(r).entropy < std::log(n + 1.0) - 1e-3);
        }
    }
}

TEST_CASE("phase distribution") {
    const QuasiEprResource half = j0_at(20, pi / 2);
    CHECK(phase_spread(half) < 1e-12);
    for (double p : phase_distribution(QuasiEprResource::ideal(6))) CHECK(p == 0.0);
    const QuasiEprResource neg{1, {Complex(-std::sqrt(0.5), -1e-17), Complex(-std::sqrt(0.5), 0.0)}};
    for (double p : phase_distribution(neg)) CHECK(p == doctest::Approx(pi));

    // Two-point output: phases affine in n once the best-fit line is removed.
    const QuasiEprResource two = make_resource(filtered_input(21, FilterOrder::two_point()), pi / 2);
    const auto ph = phase_distribution(two);
    std::vector<double> unwrapped(ph.begin(), ph.end());
    for (std::size_t i = 1; i < unwrapped.size(); ++i) {
        while (unwrapped[i] - unwrapped[i - 1] > pi) unwrapped[i] -= 2 * pi;
        while (unwrapped[i] - unwrapped[i - 1] < -pi) unwrapped[i] += 2 * pi;
    }
    const double n = static_cast<double>(unwrapped.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < unwrapped.size(); ++i) {
        sx += i;
        sy += unwrapped[i];
        sxx += double(i) * i;
        sxy += i * unwrapped[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / n;
    for (std::size_t i = 0; i < unwrapped.size(); ++i) CHECK(std::abs(unwrapped[i] - icpt - slope * i) < 1e-9);
}

TEST_CASE("double balanced rotation restores flat moduli") {
    for (int n : {4, 11, 30}) {
        const SpinState s = relative_phase_state({n, 2, 0.0});
        const SpinState back = rotate_about_x(rotate_about_x(s, pi / 2), pi / 2);
        for (std::size_t i = 0; i < back.size(); ++i) CHECK(std::abs(std::abs(back[i]) - 1.0 / std::sqrt(n + 1.0)) < 1e-10);
    }
}

TEST_CASE("j0 zero pattern for every even N up to 200") {
    for (int n = 4; n <= 200; n += 2) {
        CAPTURE(n);
        CHECK(quality(j0_at(n, pi / 2)).zero_count > 0);
        CHECK(quality(j0_at(n, beta_q(n))).zero_count == 0);
    }
}

TEST_CASE("beta_Q resource has higher entropy than the balanced one") {
    for (int n : {10, 20, 40}) CHECK(quality(j0_at(n, beta_q(n))).entropy > quality(j0_at(n, pi / 2)).entropy);
}

TEST_CASE("central amplitude oscillates with beta") {
    const int n = 40;
    std::vector<double> v;
    for (double deg = 45.0; deg <= 90.0 + 1e-9; deg += 0.05) v.push_back(std::abs(j0_at(n, deg * kDeg)[n / 2]));
    int minima = 0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) minima += v[i] < v[i - 1] && v[i] < v[i + 1];
    CHECK(minima >= n / 8);
}

TEST_CASE("two-point central region has no near-zeros") {
    for (int n : {11, 21, 41}) {
        const QuasiEprResource r = make_resource(filtered_input(n, FilterOrder::two_point()), pi / 2);
        double lo = 1.0;
        for (int k = 0; k <= n; ++k)
            if (std::abs(k - n / 2.0) <= n / 4.0) lo = std::min(lo, std::abs(r[k]));
        CHECK(lo > 0.5 / std::sqrt(n + 1.0));
    }
}

TEST_CASE("three- and four-point resources") {
    const QuasiEprResource three = make_resource(filtered_input(20, FilterOrder::three_point()), pi / 2);
    const QuasiEprResource four = make_resource(filtered_input(21, FilterOrder::four_point()), pi / 2);
    const EprQualityReport q3 = quality(three);
    const EprQualityReport q4 = quality(four);
    CHECK(q3.entropy == doctest::Approx(2.986643127838153).epsilon(1e-10));
    CHECK(q3.min_modulus == doctest::Approx(0.17609383562914305).epsilon(1e-10));
    CHECK(q4.entropy == doctest::Approx(3.082212589903133).epsilon(1e-10));
    CHECK(q4.min_modulus == doctest::Approx(0.18050154662484152).epsilon(1e-10));
    CHECK(phase_spread(three) < 1e-9);
    CHECK(phase_spread(four) < 1e-9);
    // More even than the single- and two-point inputs at the same N.
    CHECK(q3.entropy > quality(j0_at(20, beta_q(20))).entropy);
    CHECK(q4.entropy > quality(make_resource(filtered_input(21, FilterOrder::two_point()), pi / 2)).entropy);
}
