#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "photmol/errors.hpp"
#include "photmol/keldysh.hpp"

using namespace photmol;
using cplx = std::complex<double>;

namespace {

constexpr cplx kI{0.0, 1.0};

SpectralGrid sum(const SpectralGrid& a, const SpectralGrid& b) {
    SpectralGrid out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += b.values[i];
    return out;
}

}  // namespace

TEST_CASE("Lorentzian spectral function") {
    const GridSpec grid{-50.0, 50.0, 10001};
    const auto a = lorentzian_spectral(0.0, 0.5, grid);
    CHECK(a.values[5000].real() == doctest::Approx(2.0 / 0.5).epsilon(1e-15));
    CHECK(a.values[5000].imag() == 0.0);

    // trapezoid against the analytic mass inside the grid
    const double inside = (std::atan(50.0 / 0.5) - std::atan(-50.0 / 0.5)) / std::numbers::pi;
    CHECK(std::abs(spectral_weight(a) - inside) < 1e-6);

    // the mass of a narrow Lorentzian sits in the central bin
    const auto narrow = lorentzian_spectral(0.0, 1e-6, grid);
    const double h = grid.spacing();
    CHECK(narrow.values[5000].real() * h / (2.0 * std::numbers::pi) > 0.99);

    CHECK_THROWS_AS(lorentzian_spectral(0.0, 5.0, GridSpec{-10.0, 10.0, 101}), CoverageError);
    CHECK_THROWS_AS(lorentzian_spectral(0.0, 0.0, grid), InvalidArgument);
    CHECK_THROWS_AS(lorentzian_spectral(0.0, 1.0, GridSpec{1.0, -1.0, 11}), InvalidArgument);
}

TEST_CASE("retarded function of a Lorentzian") {
    const double eta = 1.0, eps = 20.0, half = 2000.0;
    const GridSpec grid{eps - half, eps + half, 65537};
    const auto a = lorentzian_spectral(eps, eta, grid);
    const auto r = retarded_from_spectral(a);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double d = r.omega(i) - eps;
        // imaginary part is exactly -A/2 in principal-value mode
        CHECK(std::abs(r.values[i].imag() + 0.5 * a.values[i].real()) <= 1e-15 * a.values[i].real() + 1e-300);
        if (std::abs(d) <= 5.0 * eta || std::abs(d) > 0.5 * half) continue;
        const cplx exact = 1.0 / cplx(d, eta);
        worst = std::max(worst, std::abs(r.values[i] - exact) / std::abs(exact));
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("Kramers-Kronig closure and symmetry") {
    const GridSpec grid{-100.0, 100.0, 4001};
    const auto a = lorentzian_spectral(0.0, 0.8, grid);
    for (double eta : {0.0, 0.05}) {
        const auto r = retarded_from_spectral(a, eta);
        const auto adv = advanced_from_spectral(a, eta);
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            worst = std::max(worst, std::abs(kI * (r.values[i] - adv.values[i]) - a.values[i]));
        }
        if (eta == 0.0) CHECK(worst < 1e-12);
        // even spectral function: Re C^R is odd, zero at the centre
        CHECK(std::abs(r.values[2000].real()) < 1e-12);
        CHECK(std::abs(r.values[1000].real() + r.values[3000].real()) < 1e-12);
    }
    // with a finite eta the closure is the eta-broadened A, which tends to A
    const auto r = retarded_from_spectral(a, 1e-3);
    const auto adv = advanced_from_spectral(a, 1e-3);
    double worst = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(kI * (r.values[i] - adv.values[i]) - a.values[i]));
        peak = std::max(peak, std::abs(a.values[i]));
    }
    CHECK(worst / peak < 1e-2);
}

TEST_CASE("singular part enters retarded and advanced components only") {
    const GridSpec grid{-100.0, 100.0, 2001};
    auto a = lorentzian_spectral(0.0, 1.0, grid);
    const auto plain = retarded_from_spectral(a);
    a.singular = cplx(-3.0, 0.0);
    const auto shifted = retarded_from_spectral(a);
    const auto adv = advanced_from_spectral(a);
    CHECK(std::abs(shifted.values[700] - plain.values[700] - cplx(-3.0, 0.0)) < 1e-12);
    CHECK(std::abs(adv.values[700] - std::conj(plain.values[700]) - cplx(-3.0, 0.0)) < 1e-12);
    const auto fdt = fdt_components(a, ThermalState{1.0, -200.0});
    CHECK(std::abs(kI * (fdt.greater.values[700] - fdt.lesser.values[700]) - a.values[700]) < 1e-14);
}

TEST_CASE("fluctuation-dissipation theorem") {
    const GridSpec grid{-40.0, 40.0, 8000};  // no point exactly at omega = mu
    const auto a = lorentzian_spectral(3.0, 0.5, grid);
    for (int m : {1, 2}) {
        const ThermalState t{0.7, 0.2};
        const auto fdt = fdt_components(a, t, m);
        CHECK(fdt.masked.empty());
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double x = t.beta * (a.omega(i) - m * t.mu);
            if (std::abs(x) >= 500.0) continue;
            const cplx ratio = fdt.greater.values[i] / fdt.lesser.values[i];
            CHECK(std::abs(ratio - std::exp(x)) <= 1e-12 * std::exp(x));
            CHECK(std::abs(kI * (fdt.greater.values[i] - fdt.lesser.values[i]) - a.values[i]) <=
                  1e-12 * std::abs(a.values[i]));
        }
    }
    // zero temperature: nothing occupied above the chemical potential
    const auto cold = fdt_components(a, ThermalState{1e6, -45.0});
    for (const auto& v : cold.lesser.values) CHECK(v == cplx(0.0, 0.0));
}

TEST_CASE("Bose pole on the grid") {
    const GridSpec grid{-100.0, 100.0, 2001};  // omega = 0 is point 1000
    const auto a = lorentzian_spectral(1.0, 1.0, grid);
    CHECK_THROWS_AS(fdt_components(a, ThermalState{1.0, 0.0}), DistributionPole);
    const auto masked = fdt_components(a, ThermalState{1.0, 0.0}, 1, PoleMask::zero);
    REQUIRE(masked.masked.size() == 1);
    CHECK(masked.masked.front() == 1000);
    CHECK(masked.lesser.values[1000] == cplx(0.0, 0.0));
    CHECK_THROWS_AS(fdt_components(a, ThermalState{1.0, 0.0}, 3), InvalidArgument);
    // the pair convention places the pole at 2 mu
    CHECK_THROWS_AS(fdt_components(a, ThermalState{1.0, 0.5}, 2), DistributionPole);
}

TEST_CASE("time domain: causality of a Lorentzian") {
    const double eta = 1.0, eps = 20.0, half = 2000.0;
    const GridSpec grid{eps - half, eps + half, 65537};
    const auto r = retarded_from_spectral(lorentzian_spectral(eps, eta, grid));
    const auto ts = time_domain_retarded(r);
    CHECK(ts.causality_violation < 2e-5);
    // once the spacing resolves eta the leakage is set by the span
    const GridSpec wide{eps - 2.0 * half, eps + 2.0 * half, 262145};
    const auto wide_ts = time_domain_retarded(retarded_from_spectral(lorentzian_spectral(eps, eta, wide)));
    CHECK(wide_ts.causality_violation < 0.6 * ts.causality_violation);
    CHECK(ts.peak == doctest::Approx(1.0).epsilon(5e-3));
    // compare with -i e^{-i eps t - eta t} away from t = 0
    double worst = 0.0;
    for (std::size_t k = 0; k < ts.t.size(); ++k) {
        const double t = ts.t[k];
        if (t < 0.5 || t > 5.0) continue;
        const cplx exact = -kI * std::exp(cplx(-eta * t, -eps * t));
        worst = std::max(worst, std::abs(ts.values[k] - exact));
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("time domain: two peaks") {
    const GridSpec grid{-4000.0, 4000.0, 131073};
    const auto a = sum(lorentzian_spectral(-15.0, 1.0, grid), lorentzian_spectral(30.0, 2.5, grid));
    const auto ts = time_domain_retarded(retarded_from_spectral(a));
    CHECK(ts.causality_violation < 1e-4);
}

TEST_CASE("time domain: zero input and edge truncation") {
    const GridSpec grid{-10.0, 10.0, 1024};
    SpectralGrid zero{grid, std::vector<cplx>(grid.n_points)};
    const auto ts = time_domain_retarded(zero);
    for (const auto& v : ts.values) CHECK(v == cplx(0.0, 0.0));
    CHECK(ts.peak == 0.0);

    const auto narrow = retarded_from_spectral(lorentzian_spectral(0.0, 0.05, grid));
    CHECK_THROWS_AS(time_domain_retarded(narrow), EdgeTruncation);
}

TEST_CASE("shape checks") {
    SpectralGrid bad{GridSpec{-1.0, 1.0, 10}, std::vector<cplx>(9)};
    CHECK_THROWS_AS(retarded_from_spectral(bad), DimensionMismatch);
    SpectralGrid complex_valued{GridSpec{-1.0, 1.0, 4}, std::vector<cplx>(4, cplx(1.0, 1.0))};
    CHECK_THROWS_AS(retarded_from_spectral(complex_valued), InvalidArgument);
}
