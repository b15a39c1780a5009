#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "../oracles.hpp"
#include "photmol/errors.hpp"
#include "photmol/tmatrix.hpp"
#include "photmol/units.hpp"

using namespace photmol;
using cplx = std::complex<double>;

namespace {

// mpmath, 30 significant digits
constexpr double kTailConstant = 0.10616461296533979;

WaveguideParams coupled(double g) {
    WaveguideParams p;
    p.v = 2.0 * std::numbers::pi * p.v_e * g;
    return p;
}

// thermal state at a given Lambda for Delta = params.Delta
ThermalState at_lambda(double lambda, const WaveguideParams& p) { return ThermalState{2.0 * lambda / p.Delta, p.mu}; }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// PV int_{x_min}^{lambda} coth(x) x / (s^2 - x^2) dx for real s in (x_min, lambda),
// from an independent subtraction of the pole at x = s in long double Simpson
double pv_pair_integral_real(double x_min, double lambda, double s) {
    // coth(x) x / (s^2 - x^2) = -1/2 coth(x) [1/(x - s) + 1/(x + s)]
    const long double ls = s;
    const long double cs = std::cosh(ls) / std::sinh(ls);
    auto smooth = [&](long double x) {
        const long double c = std::cosh(x) / std::sinh(x);
        const long double d = x - ls;
        const long double near = std::abs(d) < 1e-9L ? (1.0L - cs * cs) : (c - cs) / d;
        return -0.5L * (near + c / (x + ls));
    };
    long double sum = 0.0L;
    // split at s so the smooth part is sampled symmetrically
    sum += oracle::simpson(smooth, x_min, ls, 400000);
    sum += oracle::simpson(smooth, ls, lambda, 400000);
    sum += -0.5L * cs * std::log((lambda - ls) / (ls - x_min));
    return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("oracles reproduce the frozen reference values") {
    CHECK(rel(oracle::coth_tail_constant(), kTailConstant) < 1e-12);
    CHECK(rel(oracle::coth_integral(1.0, 10.0), 2.40874970576267497) < 1e-12);
    CHECK(rel(oracle::coth_integral(0.1, 3.0), 10.4970510208335937) < 1e-12);
}

TEST_CASE("coth integral against reference values") {
    CHECK(rel(coth_integral(1.0, 10.0), 2.40874970576267497) < 1e-12);
    CHECK(rel(coth_integral(1.0, 100.0), 4.71133479895343116) < 1e-12);
    CHECK(rel(coth_integral(1.0, 1000.0), 7.01391989194747684) < 1e-12);
    CHECK(rel(coth_integral(0.1, 3.0), 10.4970510208335937) < 1e-12);
    CHECK(rel(coth_integral(1e-3, 50.0), 1003.34417545115433) < 1e-12);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lx(std::log(0.01), std::log(5.0));
    std::uniform_real_distribution<double> ll(std::log(2.0), std::log(1e4));
    for (int i = 0; i < 10; ++i) {
        const double x_min = std::exp(lx(rng));
        const double lambda = x_min * std::exp(ll(rng));
        CHECK(rel(coth_integral(x_min, lambda), oracle::coth_integral(x_min, lambda)) < 1e-11);
    }
}

TEST_CASE("coth integral structure") {
    CHECK(coth_integral(1.0, 1.0) == 0.0);
    CHECK(coth_integral(1.0, 10.0) < coth_integral(1.0, 100.0));
    CHECK(coth_integral(1.0, 100.0) < coth_integral(1.0, 1000.0));
    CHECK(coth_integral(0.5, 10.0) > coth_integral(0.6, 10.0));
    // large-Lambda law: I(1, Lambda) - ln Lambda -> c
    CHECK(std::abs(coth_integral(1.0, 50.0) - std::log(50.0) - kTailConstant) < 1e-12);
    CHECK(std::abs(coth_integral(1.0, 1e8) - std::log(1e8) - kTailConstant) < 1e-12);
    CHECK_THROWS_AS(coth_integral(0.0, 2.0), InvalidArgument);
    CHECK_THROWS_AS(coth_integral(2.0, 1.0), InvalidArgument);
}

TEST_CASE("pair propagator") {
    const ThermalState t{1e-9, 0.0};
    const double eps = 1e12;  // beta eps = 1000
    const cplx zeta(2.0 * eps, 1e6);
    CHECK(rel(pair_propagator_upsilon(eps, zeta, t), 1.0 / cplx(0.0, 1e6)) < 1e-15);

    // beta (e1 - mu) = 2 with the gap set to coth(1)
    const ThermalState unit{1.0, 0.5};
    const double e1 = 2.5;
    const cplx z1(2.0 * e1 + 1.3130352854993313, 0.0);
    CHECK(rel(pair_propagator_upsilon(e1, z1, unit), cplx(1.0, 0.0)) < 1e-14);

    CHECK_THROWS_AS(pair_propagator_upsilon(t.mu, cplx(2.0 * t.mu, 0.0), t), SingularPropagator);
    CHECK_THROWS_AS(pair_propagator_upsilon(t.mu, cplx(1.0, 0.1), t), DistributionPole);
    CHECK_THROWS_AS(pair_propagator_upsilon(eps, cplx(2.0 * eps, 0.0), t), InvalidArgument);
}

TEST_CASE("g2 oracle converges to the pair propagator") {
    const double delta = 40e9;
    const ThermalState t = ThermalState::from_kelvin(0.05);
    const double eps = 0.3 * delta;
    const cplx zeta(2.0 * eps + 0.05 * delta, 0.0);
    const cplx target = pair_propagator_upsilon(eps, zeta, t);

    double previous = 1e300;
    for (double b : {1e-2, 1e-3, 1e-4}) {
        const auto r = g2_retarded_numeric(eps, zeta, t, b * delta);
        const double err = rel(r.value, target);
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous < 1e-2);

    SUBCASE("conjugation") {
        const cplx z(2.0 * eps + 0.02 * delta, 0.01 * delta);
        const auto up = g2_retarded_numeric(eps, z, t, 1e-3 * delta);
        const auto down = g2_retarded_numeric(eps, std::conj(z), t, 1e-3 * delta);
        CHECK(std::abs(up.value - std::conj(down.value)) <= 1e-9 * std::abs(up.value));
    }
    SUBCASE("no thermal occupation") {
        const ThermalState cold = ThermalState::from_kelvin(1e-3);  // beta eps ~ 900
        const cplx z(2.0 * eps + 0.05 * delta, 0.0);
        const auto r = g2_retarded_numeric(eps, z, cold, 1e-5 * delta);
        CHECK(rel(r.value, 1.0 / (z - 2.0 * eps)) < 1e-3);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(g2_retarded_numeric(eps, zeta, t, 0.0), InvalidArgument);
        CHECK_THROWS_AS(g2_retarded_numeric(t.mu, zeta, t, 1e6), DistributionPole);
    }
}

TEST_CASE("T-matrix vanishes without coupling") {
    TMatrixQuery q;
    q.params.v = 0.0;
    q.thermal = at_lambda(50.0, q.params);
    q.zeta = cplx(0.1 * q.params.Delta, 1e-3 * q.params.Delta);
    CHECK(tmatrix_retarded_1d(q).value == cplx(0.0, 0.0));
}

TEST_CASE("T-matrix at zeta - 2 mu = i eta reduces to the coth integral") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> gd(0.05, 0.5);
    std::uniform_real_distribution<double> ld(std::log(10.0), std::log(1e4));
    for (int i = 0; i < 8; ++i) {
        TMatrixQuery q;
        q.params = coupled(gd(rng));
        q.params.mu = 1e9 * i;
        const double lambda = std::exp(ld(rng));
        q.thermal = at_lambda(lambda, q.params);
        const double g = q.params.coupling();
        const double closed = -q.params.v / (1.0 - g * oracle::coth_integral(1.0, lambda));
        q.zeta = cplx(2.0 * q.params.mu, 1e-8 * q.params.Delta);
        CHECK(rel(tmatrix_retarded_1d(q).value, cplx(closed, 0.0)) < 1e-8);
        // at larger eta the O(s^2) shift is resolved by the finite-s oracle
        const double y = 0.25 * q.thermal.beta * 1e-6 * q.params.Delta;
        q.zeta = cplx(2.0 * q.params.mu, 1e-6 * q.params.Delta);
        const double shifted = -q.params.v / (1.0 + g * oracle::coth_pair_integral_imaginary(1.0, lambda, y));
        CHECK(rel(tmatrix_retarded_1d(q).value, cplx(shifted, 0.0)) < 1e-8);
    }
}

TEST_CASE("T-matrix off the real axis against a direct oracle") {
    TMatrixQuery q;
    q.params = coupled(0.2);
    q.params.mu = 2e9;
    q.thermal = at_lambda(300.0, q.params);
    q.x_min = 0.7;
    // s = beta (zeta - 2 mu) / 4 purely imaginary: the integrand is regular
    const double y = 5.0;
    q.zeta = cplx(2.0 * q.params.mu, 4.0 * y / q.thermal.beta);
    const double j = oracle::coth_pair_integral_imaginary(0.7, 300.0, y);
    const auto t = tmatrix_retarded_1d(q);
    // attractive: D = 1 + g J
    CHECK(rel(t.denominator, cplx(1.0 + q.params.coupling() * j, 0.0)) < 1e-10);
    CHECK(rel(t.value, cplx(-q.params.v / (1.0 + q.params.coupling() * j), 0.0)) < 1e-10);
}

TEST_CASE("T-matrix on the real axis: principal value and absorptive part") {
    TMatrixQuery q;
    q.params = coupled(0.3);
    q.thermal = at_lambda(200.0, q.params);
    const double s = 7.5;
    q.zeta = cplx(4.0 * s / q.thermal.beta, 0.0);
    const auto t = tmatrix_retarded_1d(q);
    const double g = q.params.coupling();
    // attractive: D = 1 + g J, J = PV part - i (pi/2) coth(s)
    const double pv = pv_pair_integral_real(1.0, 200.0, s);
    CHECK(std::abs(t.denominator.real() - (1.0 + g * pv)) < 1e-9);
    CHECK(std::abs(t.denominator.imag() - (-g * 0.5 * std::numbers::pi * coth(s))) < 1e-12);
    // the retarded limit is continuous from above
    q.zeta += cplx(0.0, 1e-9 * q.params.Delta);
    CHECK(std::abs(tmatrix_retarded_1d(q).denominator - t.denominator) < 1e-6);
}

TEST_CASE("T-matrix query preconditions") {
    TMatrixQuery q;
    q.params = coupled(0.1);
    q.thermal = at_lambda(10.0, q.params);
    q.zeta = cplx(0.0, -1.0);
    CHECK_THROWS_AS(tmatrix_retarded_1d(q), InvalidArgument);
    q.zeta = cplx(0.0, 1.0);
    q.x_min = 20.0;
    CHECK_THROWS_AS(tmatrix_retarded_1d(q), InvalidArgument);
}

TEST_CASE("high temperature: no pole and a finite negative T-matrix") {
    TMatrixQuery q;
    q.params = coupled(0.3);
    q.thermal = at_lambda(2.0, q.params);
    q.zeta = cplx(0.0, 1e-8 * q.params.Delta);
    const auto t = tmatrix_retarded_1d(q);
    CHECK(t.denominator.real() > 0.0);
    CHECK(t.value.real() < 0.0);
    CHECK_FALSE(t.near_pole);
}

TEST_CASE("critical temperature") {
    SUBCASE("default waveguide") {
        WaveguideParams p = coupled(2.0);
        const auto cp = critical_temperature(p, TcMethod::asymptotic);
        // hbar Delta e^{-1/g} / (2 k_B), mpmath
        CHECK(rel(cp.t_c_kelvin, 0.0926564448863) < 1e-10);
        CHECK(rel(cp.lambda_c, std::exp(0.5)) < 1e-15);
    }
    SUBCASE("asymptotic inversion") {
        WaveguideParams p = coupled(1.0 / std::log(100.0));
        CHECK(rel(critical_temperature(p, TcMethod::asymptotic).lambda_c, 100.0) < 1e-13);
    }
    SUBCASE("numeric root sits on the tail constant") {
        for (double g : {0.05, 0.08, 0.1, 0.2}) {
            WaveguideParams p = coupled(g);
            const auto num = critical_temperature(p, TcMethod::numeric, 1.0);
            const auto asym = critical_temperature(p, TcMethod::asymptotic, 1.0);
            CHECK(std::abs(std::log(num.lambda_c) - (1.0 / g - kTailConstant)) < 1e-9);
            CHECK(std::abs(std::log(num.t_c_kelvin / asym.t_c_kelvin) - kTailConstant) < 1e-9);
            CHECK(std::abs(num.residual) < 1e-12);
            CHECK(num.lambda_c > num.x_min);
        }
    }
    SUBCASE("small infrared cutoff") {
        WaveguideParams p = coupled(0.01);
        const auto num = critical_temperature(p, TcMethod::numeric, 0.01);
        CHECK(std::abs(1.0 - 0.01 * coth_integral(0.01, num.lambda_c)) < 1e-10);
    }
    SUBCASE("no bracket") {
        WaveguideParams p = coupled(0.2);
        p.attractive = false;
        CHECK_THROWS_AS(critical_temperature(p, TcMethod::numeric), NoBracket);
        CHECK_THROWS_AS(critical_temperature(coupled(1e-3), TcMethod::numeric), NoBracket);
        CHECK_THROWS_AS(critical_temperature(coupled(0.0), TcMethod::asymptotic), NoBracket);
    }
}

TEST_CASE("denominator scan") {
    WaveguideParams p = coupled(0.25);
    const auto cp = critical_temperature(p, TcMethod::numeric, 1.0);
    const TemperatureRange range{cp.t_c_kelvin / 50.0, cp.t_c_kelvin * 200.0, 120, true};
    const auto rows = denominator_scan(range, p, 1.0);
    REQUIRE(rows.size() == 120);
    int changes = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].sign_change) {
            ++changes;
            CHECK(rows[i - 1].t_kelvin < cp.t_c_kelvin);
            CHECK(rows[i].t_kelvin > cp.t_c_kelvin);
        }
        if (i > 0) CHECK(rows[i].denominator >= rows[i - 1].denominator);
        CHECK((rows[i].t_kelvin > cp.t_c_kelvin) == (rows[i].denominator > 0.0));
    }
    CHECK(changes == 1);
    // T -> infinity: empty band, D -> 1
    CHECK(rows.back().lambda < 1.0);
    CHECK(rows.back().denominator == 1.0);
    CHECK(rows.back().tmatrix == cplx(-p.v, 0.0));

    const auto at_tc = denominator_scan(TemperatureRange{cp.t_c_kelvin, cp.t_c_kelvin, 1, false}, p, 1.0);
    CHECK(std::abs(at_tc.front().denominator) < 1e-8);
    CHECK_THROWS_AS(denominator_scan(TemperatureRange{1.0, 0.5, 10, true}, p, 1.0), InvalidArgument);
}
