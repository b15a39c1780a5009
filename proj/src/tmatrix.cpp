#include "photmol/tmatrix.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "photmol/errors.hpp"
#include "photmol/units.hpp"

namespace photmol {

namespace {

using cplx = std::complex<double>;

// (coth x - 1/x) / x, smooth at the origin
double coth_minus_pole_over_x(double x) {
    if (x < 0.1) {
        const double x2 = x * x;
        return 1.0 / 3.0 +
               x2 * (-1.0 / 45.0 +
                     x2 * (2.0 / 945.0 + x2 * (-1.0 / 4725.0 + x2 * (2.0 / 93555.0 - x2 * 1382.0 / 638512875.0))));
    }
    return (1.0 / std::tanh(x) - 1.0 / x) / x;
}

std::vector<double> decades(double lo, double hi) {
    std::vector<double> out;
    for (double p = std::pow(10.0, std::ceil(std::log10(lo))); p < hi; p *= 10.0) out.push_back(p);
    return out;
}

// int_{x_min}^{lambda} coth(x) / (x - a) dx. A real pole is passed on the side
// selected by `above`: +0 i when true, -0 i otherwise.
cplx cauchy_coth(cplx a, double x_min, double lambda, bool above, const QuadratureTolerance& tol) {
    std::vector<double> breaks = decades(x_min, lambda);
    breaks.push_back(1.0);
    if (a.real() > x_min && a.real() < lambda) breaks.push_back(a.real());

    if (std::abs(a) < 0.5 * x_min) {
        auto direct = [&](double x) -> cplx { return coth(x) / (x - a); };
        return integrate_panels(direct, x_min, lambda, breaks, tol).value;
    }

    const cplx ca = coth(a);
    auto subtracted = [&](double x) -> cplx {
        const cplx d = x - a;
        if (x > 300.0 || std::abs(a.real()) > 300.0) return (coth(x) - ca) / d;
        // coth x - coth a = -sinh(x - a) / (sinh x sinh a), free of cancellation
        const cplx sinhc = std::abs(d) < 1e-4 ? 1.0 + d * d / 6.0 : std::sinh(d) / d;
        return -sinhc / (std::sinh(x) * std::sinh(a));
    };
    const auto body = integrate_panels(subtracted, x_min, lambda, breaks, tol);
    const double im = a.imag() != 0.0 ? -a.imag() : (above ? -0.0 : 0.0);
    const cplx log_term = std::log(cplx(lambda - a.real(), im)) - std::log(cplx(x_min - a.real(), im));
    return body.value + ca * log_term;
}

}  // namespace

void TMatrixQuery::validate() const {
    params.validate();
    thermal.validate();
    if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag())) throw InvalidArgument("zeta must be finite");
    if (zeta.imag() < 0.0) throw InvalidArgument("retarded T-matrix needs Im zeta >= 0");
    if (!(x_min > 0.0)) throw InvalidArgument("x_min must be positive");
    if (!(lambda() > x_min)) {
        std::ostringstream msg;
        msg << "masked band |x| < x_min = " << x_min << " covers the whole bandwidth (Lambda = " << lambda() << ")";
        throw InvalidArgument(msg.str());
    }
}

double coth_integral(double x_min, double lambda, const QuadratureTolerance& tol) {
    if (!(x_min > 0.0) || !std::isfinite(x_min)) throw InvalidArgument("x_min must be positive");
    if (!std::isfinite(lambda) || lambda < x_min) throw InvalidArgument("coth integral needs lambda >= x_min");
    if (lambda == x_min) return 0.0;

    double total = 0.0;
    double error = 0.0;
    if (x_min < 1.0) {
        // coth(x)/x = 1/x^2 + (coth x - 1/x)/x
        const double b = std::min(1.0, lambda);
        const auto r = integrate_panels(coth_minus_pole_over_x, x_min, b, decades(x_min, b), tol);
        total += (1.0 / x_min - 1.0 / b) + r.value;
        error += r.error;
    }
    if (lambda > 1.0) {
        // coth(x)/x = 1/x + 2 / (x (e^{2x} - 1))
        const double a = std::max(1.0, x_min);
        total += std::log(lambda / a);
        const double b = std::min(lambda, 40.0);
        if (b > a) {
            auto tail = [](double x) { return 2.0 / (x * std::expm1(2.0 * x)); };
            const auto r = integrate_panels(tail, a, b, {2.0, 5.0, 10.0, 20.0}, tol);
            total += r.value;
            error += r.error;
        }
    }
    if (error > std::max(tol.absolute, tol.relative * std::abs(total))) {
        throw QuadratureError("coth integral did not reach the requested tolerance", error,
                              std::max(tol.absolute, tol.relative * std::abs(total)));
    }
    return total;
}

TMatrixValue tmatrix_retarded_1d(const TMatrixQuery& query) {
    query.validate();
    const double lambda = query.lambda();
    const cplx s = query.thermal.beta * (query.zeta - 2.0 * query.thermal.mu) / 4.0;

    // x / (s^2 - x^2) = -(1/(x - s) + 1/(x + s)) / 2, the second pole approached from below
    const cplx j = -0.5 * (cauchy_coth(s, query.x_min, lambda, true, query.tolerance) +
                           cauchy_coth(-s, query.x_min, lambda, false, query.tolerance));
    const double strength = query.params.signed_coupling() / (2.0 * std::numbers::pi * query.params.v_e);
    const cplx denominator = 1.0 - strength * j;

    TMatrixValue out;
    out.denominator = denominator;
    out.near_pole = std::abs(denominator) < 1e-12;
    out.value = query.params.signed_coupling() / denominator;
    return out;
}

std::vector<double> TemperatureRange::temperatures() const {
    if (!(t_min_kelvin > 0.0) || !(t_max_kelvin >= t_min_kelvin) || !std::isfinite(t_max_kelvin)) {
        throw InvalidArgument("temperature range must be positive and ascending");
    }
    if (points == 0) throw InvalidArgument("temperature range needs at least one point");
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = t_min_kelvin;
        return out;
    }
    for (std::size_t i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(points - 1);
        out[i] = log_spacing ? t_min_kelvin * std::pow(t_max_kelvin / t_min_kelvin, f)
                             : t_min_kelvin + f * (t_max_kelvin - t_min_kelvin);
    }
    out.back() = t_max_kelvin;
    return out;
}

std::vector<ScanRow> denominator_scan(const TemperatureRange& range, const WaveguideParams& params, double x_min,
                                      double eta_fraction) {
    params.validate();
    if (!(x_min > 0.0)) throw InvalidArgument("x_min must be positive");
    if (!(eta_fraction > 0.0)) throw InvalidArgument("eta_fraction must be positive");
    const double strength = params.signed_coupling() / (2.0 * std::numbers::pi * params.v_e);

    std::vector<ScanRow> rows;
    for (double t : range.temperatures()) {
        ScanRow row;
        row.t_kelvin = t;
        row.lambda = lambda_from_kelvin(t, params.Delta);
        if (row.lambda > x_min) {
            row.integral = coth_integral(x_min, row.lambda);
            TMatrixQuery q;
            q.params = params;
            q.thermal = ThermalState::from_kelvin(t, params.mu);
            q.zeta = cplx(2.0 * params.mu, eta_fraction * params.Delta);
            q.x_min = x_min;
            const TMatrixValue tv = tmatrix_retarded_1d(q);
            row.tmatrix = tv.value;
            row.near_pole = tv.near_pole;
        } else {
            row.tmatrix = params.signed_coupling();
        }
        row.denominator = 1.0 + strength * row.integral;
        if (!rows.empty()) row.sign_change = std::signbit(row.denominator) != std::signbit(rows.back().denominator);
        rows.push_back(row);
    }
    return rows;
}

std::string to_string(TcMethod method) { return method == TcMethod::asymptotic ? "asymptotic" : "numeric"; }

CriticalPoint critical_temperature(const WaveguideParams& params, TcMethod method, double x_min) {
    params.validate();
    if (!params.attractive || !(params.v > 0.0)) throw NoBracket("no bound-state pole without an attractive coupling");
    if (!(x_min > 0.0) || !std::isfinite(x_min)) throw InvalidArgument("x_min must be positive");
    const double g = params.coupling();

    CriticalPoint out;
    out.g = g;
    out.method = method;
    out.x_min = x_min;
    if (method == TcMethod::asymptotic) {
        if (1.0 / g > 700.0) throw NoBracket("coupling too weak: Lambda_c = e^{1/g} overflows");
        out.lambda_c = std::exp(1.0 / g);
        out.residual = 1.0 - g * std::log(out.lambda_c);
    } else {
        auto f = [&](double u) { return g * coth_integral(x_min, std::max(x_min, std::exp(u))) - 1.0; };
        const double u_lo = std::log(x_min);
        double step = 1.0;
        double u_floor = u_lo;
        double u_hi = u_lo + step;
        while (f(u_hi) <= 0.0) {
            u_floor = u_hi;
            step *= 2.0;
            u_hi = u_lo + step;
            if (u_hi > 700.0) throw NoBracket("coupling too weak: no root of 1 - g I below Lambda = e^700");
        }
        boost::math::tools::eps_tolerance<double> stop(50);
        std::uintmax_t iterations = 200;
        const auto [a, b] = boost::math::tools::toms748_solve(f, u_floor, u_hi, stop, iterations);
        const double u = 0.5 * (a + b);
        out.lambda_c = std::exp(u);
        out.residual = -f(u);
    }
    out.t_c_kelvin = kelvin_from_lambda(out.lambda_c, params.Delta);
    if (!(out.t_c_kelvin > 0.0)) throw NoBracket("critical temperature underflows");
    return out;
}

double lambda_from_kelvin(double kelvin, double delta) {
    if (!(kelvin > 0.0)) throw InvalidArgument("temperature must be positive");
    return units::hbar * delta / (2.0 * units::k_boltzmann * kelvin);
}

double kelvin_from_lambda(double lambda, double delta) {
    if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
    return units::hbar * delta / (2.0 * units::k_boltzmann * lambda);
}

}  // namespace photmol
