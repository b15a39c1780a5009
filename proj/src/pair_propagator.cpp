#include <algorithm>
#include <cmath>
#include <numbers>

#include "photmol/errors.hpp"
#include "photmol/tmatrix.hpp"

namespace photmol {

using cplx = std::complex<double>;

std::complex<double> pair_propagator_upsilon(double epsilon, std::complex<double> zeta, const ThermalState& thermal) {
    thermal.validate();
    const cplx gap = zeta - 2.0 * epsilon;
    if (epsilon == thermal.mu && gap == 0.0) {
        throw SingularPropagator("Bose pole and pair pole coincide (epsilon == mu, zeta == 2 epsilon)");
    }
    if (gap == 0.0) throw InvalidArgument("zeta == 2 epsilon: give zeta a positive imaginary part");
    return coth_factor(epsilon, thermal) / gap;
}

std::complex<double> pair_propagator_upsilon(double epsilon, const TMatrixQuery& query) {
    return pair_propagator_upsilon(epsilon, query.zeta, query.thermal);
}

namespace {

cplx expm1(cplx x) {
    if (std::abs(x) < 1e-3) return x * (1.0 + x * (0.5 + x / 6.0));
    return std::exp(x) - 1.0;
}

// expm1(x) / x
cplx expm1c(cplx x) {
    if (std::abs(x) < 1e-3) return 1.0 + x * (0.5 + x / 6.0);
    return (std::exp(x) - 1.0) / x;
}

}  // namespace

G2Result g2_retarded_numeric(double epsilon, std::complex<double> zeta, const ThermalState& thermal, double broadening,
                             const G2Options& options) {
    thermal.validate();
    if (!(broadening > 0.0) || !std::isfinite(broadening)) throw InvalidArgument("broadening must be positive");
    if (epsilon == thermal.mu) throw DistributionPole("epsilon == mu: the Bose factor is singular at the peak");

    const double gamma = broadening;
    const double beta = thermal.beta;
    const double window = options.window_half_width > 0.0 ? options.window_half_width
                                                          : 0.5 * std::abs(epsilon - thermal.mu);
    if (std::abs(epsilon - thermal.mu) <= window) {
        throw InvalidArgument("Lorentzian window must exclude the Bose pole at omega == mu");
    }
    const double lo = epsilon - window;
    const double hi = epsilon + window;
    const double theta_w = std::atan(window / gamma);
    const double norm = 1.0 / (2.0 * theta_w);  // dw p(w) == norm * d theta
    const cplx c(epsilon, gamma);

    auto bose = [&](double w) { return bose_function(beta * (w - thermal.mu)); };
    auto omega_of = [&](double theta) { return epsilon + gamma * std::tan(theta); };
    auto theta_of = [&](double w) { return std::atan((w - epsilon) / gamma); };

    // int_lo^hi dw p(w) / (z - w) by partial fractions
    auto lorentzian_pole = [&](cplx z) {
        const cplx a = 1.0 / ((c - std::conj(c)) * (z - c));
        const cplx b = 1.0 / ((std::conj(c) - c) * (z - std::conj(c)));
        const cplx p = 1.0 / ((z - c) * (z - std::conj(c)));
        return norm * gamma *
               (a * (std::log(hi - c) - std::log(lo - c)) + b * (std::log(hi - std::conj(c)) - std::log(lo - std::conj(c))) +
                p * (std::log(z - lo) - std::log(z - hi)));
    };

    const QuadratureTolerance inner_tol = options.tolerance;
    double inner_error = 0.0;

    // int dw p(w) (1 + f' + f(w)) / (z - w). The Bose factor is subtracted at
    // an anchor a, z itself unless z sits near a pole of the Bose function.
    auto inner = [&](cplx z, double f_outer) {
        const cplx x_z = beta * (z - thermal.mu);
        const double winding = 2.0 * std::numbers::pi * std::round(x_z.imag() / (2.0 * std::numbers::pi));
        const bool at_z = std::abs(x_z - cplx(0.0, winding)) > 0.5;
        const cplx anchor = at_z ? z : cplx(std::clamp(z.real(), lo, hi), 0.0);
        const cplx x_a = beta * (anchor - thermal.mu);
        const cplx expm1_a = expm1(x_a);

        auto integrand = [&](double theta) -> cplx {
            const double w = omega_of(theta);
            const double x_w = beta * (w - thermal.mu);
            // (f(w) - f(a)) / (a - w) without cancellation
            const cplx q = beta * expm1c(x_a - x_w) / (-std::expm1(-x_w) * expm1_a);
            if (at_z) return norm * q;
            const cplx a_minus_w = anchor - w;
            if (a_minus_w == 0.0) return z == anchor ? norm * q : cplx{};
            return norm * q * (a_minus_w / (z - w));
        };
        std::vector<double> breaks{0.0};
        if (!at_z && anchor.real() > lo && anchor.real() < hi) breaks.push_back(theta_of(anchor.real()));

        const cplx pole_part = (1.0 + f_outer + 1.0 / expm1_a) * lorentzian_pole(z);
        QuadratureTolerance tol = inner_tol;
        tol.absolute = std::max(tol.absolute, inner_tol.relative * std::abs(pole_part));
        const auto r = integrate_panels(integrand, -theta_w, theta_w, breaks, tol);
        inner_error = std::max(inner_error, r.error);
        return r.value + pole_part;
    };

    auto outer = [&](double theta) -> cplx {
        const double w = omega_of(theta);
        return norm * inner(zeta - w, bose(w));
    };

    // the outer integrand peaks at zeta - w = epsilon and has logarithmic
    // singularities where zeta - w crosses the window edges
    std::vector<double> breaks{0.0};
    for (double w : {zeta.real() - epsilon, zeta.real() - lo, zeta.real() - hi}) {
        if (w > lo && w < hi) breaks.push_back(theta_of(w));
    }
    const auto r = integrate_panels(outer, -theta_w, theta_w, breaks, options.tolerance);
    return G2Result{r.value, r.error + inner_error, window};
}

}  // namespace photmol
