#include "photmol/core_physics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "photmol/errors.hpp"
#include "photmol/units.hpp"

namespace photmol {

namespace {

constexpr double kSeriesCutoff = 1e-4;

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw InvalidArgument(std::string(name) + " must be finite");
    }
}

}  // namespace

double WaveguideParams::coupling() const { return v / (2.0 * std::numbers::pi * v_e); }

void WaveguideParams::validate() const {
    require_finite(omega0, "omega0");
    require_finite(v_e, "v_e");
    require_finite(v, "v");
    require_finite(Delta, "Delta");
    require_finite(mu, "mu");
    if (v_e <= 0.0) throw InvalidArgument("v_e must be positive");
    if (Delta <= 0.0) throw InvalidArgument("Delta must be positive");
    if (v < 0.0) throw InvalidArgument("v must be non-negative; the sign is carried by `attractive`");
    if (!std::isfinite(coupling())) throw InvalidArgument("coupling g = v / (2 pi v_e) is not finite");
}

ThermalState ThermalState::from_kelvin(double kelvin, double mu) {
    if (!(kelvin > 0.0) || !std::isfinite(kelvin)) {
        throw InvalidArgument("temperature must be positive and finite");
    }
    return ThermalState{units::beta_from_kelvin(kelvin), mu};
}

double ThermalState::kelvin() const { return units::kelvin_from_beta(beta); }

void ThermalState::validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("beta must be positive and finite");
    require_finite(mu, "mu");
}

double dispersion(double k, const WaveguideParams& params, Branch branch) {
    return branch == Branch::right ? params.omega0 + params.v_e * k : params.omega0 - params.v_e * k;
}

double bose_function(double x) {
    if (x == 0.0) throw DistributionPole("Bose factor evaluated at omega == mu");
    return 1.0 / std::expm1(x);
}

double bose_function_bar(double x) {
    if (x == 0.0) throw DistributionPole("Bose factor evaluated at omega == mu");
    return -1.0 / std::expm1(-x);
}

double bose_occupation(double omega, const ThermalState& thermal) {
    return bose_function(thermal.beta * (omega - thermal.mu));
}

double bose_occupation_bar(double omega, const ThermalState& thermal) {
    return bose_function_bar(thermal.beta * (omega - thermal.mu));
}

double coth(double x) {
    if (x == 0.0) throw DistributionPole("coth evaluated at zero");
    if (std::abs(x) < kSeriesCutoff) {
        const double x2 = x * x;
        return 1.0 / x + x / 3.0 - x * x2 / 45.0;
    }
    return 1.0 / std::tanh(x);
}

std::complex<double> coth(std::complex<double> z) {
    if (z == 0.0) throw DistributionPole("coth evaluated at zero");
    if (std::abs(z) < kSeriesCutoff) {
        return 1.0 / z + z / 3.0 - z * z * z / 45.0;
    }
    if (z.real() < 0.0) return -coth(-z);
    // e^{-2z} stays bounded for Re z >= 0
    const std::complex<double> q = std::exp(-2.0 * z);
    return (1.0 + q) / (1.0 - q);
}

double coth_factor(double epsilon, const ThermalState& thermal) {
    const double x = 0.5 * thermal.beta * (epsilon - thermal.mu);
    if (x == 0.0) throw DistributionPole("coth factor evaluated at epsilon == mu");
    return coth(x);
}

}  // namespace photmol
