#pragma once

#include <complex>

namespace photmol {

/// Physical constants of the waveguide photons, natural units (hbar = 1).
struct WaveguideParams {
    double omega0 = 0.0;     ///< band minimum from transverse confinement, rad/s
    double v_e = 1e5;        ///< effective group velocity, m/s
    double v = 0.0;          ///< contact coupling magnitude, rad/s * m
    bool attractive = true;  ///< sign convention: attractive means the coupling enters as -v
    double Delta = 40e9;     ///< interaction half-bandwidth around mu, rad/s
    double mu = 0.0;         ///< chemical potential, rad/s

    /// Dimensionless coupling g = v / (2 pi v_e).
    double coupling() const;
    /// Coupling with its sign applied.
    double signed_coupling() const { return attractive ? -v : v; }

    void validate() const;
};

struct ThermalState {
    double beta = 1.0;  ///< inverse temperature, s
    double mu = 0.0;    ///< chemical potential, rad/s

    static ThermalState from_kelvin(double kelvin, double mu = 0.0);
    double kelvin() const;
    void validate() const;
};

enum class Branch { right, left };

/// Linear dispersion omega0 +/- v_e k of the right/left moving branch.
double dispersion(double k, const WaveguideParams& params, Branch branch = Branch::right);

/// Bose function of the reduced argument x = beta (omega - mu): 1 / (e^x - 1).
double bose_function(double x);
/// 1 + f(x) = e^x f(x).
double bose_function_bar(double x);

double bose_occupation(double omega, const ThermalState& thermal);
double bose_occupation_bar(double omega, const ThermalState& thermal);

/// coth with a Laurent series near the origin. Throws at x == 0.
double coth(double x);
std::complex<double> coth(std::complex<double> z);

/// coth(beta (epsilon - mu) / 2) == 1 + 2 f(epsilon).
double coth_factor(double epsilon, const ThermalState& thermal);

}  // namespace photmol
