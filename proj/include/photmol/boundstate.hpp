#pragma once

// Two-photon bound-state amplitudes: the relative wavefunction chi(x), its
// momentum components on a periodic box, the product-form molecule
// wavefunction and the propagation of a counter-propagating pair through the
// contact interaction, which yields the nonlinear phase v / (4 v_e).

#include <complex>
#include <cstddef>
#include <vector>

namespace photmol {

/// Uniform samples x_i = x0 + i dx, i < n. As a periodic box its length is n dx.
struct UniformGrid {
    double x0 = 0.0;
    double dx = 1.0;
    std::size_t n = 0;

    static UniformGrid centered(std::size_t n, double dx);
    static UniformGrid spanning(double lo, double hi, std::size_t n);

    double x(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }
    double back() const { return x(n - 1); }
    double span() const { return back() - x0; }
    double box_length() const { return static_cast<double>(n) * dx; }
    void validate() const;
};

struct PairAmplitude {
    UniformGrid grid;
    std::vector<std::complex<double>> values;
    double K = 0.0;  ///< centre-of-mass wavenumber, 1/m

    double box_length() const { return grid.box_length(); }
    /// sum |chi_i|^2 dx
    double norm() const;
};

/// chi(x) = sqrt(kappa) e^{-kappa |x|}, rescaled so the discrete norm is 1.
/// Throws CoverageError if more than 1e-6 of the continuum mass lies outside
/// the box.
PairAmplitude chi_delta_bound(double kappa, const UniformGrid& grid);

struct MomentumAmplitude {
    std::vector<double> k;  ///< 2 pi m / L, m = -n/2 .. n/2 - 1
    std::vector<std::complex<double>> values;
    double box_length = 0.0;

    double norm() const;
};

/// chi~_k = (dx / sqrt(L)) sum_j chi(x_j) e^{-i k x_j}, so sum |chi~_k|^2 equals
/// the discrete norm of chi.
MomentumAmplitude momentum_amplitudes(const PairAmplitude& chi);

/// |chi~_k|^2 of the continuum exponential state on a box of length L.
double chi_momentum_density(double kappa, double k, double box_length);

/// Complex field on the product grid xa x xb, row-major in xa.
struct Field2D {
    UniformGrid xa;
    UniformGrid xb;
    std::vector<std::complex<double>> values;

    std::complex<double>& at(std::size_t i, std::size_t j) { return values[i * xb.n + j]; }
    const std::complex<double>& at(std::size_t i, std::size_t j) const { return values[i * xb.n + j]; }
    /// sum |phi|^2 dxa dxb
    double norm() const;
};

/// phi_K(xa, xb) = e^{i K (xa + xb) / 2} chi(xa - xb) / sqrt(L), with xa - xb
/// wrapped into the periodic box of chi. Both grids must share chi's spacing
/// and point count, and their offsets must differ from chi's by whole cells.
Field2D molecule_wavefunction(const PairAmplitude& chi, double K, const UniformGrid& xa, const UniformGrid& xb);

/// Same field from (1/L) sum_k chi~_k e^{i (K/2 + k) xa} e^{i (K/2 - k) xb}.
Field2D molecule_wavefunction_momentum(const PairAmplitude& chi, double K, const UniformGrid& xa,
                                       const UniformGrid& xb);

/// theta = v / (4 v_e).
double nonlinear_phase(double v, double v_e);

struct PhaseOptions {
    double omega0 = 0.0;             ///< band minimum; adds 2 omega0 t outside the rotating frame
    std::size_t grid_cells = 10000;  ///< cells of the upwind cross-check, 0 disables it
    double cfl = 1.0;                ///< 2 v_e dt / dx, in (0, 1]
};

struct GridSolve {
    std::size_t cells = 0;
    double cfl = 0.0;
    double dx = 0.0;
    double dt = 0.0;
    std::size_t steps = 0;
    double theta = 0.0;
    double amplitude_deviation = 0.0;  ///< max |1 - |phi / phi_in||
    double complex_error = 0.0;        ///< max |phi - phi_characteristics| / |phi_in|
    double lab_frame_offset = 0.0;     ///< arg(phi_rot / phi_lab) at the outflow, mod 2 pi; 0 unless omega0 != 0
};

struct PhaseResult {
    double theta = 0.0;           ///< magnitude of the accumulated phase after the full crossing
    int sign = -1;                ///< phi_out = phi_in e^{sign i theta}
    double theta_analytic = 0.0;  ///< v / (4 v_e)
    double sigma = 0.0;           ///< width of the regularized delta, m
    double dx = 0.0;
    std::size_t n_points = 0;
    double amplitude_deviation = 0.0;  ///< max |1 - |phi / phi_in|| along the characteristic
    double half_crossing_theta = 0.0;  ///< phase magnitude on reaching xi = 0
    double t_total = 0.0;              ///< crossing time span / (2 v_e)
    double omega0 = 0.0;
    double theta_lab = 0.0;  ///< theta + 2 omega0 t_total
    std::vector<double> xi;
    std::vector<double> phase;  ///< signed accumulated phase at each xi
    std::vector<std::complex<double>> phi;
    GridSolve grid;
};

/// Integrates d phi / d xi = -i (v / 4 v_e) delta_sigma(xi) phi along the
/// characteristic with a unit-mass Gaussian delta_sigma, and cross-checks with
/// a first-order upwind solve of (d_t + 2 v_e d_x) phi = -i (v/2) delta_sigma phi.
PhaseResult propagate_pair(double v, double v_e, double sigma, const UniformGrid& x_grid,
                           std::complex<double> phi_in, const PhaseOptions& options = {});

}  // namespace photmol
