#include "photmol/boundstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "photmol/errors.hpp"
#include "photmol/fft.hpp"

namespace photmol {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// mass of the unit Gaussian below xi
double gaussian_cdf(double xi, double sigma) { return 0.5 * std::erfc(-xi / (sigma * std::numbers::sqrt2)); }

double gaussian(double xi, double sigma) {
    const double u = xi / sigma;
    return std::exp(-0.5 * u * u) / (sigma * std::sqrt(kTwoPi));
}

// cells of offset between a grid origin and chi's origin; throws unless aligned
long aligned_offset(double shift, double dx) {
    const double cells = shift / dx;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, std::abs(cells))) {
        throw DimensionMismatch("grid offsets must differ by whole cells");
    }
    return static_cast<long>(rounded);
}

void check_same_spacing(const UniformGrid& a, const UniformGrid& b) {
    if (std::abs(a.dx - b.dx) > 1e-12 * std::abs(b.dx)) throw DimensionMismatch("grids must share the spacing");
}

double wrap_two_pi(double a) {
    a = std::fmod(a, kTwoPi);
    return a < 0.0 ? a + kTwoPi : a;
}

}  // namespace

UniformGrid UniformGrid::centered(std::size_t n, double dx) {
    return UniformGrid{-static_cast<double>(n / 2) * dx, dx, n};
}

UniformGrid UniformGrid::spanning(double lo, double hi, std::size_t n) {
    if (n < 2) throw InvalidArgument("grid needs at least two points");
    return UniformGrid{lo, (hi - lo) / static_cast<double>(n - 1), n};
}

void UniformGrid::validate() const {
    if (n < 2) throw InvalidArgument("grid needs at least two points");
    if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x0)) throw InvalidArgument("grid spacing must be positive");
}

double PairAmplitude::norm() const {
    double s = 0.0;
    for (const auto& v : values) s += std::norm(v);
    return s * grid.dx;
}

double MomentumAmplitude::norm() const {
    double s = 0.0;
    for (const auto& v : values) s += std::norm(v);
    return s;
}

double Field2D::norm() const {
    double s = 0.0;
    for (const auto& v : values) s += std::norm(v);
    return s * xa.dx * xb.dx;
}

PairAmplitude chi_delta_bound(double kappa, const UniformGrid& grid) {
    grid.validate();
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidArgument("kappa must be positive");

    // continuum |chi|^2 = kappa e^{-2 kappa |x|}; mass below x
    auto cdf = [&](double x) { return x < 0.0 ? 0.5 * std::exp(2.0 * kappa * x) : 1.0 - 0.5 * std::exp(-2.0 * kappa * x); };
    const double tail = 1.0 - (cdf(grid.back() + 0.5 * grid.dx) - cdf(grid.x0 - 0.5 * grid.dx));
    if (tail > 1e-6) {
        std::ostringstream msg;
        msg << "box misses " << tail << " of the bound-state mass; it should span at least 20/kappa";
        throw CoverageError(msg.str());
    }

    PairAmplitude out{grid, std::vector<cplx>(grid.n), 0.0};
    double s = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double v = std::sqrt(kappa) * std::exp(-kappa * std::abs(grid.x(i)));
        out.values[i] = v;
        s += v * v;
    }
    const double scale = 1.0 / std::sqrt(s * grid.dx);
    for (auto& v : out.values) v *= scale;
    return out;
}

MomentumAmplitude momentum_amplitudes(const PairAmplitude& chi) {
    chi.grid.validate();
    const std::size_t n = chi.grid.n;
    if (chi.values.size() != n) throw DimensionMismatch("amplitude count does not match the grid");
    const double length = chi.box_length();

    std::vector<cplx> data(chi.values);
    fft::transform(data, fft::Direction::forward);

    MomentumAmplitude out;
    out.box_length = length;
    out.k.resize(n);
    out.values.resize(n);
    const auto half = static_cast<long>(n / 2);
    const double prefactor = chi.grid.dx / std::sqrt(length);
    for (std::size_t q = 0; q < n; ++q) {
        const long m = static_cast<long>(q) - half;
        const auto idx = static_cast<std::size_t>((m + static_cast<long>(n)) % static_cast<long>(n));
        const double k = kTwoPi * static_cast<double>(m) / length;
        out.k[q] = k;
        out.values[q] = prefactor * std::exp(-kI * (k * chi.grid.x0)) * data[idx];
    }
    return out;
}

double chi_momentum_density(double kappa, double k, double box_length) {
    const double d = kappa * kappa + k * k;
    return 4.0 * kappa * kappa * kappa / (box_length * d * d);
}

Field2D molecule_wavefunction(const PairAmplitude& chi, double K, const UniformGrid& xa, const UniformGrid& xb) {
    chi.grid.validate();
    xa.validate();
    xb.validate();
    check_same_spacing(xa, chi.grid);
    check_same_spacing(xb, chi.grid);
    const long n = static_cast<long>(chi.grid.n);
    const long offset = aligned_offset(xa.x0 - xb.x0 - chi.grid.x0, chi.grid.dx);
    const double inv_sqrt_l = 1.0 / std::sqrt(chi.box_length());

    Field2D out{xa, xb, std::vector<cplx>(xa.n * xb.n)};
    for (std::size_t i = 0; i < xa.n; ++i) {
        for (std::size_t j = 0; j < xb.n; ++j) {
            long m = (static_cast<long>(i) - static_cast<long>(j) + offset) % n;
            if (m < 0) m += n;
            const double com = 0.5 * K * (xa.x(i) + xb.x(j));
            out.at(i, j) = std::exp(kI * com) * chi.values[static_cast<std::size_t>(m)] * inv_sqrt_l;
        }
    }
    return out;
}

Field2D molecule_wavefunction_momentum(const PairAmplitude& chi, double K, const UniformGrid& xa,
                                       const UniformGrid& xb) {
    xa.validate();
    xb.validate();
    check_same_spacing(xa, chi.grid);
    check_same_spacing(xb, chi.grid);
    aligned_offset(xa.x0 - xb.x0 - chi.grid.x0, chi.grid.dx);
    const MomentumAmplitude mom = momentum_amplitudes(chi);
    const double length = chi.box_length();

    // the k sum depends on xa - xb only, which takes xa.n + xb.n - 1 values
    const long lo = -static_cast<long>(xb.n - 1);
    std::vector<cplx> relative(xa.n + xb.n - 1);
    for (std::size_t d = 0; d < relative.size(); ++d) {
        const double r = xa.x0 - xb.x0 + static_cast<double>(lo + static_cast<long>(d)) * chi.grid.dx;
        cplx s{};
        for (std::size_t q = 0; q < mom.k.size(); ++q) s += mom.values[q] * std::exp(kI * (mom.k[q] * r));
        relative[d] = s / length;
    }

    Field2D out{xa, xb, std::vector<cplx>(xa.n * xb.n)};
    for (std::size_t i = 0; i < xa.n; ++i) {
        for (std::size_t j = 0; j < xb.n; ++j) {
            const double com = 0.5 * K * (xa.x(i) + xb.x(j));
            const auto d = static_cast<std::size_t>(static_cast<long>(i) - static_cast<long>(j) - lo);
            out.at(i, j) = std::exp(kI * com) * relative[d];
        }
    }
    return out;
}

double nonlinear_phase(double v, double v_e) {
    if (!(v_e > 0.0)) throw InvalidArgument("v_e must be positive");
    return v / (4.0 * v_e);
}

PhaseResult propagate_pair(double v, double v_e, double sigma, const UniformGrid& x_grid, std::complex<double> phi_in,
                           const PhaseOptions& options) {
    x_grid.validate();
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be positive");
    if (!std::isfinite(v)) throw InvalidArgument("v must be finite");
    if (phi_in == 0.0) throw InvalidArgument("phi_in must be nonzero");
    if (!(options.cfl > 0.0 && options.cfl <= 1.0)) throw InvalidArgument("cfl must lie in (0, 1]");
    const double theta_a = nonlinear_phase(v, v_e);

    const double lo = x_grid.x0;
    const double hi = x_grid.back();
    const double mass = 1.0 - gaussian_cdf(lo, sigma) - gaussian_cdf(-hi, sigma);
    if (mass < 1.0 - 1e-10) {
        std::ostringstream msg;
        msg << "grid holds only " << mass << " of the regularized delta; extend it to +-10 sigma";
        throw CoverageError(msg.str());
    }

    PhaseResult out;
    out.sign = v < 0.0 ? 1 : -1;
    out.theta = std::abs(theta_a) * mass;
    out.theta_analytic = theta_a;
    out.sigma = sigma;
    out.dx = x_grid.dx;
    out.n_points = x_grid.n;
    out.half_crossing_theta = std::abs(theta_a) * (0.5 - gaussian_cdf(lo, sigma));
    out.t_total = x_grid.span() / (2.0 * v_e);
    out.omega0 = options.omega0;
    out.theta_lab = out.theta + 2.0 * options.omega0 * out.t_total;

    auto characteristic = [&](double xi) { return -theta_a * gaussian_cdf(xi, sigma); };
    out.xi.resize(x_grid.n);
    out.phase.resize(x_grid.n);
    out.phi.resize(x_grid.n);
    for (std::size_t i = 0; i < x_grid.n; ++i) {
        const double xi = x_grid.x(i);
        out.xi[i] = xi;
        out.phase[i] = characteristic(xi);
        out.phi[i] = phi_in * std::exp(kI * out.phase[i]);
        out.amplitude_deviation = std::max(out.amplitude_deviation, std::abs(1.0 - std::abs(out.phi[i] / phi_in)));
    }

    if (options.grid_cells == 0) return out;

    GridSolve& g = out.grid;
    g.cells = options.grid_cells;
    g.dx = x_grid.span() / static_cast<double>(g.cells);
    g.steps = static_cast<std::size_t>(std::llround(static_cast<double>(g.cells) / options.cfl));
    g.dt = out.t_total / static_cast<double>(g.steps);
    g.cfl = 2.0 * v_e * g.dt / g.dx;
    const double c = g.cfl;

    auto solve = [&](double omega0) {
        std::vector<cplx> factor(g.cells);
        for (std::size_t j = 0; j < g.cells; ++j) {
            const double x = lo + (static_cast<double>(j) + 0.5) * g.dx;
            factor[j] = std::exp(-kI * ((0.5 * v * gaussian(x, sigma) + 2.0 * omega0) * g.dt));
        }
        std::vector<cplx> phi(g.cells, phi_in);
        std::vector<cplx> next(g.cells);
        for (std::size_t step = 0; step < g.steps; ++step) {
            const cplx inflow = phi_in * std::exp(-kI * (2.0 * omega0 * g.dt * static_cast<double>(step)));
            for (std::size_t j = 0; j < g.cells; ++j) {
                const cplx upstream = j == 0 ? inflow : phi[j - 1];
                next[j] = factor[j] * ((1.0 - c) * phi[j] + c * upstream);
            }
            phi.swap(next);
        }
        return phi;
    };

    const std::vector<cplx> rotating = solve(0.0);
    double unwrapped = 0.0;
    cplx previous = phi_in;
    for (std::size_t j = 0; j < g.cells; ++j) {
        unwrapped += std::arg(rotating[j] / previous);
        previous = rotating[j];
        g.amplitude_deviation = std::max(g.amplitude_deviation, std::abs(1.0 - std::abs(rotating[j] / phi_in)));
        const double x = lo + (static_cast<double>(j) + 0.5) * g.dx;
        const cplx exact = phi_in * std::exp(kI * characteristic(x));
        g.complex_error = std::max(g.complex_error, std::abs(rotating[j] - exact) / std::abs(phi_in));
    }
    g.theta = out.sign * unwrapped;

    if (options.omega0 != 0.0) {
        const std::vector<cplx> lab = solve(options.omega0);
        g.lab_frame_offset = wrap_two_pi(std::arg(rotating.back() / lab.back()));
    }
    return out;
}

}  // namespace photmol
