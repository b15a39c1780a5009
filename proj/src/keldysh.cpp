#include "photmol/keldysh.hpp"

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

std::vector<double> real_parts(const SpectralGrid& spectral) {
    double scale = 0.0;
    for (const auto& v : spectral.values) scale = std::max(scale, std::abs(v.real()));
    std::vector<double> out(spectral.size());
    for (std::size_t i = 0; i < spectral.size(); ++i) {
        if (std::abs(spectral.values[i].imag()) > 1e-12 * std::max(scale, 1e-300)) {
            throw InvalidArgument("spectral function must be real-valued");
        }
        out[i] = spectral.values[i].real();
    }
    return out;
}

void check_shape(const SpectralGrid& g) {
    g.grid.validate();
    if (g.values.size() != g.grid.n_points) throw DimensionMismatch("grid values do not match n_points");
}

// Shared body of the retarded (side = +1) and advanced (side = -1) transforms.
SpectralGrid cauchy_transform(const SpectralGrid& spectral, double eta, int side) {
    check_shape(spectral);
    if (eta < 0.0 || !std::isfinite(eta)) throw InvalidArgument("eta must be non-negative");
    const std::vector<double> a = real_parts(spectral);
    const std::size_t n = a.size();
    const double h = spectral.grid.spacing();
    const double lo = spectral.grid.omega_min - 0.5 * h;
    const double hi = spectral.grid.omega_max + 0.5 * h;
    const double shift = side * eta;  // kernel is 1 / (omega - omega' + i shift)
    // sign of the infinitesimal when eta == 0
    const double zero_imag = side > 0 ? 0.0 : -0.0;

    // kernel on offsets m = i - j in [-(n-1), n-1], zero on the diagonal
    std::vector<cplx> kernel(2 * n - 1);
    for (std::size_t k = 0; k < kernel.size(); ++k) {
        const double m = static_cast<double>(k) - static_cast<double>(n - 1);
        kernel[k] = m == 0.0 ? cplx{} : 1.0 / cplx(m * h, shift);
    }
    std::vector<cplx> signal(a.begin(), a.end());
    const std::vector<cplx> conv = fft::linear_convolution(signal, kernel);

    // prefix[k] = sum of kernel[0..k-1]; row i uses offsets i-(n-1) .. i
    std::vector<cplx> prefix(kernel.size() + 1);
    for (std::size_t k = 0; k < kernel.size(); ++k) prefix[k + 1] = prefix[k] + kernel[k];

    // cell average of u / (u - i shift) over |u| < h/2 (diagonal term)
    cplx diagonal_weight{1.0, 0.0};
    if (shift != 0.0) {
        diagonal_weight = 1.0 + kI * (shift / h) * (std::log(cplx(0.5 * h, -shift)) - std::log(cplx(-0.5 * h, -shift)));
    }

    SpectralGrid out{spectral.grid, std::vector<cplx>(n), spectral.singular};
    for (std::size_t i = 0; i < n; ++i) {
        const double w = spectral.grid.omega(i);
        const cplx row_sum = prefix[i + n] - prefix[i];
        double derivative = 0.0;
        if (n > 1) {
            if (i == 0) derivative = (a[1] - a[0]) / h;
            else if (i + 1 == n) derivative = (a[n - 1] - a[n - 2]) / h;
            else derivative = (a[i + 1] - a[i - 1]) / (2.0 * h);
        }
        const double im = shift != 0.0 ? shift : zero_imag;
        const cplx log_term = std::log(cplx(w - lo, im)) - std::log(cplx(w - hi, im));
        cplx sum = h * (conv[i] - a[i] * row_sum);
        if (shift == 0.0) sum = sum.real();  // a real kernel: drop FFT round-off
        const cplx body = sum - derivative * h * diagonal_weight + a[i] * log_term;
        out.values[i] = body / kTwoPi + spectral.singular;
    }
    return out;
}

}  // namespace

void GridSpec::validate() const {
    if (n_points < 2) throw InvalidArgument("grid needs at least two points");
    if (!std::isfinite(omega_min) || !std::isfinite(omega_max) || !(omega_max > omega_min)) {
        throw InvalidArgument("grid requires omega_max > omega_min");
    }
}

SpectralGrid lorentzian_spectral(double epsilon, double eta, const GridSpec& grid) {
    grid.validate();
    if (!(eta > 0.0)) throw InvalidArgument("Lorentzian width must be positive");
    const double inside =
        (std::atan((grid.omega_max - epsilon) / eta) - std::atan((grid.omega_min - epsilon) / eta)) /
        std::numbers::pi;
    if (1.0 - inside > 0.01) {
        std::ostringstream msg;
        msg << "grid holds only " << inside << " of the Lorentzian weight";
        throw CoverageError(msg.str());
    }
    SpectralGrid out{grid, std::vector<cplx>(grid.n_points)};
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double d = grid.omega(i) - epsilon;
        out.values[i] = 2.0 * eta / (d * d + eta * eta);
    }
    return out;
}

double spectral_weight(const SpectralGrid& spectral) {
    check_shape(spectral);
    double sum = 0.0;
    const std::size_t n = spectral.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        sum += w * spectral.values[i].real();
    }
    return sum * spectral.grid.spacing() / kTwoPi;
}

SpectralGrid retarded_from_spectral(const SpectralGrid& spectral, double eta) {
    return cauchy_transform(spectral, eta, +1);
}

SpectralGrid advanced_from_spectral(const SpectralGrid& spectral, double eta) {
    return cauchy_transform(spectral, eta, -1);
}

FdtComponents fdt_components(const SpectralGrid& spectral, const ThermalState& thermal, int mu_multiplier,
                             PoleMask mask) {
    check_shape(spectral);
    thermal.validate();
    if (mu_multiplier != 1 && mu_multiplier != 2) throw InvalidArgument("mu_multiplier must be 1 or 2");
    const double shift = mu_multiplier * thermal.mu;
    FdtComponents out{SpectralGrid{spectral.grid, std::vector<cplx>(spectral.size())},
                      SpectralGrid{spectral.grid, std::vector<cplx>(spectral.size())},
                      {}};
    for (std::size_t i = 0; i < spectral.size(); ++i) {
        const double x = thermal.beta * (spectral.omega(i) - shift);
        if (x == 0.0) {
            if (mask == PoleMask::reject) {
                throw DistributionPole("grid point sits on the Bose pole omega = m mu");
            }
            out.masked.push_back(i);
            continue;
        }
        out.lesser.values[i] = -kI * bose_function(x) * spectral.values[i];
        out.greater.values[i] = -kI * bose_function_bar(x) * spectral.values[i];
    }
    return out;
}

TimeSeries time_domain_retarded(const SpectralGrid& retarded) {
    check_shape(retarded);
    const std::size_t n = retarded.size();
    const double h = retarded.grid.spacing();
    const double center = 0.5 * (retarded.grid.omega_min + retarded.grid.omega_max);
    const double half_span = 0.5 * retarded.grid.span();

    const auto k_min = -static_cast<std::ptrdiff_t>(n / 2);
    TimeSeries out;
    out.t.resize(n);
    out.values.assign(n, cplx{});
    for (std::size_t k = 0; k < n; ++k) {
        out.t[k] = kTwoPi * static_cast<double>(k_min + static_cast<std::ptrdiff_t>(k)) / (static_cast<double>(n) * h);
    }

    double peak_freq = 0.0;
    for (const auto& v : retarded.values) peak_freq = std::max(peak_freq, std::abs(v));
    if (peak_freq == 0.0) return out;

    const std::size_t band = std::max<std::size_t>(4, n / 20);
    if (2 * band >= n) throw InvalidArgument("grid too small for a time-domain transform");
    auto in_band = [&](std::size_t j) { return j < band || j >= n - band; };

    // least squares for C ~ a1 / u + a2 / u^2 in scaled s = half_span / u
    double m11 = 0.0, m12 = 0.0, m22 = 0.0;
    cplx r1{}, r2{};
    for (std::size_t j = 0; j < n; ++j) {
        if (!in_band(j)) continue;
        const double s = half_span / (retarded.omega(j) - center);
        m11 += s * s;
        m12 += s * s * s;
        m22 += s * s * s * s;
        r1 += s * retarded.values[j];
        r2 += s * s * retarded.values[j];
    }
    const double det = m11 * m22 - m12 * m12;
    const cplx b1 = (m22 * r1 - m12 * r2) / det;
    const cplx b2 = (m11 * r2 - m12 * r1) / det;
    const cplx a1 = b1 * half_span;
    const cplx a2 = b2 * half_span * half_span;

    // two poles below the axis reproducing a1 / u + a2 / u^2; the width keeps
    // their time dependence from wrapping around the periodic window
    const double width = 10.0 * h;
    double pole_center = std::abs(a1) > 0.0 ? (a2 / a1).real() : 0.0;
    pole_center = std::clamp(pole_center, -half_span, half_span);
    const cplx q1{pole_center, -width};
    const cplx q2{pole_center, -2.0 * width};
    const cplx alpha = (a2 - a1 * q2) / (q1 - q2);
    const cplx beta = a1 - alpha;
    auto reference = [&](double u) { return alpha / (u - q1) + beta / (u - q2); };

    std::vector<cplx> remainder(n);
    double edge = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        remainder[j] = retarded.values[j] - reference(retarded.omega(j) - center);
        if (in_band(j)) edge = std::max(edge, std::abs(remainder[j]));
    }
    if (edge > 1e-6 * peak_freq) {
        std::ostringstream msg;
        msg << "retarded function is not asymptotic at the grid edges (remainder " << edge / peak_freq
            << " of peak); widen the grid";
        throw EdgeTruncation(msg.str());
    }

    for (std::size_t j = 0; j < band; ++j) {
        const double w = 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(band)));
        remainder[j] *= w;
        remainder[n - 1 - j] *= w;
    }
    fft::transform(remainder, fft::Direction::forward);

    const double omega_min = retarded.grid.omega_min;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = out.t[k];
        const auto idx = static_cast<std::size_t>((k_min + static_cast<std::ptrdiff_t>(k) + static_cast<std::ptrdiff_t>(n)) %
                                                  static_cast<std::ptrdiff_t>(n));
        cplx value = h / kTwoPi * std::exp(-kI * omega_min * t) * remainder[idx];
        if (t >= 0.0) {
            const double step = t == 0.0 ? 0.5 : 1.0;
            value += -kI * step *
                     (alpha * std::exp(-kI * (center + q1) * t) + beta * std::exp(-kI * (center + q2) * t));
        }
        out.values[k] = value;
        out.peak = std::max(out.peak, std::abs(value));
    }
    double acausal = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (out.t[k] < 0.0) acausal = std::max(acausal, std::abs(out.values[k]));
    }
    out.causality_violation = out.peak > 0.0 ? acausal / out.peak : 0.0;
    return out;
}

}  // namespace photmol
