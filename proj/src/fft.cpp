#include "photmol/fft.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <type_traits>

#include <fftw3.h>

#include "photmol/errors.hpp"

namespace photmol::fft {

namespace {

// FFTW's planner is not thread safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};
using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter>;

std::size_t next_fast_size(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

}  // namespace

void transform(std::span<std::complex<double>> data, Direction direction) {
    if (data.empty()) return;
    auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
    const int sign = direction == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_1d(static_cast<int>(data.size()), buffer, buffer, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED));
    }
    if (!plan) throw Error("fft_plan", "FFTW failed to create a plan");
    fftw_execute(plan.get());
}

std::vector<std::complex<double>> linear_convolution(std::span<const std::complex<double>> signal,
                                                     std::span<const std::complex<double>> kernel) {
    const std::size_t n = signal.size();
    if (n == 0) return {};
    if (kernel.size() != 2 * n - 1) {
        throw DimensionMismatch("convolution kernel must hold 2n-1 offsets");
    }
    const std::size_t size = next_fast_size(2 * n);
    std::vector<std::complex<double>> a(size), b(size);
    std::copy(signal.begin(), signal.end(), a.begin());
    for (std::size_t k = 0; k < kernel.size(); ++k) {
        const auto offset = static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(n - 1);
        const auto slot = offset >= 0 ? static_cast<std::size_t>(offset) : size - static_cast<std::size_t>(-offset);
        b[slot] = kernel[k];
    }
    transform(a, Direction::forward);
    transform(b, Direction::forward);
    for (std::size_t k = 0; k < size; ++k) a[k] *= b[k];
    transform(a, Direction::backward);
    const double scale = 1.0 / static_cast<double>(size);
    std::vector<std::complex<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * scale;
    return out;
}

}  // namespace photmol::fft
