#pragma once

// Globally adaptive Gauss-Kronrod over a list of panels. Boost.Math's G7/K15
// rule evaluates each panel; the panel with the largest error estimate is
// bisected until the summed error meets the combined absolute + relative
// tolerance, or the panel budget runs out and the call fails.

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <span>
#include <sstream>
#include <type_traits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "photmol/errors.hpp"

namespace photmol {

struct QuadratureTolerance {
    double absolute = 1e-10;
    double relative = 1e-10;
    std::size_t max_panels = 4000;
};

template <class T>
struct QuadratureResult {
    T value{};
    double error = 0.0;  ///< estimated absolute error
    double l1 = 0.0;     ///< integral of |f|, the scale used for the relative test
};

/// Sorted, deduplicated copy of `points` restricted to [lo, hi], with both
/// endpoints included.
inline std::vector<double> panel_breaks(double lo, double hi, std::vector<double> points) {
    points.push_back(lo);
    points.push_back(hi);
    std::erase_if(points, [&](double p) { return !(p >= lo && p <= hi); });
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

template <class F>
auto integrate_panels(F&& f, std::span<const double> breaks, const QuadratureTolerance& tol)
    -> QuadratureResult<std::invoke_result_t<F&, double>> {
    using T = std::invoke_result_t<F&, double>;
    using boost::math::quadrature::gauss_kronrod;

    struct Panel {
        double a, b;
        T value;
        double error, l1;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    auto evaluate = [&](double a, double b) {
        double err = 0.0;
        double l1 = 0.0;
        const T v = gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err, &l1);
        // without recursion Boost reports the error on [-1, 1], unscaled
        return Panel{a, b, v, err * 0.5 * (b - a), l1};
    };

    std::priority_queue<Panel> queue;
    QuadratureResult<T> out;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        const Panel p = evaluate(breaks[i], breaks[i + 1]);
        out.value += p.value;
        out.error += p.error;
        out.l1 += p.l1;
        queue.push(p);
    }
    auto target = [&] { return std::max(tol.absolute, tol.relative * out.l1); };
    while (!queue.empty() && out.error > target() && queue.size() < tol.max_panels) {
        const Panel worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        queue.pop();
        const Panel left = evaluate(worst.a, mid);
        const Panel right = evaluate(mid, worst.b);
        out.value += left.value + right.value - worst.value;
        out.error += left.error + right.error - worst.error;
        out.l1 += left.l1 + right.l1 - worst.l1;
        queue.push(left);
        queue.push(right);
    }
    // re-sum to drop the drift of the running updates
    out.value = T{};
    out.error = 0.0;
    out.l1 = 0.0;
    for (; !queue.empty(); queue.pop()) {
        out.value += queue.top().value;
        out.error += queue.top().error;
        out.l1 += queue.top().l1;
    }

    const double allowed = std::max(tol.absolute, tol.relative * out.l1);
    if (!(out.error <= allowed) || !std::isfinite(std::abs(out.value))) {
        std::ostringstream msg;
        msg << "adaptive quadrature did not converge: achieved error " << out.error << ", requested "
            << allowed;
        throw QuadratureError(msg.str(), out.error, allowed);
    }
    return out;
}

template <class F>
auto integrate_panels(F&& f, double lo, double hi, std::vector<double> interior, const QuadratureTolerance& tol) {
    const std::vector<double> breaks = panel_breaks(lo, hi, std::move(interior));
    return integrate_panels(std::forward<F>(f), std::span<const double>(breaks), tol);
}

}  // namespace photmol
