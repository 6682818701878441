#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

// 1-D maximization on a closed interval: a uniform coarse scan locates the
// basin, a golden-section pass polishes the winner's bracket.  Objectives in
// this library are piecewise smooth with at most a few kinks, so the coarse
// pass (>= 50 points) is what guards against landing in the wrong basin.
// Ties on the coarse grid keep the leftmost point.

namespace hedgeworst {

struct ScalarOptResult {
    double argmax = 0.0;
    double max_value = 0.0;
    long long evaluations = 0;
    double bracket_width = 0.0;
};

template <typename F>
ScalarOptResult maximize_1d(F&& objective, double lo, double hi, int coarse_points = 1000,
                            double tol = 1e-10) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw std::invalid_argument("maximize_1d: need a finite interval with lo < hi");
    if (coarse_points < 50)
        throw std::invalid_argument("maximize_1d: need at least 50 coarse points");
    if (!(tol > 0.0))
        throw std::invalid_argument("maximize_1d: tolerance must be positive");

    ScalarOptResult result;
    result.max_value = -std::numeric_limits<double>::infinity();
    auto eval = [&](double x) {
        const double v = objective(x);
        ++result.evaluations;
        if (!std::isfinite(v))
            throw std::domain_error("maximize_1d: objective not finite at x = " +
                                    std::to_string(x));
        if (v > result.max_value) {
            result.max_value = v;
            result.argmax = x;
        }
        return v;
    };

    const double step = (hi - lo) / coarse_points;
    double best_x = lo;
    double best_v = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= coarse_points; ++i) {
        const double x = (i == coarse_points) ? hi : lo + step * i;
        const double v = eval(x);
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
    }

    double a = std::max(lo, best_x - step);
    double b = std::min(hi, best_x + step);
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
        }
    }
    result.bracket_width = b - a;
    return result;
}

}  // namespace hedgeworst
