#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "adversary.hpp"
#include "game.hpp"

// Value-iteration solver for the two-option game on a uniform weight grid:
//
//   V_0(w)     = max(w, 1 - w)
//   V_t(w)     = max_l  w l + (1-w)(1-l) + V_{t-1}( w beta^{2l-1} / (w beta^{2l-1} + 1-w) )
//
// (the budget pins the second-option penalty to 1 - l, so beta^l / beta^{1-l}
// collapses to the single factor beta^{2l-1}).  The inner maximum runs a
// coarse scan over a fixed penalty grid followed by a golden-section pass on
// the winning bracket; the continuation value is read off the previous row
// by linear (default) or nearest-point interpolation.

namespace hedgeworst {

enum class CurveInterp { Linear, Nearest };

struct ValueCurve {
    int grid_size = 0;     // weights sampled at k / grid_size
    int penalty_grid = 0;  // coarse penalties sampled at j / penalty_grid
    CurveInterp interp = CurveInterp::Linear;
    std::vector<std::vector<double>> values_per_horizon;  // [t][k], t+1 rounds to go
    std::vector<std::vector<double>> argmax_penalty;      // maximizing first-option penalty
};

namespace detail {

inline double curve_lookup(const std::vector<double>& row, double w, int grid_size,
                           CurveInterp interp) {
    const double pos = w * grid_size;
    if (interp == CurveInterp::Nearest)
        return row[static_cast<std::size_t>(std::lround(pos))];
    const int k = std::min(static_cast<int>(pos), grid_size - 1);
    const double frac = pos - k;
    return row[static_cast<std::size_t>(k)] +
           frac * (row[static_cast<std::size_t>(k) + 1] - row[static_cast<std::size_t>(k)]);
}

}  // namespace detail

inline ValueCurve solve_curve(const GameParams& params, int grid_size = 10000,
                              int penalty_grid = 1000, CurveInterp interp = CurveInterp::Linear) {
    if (params.n_options != 2)
        throw std::invalid_argument("solve_curve: two-option games only");
    if (grid_size < 100 || penalty_grid < 100)
        throw std::invalid_argument("solve_curve: need at least 100 grid points per axis");

    const int m = grid_size;
    const int p = penalty_grid;
    const int t_max = params.horizon;
    const double log_beta = params.log_beta();

    ValueCurve curve;
    curve.grid_size = m;
    curve.penalty_grid = p;
    curve.interp = interp;
    curve.values_per_horizon.assign(static_cast<std::size_t>(t_max),
                                    std::vector<double>(static_cast<std::size_t>(m) + 1));
    curve.argmax_penalty.assign(static_cast<std::size_t>(t_max),
                                std::vector<double>(static_cast<std::size_t>(m) + 1));

    std::vector<double> wgrid(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) wgrid[static_cast<std::size_t>(k)] = static_cast<double>(k) / m;

    for (int k = 0; k <= m; ++k) {
        const double w = wgrid[static_cast<std::size_t>(k)];
        curve.values_per_horizon[0][static_cast<std::size_t>(k)] = std::max(w, 1.0 - w);
        curve.argmax_penalty[0][static_cast<std::size_t>(k)] = w > 0.5 ? 1.0 : (w < 0.5 ? 0.0 : 0.5);
    }

    std::vector<double> lgrid(static_cast<std::size_t>(p) + 1);
    std::vector<double> factor(static_cast<std::size_t>(p) + 1);  // beta^{2l-1}
    for (int j = 0; j <= p; ++j) {
        lgrid[static_cast<std::size_t>(j)] = static_cast<double>(j) / p;
        factor[static_cast<std::size_t>(j)] =
            std::exp((2.0 * lgrid[static_cast<std::size_t>(j)] - 1.0) * log_beta);
    }

    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int t = 1; t < t_max; ++t) {
        const std::vector<double>& prev = curve.values_per_horizon[static_cast<std::size_t>(t) - 1];
        for (int k = 0; k <= m; ++k) {
            const double w = wgrid[static_cast<std::size_t>(k)];
            const double omw = 1.0 - w;
            auto value_at = [&](double l, double c) {
                const double a = w * c;
                return w * l + omw * (1.0 - l) +
                       detail::curve_lookup(prev, a / (a + omw), m, interp);
            };
            double best = -std::numeric_limits<double>::infinity();
            double best_l = 0.0;
            for (int j = 0; j <= p; ++j) {
                const double v = value_at(lgrid[static_cast<std::size_t>(j)],
                                          factor[static_cast<std::size_t>(j)]);
                if (v > best) {
                    best = v;
                    best_l = lgrid[static_cast<std::size_t>(j)];
                }
            }
            double a = std::max(0.0, best_l - 1.0 / p);
            double b = std::min(1.0, best_l + 1.0 / p);
            double c = b - inv_phi * (b - a);
            double d = a + inv_phi * (b - a);
            auto value = [&](double l) { return value_at(l, std::exp((2.0 * l - 1.0) * log_beta)); };
            double fc = value(c);
            double fd = value(d);
            while (b - a > 1e-10) {
                if (fc >= fd) {
                    b = d; d = c; fd = fc;
                    c = b - inv_phi * (b - a);
                    fc = value(c);
                } else {
                    a = c; c = d; fc = fd;
                    d = a + inv_phi * (b - a);
                    fd = value(d);
                }
                const double x = fc >= fd ? c : d;
                const double v = fc >= fd ? fc : fd;
                if (v > best) {
                    best = v;
                    best_l = x;
                }
            }
            curve.values_per_horizon[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = best;
            curve.argmax_penalty[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = best_l;
        }
    }
    return curve;
}

// Reads the stored argmax from horizon T-1 down to 0, snapping the running
// weight to the nearest grid index, and replays the moves exactly.
inline PenaltyPlan recover_penalties(const ValueCurve& curve, double w0,
                                     const GameParams& params) {
    if (params.n_options != 2)
        throw std::invalid_argument("recover_penalties: two-option games only");
    if (!(w0 >= 0.0 && w0 <= 1.0))
        throw std::invalid_argument("recover_penalties: start weight outside [0, 1]");
    if (static_cast<int>(curve.values_per_horizon.size()) < params.horizon)
        throw std::invalid_argument("recover_penalties: curve solved for too short a horizon");

    PenaltyPlan plan;
    plan.rows.reserve(static_cast<std::size_t>(params.horizon));
    double w = w0;
    for (int t = params.horizon - 1; t >= 0; --t) {
        const auto k = static_cast<std::size_t>(std::lround(w * curve.grid_size));
        const double l = curve.argmax_penalty[static_cast<std::size_t>(t)][k];
        plan.rows.push_back(PenaltyVector::pair(l));
        const double a = w * std::exp((2.0 * l - 1.0) * params.log_beta());
        w = a / (a + (1.0 - w));
    }
    return plan;
}

}  // namespace hedgeworst
