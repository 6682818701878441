#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "adversary.hpp"
#include "game.hpp"
#include "scalar_opt.hpp"

// Exhaustive reference maximizer for short two-option games: depth-first
// enumeration of all (q+1)^T penalty sequences on the uniform grid j/q,
// carrying the walk state and prefix loss down the tree, optionally followed
// by cyclic coordinate ascent (three sweeps of maximize_1d per round) to
// polish the winner off-grid.  Deliberately small: horizon is capped at 6.

namespace hedgeworst {

struct OracleResult {
    double best_loss = 0.0;
    PenaltyPlan best_plan;
    int grid_resolution = 0;
    long long nodes_explored = 0;
};

namespace detail {

struct OracleSearch {
    int horizon;
    int q;
    std::vector<double> lgrid;
    std::vector<double> factor;  // beta^{2l-1}
    std::vector<double> current;
    std::vector<double> best_seq;
    double best = -1.0;
    long long nodes = 0;

    void dfs(int depth, double w, double prefix_loss) {
        if (depth == horizon) {
            if (prefix_loss > best) {
                best = prefix_loss;
                best_seq = current;
            }
            return;
        }
        const double omw = 1.0 - w;
        for (int j = 0; j <= q; ++j) {
            ++nodes;
            const double l = lgrid[static_cast<std::size_t>(j)];
            current[static_cast<std::size_t>(depth)] = l;
            const double a = w * factor[static_cast<std::size_t>(j)];
            dfs(depth + 1, a / (a + omw), prefix_loss + w * l + omw * (1.0 - l));
        }
    }
};

}  // namespace detail

inline OracleResult brute_force_max(const WeightVector& w0, const GameParams& params,
                                    int grid_resolution = 50, bool refine = true) {
    if (params.n_options != 2 || w0.size() != 2)
        throw std::invalid_argument("brute_force_max: two-option games only");
    if (grid_resolution < 20)
        throw std::invalid_argument("brute_force_max: grid resolution must be at least 20");
    if (params.horizon > 6)
        throw std::invalid_argument(
            "brute_force_max: horizon " + std::to_string(params.horizon) + " needs about " +
            std::to_string(std::pow(grid_resolution + 1.0, params.horizon)) +
            " sequences; capped at 6");

    const int t = params.horizon;
    detail::OracleSearch search;
    search.horizon = t;
    search.q = grid_resolution;
    search.lgrid.resize(static_cast<std::size_t>(grid_resolution) + 1);
    search.factor.resize(static_cast<std::size_t>(grid_resolution) + 1);
    for (int j = 0; j <= grid_resolution; ++j) {
        search.lgrid[static_cast<std::size_t>(j)] = static_cast<double>(j) / grid_resolution;
        search.factor[static_cast<std::size_t>(j)] =
            std::exp((2.0 * search.lgrid[static_cast<std::size_t>(j)] - 1.0) * params.log_beta());
    }
    search.current.resize(static_cast<std::size_t>(t));
    search.dfs(0, w0[0], 0.0);

    std::vector<double> seq = search.best_seq;
    if (refine) {
        for (int sweep = 0; sweep < 3; ++sweep) {
            for (int r = 0; r < t; ++r) {
                const double current = detail::binary_plan_loss(w0[0], seq, params);
                auto objective = [&](double l) {
                    std::vector<double> probe = seq;
                    probe[static_cast<std::size_t>(r)] = l;
                    return detail::binary_plan_loss(w0[0], probe, params);
                };
                const ScalarOptResult opt = maximize_1d(objective, 0.0, 1.0, 100, 1e-11);
                if (opt.max_value > current) seq[static_cast<std::size_t>(r)] = opt.argmax;
            }
        }
    }

    OracleResult result;
    result.grid_resolution = grid_resolution;
    result.nodes_explored = search.nodes;
    result.best_plan.rows = detail::rows_from_first(seq);
    result.best_plan.pattern = PlanPattern::ExplicitRows;
    result.best_loss = play_game(w0, result.best_plan.rows, params).cumulative_loss;
    if (refine) {
        const std::vector<PenaltyVector> grid_rows = detail::rows_from_first(search.best_seq);
        const double grid_loss = play_game(w0, grid_rows, params).cumulative_loss;
        if (grid_loss > result.best_loss) {
            result.best_plan.rows = grid_rows;
            result.best_loss = grid_loss;
        }
    }
    return result;
}

}  // namespace hedgeworst
