#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "game.hpp"
#include "scalar_opt.hpp"

// Adversary constructions.  The two-option pattern search in optimal_plan
// compares the greedy all-ones plan against three adjusted shapes:
//
//   AdjustedFirstRound    (1-d, 1, 1, ..., 1)
//   GreedyThenRotation    (1-d, 1 x (n1-1), 0, 1, 0, 1, ...)
//   AdjustedEntryRotation (1 x n1, d, 1, 0, 1, 0, ...)
//
// with d tuned by golden-section search and n1 swept around the round
// where the walk first crosses 1/2.  Ties keep the earlier candidate, so a
// zero-gain adjustment falls back to the greedy plan.

namespace hedgeworst {

enum class PlanPattern {
    GreedyAllOnes,
    AdjustedFirstRound,
    GreedyThenRotation,
    AdjustedEntryRotation,
    EqualWeightsClosedForm,
    ExplicitRows,
};

inline const char* to_string(PlanPattern p) {
    switch (p) {
        case PlanPattern::GreedyAllOnes: return "GreedyAllOnes";
        case PlanPattern::AdjustedFirstRound: return "AdjustedFirstRound";
        case PlanPattern::GreedyThenRotation: return "GreedyThenRotation";
        case PlanPattern::AdjustedEntryRotation: return "AdjustedEntryRotation";
        case PlanPattern::EqualWeightsClosedForm: return "EqualWeightsClosedForm";
        case PlanPattern::ExplicitRows: return "ExplicitRows";
    }
    throw std::invalid_argument("to_string: unknown plan pattern");
}

struct PenaltyPlan {
    std::vector<PenaltyVector> rows;
    PlanPattern pattern = PlanPattern::ExplicitRows;
    // tuned scalar of the pattern (the d / x* above), canonical w >= 1/2 orientation
    std::optional<double> adjustment;
    // rounds before the alternating phase starts
    std::optional<int> transition_length;
    // total loss predicted by a closed form, when one exists
    std::optional<double> closed_form_loss;
};

inline GameTrace play_game(const WeightVector& w0, const PenaltyPlan& plan,
                           const GameParams& params) {
    return play_game(w0, plan.rows, params);
}

// unit penalty on the running argmax each round; ties keep the lowest index
inline PenaltyPlan greedy_binary_plan(const WeightVector& w0, const GameParams& params) {
    if (static_cast<int>(w0.size()) != params.n_options)
        throw std::invalid_argument("greedy_binary_plan: weight dimension mismatch");
    PenaltyPlan plan;
    plan.pattern = PlanPattern::GreedyAllOnes;
    plan.rows.reserve(static_cast<std::size_t>(params.horizon));
    WeightVector w = w0;
    for (int t = 0; t < params.horizon; ++t) {
        std::size_t arm = 0;
        for (std::size_t i = 1; i < w.size(); ++i)
            if (w[i] > w[arm]) arm = i;
        PenaltyVector row = PenaltyVector::unit(params.n_options, arm);
        w = hedge_update(w, row, params);
        plan.rows.push_back(std::move(row));
    }
    return plan;
}

// Largest t with f(w, t+1) >= 1/2 > f(w, t+2), i.e. floor(r - 1) for
// r = ln((1-w)/w) / ln(beta), clamped to [0, horizon].
inline int transition_phase_length(double w, const GameParams& params) {
    if (!(w > 0.5 && w < 1.0))
        throw std::invalid_argument(
            "transition_phase_length: weight must lie inside (1/2, 1); mirror the arms first");
    const double r = std::log((1.0 - w) / w) / params.log_beta();
    const double t1 = std::floor(r - 1.0);
    return static_cast<int>(std::clamp(t1, 0.0, static_cast<double>(params.horizon)));
}

// First round at which the walk from w has crossed 1/2: ceil(r), clamped to
// [0, horizon].  This is where an alternating phase can take over.
inline int rotation_entry_round(double w, const GameParams& params) {
    if (!(w > 0.0 && w < 1.0))
        throw std::invalid_argument("rotation_entry_round: weight must lie inside (0, 1)");
    const double r = std::log((1.0 - w) / w) / params.log_beta();
    return static_cast<int>(std::clamp(std::ceil(r), 0.0, static_cast<double>(params.horizon)));
}

// base row re-aimed cyclically: row t assigns base[i] to option (i + t) mod N
inline PenaltyPlan rotating_plan(const GameParams& params, const PenaltyVector& base_row) {
    if (static_cast<int>(base_row.size()) != params.n_options)
        throw std::invalid_argument("rotating_plan: base row dimension mismatch");
    const int n = params.n_options;
    PenaltyPlan plan;
    plan.rows.reserve(static_cast<std::size_t>(params.horizon));
    for (int t = 0; t < params.horizon; ++t) {
        std::vector<double> row(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) row[static_cast<std::size_t>((i + t) % n)] = base_row[static_cast<std::size_t>(i)];
        plan.rows.emplace_back(std::move(row));
    }
    return plan;
}

struct RotationSpec {
    std::vector<double> weights;  // stationary start-of-cycle weights
    double per_cycle_loss = 0.0;
    int cycle_length = 0;
};

// Stationary state of the unit-penalty rotation: w*_i proportional to
// beta^{(i-1)/N}, which the update maps to its own cyclic shift.  The
// penalized option always holds weight w*_1, so a cycle loses
// N (1 - beta^{1/N}) / (1 - beta).
inline RotationSpec ideal_rotation(const GameParams& params) {
    const int n = params.n_options;
    RotationSpec spec;
    spec.cycle_length = n;
    const double lead = -std::expm1(params.log_beta() / n);  // 1 - beta^{1/N}
    spec.per_cycle_loss = n * lead / (1.0 - params.beta);
    spec.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        spec.weights[static_cast<std::size_t>(i)] =
            lead * std::exp(params.log_beta() * i / n) / (1.0 - params.beta);
    return spec;
}

namespace detail {

// cumulative loss of a two-option game given first-option penalties,
// evaluated along the walk (one exp per round, no allocation)
inline double binary_plan_loss(double w, const std::vector<double>& first,
                               const GameParams& params) {
    const double log_ratio = std::log((1.0 - w) / w);
    const double log_beta = params.log_beta();
    double offset = 0.0;
    double total = 0.0;
    for (double l : first) {
        const double fw = 1.0 / (1.0 + std::exp(log_ratio - offset * log_beta));
        total += l * fw + (1.0 - l) * (1.0 - fw);
        offset += 2.0 * l - 1.0;
    }
    return total;
}

inline std::vector<PenaltyVector> rows_from_first(const std::vector<double>& first) {
    std::vector<PenaltyVector> rows;
    rows.reserve(first.size());
    for (double l : first) rows.push_back(PenaltyVector::pair(l));
    return rows;
}

}  // namespace detail

// Equal-start two-option game loss as a function of the first-round
// first-option penalty x (rounds 1.. alternate unit penalties):
//
//   L(x) = 1/2 + ceil((T-1)/2) beta^{1-x} / (beta^x + beta^{1-x})
//              + floor((T-1)/2) beta^x / (beta^x + beta^{2-x}).
inline double equal_weights_game_loss(double x, const GameParams& params) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("equal_weights_game_loss: penalty outside [0, 1]");
    const int t = params.horizon;
    const double bx = std::pow(params.beta, x);
    const double bix = std::pow(params.beta, 1.0 - x);
    const double b2x = std::pow(params.beta, 2.0 - x);
    return 0.5 + std::ceil((t - 1) / 2.0) * bix / (bx + bix)
               + std::floor((t - 1) / 2.0) * bx / (bx + b2x);
}

// Maximizer of equal_weights_game_loss.  Odd horizons peak at exactly 3/4;
// even horizons (T = 2k) have the closed form
//
//   x* = min(1, ln((s - beta^2) / (beta + k (1 - beta))) / (2 ln beta)),
//   s  = (1 - beta) beta sqrt(beta k (k-1)),
//
// clamped to 1 when the log argument is non-positive.
inline double equal_weights_xstar(const GameParams& params) {
    const int t = params.horizon;
    if (t % 2 == 1) return 0.75;
    const double beta = params.beta;
    const double k = t / 2;
    const double s = (1.0 - beta) * beta * std::sqrt(beta * k * (k - 1.0));
    const double arg = (s - beta * beta) / (beta + k * (1.0 - beta));
    if (!(arg > 0.0)) return 1.0;
    return std::min(1.0, std::log(arg) / (2.0 * params.log_beta()));
}

// Optimal plan from the uniform two-option start: first row (x*, 1-x*),
// then alternating unit penalties starting with option 2.
inline PenaltyPlan equal_weights_plan(const GameParams& params) {
    if (params.n_options != 2)
        throw std::invalid_argument("equal_weights_plan: two-option games only");
    const int t = params.horizon;
    const double xstar = equal_weights_xstar(params);
    PenaltyPlan plan;
    plan.pattern = PlanPattern::EqualWeightsClosedForm;
    plan.adjustment = xstar;
    plan.transition_length = 1;
    plan.rows.reserve(static_cast<std::size_t>(t));
    plan.rows.push_back(PenaltyVector::pair(xstar));
    for (int i = 1; i < t; ++i) plan.rows.push_back(PenaltyVector::pair(i % 2 == 0 ? 1.0 : 0.0));
    plan.closed_form_loss = t % 2 == 1
        ? 0.5 + (t - 1) / (1.0 + std::sqrt(params.beta))
        : equal_weights_game_loss(xstar, params);
    return plan;
}

namespace detail {

// candidate pattern first-option rows, canonical w > 1/2 orientation
inline std::vector<double> adjusted_first_rows(int t, double d) {
    std::vector<double> first(static_cast<std::size_t>(t), 1.0);
    first[0] = 1.0 - d;
    return first;
}

inline std::vector<double> greedy_then_rotation_rows(int t, int n1, double d) {
    std::vector<double> first(static_cast<std::size_t>(t), 1.0);
    first[0] = 1.0 - d;
    for (int i = n1; i < t; ++i) first[static_cast<std::size_t>(i)] = (i - n1) % 2 == 0 ? 0.0 : 1.0;
    return first;
}

inline std::vector<double> adjusted_entry_rows(int t, int n1, double d) {
    std::vector<double> first(static_cast<std::size_t>(t), 1.0);
    first[static_cast<std::size_t>(n1)] = d;
    for (int i = n1 + 2; i < t; ++i) first[static_cast<std::size_t>(i)] = (i - n1) % 2 == 0 ? 0.0 : 1.0;
    return first;
}

}  // namespace detail

// Two-option pattern search for the worst-case plan.  Candidates are the
// greedy plan plus the three adjusted shapes above; each adjustment is tuned
// by maximize_1d and candidates are compared by played cumulative loss.
// Starts below 1/2 are solved in the mirrored game and the rows swapped back.
inline PenaltyPlan optimal_plan(const WeightVector& w0, const GameParams& params) {
    if (params.n_options != 2 || w0.size() != 2)
        throw std::invalid_argument("optimal_plan: two-option games only");
    const double w = w0[0];
    const int t = params.horizon;

    if (w < 0.5) {
        PenaltyPlan plan = optimal_plan(WeightVector::pair(1.0 - w), params);
        for (PenaltyVector& row : plan.rows) row = PenaltyVector({row[1], row[0]});
        return plan;
    }
    if (w == 0.5) return equal_weights_plan(params);
    if (w >= 1.0) return greedy_binary_plan(w0, params);

    struct Candidate {
        PenaltyPlan plan;
        double loss;
    };
    std::vector<Candidate> candidates;
    auto add = [&](std::vector<double> first, PlanPattern pattern, double adjustment,
                   std::optional<int> transition) {
        Candidate c;
        c.plan.rows = detail::rows_from_first(first);
        c.plan.pattern = pattern;
        c.plan.adjustment = adjustment;
        c.plan.transition_length = transition;
        c.loss = play_game(w0, c.plan.rows, params).cumulative_loss;
        candidates.push_back(std::move(c));
    };

    {
        PenaltyPlan greedy = greedy_binary_plan(w0, params);
        Candidate c{greedy, play_game(w0, greedy.rows, params).cumulative_loss};
        candidates.push_back(std::move(c));
    }

    {
        auto objective = [&](double d) {
            return detail::binary_plan_loss(w, detail::adjusted_first_rows(t, d), params);
        };
        const ScalarOptResult opt = maximize_1d(objective, 0.0, 1.0);
        add(detail::adjusted_first_rows(t, opt.argmax), PlanPattern::AdjustedFirstRound,
            opt.argmax, t);
    }

    const int entry = rotation_entry_round(w, params);
    std::vector<int> lengths;
    for (int n1 : {entry - 1, entry, entry + 1})
        if (n1 >= 1 && n1 <= t && std::find(lengths.begin(), lengths.end(), n1) == lengths.end())
            lengths.push_back(n1);

    for (int n1 : lengths) {
        auto objective = [&](double d) {
            return detail::binary_plan_loss(w, detail::greedy_then_rotation_rows(t, n1, d),
                                            params);
        };
        const ScalarOptResult opt = maximize_1d(objective, 0.0, 1.0);
        add(detail::greedy_then_rotation_rows(t, n1, opt.argmax),
            PlanPattern::GreedyThenRotation, opt.argmax, n1);
    }
    for (int n1 : lengths) {
        if (n1 + 2 > t) continue;
        auto objective = [&](double d) {
            return detail::binary_plan_loss(w, detail::adjusted_entry_rows(t, n1, d), params);
        };
        const ScalarOptResult opt = maximize_1d(objective, 0.0, 1.0);
        add(detail::adjusted_entry_rows(t, n1, opt.argmax), PlanPattern::AdjustedEntryRotation,
            opt.argmax, n1);
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i)
        if (candidates[i].loss > candidates[best].loss) best = i;
    return candidates[best].plan;
}

}  // namespace hedgeworst
