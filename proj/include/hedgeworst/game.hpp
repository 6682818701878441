#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Full-information Hedge game between a learner and a budget-constrained
// adversary.
//
// The learner keeps weights w_i over N options and plays the normalized
// distribution.  Each round the adversary assigns penalties l_i in [0,1]
// with sum_i l_i = 1 (the whole budget is spent every round); the learner
// suffers sum_i w_i l_i and updates
//
//     w_i <- w_i beta^{l_i} / sum_j w_j beta^{l_j},   0 < beta < 1.
//
// For two options the state collapses to the scalar first-option weight.
// A run of first-option penalties moves that weight along the walk
//
//     f(w, x) = w beta^x / (w beta^x + 1 - w),
//
// where x is the net first-option penalty surplus: a round with penalties
// (l, 1-l) advances x by 2l - 1.

namespace hedgeworst {

struct GameParams {
    double beta;
    int n_options;
    int horizon;

    GameParams(double beta_, int n_options_, int horizon_)
        : beta(beta_), n_options(n_options_), horizon(horizon_) {
        if (!(beta > 0.0 && beta < 1.0))
            throw std::invalid_argument("GameParams: beta must lie strictly inside (0, 1)");
        if (n_options < 2)
            throw std::invalid_argument("GameParams: need at least two options");
        if (horizon < 1)
            throw std::invalid_argument("GameParams: horizon must be at least one round");
    }

    double log_beta() const { return std::log(beta); }
};

namespace detail {

inline std::vector<double> normalized_simplex(std::vector<double> v, double lo, double hi,
                                              const char* what) {
    if (v.size() < 2)
        throw std::invalid_argument(std::string(what) + ": need at least two components");
    double sum = 0.0;
    for (double& c : v) {
        if (!std::isfinite(c) || c < lo || c > hi)
            throw std::invalid_argument(std::string(what) + ": component out of range");
        sum += c;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(what) + ": components must sum to 1 within 1e-9");
    for (double& c : v) c /= sum;
    return v;
}

}  // namespace detail

// Learner state: non-negative weights summing to 1.  Sums within 1e-9 of 1
// are renormalized on construction, anything further off is rejected.
class WeightVector {
  public:
    explicit WeightVector(std::vector<double> w)
        : w_(detail::normalized_simplex(std::move(w), 0.0, 1.0 + 1e-9, "WeightVector")) {}

    static WeightVector uniform(int n) {
        if (n < 2) throw std::invalid_argument("WeightVector: need at least two components");
        return WeightVector(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
    }

    // two-option state from the first-option weight
    static WeightVector pair(double first) {
        if (!(first >= 0.0 && first <= 1.0))
            throw std::invalid_argument("WeightVector: first-option weight outside [0, 1]");
        return WeightVector({first, 1.0 - first});
    }

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_.at(i); }
    const std::vector<double>& values() const { return w_; }

  private:
    std::vector<double> w_;
};

// One round of adversary penalties: components in [0,1] summing to 1.
class PenaltyVector {
  public:
    explicit PenaltyVector(std::vector<double> l)
        : l_(detail::normalized_simplex(std::move(l), -1e-12, 1.0 + 1e-9, "PenaltyVector")) {
        for (double& c : l_) c = std::clamp(c, 0.0, 1.0);
    }

    // two-option row from the first-option penalty
    static PenaltyVector pair(double first) {
        if (!(first >= 0.0 && first <= 1.0))
            throw std::invalid_argument("PenaltyVector: first-option penalty outside [0, 1]");
        return PenaltyVector({first, 1.0 - first});
    }

    // full budget on one option
    static PenaltyVector unit(int n, std::size_t target) {
        if (n < 2) throw std::invalid_argument("PenaltyVector: need at least two components");
        if (target >= static_cast<std::size_t>(n))
            throw std::out_of_range("PenaltyVector: unit target out of range");
        std::vector<double> l(static_cast<std::size_t>(n), 0.0);
        l[target] = 1.0;
        return PenaltyVector(std::move(l));
    }

    std::size_t size() const { return l_.size(); }
    double operator[](std::size_t i) const { return l_.at(i); }
    const std::vector<double>& values() const { return l_; }

  private:
    std::vector<double> l_;
};

// expected loss of one round: sum_i w_i l_i
inline double round_loss(const WeightVector& w, const PenaltyVector& l) {
    if (w.size() != l.size())
        throw std::invalid_argument("round_loss: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * l[i];
    return s;
}

// multiplicative-weights step; beta^{l} evaluated as exp(l ln beta)
inline WeightVector hedge_update(const WeightVector& w, const PenaltyVector& l,
                                 const GameParams& params) {
    if (w.size() != l.size())
        throw std::invalid_argument("hedge_update: dimension mismatch");
    const double log_beta = params.log_beta();
    std::vector<double> next(w.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        next[i] = w[i] * std::exp(l[i] * log_beta);
        sum += next[i];
    }
    for (double& c : next) c /= sum;
    return WeightVector(std::move(next));
}

struct GameTrace {
    std::vector<WeightVector> weights_per_round;    // state at the start of each round
    std::vector<PenaltyVector> penalties_per_round;
    std::vector<double> loss_per_round;
    double cumulative_loss = 0.0;
};

// plays the full horizon; rows.size() must equal params.horizon
inline GameTrace play_game(const WeightVector& w0, const std::vector<PenaltyVector>& rows,
                           const GameParams& params) {
    if (static_cast<int>(w0.size()) != params.n_options)
        throw std::invalid_argument("play_game: weight dimension mismatch");
    if (static_cast<int>(rows.size()) != params.horizon)
        throw std::invalid_argument("play_game: need exactly one penalty row per round");
    GameTrace trace;
    trace.weights_per_round.reserve(rows.size());
    trace.penalties_per_round.reserve(rows.size());
    trace.loss_per_round.reserve(rows.size());
    WeightVector w = w0;
    for (const PenaltyVector& row : rows) {
        if (row.size() != w.size())
            throw std::invalid_argument("play_game: penalty dimension mismatch");
        const double loss = round_loss(w, row);
        trace.weights_per_round.push_back(w);
        trace.penalties_per_round.push_back(row);
        trace.loss_per_round.push_back(loss);
        trace.cumulative_loss += loss;
        w = hedge_update(w, row, params);
    }
    return trace;
}

// f(w, x) = w beta^x / (w beta^x + 1 - w), in logistic form so large |x|
// saturates to {0, 1} instead of overflowing.  Requires 0 < w < 1.
inline double f_walk(double w, double x, const GameParams& params) {
    if (!(w > 0.0 && w < 1.0))
        throw std::invalid_argument("f_walk: weight must lie strictly inside (0, 1)");
    return 1.0 / (1.0 + std::exp(std::log((1.0 - w) / w) - x * params.log_beta()));
}

// First-option penalty x moving weight u to u_target in one round:
//
//     x = 1/2 + ln( u_target (1-u) / (u (1-u_target)) ) / (2 ln beta).
//
// u_target must be one-round reachable, i.e. between f(u, 1) and f(u, -1).
inline double transition_penalty(double u, double u_target, const GameParams& params) {
    if (!(u > 0.0 && u < 1.0) || !(u_target > 0.0 && u_target < 1.0))
        throw std::invalid_argument("transition_penalty: weights must lie strictly inside (0, 1)");
    const double x =
        0.5 + std::log(u_target * (1.0 - u) / (u * (1.0 - u_target))) / (2.0 * params.log_beta());
    if (x < -1e-12 || x > 1.0 + 1e-12)
        throw std::domain_error("transition_penalty: target weight not reachable in one round");
    return std::clamp(x, 0.0, 1.0);
}

}  // namespace hedgeworst
