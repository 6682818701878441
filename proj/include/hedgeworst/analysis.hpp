#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "adversary.hpp"
#include "game.hpp"

// Analytical side of the library: lemma checkers with numeric margins, the
// per-step error bounds of the greedy/rotation decomposition, and cycle-loss
// identities for rotating penalties (including the digamma closed form).

namespace hedgeworst {

// psi(z) via argument raising to z >= 10 and the asymptotic series
//   psi(z) ~ ln z - 1/(2z) - sum_n B_{2n} / (2n z^{2n});
// arguments below 1/2 go through the reflection
//   psi(z) = psi(1 - z) - pi cot(pi z),
// with the cotangent argument reduced modulo 1.  Non-positive integers are
// poles.
inline double digamma(double z) {
    if (!std::isfinite(z))
        throw std::invalid_argument("digamma: argument must be finite");
    if (z <= 0.0 && z == std::floor(z))
        throw std::domain_error("digamma: pole at non-positive integer");
    double acc = 0.0;
    if (z < 0.5) {
        const double r = z - std::round(z);
        acc = -std::numbers::pi / std::tan(std::numbers::pi * r);
        z = 1.0 - z;
    }
    while (z < 10.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    const double inv = 1.0 / z;
    const double inv2 = inv * inv;
    return acc + std::log(z) - 0.5 * inv -
           inv2 * (1.0 / 12 -
                   inv2 * (1.0 / 120 -
                           inv2 * (1.0 / 252 -
                                   inv2 * (1.0 / 240 -
                                           inv2 * (1.0 / 132 - inv2 * (691.0 / 32760))))));
}

// F_n(eps): loss of the plan (1-eps, 1, ..., 1) over n+1 rounds,
//   F_n(eps) = (1-eps) w + eps (1-w) + sum_{k=1}^n f(w, k - 2 eps).
inline double big_f(int n, double eps, double w, const GameParams& params) {
    if (n < 0) throw std::invalid_argument("big_f: round count must be non-negative");
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::invalid_argument("big_f: adjustment outside [0, 1]");
    if (!(w > 0.0 && w < 1.0))
        throw std::invalid_argument("big_f: weight must lie strictly inside (0, 1)");
    double s = (1.0 - eps) * w + eps * (1.0 - w);
    for (int k = 1; k <= n; ++k) s += f_walk(w, k - 2.0 * eps, params);
    return s;
}

struct LemmaCheck {
    bool holds = false;
    double margin = 0.0;     // amount by which the claimed inequality holds
    bool degenerate = false; // the compared plans coincide
};

// While the walk stays above 1/2 (w beta^{n+1} > 1 - w), softening the first
// round strictly loses:  F_n(eps) < F_n(0) for eps in (0, 1].
inline LemmaCheck check_lemma3(double w, double eps, int n, const GameParams& params) {
    if (!(w > 0.0 && w < 1.0))
        throw std::invalid_argument("check_lemma3: weight must lie strictly inside (0, 1)");
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("check_lemma3: adjustment outside (0, 1]");
    if (n < 0) throw std::invalid_argument("check_lemma3: round count must be non-negative");
    if (!(w * std::exp((n + 1) * params.log_beta()) > 1.0 - w))
        throw std::invalid_argument("check_lemma3: walk must stay above 1/2 (w beta^{n+1} > 1-w)");
    LemmaCheck res;
    res.margin = big_f(n, 0.0, w, params) - big_f(n, eps, w, params);
    res.holds = res.margin > -1e-12;
    return res;
}

namespace detail {

// two-option walk evaluation returning both loss and final weight
inline std::pair<double, double> binary_plan_loss_and_weight(double w,
                                                             const std::vector<double>& first,
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
    return {total, 1.0 / (1.0 + std::exp(log_ratio - offset * log_beta))};
}

}  // namespace detail

// Spending the adjustment early beats spending it late: over n+1 rounds with
// the walk above 1/2 throughout (w beta^n > 1 - w) and eps in (0, 1/2],
//
//   loss(1-eps, 1 x n)  >=  loss(1 x n, 1-eps),
//
// both plans ending at the common weight f(w, n+1-2eps).
inline LemmaCheck check_lemma5(double w, double eps, int n, const GameParams& params) {
    if (!(w > 0.5 && w < 1.0))
        throw std::invalid_argument("check_lemma5: weight must lie strictly inside (1/2, 1)");
    if (!(eps > 0.0 && eps <= 0.5))
        throw std::invalid_argument("check_lemma5: adjustment outside (0, 1/2]");
    if (n < 1) throw std::invalid_argument("check_lemma5: need at least one unit round");
    if (!(w * std::exp(n * params.log_beta()) > 1.0 - w))
        throw std::invalid_argument("check_lemma5: walk must stay above 1/2 (w beta^n > 1-w)");
    std::vector<double> early(static_cast<std::size_t>(n) + 1, 1.0);
    early[0] = 1.0 - eps;
    std::vector<double> late(static_cast<std::size_t>(n) + 1, 1.0);
    late[static_cast<std::size_t>(n)] = 1.0 - eps;
    const auto [early_loss, early_end] = detail::binary_plan_loss_and_weight(w, early, params);
    const auto [late_loss, late_end] = detail::binary_plan_loss_and_weight(w, late, params);
    LemmaCheck res;
    res.margin = early_loss - late_loss;
    res.holds = res.margin > -1e-12 && std::abs(early_end - late_end) <= 1e-12;
    return res;
}

// Two-round comparison inside the intersection area: against the preferred
// plan for moving w to w_target (budget b = x1 + x2), any split (x1, x2)
// reaching the same endpoint does no better.  The preferred plan is (b, 0)
// when w <= w_target (needs b <= 1) and (1, b-1) otherwise (needs b >= 1);
// a split equal to the preferred plan is flagged degenerate.
inline LemmaCheck check_lemma6_7(double w, double w_target, std::pair<double, double> split,
                                 const GameParams& params) {
    const double hi = 1.0 / (1.0 + params.beta);
    if (!(w > 0.5 && w < hi) || !(w_target > 0.5 && w_target < hi))
        throw std::invalid_argument(
            "check_lemma6_7: weights must lie inside the intersection area above 1/2");
    const auto [x1, x2] = split;
    if (!(x1 >= 0.0 && x1 <= 1.0 && x2 >= 0.0 && x2 <= 1.0))
        throw std::invalid_argument("check_lemma6_7: split penalties outside [0, 1]");
    const double b = x1 + x2;
    std::vector<double> preferred;
    bool degenerate = false;
    if (w <= w_target) {
        if (b > 1.0 + 1e-12)
            throw std::domain_error("check_lemma6_7: infeasible split, budget above one round");
        preferred = {std::min(b, 1.0), 0.0};
        degenerate = std::abs(x2) <= 1e-12;
    } else {
        if (b < 1.0 - 1e-12)
            throw std::domain_error("check_lemma6_7: infeasible split, budget below one round");
        preferred = {1.0, std::max(b - 1.0, 0.0)};
        degenerate = std::abs(x1 - 1.0) <= 1e-12;
    }
    const double pref_loss = detail::binary_plan_loss(w, preferred, params);
    const double split_loss = detail::binary_plan_loss(w, {x1, x2}, params);
    LemmaCheck res;
    res.margin = pref_loss - split_loss;
    res.degenerate = degenerate;
    res.holds = res.margin > -1e-12 && !degenerate;
    return res;
}

// Weight band where both options' walks can sit within one unit round of 1/2.
struct IntersectionArea {
    double lower = 0.0;  // beta / (1 + beta)
    double upper = 0.0;  // 1 / (1 + beta)
};

inline IntersectionArea intersection_area(const GameParams& params) {
    return {params.beta / (1.0 + params.beta), 1.0 / (1.0 + params.beta)};
}

enum class ErrorCategory { WalkStaysAbove, WalkEndsAtCrossing, WalkCrosses };

inline const char* to_string(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::WalkStaysAbove: return "WalkStaysAbove";
        case ErrorCategory::WalkEndsAtCrossing: return "WalkEndsAtCrossing";
        case ErrorCategory::WalkCrosses: return "WalkCrosses";
    }
    throw std::invalid_argument("to_string: unknown error category");
}

// Greedy's per-cycle shortfall against the ideal two-option rotation:
//   dL'(beta) = 2/(1+sqrt(beta)) - 1/2 - 1/(1+beta).
inline double rotation_error_per_cycle(double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("rotation_error_per_cycle: beta outside (0, 1)");
    return 2.0 / (1.0 + std::sqrt(beta)) - 0.5 - 1.0 / (1.0 + beta);
}

struct ErrorBoundReport {
    ErrorCategory category = ErrorCategory::WalkStaysAbove;
    int t1_transition = 0;              // rounds before the alternating phase
    double transition_bound = 0.0;      // loss the adversary can add in the transition
    double rotation_per_cycle_bound = 0.0;
    double rotation_total_bound = 0.0;
    double total_bound = 0.0;
};

// How far the greedy plan can fall short of optimal from start weight w:
// zero while the walk stays above 1/2 for the whole game, a single
// transition term w - f(w, t1 - 1) once the crossing is reached, plus the
// per-cycle rotation gap for every alternation cycle after it.
inline ErrorBoundReport binary_error_bounds(double w, const GameParams& params) {
    if (params.n_options != 2)
        throw std::invalid_argument("binary_error_bounds: two-option games only");
    if (!(w > 0.5 && w < 1.0))
        throw std::invalid_argument(
            "binary_error_bounds: weight must lie strictly inside (1/2, 1)");
    const int t = params.horizon;
    ErrorBoundReport report;
    report.t1_transition = rotation_entry_round(w, params);
    if (f_walk(w, t, params) > 0.5) {
        report.category = ErrorCategory::WalkStaysAbove;
        return report;
    }
    if (f_walk(w, t - 1.0, params) > 0.5) {
        report.category = ErrorCategory::WalkEndsAtCrossing;
        report.transition_bound = std::max(0.0, w - f_walk(w, t - 1.0, params));
        report.total_bound = report.transition_bound;
        return report;
    }
    report.category = ErrorCategory::WalkCrosses;
    const int t1 = report.t1_transition;
    // f_walk(w, 0) only reproduces w up to roundoff, so clamp at zero
    report.transition_bound =
        t1 >= 1 ? std::max(0.0, w - f_walk(w, t1 - 1.0, params)) : 0.0;
    report.rotation_per_cycle_bound = rotation_error_per_cycle(params.beta);
    report.rotation_total_bound =
        std::ceil((t - t1) / 2.0) * report.rotation_per_cycle_bound;
    report.total_bound = report.transition_bound + report.rotation_total_bound;
    return report;
}

// Loss of one full rotation cycle started at w (unit penalty walking down
// the options in order):
//   L_c = w_1 + sum_{j=2}^N w_j / (beta sum_{i<j} w_i + sum_{i>=j} w_i).
inline double cycle_loss(const WeightVector& w0, const GameParams& params) {
    if (static_cast<int>(w0.size()) != params.n_options)
        throw std::invalid_argument("cycle_loss: weight dimension mismatch");
    double total = w0[0];
    double prefix = 0.0;
    for (std::size_t j = 1; j < w0.size(); ++j) {
        prefix += w0[j - 1];
        total += w0[j] / (params.beta * prefix + (1.0 - prefix));
    }
    return total;
}

// Equal-start cycle loss, direct sum:  sum_{i=0}^{N-1} 1 / (i beta + N - i).
inline double cycle_loss_equal_direct(int n_options, double beta) {
    if (n_options < 2)
        throw std::invalid_argument("cycle_loss_equal_direct: need at least two options");
    if (!(beta >= 0.0 && beta < 1.0))
        throw std::invalid_argument("cycle_loss_equal_direct: beta outside [0, 1)");
    double total = 0.0;
    for (int i = 0; i < n_options; ++i) total += 1.0 / (i * beta + n_options - i);
    return total;
}

namespace detail {

// psi(x + n) - psi(x) without touching the poles between x and x + n
inline double digamma_difference(double x, int n) {
    const double nearest = std::round(x);
    if (std::abs(x - nearest) < 0.1 && nearest <= 0.0) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += 1.0 / (x + k);
        return s;
    }
    return digamma(x + n) - digamma(x);
}

}  // namespace detail

// Digamma form of the same sum: with x = N / (beta - 1) (always below -N),
//   L_c = -( psi(x) - psi(x + N) ) / (beta - 1).
// Grid betas often put x exactly on a pole, so the difference is taken
// telescopically near integers.  beta = 0 degenerates to the harmonic number
// H_N = gamma + psi(N + 1).
inline double cycle_loss_equal_digamma(int n_options, double beta) {
    if (n_options < 2)
        throw std::invalid_argument("cycle_loss_equal_digamma: need at least two options");
    if (!(beta >= 0.0 && beta < 1.0))
        throw std::invalid_argument("cycle_loss_equal_digamma: beta outside [0, 1)");
    const double x = n_options / (beta - 1.0);
    return detail::digamma_difference(x, n_options) / (beta - 1.0);
}

inline double cycle_loss_equal_digamma(const GameParams& params) {
    return cycle_loss_equal_digamma(params.n_options, params.beta);
}

}  // namespace hedgeworst
