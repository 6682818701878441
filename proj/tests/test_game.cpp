#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include <hedgeworst/game.hpp>

using Catch::Approx;
using namespace hedgeworst;

namespace {

GameParams binary(double beta, int horizon) { return GameParams(beta, 2, horizon); }

}  // namespace

TEST_CASE("GameParams validates its domain", "[game]") {
    REQUIRE_NOTHROW(GameParams(0.5, 2, 1));
    REQUIRE_THROWS_AS(GameParams(0.0, 2, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(GameParams(1.0, 2, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(GameParams(-0.3, 2, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(GameParams(0.5, 1, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(GameParams(0.5, 2, 0), std::invalid_argument);
    REQUIRE(GameParams(0.25, 2, 1).log_beta() == Approx(std::log(0.25)).margin(1e-15));
}

TEST_CASE("WeightVector enforces the simplex", "[game]") {
    REQUIRE_NOTHROW(WeightVector({0.3, 0.7}));
    REQUIRE_THROWS_AS(WeightVector({0.3, 0.3}), std::invalid_argument);
    REQUIRE_THROWS_AS(WeightVector({-0.1, 1.1}), std::invalid_argument);
    REQUIRE_THROWS_AS(WeightVector({1.0}), std::invalid_argument);

    // tiny deviations renormalize, larger ones reject
    const WeightVector nudged({0.5 + 2e-10, 0.5});
    REQUIRE(nudged[0] + nudged[1] == Approx(1.0).margin(1e-15));
    REQUIRE_THROWS_AS(WeightVector({0.5 + 2e-9, 0.5}), std::invalid_argument);

    const WeightVector u = WeightVector::uniform(4);
    REQUIRE(u.size() == 4);
    REQUIRE(u[2] == Approx(0.25).margin(1e-15));
    REQUIRE_THROWS_AS(WeightVector::uniform(1), std::invalid_argument);

    const WeightVector p = WeightVector::pair(0.62);
    REQUIRE(p[0] == 0.62);
    REQUIRE(p[1] == Approx(0.38).margin(1e-15));
    REQUIRE_THROWS_AS(WeightVector::pair(1.5), std::invalid_argument);
    REQUIRE_THROWS_AS(WeightVector::pair(-0.1), std::invalid_argument);
}

TEST_CASE("PenaltyVector enforces the unit budget", "[game]") {
    REQUIRE_NOTHROW(PenaltyVector({0.25, 0.75}));
    REQUIRE_NOTHROW(PenaltyVector({1.0, 0.0}));
    REQUIRE_THROWS_AS(PenaltyVector({0.5, 0.6}), std::invalid_argument);
    REQUIRE_THROWS_AS(PenaltyVector({1.2, -0.2}), std::invalid_argument);

    const PenaltyVector u = PenaltyVector::unit(3, 1);
    REQUIRE(u[0] == 0.0);
    REQUIRE(u[1] == 1.0);
    REQUIRE(u[2] == 0.0);
    REQUIRE_THROWS_AS(PenaltyVector::unit(3, 3), std::out_of_range);

    const PenaltyVector p = PenaltyVector::pair(0.8469);
    REQUIRE(p[0] == 0.8469);
    REQUIRE(p[1] == Approx(1.0 - 0.8469).margin(1e-15));
    REQUIRE_THROWS_AS(PenaltyVector::pair(1.01), std::invalid_argument);
}

TEST_CASE("round_loss matches the inner product", "[game]") {
    const WeightVector half = WeightVector::pair(0.5);
    REQUIRE(round_loss(half, PenaltyVector::pair(1.0)) == Approx(0.5).margin(1e-15));
    REQUIRE(round_loss(half, PenaltyVector::pair(0.37)) == Approx(0.5).margin(1e-15));
    REQUIRE(round_loss(WeightVector::pair(1.0), PenaltyVector::pair(0.0)) == 0.0);
    REQUIRE(round_loss(WeightVector::pair(0.62), PenaltyVector::pair(1.0)) ==
            Approx(0.62).margin(1e-15));
    REQUIRE_THROWS_AS(round_loss(WeightVector::uniform(3), PenaltyVector::pair(1.0)),
                      std::invalid_argument);
}

TEST_CASE("round_loss stays between the extreme penalties", "[game][property]") {
    std::mt19937 rng(20240501);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        std::vector<double> wraw(static_cast<std::size_t>(n)), lraw(static_cast<std::size_t>(n));
        double ws = 0.0, ls = 0.0;
        for (int i = 0; i < n; ++i) {
            wraw[static_cast<std::size_t>(i)] = unif(rng) + 1e-3;
            lraw[static_cast<std::size_t>(i)] = unif(rng) + 1e-3;
            ws += wraw[static_cast<std::size_t>(i)];
            ls += lraw[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < n; ++i) {
            wraw[static_cast<std::size_t>(i)] /= ws;
            lraw[static_cast<std::size_t>(i)] /= ls;
        }
        const WeightVector w(wraw);
        const PenaltyVector l(lraw);
        const double loss = round_loss(w, l);
        const double lo = *std::min_element(l.values().begin(), l.values().end());
        const double hi = *std::max_element(l.values().begin(), l.values().end());
        REQUIRE(loss >= lo - 1e-15);
        REQUIRE(loss <= hi + 1e-15);
    }
}

TEST_CASE("hedge_update reproduces the closed-form steps", "[game]") {
    const GameParams params = binary(0.8, 1);
    const WeightVector half = WeightVector::pair(0.5);

    const WeightVector hit = hedge_update(half, PenaltyVector::pair(1.0), params);
    REQUIRE(hit[0] == Approx(0.8 / 1.8).margin(1e-15));
    REQUIRE(hit[1] == Approx(1.0 / 1.8).margin(1e-15));

    const WeightVector even = hedge_update(half, PenaltyVector::pair(0.5), params);
    REQUIRE(even[0] == Approx(0.5).margin(1e-15));

    // quarter split lands on the ideal rotational weights
    const double rb = std::sqrt(0.8);
    const WeightVector quarter = hedge_update(half, PenaltyVector::pair(0.25), params);
    REQUIRE(quarter[0] == Approx(1.0 / (1.0 + rb)).margin(1e-14));
    REQUIRE(quarter[1] == Approx(rb / (1.0 + rb)).margin(1e-14));

    REQUIRE_THROWS_AS(hedge_update(WeightVector::uniform(3), PenaltyVector::pair(1.0), params),
                      std::invalid_argument);
}

TEST_CASE("hedge_update keeps weights normalized", "[game][property]") {
    std::mt19937 rng(20240502);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        std::vector<double> wraw(static_cast<std::size_t>(n)), lraw(static_cast<std::size_t>(n));
        double ws = 0.0, ls = 0.0;
        for (int i = 0; i < n; ++i) {
            wraw[static_cast<std::size_t>(i)] = unif(rng) + 1e-6;
            lraw[static_cast<std::size_t>(i)] = unif(rng);
            ws += wraw[static_cast<std::size_t>(i)];
            ls += lraw[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < n; ++i) {
            wraw[static_cast<std::size_t>(i)] /= ws;
            lraw[static_cast<std::size_t>(i)] /= ls;
        }
        const GameParams params(0.01 + 0.98 * unif(rng), n, 1);
        const WeightVector next = hedge_update(WeightVector(wraw), PenaltyVector(lraw), params);
        double sum = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i) sum += next[i];
        REQUIRE(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("hedge_update responds monotonically to the first penalty", "[game][property]") {
    std::mt19937 rng(20240503);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const GameParams params(0.05 + 0.9 * unif(rng), 2, 1);
        const WeightVector w = WeightVector::pair(0.05 + 0.9 * unif(rng));
        double l1 = unif(rng), l2 = unif(rng);
        if (l1 > l2) std::swap(l1, l2);
        if (l2 - l1 < 1e-6) l2 = l1 + 1e-6 > 1.0 ? 1.0 : l1 + 1e-6;
        const WeightVector low = hedge_update(w, PenaltyVector::pair(l1), params);
        const WeightVector high = hedge_update(w, PenaltyVector::pair(l2), params);
        REQUIRE(high[0] < low[0]);
    }
}

TEST_CASE("hedge_update favors the unpenalized arm and respects permutations", "[game][property]") {
    std::mt19937 rng(20240504);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const GameParams params(0.05 + 0.9 * unif(rng), 3, 1);
        std::vector<double> wraw = {unif(rng) + 0.01, unif(rng) + 0.01, unif(rng) + 0.01};
        const double ws = wraw[0] + wraw[1] + wraw[2];
        for (double& c : wraw) c /= ws;
        const double split = unif(rng);
        const std::vector<double> lraw = {0.0, split, 1.0 - split};
        const WeightVector w(wraw);
        const WeightVector next = hedge_update(w, PenaltyVector(lraw), params);
        REQUIRE(next[0] >= w[0] - 1e-15);

        // relabeling arms commutes with the update
        const WeightVector wp({wraw[2], wraw[0], wraw[1]});
        const PenaltyVector lp({lraw[2], lraw[0], lraw[1]});
        const WeightVector nextp = hedge_update(wp, lp, params);
        REQUIRE(nextp[1] == Approx(next[0]).margin(1e-14));
        REQUIRE(nextp[2] == Approx(next[1]).margin(1e-14));
        REQUIRE(nextp[0] == Approx(next[2]).margin(1e-14));
    }
}

TEST_CASE("play_game reproduces the short closed forms", "[game]") {
    for (double beta : {0.1, 0.5, 0.8}) {
        const WeightVector half = WeightVector::pair(0.5);
        const GameParams two = binary(beta, 2);
        const std::vector<PenaltyVector> swing = {PenaltyVector::pair(0.0),
                                                  PenaltyVector::pair(1.0)};
        REQUIRE(play_game(half, swing, two).cumulative_loss ==
                Approx(0.5 + 1.0 / (1.0 + beta)).margin(1e-12));

        const GameParams three = binary(beta, 3);
        const std::vector<PenaltyVector> quarter = {PenaltyVector::pair(0.25),
                                                    PenaltyVector::pair(1.0),
                                                    PenaltyVector::pair(0.0)};
        REQUIRE(play_game(half, quarter, three).cumulative_loss ==
                Approx(0.5 + 2.0 / (1.0 + std::sqrt(beta))).margin(1e-12));
    }
}

TEST_CASE("play_game reproduces the ten-round greedy run", "[game]") {
    const GameParams params = binary(0.8, 10);
    std::vector<PenaltyVector> rows;
    for (double l : {1.0, 1.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0})
        rows.push_back(PenaltyVector::pair(l));
    const GameTrace trace = play_game(WeightVector::pair(0.62), rows, params);
    REQUIRE(trace.cumulative_loss == Approx(5.40886).margin(5e-5));
    REQUIRE(trace.cumulative_loss == Approx(5.40886336730519).margin(1e-12));
    REQUIRE(trace.loss_per_round.size() == 10);
    REQUIRE(trace.loss_per_round[0] == Approx(0.62).margin(1e-15));
}

TEST_CASE("play_game rejects malformed plans", "[game]") {
    const GameParams params = binary(0.8, 3);
    const std::vector<PenaltyVector> two = {PenaltyVector::pair(1.0), PenaltyVector::pair(0.0)};
    REQUIRE_THROWS_AS(play_game(WeightVector::pair(0.5), two, params), std::invalid_argument);
    REQUIRE_THROWS_AS(play_game(WeightVector::uniform(3), two, binary(0.8, 2)),
                      std::invalid_argument);
}

TEST_CASE("play_game traces are internally consistent", "[game][property]") {
    std::mt19937 rng(20240505);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const int t = 1 + static_cast<int>(rng() % 8);
        const GameParams params(0.05 + 0.9 * unif(rng), 2, t);
        std::vector<PenaltyVector> rows;
        for (int i = 0; i < t; ++i) rows.push_back(PenaltyVector::pair(unif(rng)));
        const WeightVector w0 = WeightVector::pair(0.02 + 0.96 * unif(rng));
        const GameTrace trace = play_game(w0, rows, params);

        double sum = 0.0;
        for (int i = 0; i < t; ++i) {
            const std::size_t k = static_cast<std::size_t>(i);
            REQUIRE(trace.loss_per_round[k] ==
                    Approx(round_loss(trace.weights_per_round[k], rows[k])).margin(1e-15));
            sum += trace.loss_per_round[k];
            if (i + 1 < t) {
                const WeightVector next =
                    hedge_update(trace.weights_per_round[k], rows[k], params);
                REQUIRE(std::abs(next[0] - trace.weights_per_round[k + 1][0]) <= 1e-12);
            }
        }
        REQUIRE(trace.cumulative_loss == Approx(sum).margin(1e-10));
    }
}

TEST_CASE("f_walk matches its definition and anchors", "[game]") {
    const GameParams params = binary(0.8, 10);
    REQUIRE(f_walk(0.37, 0.0, params) == Approx(0.37).margin(1e-15));
    REQUIRE(f_walk(0.883, 10.0, params) == Approx(0.4476).margin(1e-4));
    REQUIRE(f_walk(0.883, 10.0, params) == Approx(0.4476218073712529).margin(1e-12));
    REQUIRE(f_walk(0.883, 9.0, params) == Approx(0.5032).margin(1e-4));
    REQUIRE(f_walk(0.883, 9.0, params) == Approx(0.5032147816945544).margin(1e-12));

    // saturates instead of overflowing
    REQUIRE(f_walk(0.9, 1e6, params) == 0.0);
    REQUIRE(f_walk(0.9, -1e6, params) == 1.0);

    REQUIRE_THROWS_AS(f_walk(0.0, 1.0, params), std::invalid_argument);
    REQUIRE_THROWS_AS(f_walk(1.0, 1.0, params), std::invalid_argument);
}

TEST_CASE("f_walk is strictly decreasing in the offset", "[game][property]") {
    std::mt19937 rng(20240506);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int tested = 0;
    while (tested < 1000) {
        const GameParams params(0.05 + 0.9 * unif(rng), 2, 1);
        const double w = 0.02 + 0.96 * unif(rng);
        const double x = -20.0 + 40.0 * unif(rng);
        const double dx = 0.01 + unif(rng);
        const double log_ratio = std::log((1.0 - w) / w);
        // skip the saturated tails where the logistic loses resolution
        if (std::abs(log_ratio - x * params.log_beta()) > 25.0 ||
            std::abs(log_ratio - (x + dx) * params.log_beta()) > 25.0)
            continue;
        REQUIRE(f_walk(w, x + dx, params) < f_walk(w, x, params));
        ++tested;
    }
}

TEST_CASE("composed updates follow the walk", "[game][property]") {
    std::mt19937 rng(20240507);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const int t = 1 + static_cast<int>(rng() % 8);
        const GameParams params(0.05 + 0.9 * unif(rng), 2, t);
        const double w0 = 0.05 + 0.9 * unif(rng);
        WeightVector w = WeightVector::pair(w0);
        double offset = 0.0;
        for (int i = 0; i < t; ++i) {
            const double l = unif(rng);
            w = hedge_update(w, PenaltyVector::pair(l), params);
            offset += 2.0 * l - 1.0;
        }
        REQUIRE(std::abs(w[0] - f_walk(w0, offset, params)) <= 1e-12);
    }
}

TEST_CASE("k unit rounds equal f_walk at k", "[game][property]") {
    std::mt19937 rng(20240508);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 10);
        const GameParams params(0.05 + 0.9 * unif(rng), 2, k);
        const double w0 = 0.05 + 0.9 * unif(rng);
        WeightVector w = WeightVector::pair(w0);
        for (int i = 0; i < k; ++i) w = hedge_update(w, PenaltyVector::pair(1.0), params);
        REQUIRE(std::abs(w[0] - f_walk(w0, k, params)) <= 1e-12);
    }
}

TEST_CASE("transition_penalty hits its anchors", "[game]") {
    const GameParams params = binary(0.8, 10);
    const double rb = std::sqrt(0.8);

    REQUIRE(transition_penalty(0.37, 0.37, params) == 0.5);
    REQUIRE(transition_penalty(0.617, 0.617, params) == 0.5);

    // one-round move from the twice-walked 0.62 onto the low rotational weight
    const double u1 = f_walk(0.62, 2.0, params);
    REQUIRE(u1 == Approx(0.5108).margin(1e-4));
    const double x1 = transition_penalty(u1, rb / (1.0 + rb), params);
    REQUIRE(x1 == Approx(0.8469).margin(1e-4));
    REQUIRE(x1 == Approx(0.8469356327697998).margin(1e-12));

    // one-round move from the thrice-walked 0.65 onto the high rotational weight
    const double u2 = f_walk(0.65, 3.0, params);
    const double x2 = transition_penalty(u2, 1.0 / (1.0 + rb), params);
    REQUIRE(x2 == Approx(0.1371).margin(1e-4));
    REQUIRE(x2 == Approx(0.13708738110596547).margin(1e-12));

    // the same endpoint read as a direct one-round move differs
    REQUIRE(transition_penalty(0.5431, 0.5279, params) == Approx(0.6369).margin(1e-4));

    REQUIRE_THROWS_AS(transition_penalty(0.5, 0.9, params), std::domain_error);
    REQUIRE_THROWS_AS(transition_penalty(0.5, 0.1, params), std::domain_error);
    REQUIRE_THROWS_AS(transition_penalty(0.0, 0.5, params), std::invalid_argument);
    REQUIRE_THROWS_AS(transition_penalty(0.5, 1.0, params), std::invalid_argument);
}

TEST_CASE("transition_penalty round-trips through hedge_update", "[game][property]") {
    std::mt19937 rng(20240509);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const GameParams params(0.05 + 0.9 * unif(rng), 2, 1);
        const double u = 0.1 + 0.8 * unif(rng);
        const double lo = f_walk(u, 1.0, params);
        const double hi = f_walk(u, -1.0, params);
        const double frac = 0.05 + 0.9 * unif(rng);
        const double target = lo + frac * (hi - lo);
        const double x = transition_penalty(u, target, params);
        REQUIRE(x >= 0.0);
        REQUIRE(x <= 1.0);
        const WeightVector moved =
            hedge_update(WeightVector::pair(u), PenaltyVector::pair(x), params);
        REQUIRE(std::abs(moved[0] - target) <= 1e-12);

        // mirroring both weights mirrors the penalty
        const double xm = transition_penalty(1.0 - u, 1.0 - target, params);
        REQUIRE(std::abs(xm - (1.0 - x)) <= 1e-12);
    }
}
