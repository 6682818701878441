#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <hedgeworst/hedgeworst.hpp>

// Command-line front end.  Every subcommand renders one deterministic table
// or record to stdout (or --out): no timestamps, no environment lookups, so
// identical invocations produce identical bytes.  CSV uses ',' separators,
// '.' decimals and 12 significant digits; JSON keeps insertion key order.
//
// Exit codes: 0 success, 2 invalid arguments or domain errors, 3 I/O errors.

namespace {

using json = nlohmann::ordered_json;
using namespace hedgeworst;

struct RunConfig {
    std::string command;
    double beta = 0.8;
    int rounds = 10;
    int options = 2;
    std::vector<double> w0;
    int grid = 10000;
    int penalty_grid = 1000;
    int oracle_grid = 50;
    std::string out;
    std::string format;  // empty means the command's default
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

WeightVector start_weights(const RunConfig& cfg) {
    if (cfg.w0.empty()) return WeightVector::uniform(cfg.options);
    if (cfg.w0.size() == 1 && cfg.options == 2) return WeightVector::pair(cfg.w0[0]);
    if (static_cast<int>(cfg.w0.size()) != cfg.options)
        throw std::invalid_argument("--w0 must list one weight per option");
    return WeightVector(cfg.w0);
}

std::string pick_format(const RunConfig& cfg, const char* fallback) {
    const std::string f = cfg.format.empty() ? fallback : cfg.format;
    if (f != "csv" && f != "json")
        throw std::invalid_argument("--format must be csv or json");
    return f;
}

json json_rows(const std::vector<PenaltyVector>& rows) {
    json out = json::array();
    for (const PenaltyVector& row : rows) out.push_back(row.values());
    return out;
}

void run_trace(const RunConfig& cfg, std::ostream& os) {
    const GameParams params(cfg.beta, cfg.options, cfg.rounds);
    const WeightVector w0 = start_weights(cfg);
    const PenaltyPlan plan =
        cfg.options == 2 ? optimal_plan(w0, params) : greedy_binary_plan(w0, params);
    const GameTrace trace = play_game(w0, plan, params);
    if (pick_format(cfg, "csv") == "csv") {
        os << "round";
        for (int i = 1; i <= cfg.options; ++i) os << ",w" << i;
        for (int i = 1; i <= cfg.options; ++i) os << ",l" << i;
        os << ",loss,cumulative\n";
        double cumulative = 0.0;
        for (std::size_t t = 0; t < trace.loss_per_round.size(); ++t) {
            cumulative += trace.loss_per_round[t];
            os << t;
            for (double w : trace.weights_per_round[t].values()) os << ',' << fmt(w);
            for (double l : trace.penalties_per_round[t].values()) os << ',' << fmt(l);
            os << ',' << fmt(trace.loss_per_round[t]) << ',' << fmt(cumulative) << '\n';
        }
        return;
    }
    json doc;
    doc["command"] = "trace";
    doc["beta"] = cfg.beta;
    doc["rounds"] = cfg.rounds;
    doc["options"] = cfg.options;
    doc["w0"] = w0.values();
    doc["pattern"] = to_string(plan.pattern);
    doc["cumulative_loss"] = trace.cumulative_loss;
    json rounds = json::array();
    double cumulative = 0.0;
    for (std::size_t t = 0; t < trace.loss_per_round.size(); ++t) {
        cumulative += trace.loss_per_round[t];
        json row;
        row["round"] = t;
        row["weights"] = trace.weights_per_round[t].values();
        row["penalties"] = trace.penalties_per_round[t].values();
        row["loss"] = trace.loss_per_round[t];
        row["cumulative"] = cumulative;
        rounds.push_back(std::move(row));
    }
    doc["rounds_detail"] = std::move(rounds);
    os << doc.dump(2) << '\n';
}

void run_solve(const RunConfig& cfg, std::ostream& os) {
    const GameParams params(cfg.beta, 2, cfg.rounds);
    if (cfg.options != 2) throw std::invalid_argument("solve handles two-option games only");
    const WeightVector w0 = start_weights(cfg);
    const PenaltyPlan plan = optimal_plan(w0, params);
    const double loss = play_game(w0, plan, params).cumulative_loss;
    if (pick_format(cfg, "json") == "json") {
        json doc;
        doc["command"] = "solve";
        doc["beta"] = cfg.beta;
        doc["rounds"] = cfg.rounds;
        doc["w0"] = w0.values();
        doc["pattern"] = to_string(plan.pattern);
        doc["adjustment"] = plan.adjustment ? json(*plan.adjustment) : json(nullptr);
        doc["transition_length"] =
            plan.transition_length ? json(*plan.transition_length) : json(nullptr);
        doc["closed_form_loss"] =
            plan.closed_form_loss ? json(*plan.closed_form_loss) : json(nullptr);
        doc["cumulative_loss"] = loss;
        doc["first_round_penalty"] = plan.rows.front()[0];
        doc["penalties"] = json_rows(plan.rows);
        os << doc.dump(2) << '\n';
        return;
    }
    os << "pattern,adjustment,transition_length,cumulative_loss,first_round_penalty\n";
    os << to_string(plan.pattern) << ',' << (plan.adjustment ? fmt(*plan.adjustment) : "")
       << ',' << (plan.transition_length ? std::to_string(*plan.transition_length) : "") << ','
       << fmt(loss) << ',' << fmt(plan.rows.front()[0]) << '\n';
}

void run_curve(const RunConfig& cfg, std::ostream& os) {
    const GameParams params(cfg.beta, 2, cfg.rounds);
    if (cfg.options != 2) throw std::invalid_argument("curve handles two-option games only");
    const ValueCurve curve = solve_curve(params, cfg.grid, cfg.penalty_grid);
    if (pick_format(cfg, "csv") == "csv") {
        os << "horizon,w,value,argmax_penalty\n";
        for (std::size_t t = 0; t < curve.values_per_horizon.size(); ++t)
            for (int k = 0; k <= curve.grid_size; ++k)
                os << (t + 1) << ',' << fmt(static_cast<double>(k) / curve.grid_size) << ','
                   << fmt(curve.values_per_horizon[t][static_cast<std::size_t>(k)]) << ','
                   << fmt(curve.argmax_penalty[t][static_cast<std::size_t>(k)]) << '\n';
        return;
    }
    json doc;
    doc["command"] = "curve";
    doc["beta"] = cfg.beta;
    doc["rounds"] = cfg.rounds;
    doc["grid_size"] = curve.grid_size;
    doc["penalty_grid"] = curve.penalty_grid;
    json horizons = json::array();
    for (std::size_t t = 0; t < curve.values_per_horizon.size(); ++t) {
        json h;
        h["horizon"] = t + 1;
        h["values"] = curve.values_per_horizon[t];
        h["argmax_penalty"] = curve.argmax_penalty[t];
        horizons.push_back(std::move(h));
    }
    doc["horizons"] = std::move(horizons);
    os << doc.dump(2) << '\n';
}

void run_oracle(const RunConfig& cfg, std::ostream& os) {
    const GameParams params(cfg.beta, 2, cfg.rounds);
    if (cfg.options != 2) throw std::invalid_argument("oracle handles two-option games only");
    const WeightVector w0 = start_weights(cfg);
    const OracleResult result = brute_force_max(w0, params, cfg.oracle_grid);
    if (pick_format(cfg, "json") == "json") {
        json doc;
        doc["command"] = "oracle";
        doc["beta"] = cfg.beta;
        doc["rounds"] = cfg.rounds;
        doc["w0"] = w0.values();
        doc["grid_resolution"] = result.grid_resolution;
        doc["nodes_explored"] = result.nodes_explored;
        doc["best_loss"] = result.best_loss;
        doc["penalties"] = json_rows(result.best_plan.rows);
        os << doc.dump(2) << '\n';
        return;
    }
    os << "best_loss,grid_resolution,nodes_explored";
    for (std::size_t t = 0; t < result.best_plan.rows.size(); ++t) os << ",l" << t;
    os << '\n' << fmt(result.best_loss) << ',' << result.grid_resolution << ','
       << result.nodes_explored;
    for (const PenaltyVector& row : result.best_plan.rows) os << ',' << fmt(row[0]);
    os << '\n';
}

void run_bounds(const RunConfig& cfg, std::ostream& os) {
    const GameParams params(cfg.beta, 2, cfg.rounds);
    if (cfg.options != 2) throw std::invalid_argument("bounds handles two-option games only");
    const WeightVector w0 = start_weights(cfg);
    const ErrorBoundReport report = binary_error_bounds(w0[0], params);
    if (pick_format(cfg, "json") == "json") {
        json doc;
        doc["command"] = "bounds";
        doc["beta"] = cfg.beta;
        doc["rounds"] = cfg.rounds;
        doc["w"] = w0[0];
        doc["category"] = to_string(report.category);
        doc["t1_transition"] = report.t1_transition;
        doc["transition_bound"] = report.transition_bound;
        doc["rotation_per_cycle_bound"] = report.rotation_per_cycle_bound;
        doc["rotation_total_bound"] = report.rotation_total_bound;
        doc["total_bound"] = report.total_bound;
        os << doc.dump(2) << '\n';
        return;
    }
    os << "category,t1_transition,transition_bound,rotation_per_cycle_bound,"
          "rotation_total_bound,total_bound\n";
    os << to_string(report.category) << ',' << report.t1_transition << ','
       << fmt(report.transition_bound) << ',' << fmt(report.rotation_per_cycle_bound) << ','
       << fmt(report.rotation_total_bound) << ',' << fmt(report.total_bound) << '\n';
}

void run_equalweights(const RunConfig& cfg, std::ostream& os) {
    if (cfg.options != 2)
        throw std::invalid_argument("equalweights handles two-option games only");
    const bool csv = pick_format(cfg, "csv") == "csv";
    json table = json::array();
    if (csv) os << "rounds,x_star,loss\n";
    for (int t = 1; t <= cfg.rounds; ++t) {
        const GameParams params(cfg.beta, 2, t);
        const PenaltyPlan plan = equal_weights_plan(params);
        if (csv) {
            os << t << ',' << fmt(*plan.adjustment) << ',' << fmt(*plan.closed_form_loss)
               << '\n';
        } else {
            json row;
            row["rounds"] = t;
            row["x_star"] = *plan.adjustment;
            row["loss"] = *plan.closed_form_loss;
            table.push_back(std::move(row));
        }
    }
    if (!csv) {
        json doc;
        doc["command"] = "equalweights";
        doc["beta"] = cfg.beta;
        doc["table"] = std::move(table);
        os << doc.dump(2) << '\n';
    }
}

void run_rotation(const RunConfig& cfg, std::ostream& os) {
    if (cfg.options < 2) throw std::invalid_argument("rotation needs at least two options");
    const bool csv = pick_format(cfg, "csv") == "csv";
    json table = json::array();
    if (csv) os << "options,beta,cycle_loss,per_round_loss,digamma_form\n";
    for (int n = 2; n <= cfg.options; ++n) {
        for (int i = 0; i < 20; ++i) {
            const double beta = i / 20.0;
            const double direct = cycle_loss_equal_direct(n, beta);
            const double via_digamma = cycle_loss_equal_digamma(n, beta);
            if (csv) {
                os << n << ',' << fmt(beta) << ',' << fmt(direct) << ',' << fmt(direct / n)
                   << ',' << fmt(via_digamma) << '\n';
            } else {
                json row;
                row["options"] = n;
                row["beta"] = beta;
                row["cycle_loss"] = direct;
                row["per_round_loss"] = direct / n;
                row["digamma_form"] = via_digamma;
                table.push_back(std::move(row));
            }
        }
    }
    if (!csv) {
        json doc;
        doc["command"] = "rotation";
        doc["options"] = cfg.options;
        doc["table"] = std::move(table);
        os << doc.dump(2) << '\n';
    }
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--beta", cfg.beta, "discount factor in (0, 1)");
    cmd->add_option("--rounds", cfg.rounds, "game horizon T");
    cmd->add_option("--options", cfg.options, "number of options N");
    cmd->add_option("--w0", cfg.w0, "start weights (one value: first-option weight, N = 2)")
        ->expected(-1);
    cmd->add_option("--grid", cfg.grid, "weight grid resolution M");
    cmd->add_option("--penalty-grid", cfg.penalty_grid, "penalty grid resolution P");
    cmd->add_option("--oracle-grid", cfg.oracle_grid, "oracle per-round grid resolution q");
    cmd->add_option("--out", cfg.out, "output path (default: stdout)");
    cmd->add_option("--format", cfg.format, "csv or json");
}

int dispatch(const RunConfig& cfg) {
    std::ostringstream body;
    if (cfg.command == "trace") run_trace(cfg, body);
    else if (cfg.command == "solve") run_solve(cfg, body);
    else if (cfg.command == "curve") run_curve(cfg, body);
    else if (cfg.command == "oracle") run_oracle(cfg, body);
    else if (cfg.command == "bounds") run_bounds(cfg, body);
    else if (cfg.command == "equalweights") run_equalweights(cfg, body);
    else if (cfg.command == "rotation") run_rotation(cfg, body);
    else throw std::invalid_argument("unknown command: " + cfg.command);

    if (cfg.out.empty()) {
        std::cout << body.str();
        return 0;
    }
    std::ofstream file(cfg.out);
    if (!file) {
        std::cerr << "error: cannot open output path: " << cfg.out << '\n';
        return 3;
    }
    file << body.str();
    file.flush();
    if (!file) {
        std::cerr << "error: failed writing output path: " << cfg.out << '\n';
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"worst-case Hedge adversary toolkit"};
    app.require_subcommand(1);
    for (const char* name : {"trace", "solve", "curve", "oracle", "bounds", "equalweights",
                             "rotation"}) {
        CLI::App* cmd = app.add_subcommand(name);
        add_common(cmd, cfg);
        cmd->callback([&cfg, name] { cfg.command = name; });
    }
    try {
        app.parse(argc, argv);
        return dispatch(cfg);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
