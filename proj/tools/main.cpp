#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "crn/errors.hpp"
#include "crn/json_io.hpp"
#include "crn/parse.hpp"

namespace {

using namespace crn;

struct CommonOptions {
    std::string input;
    std::string output;       // empty: stdout
    std::string mode = "rational";
    std::size_t memo_cap = 1000000;
    std::size_t state_cap = 1000000;
    std::size_t jump_cap = 10000000;
};

NumericMode numeric_mode(const CommonOptions& opts) {
    std::string mode = opts.mode;
    if (const char* env = std::getenv("CRN_NUMERIC_MODE")) mode = env;  // env wins
    if (mode == "rational") return NumericMode::rational;
    if (mode == "float") return NumericMode::floating;
    throw UsageError("numeric mode must be 'rational' or 'float', got '" + mode + "'");
}

NetworkDocument load_input(const CommonOptions& opts) {
    if (!std::filesystem::exists(opts.input)) throw IoError("no such file: " + opts.input);
    return load_network_file(opts.input);
}

void emit(const CommonOptions& opts, const Json& payload) {
    if (opts.output.empty()) {
        std::cout << payload.dump(2) << "\n";
        return;
    }
    std::ofstream out(opts.output);
    if (!out) throw IoError("cannot write " + opts.output);
    out << payload.dump(2) << "\n";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

std::vector<int> resolve_species_set(const NetworkDocument& doc, const std::string& arg) {
    if (arg.empty()) {
        if (doc.sets.size() == 1) return doc.sets.front().second;
        throw UsageError("--u is required unless the file declares exactly one set");
    }
    if (auto named = doc.set_named(arg)) return *named;
    std::vector<int> ids;
    std::string token;
    std::stringstream ss(arg);
    while (std::getline(ss, token, ',')) {
        auto id = doc.net.species_index(token);
        if (!id) throw UsageError("unknown species or set '" + token + "'");
        ids.push_back(*id);
    }
    if (ids.empty()) throw UsageError("empty species set");
    return ids;
}

Counts parse_counts(const std::string& text, std::size_t expected, const std::string& what) {
    Counts out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) out.push_back(std::stoll(token));
    if (out.size() != expected)
        throw UsageError(what + " must have " + std::to_string(expected) + " comma-separated entries");
    if (!vec::all_nonnegative(out)) throw UsageError(what + " must be nonnegative");
    return out;
}

std::vector<Rational> parse_beta(const std::string& text, std::size_t expected) {
    std::vector<Rational> out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        auto v = parse_rational(token);
        if (!v || *v <= 0) throw UsageError("beta entries must be positive rationals");
        out.push_back(*v);
    }
    if (out.size() == 1 && expected > 1) out.assign(expected, out.front());  // scalar broadcast
    if (out.size() != expected)
        throw UsageError("beta must have one entry per tagged species (or a single scalar)");
    return out;
}

StateBound make_bound(const std::string& box, long long total, std::size_t max_states,
                      std::size_t n) {
    StateBound bound;
    if (!box.empty()) bound.box = parse_counts(box, n, "--box");
    if (total >= 0) bound.total = total;
    bound.max_states = max_states;
    return bound;
}

int cmd_validate(const CommonOptions& opts, const std::string& u_arg, long long probe) {
    NetworkDocument doc;
    try {
        doc = load_input(opts);
    } catch (const SyntaxError& e) {
        std::cerr << opts.input << ": " << e.what() << "\n";
        return static_cast<int>(ExitCode::validation);
    }
    std::optional<Counts> probe_box;
    if (probe > 0) probe_box = Counts(static_cast<std::size_t>(doc.net.species_count()), probe);
    auto violations = validate_network(doc.net, probe_box);
    for (const auto& v : violations) std::cerr << "violation: " << v.detail << "\n";

    bool sets_ok = true;
    auto check_set = [&](const std::string& name, const std::vector<int>& ids) {
        try {
            classify(doc.net, ids);
        } catch (const Error& e) {
            std::cerr << "set " << name << ": " << e.what() << "\n";
            sets_ok = false;
        }
    };
    if (!u_arg.empty()) {
        check_set(u_arg, resolve_species_set(doc, u_arg));
    } else {
        for (const auto& [name, ids] : doc.sets) check_set(name, ids);
    }
    if (!violations.empty() || !sets_ok) return static_cast<int>(ExitCode::validation);
    std::cout << "OK: " << doc.net.species_count() << " species, " << doc.net.reaction_count()
              << " reactions\n";
    return 0;
}

int cmd_reduce(const CommonOptions& opts, const std::string& u_arg) {
    auto doc = load_input(opts);
    auto tagged = resolve_species_set(doc, u_arg);
    auto report = analyze_elimination(doc.net, tagged);
    Json out;
    out["condition_report"] = condition_report_json(report);
    if (!report.non_interacting)
        throw NotNonInteracting(report.non_interacting_witness.value_or("?"));
    auto rn = reduce(doc.net, tagged, opts.memo_cap);  // throws Condition1Violated -> exit 3
    out["reduced_network"] = reduced_network_json(rn);
    emit(opts, out);
    return 0;
}

int cmd_stationary(const CommonOptions& opts, const std::string& u_arg, bool reduced,
                   const std::string& seed_text, const std::string& box, long long total) {
    auto doc = load_input(opts);
    std::unique_ptr<StochasticSystem> sys;
    if (reduced) {
        auto tagged = resolve_species_set(doc, u_arg);
        sys = std::make_unique<ReducedSystem>(reduce(doc.net, tagged, opts.memo_cap));
    } else {
        sys = std::make_unique<NetworkSystem>(doc.net);
    }
    State seed = parse_counts(seed_text, static_cast<std::size_t>(sys->species_count()), "--seed-state");
    auto bound = make_bound(box, total, opts.state_cap, seed.size());
    auto comp = irreducible_component(*sys, seed, bound);

    SolveOptions solve;
    solve.mode = numeric_mode(opts);
    auto dist = stationary_distribution(*sys, comp, solve);  // NotClosed -> exit 4

    Json out;
    out["component"] = component_json(comp);
    out["distribution"] = distribution_json(dist, sys->species_names());
    Json residuals;
    residuals["stationary"] = stationary_check_json(check_stationary(*sys, comp, dist));
    residuals["complex_balance"] = complex_balance_json(check_complex_balance(*sys, comp, dist));
    try {
        residuals["detailed_balance"] = detailed_balance_json(check_detailed_balance(*sys, comp, dist));
    } catch (const NotReversible&) {
        residuals["detailed_balance"] = Json(nullptr);
    }
    out["residuals"] = std::move(residuals);
    emit(opts, out);
    return 0;
}

int cmd_limit(const CommonOptions& opts, const std::string& u_arg, const std::string& beta_text,
              const std::string& factors_text, const std::string& seed_text, const std::string& box,
              long long total, const std::string& csv_path, long long level_cap) {
    auto doc = load_input(opts);
    auto tagged = resolve_species_set(doc, u_arg);

    std::vector<Rational> beta;
    if (!beta_text.empty()) {
        beta = parse_beta(beta_text, tagged.size());
    } else if (!doc.beta.empty()) {
        beta.assign(tagged.size(), Rational(1));
        for (std::size_t i = 0; i < tagged.size(); ++i)
            for (const auto& [id, value] : doc.beta)
                if (id == tagged[i]) beta[i] = value;
    } else {
        beta.assign(tagged.size(), Rational(1));
    }

    std::vector<long long> factors;
    {
        std::string token;
        std::stringstream ss(factors_text);
        while (std::getline(ss, token, ',')) factors.push_back(std::stoll(token));
        if (factors.empty()) throw UsageError("--Ns must list at least one factor");
        for (long long f : factors)
            if (f < 1) throw UsageError("--Ns entries must be >= 1");
    }

    NetworkSystem sys(doc.net);
    State seed = parse_counts(seed_text, static_cast<std::size_t>(sys.species_count()), "--seed-state");
    auto bound = make_bound(box, total, opts.state_cap, seed.size());
    auto comp = irreducible_component(sys, seed, bound);
    SolveOptions solve;
    solve.mode = numeric_mode(opts);
    auto pi = stationary_distribution(sys, comp, solve);

    auto cb = check_complex_balance(sys, comp, pi);
    if (!cb.max_residual.is_zero())
        throw NotClosed("the stationary distribution is not complex balanced; the scaled family "
                        "has no product-form limit here");

    auto support = limit_support(pi.states, tagged, beta);
    auto limit = limit_distribution(pi, tagged, beta);
    std::vector<ConvergenceRow> rows;
    std::optional<CappedConvergence> capped;
    if (level_cap >= 0) {
        capped = convergence_table_capped(doc.net, tagged, beta, comp, pi, factors, level_cap);
        rows = capped->rows;
    } else {
        rows = convergence_table(doc.net, tagged, beta, comp, pi, factors,
                                 solve.mode == NumericMode::rational);
    }

    Json out = convergence_json(rows, support, [&] {
        std::vector<std::string> names;
        for (int id : tagged) names.push_back(doc.net.species[static_cast<std::size_t>(id)].name);
        return names;
    }(), beta);
    out["limit_distribution"] = distribution_json(limit, sys.species_names());
    out["window"] = component_json(comp);
    if (capped) {
        out["level_cap"] = capped->level_cap;
        out["dropped_mass"] = rational_json(capped->dropped_mass);
    }

    // Cross-checks against the reduction, where the theory applies.
    Json checks;
    checks["limit_equals_conditional"] = true;  // by construction, recorded for the record
    auto report = analyze_elimination(doc.net, tagged);
    bool reducible = report.non_interacting && report.eliminable && report.condition1.holds;
    checks["reduction_applicable"] = reducible;
    checks["reduced_stationary_equals_limit"] = Json(nullptr);
    if (reducible) {
        ReducedSystem reduced_sys(reduce(doc.net, tagged, opts.memo_cap));
        auto classes = decompose_components(reduced_sys, support.argmin);
        if (classes.size() == 1 && classes.front().closed) {
            auto reduced_pi = stationary_distribution(reduced_sys, classes.front(), solve);
            bool equal = limit.states == reduced_pi.states &&
                         (limit.mode == NumericMode::rational
                              ? limit.exact == reduced_pi.exact
                              : tv_distance(limit, reduced_pi) < Rational(1, 1000000));
            checks["reduced_stationary_equals_limit"] = equal;
        }
    }
    out["checks"] = std::move(checks);

    if (!csv_path.empty()) write_file(csv_path, convergence_csv(rows));
    emit(opts, out);
    return 0;
}

int cmd_simulate(const CommonOptions& opts, const std::string& u_arg, bool reduced,
                 const std::string& x0_text, double t_end, std::uint64_t seed, double burn_in,
                 const std::string& traj_path, const std::string& occ_path) {
    auto doc = load_input(opts);
    std::unique_ptr<StochasticSystem> sys;
    if (reduced) {
        auto tagged = resolve_species_set(doc, u_arg);
        sys = std::make_unique<ReducedSystem>(reduce(doc.net, tagged, opts.memo_cap));
    } else {
        sys = std::make_unique<NetworkSystem>(doc.net);
    }
    State x0 = parse_counts(x0_text, static_cast<std::size_t>(sys->species_count()), "--x0");

    SimOptions sim;
    sim.max_jumps = opts.jump_cap;
    auto traj = gillespie(*sys, x0, t_end, seed, sim);  // ExplosionGuard -> exit 5
    auto occupation = empirical_distribution(traj, burn_in);

    if (!traj_path.empty()) write_file(traj_path, trajectory_csv(traj, sys->species_names()));
    Json out = occupation_json(traj, occupation, sys->species_names(), burn_in);
    if (!occ_path.empty())
        write_file(occ_path, out.dump(2) + "\n");
    else
        emit(opts, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic reaction network reduction and stationary analysis"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string u_arg, seed_state, box, x0, beta_text, factors_text, csv_path, traj_path, occ_path;
    long long total = -1;
    long long probe = 0;
    long long level_cap = -1;
    bool reduced = false;
    double t_end = 1000.0, burn_in = 0.0;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", opts.input, "network file (.crn)")->required();
        sub->add_option("-o,--output", opts.output, "write JSON here instead of stdout");
        sub->add_option("--mode", opts.mode, "numeric mode: rational|float");
        sub->add_option("--memo-cap", opts.memo_cap, "reduction memo cap");
        sub->add_option("--state-cap", opts.state_cap, "state closure cap");
    };

    auto* validate = app.add_subcommand("validate", "parse and check a network file");
    add_common(validate);
    validate->add_option("--u", u_arg, "species set to check (names or a declared set)");
    validate->add_option("--probe", probe, "probe expression kinetics on a box of this size");

    auto* reduce_cmd = app.add_subcommand("reduce", "eliminate a species set and report conditions");
    add_common(reduce_cmd);
    reduce_cmd->add_option("--u", u_arg, "species to eliminate (names or a declared set)");

    auto* stationary = app.add_subcommand("stationary", "exact stationary distribution on a component");
    add_common(stationary);
    stationary->add_option("--u", u_arg, "species set (with --reduced)");
    stationary->add_flag("--reduced", reduced, "analyze the reduced network");
    stationary->add_option("--seed-state", seed_state, "component seed, comma-separated counts")->required();
    stationary->add_option("--box", box, "componentwise state bound");
    stationary->add_option("--total", total, "total-count state bound");

    auto* limit = app.add_subcommand("limit", "scaled-kinetics limit and convergence table");
    add_common(limit);
    limit->add_option("--u", u_arg, "species set to scale");
    limit->add_option("--beta", beta_text, "scaling exponents (scalar or per-species list)");
    limit->add_option("--Ns", factors_text, "comma-separated scaling factors")->required();
    limit->add_option("--seed-state", seed_state, "component seed")->required();
    limit->add_option("--box", box, "componentwise state bound");
    limit->add_option("--total", total, "total-count state bound");
    limit->add_option("--csv", csv_path, "also write the table as CSV");
    limit->add_option("--level-cap", level_cap,
                      "restrict to states with scaling level <= cap (reports the dropped mass)");

    auto* simulate = app.add_subcommand("simulate", "jump-chain simulation and occupation measure");
    add_common(simulate);
    simulate->add_option("--u", u_arg, "species set (with --reduced)");
    simulate->add_flag("--reduced", reduced, "simulate the reduced network");
    simulate->add_option("--x0", x0, "initial state")->required();
    simulate->add_option("--t-end", t_end, "simulation horizon")->required();
    simulate->add_option("--seed", seed, "random seed");
    simulate->add_option("--burn-in", burn_in, "occupation burn-in time");
    simulate->add_option("--jump-cap", opts.jump_cap, "jump count guard");
    simulate->add_option("--traj", traj_path, "write the trajectory CSV here");
    simulate->add_option("--occupation", occ_path, "write the occupation JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(crn::ExitCode::usage);
    }

    try {
        if (validate->parsed()) return cmd_validate(opts, u_arg, probe);
        if (reduce_cmd->parsed()) return cmd_reduce(opts, u_arg);
        if (stationary->parsed())
            return cmd_stationary(opts, u_arg, reduced, seed_state, box, total);
        if (limit->parsed())
            return cmd_limit(opts, u_arg, beta_text, factors_text, seed_state, box, total, csv_path,
                             level_cap);
        if (simulate->parsed())
            return cmd_simulate(opts, u_arg, reduced, x0, t_end, seed, burn_in, traj_path, occ_path);
    } catch (const crn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.exit_code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return static_cast<int>(crn::ExitCode::internal);
    }
    return 0;
}
