// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "cli.h"

#include <txpack/equilibrium.h>
#include <txpack/error.h>
#include <txpack/fees.h>
#include <txpack/game.h>
#include <txpack/json_io.h>
#include <txpack/mempool.h>
#include <txpack/rng.h>
#include <txpack/simulator.h>
#include <txpack/strategy.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace txpack::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string mempool;
    std::optional<double> k;
    std::optional<double> lambda;
    std::string mode{"fixed"};
    std::optional<double> kprime;
    std::optional<double> r;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::vector<std::string> strategies;
    std::string fee_mode{"xhat"};
    std::string out;
    int jobs{0};
    std::string profile;
    std::string config;
    double tol{1e-8};
    bool with_strategy{false};
};

SizeMode size_mode(const Options& o)
{
    return o.mode == "variable" ? SizeMode::variable : SizeMode::fixed;
}

GameParams require_params(const Options& o)
{
    if (o.mempool.empty()) throw UsageError("--mempool is required");
    if (!o.k) throw UsageError("--k is required");
    if (!o.lambda) throw UsageError("--lambda is required");
    return GameParams{*o.k, *o.lambda};
}

// Capacity the profile is normalised to: k in fixed mode, k' in variable.
double target_capacity(const Options& o, const GameParams& params)
{
    if (size_mode(o) == SizeMode::fixed) {
        if (o.kprime) throw UsageError("--kprime only applies with --mode variable");
        return params.k;
    }
    const double kp = o.kprime.value_or(0.95 * params.k);
    if (!(kp > 0.0 && kp <= params.k)) throw ValidationError("--kprime must lie in (0, k]");
    return kp;
}

std::uint64_t resolve_seed(const Options& o)
{
    if (o.seed) return *o.seed;
    if (const char* env = std::getenv("TXPACK_SEED"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end == nullptr || *end != '\0') throw UsageError("TXPACK_SEED must be an unsigned integer");
        return v;
    }
    return 0;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("'" + path + "': " + e.what());
    }
}

json cmd_equilibrium(const Options& o)
{
    const GameParams params = require_params(o);
    const Mempool mempool = load_mempool_file(o.mempool);
    const GameParams solved{target_capacity(o, params), params.lambda};
    const Equilibrium eq = solve_equilibrium(mempool, solved, size_mode(o));
    json doc = to_json(eq, mempool, params, size_mode(o));
    if (o.with_strategy) {
        if (size_mode(o) != SizeMode::fixed) throw UsageError("--with-strategy needs --mode fixed");
        doc["strategy"] = to_json(corresponding_strategy(eq.profile, block_count(params), mempool));
    }
    return doc;
}

json cmd_sample(const Options& o)
{
    const GameParams params = require_params(o);
    const Mempool mempool = load_mempool_file(o.mempool);
    const double target = target_capacity(o, params);

    MarginalProfile profile;
    if (!o.profile.empty()) {
        profile.values = parse_profile(read_json_file(o.profile), mempool);
    } else {
        profile = solve_equilibrium(mempool, GameParams{target, params.lambda}, size_mode(o)).profile;
    }

    if (size_mode(o) == SizeMode::fixed) {
        const int k = block_count(params);
        if (o.profile.empty() == false) {
            double total = 0.0;
            for (double p : profile.values) total += p;
            profile.package_all = mempool.size() <= static_cast<std::size_t>(k) && total < k;
        }
        const SegmentLayout layout(profile.values, probe_count(profile, k));
        double r;
        if (o.r) {
            r = *o.r;
        } else {
            Rng rng(resolve_seed(o));
            r = rng.uniform();
        }
        json doc = to_json(sample_block(layout, r, mempool));
        doc["r"] = r;
        return doc;
    }

    if (o.r) throw UsageError("--r applies to fixed mode; variable mode samples with --seed");
    Rng rng(resolve_seed(o));
    const auto draw = rejection_sample_block(mempool, profile.values, default_window(params.k, target), rng);
    json doc = to_json(draw.block);
    doc["attempts"] = draw.attempts;
    return doc;
}

json cmd_basefee(const Options& o)
{
    const GameParams params = require_params(o);
    const Mempool mempool = load_mempool_file(o.mempool);
    FeeMode mode;
    if (o.fee_mode == "xhat") {
        mode = FeeMode::xhat_aware;
    } else if (o.fee_mode == "paper") {
        mode = FeeMode::paper_closed_form;
    } else {
        throw UsageError("--fee-mode must be paper or xhat");
    }
    const GameParams solved{target_capacity(o, params), params.lambda};
    return to_json(base_fee(mempool, solved, mode, size_mode(o)));
}

json cmd_verify(const Options& o)
{
    const GameParams params = require_params(o);
    if (size_mode(o) != SizeMode::fixed) throw UsageError("verify supports --mode fixed only");
    const Mempool mempool = load_mempool_file(o.mempool);
    block_count(params);

    std::vector<double> profile;
    std::optional<double> w;
    if (!o.profile.empty()) {
        const json doc = read_json_file(o.profile);
        profile = parse_profile(doc, mempool);
        if (doc.contains("w") && doc["w"].is_number()) w = doc["w"].get<double>();
    } else {
        const auto eq = solve_equilibrium(mempool, params, SizeMode::fixed);
        profile = eq.profile.values;
        w = eq.profile.w;
    }

    json doc = to_json(verify_equilibrium(profile, w, mempool, params, o.tol));
    doc["brute_force"] = nullptr;
    if (mempool.size() <= brute_force_max_transactions) {
        try {
            doc["brute_force"] = to_json(brute_force_check(mempool, params, profile, o.tol));
        } catch (const ValidationError&) {
            // too many subsets; analytic verdict only
        }
    }
    return doc;
}

json cmd_simulate(const Options& o)
{
    ExperimentConfig config;
    if (!o.config.empty()) {
        config = parse_experiment_config(read_json_file(o.config));
        // a relative mempool path in the config is relative to the config file
        if (!config.mempool.empty() && std::filesystem::path(config.mempool).is_relative()) {
            config.mempool = (std::filesystem::path(o.config).parent_path() / config.mempool).string();
        }
        if (!o.mempool.empty()) config.mempool = o.mempool;
        if (o.k) config.k = *o.k;
        if (o.lambda) config.lambda = *o.lambda;
        if (o.trials) config.trials = *o.trials;
        if (o.seed) config.seed = *o.seed;
        if (!o.strategies.empty()) config.strategies = o.strategies;
        if (o.kprime) config.kprime = o.kprime;
    } else {
        const GameParams params = require_params(o);
        if (!o.trials) throw UsageError("--trials is required");
        config.mempool = o.mempool;
        config.k = params.k;
        config.lambda = params.lambda;
        config.trials = *o.trials;
        config.seed = resolve_seed(o);
        config.strategies = o.strategies.empty() ? std::vector<std::string>{"equilibrium", "greedy"} : o.strategies;
        config.mode = size_mode(o);
        config.kprime = o.kprime;
    }
    if (o.jobs > 0) config.jobs = o.jobs;
    if (config.mempool.empty()) throw UsageError("experiment needs a mempool path");
    if (config.mode == SizeMode::fixed && config.kprime) throw UsageError("kprime only applies to variable mode");
    const Mempool mempool = load_mempool_file(config.mempool);
    return experiment_document(config, run_experiment(config, mempool));
}

void add_common(CLI::App* sub, Options& o)
{
    sub->add_option("--mempool", o.mempool, "Mempool JSON file");
    sub->add_option("--k", o.k, "Block capacity");
    sub->add_option("--lambda", o.lambda, "Expected competing blocks per latency window");
    sub->add_option("--mode", o.mode, "fixed | variable")->check(CLI::IsMember({"fixed", "variable"}));
    sub->add_option("--kprime", o.kprime, "Variable mode: sampled target capacity (default 0.95 k)");
    sub->add_option("--out", o.out, "Write the result here instead of stdout");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Equilibrium transaction packaging under network latency"};
    app.require_subcommand(1);
    Options o;

    auto* eq = app.add_subcommand("equilibrium", "Equilibrium marginals, xhat and threshold w");
    add_common(eq, o);
    eq->add_flag("--with-strategy", o.with_strategy, "Include the explicit mixed strategy");

    auto* sample = app.add_subcommand("sample", "Sample one block from the equilibrium");
    add_common(sample, o);
    sample->add_option("--r", o.r, "Probe offset in [0, 1) (fixed mode)");
    sample->add_option("--seed", o.seed, "Generator seed (falls back to TXPACK_SEED)");
    sample->add_option("--profile", o.profile, "Sample this profile instead of solving");

    auto* basefee = app.add_subcommand("basefee", "Base-fee bounds v_low and v_high");
    add_common(basefee, o);
    basefee->add_option("--fee-mode", o.fee_mode, "paper | xhat")->check(CLI::IsMember({"paper", "xhat"}));

    auto* verify = app.add_subcommand("verify", "Check a profile for profitable deviations");
    add_common(verify, o);
    verify->add_option("--profile", o.profile, "Profile to verify (default: solver output)");
    verify->add_option("--tol", o.tol, "Tolerance");

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo comparison of packaging strategies");
    add_common(simulate, o);
    simulate->add_option("--config", o.config, "Experiment config JSON");
    simulate->add_option("--trials", o.trials, "Number of rounds per strategy");
    simulate->add_option("--seed", o.seed, "Master seed (falls back to TXPACK_SEED)");
    simulate->add_option("--strategies", o.strategies, "equilibrium, greedy, uniform-random-k")->delimiter(',');
    simulate->add_option("--jobs", o.jobs, "Worker threads (0 = all)");

    std::vector<const char*> argv{"txpack"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return exit_ok;
        }
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        json doc;
        if (*eq) {
            doc = cmd_equilibrium(o);
        } else if (*sample) {
            doc = cmd_sample(o);
        } else if (*basefee) {
            doc = cmd_basefee(o);
        } else if (*verify) {
            doc = cmd_verify(o);
        } else {
            doc = cmd_simulate(o);
        }
        round_numbers(doc);
        const std::string text = doc.dump(2) + "\n";
        if (o.out.empty()) {
            out << text;
        } else {
            std::ofstream f(o.out, std::ios::binary);
            if (!f) throw ValidationError("cannot write '" + o.out + "'");
            f << text;
        }
        return exit_ok;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const InvariantViolation& e) {
        err << "internal invariant violated [" << e.invariant() << "]: " << e.what() << "\n";
        return exit_invariant;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_validation;
    }
}

} // namespace txpack::cli
