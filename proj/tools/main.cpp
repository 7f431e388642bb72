// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/layout.hpp>
#include <fa12/scenario.hpp>
#include <fa12/suite.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

namespace {

using namespace fa12;

constexpr int exit_pass = 0;
constexpr int exit_usage = 1;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write " + out_path);
    out << text;
}

std::vector<Address> parse_universe(const std::string& csv) {
    std::vector<Address> universe;
    std::set<std::string> seen;
    std::stringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty())
            throw UsageError("--universe: empty address in list");
        if (!seen.insert(item).second)
            throw UsageError("--universe: duplicate address " + item);
        try {
            universe.emplace_back(item);
        } catch (const Error& e) {
            throw UsageError("--universe: " + std::string(e.what()));
        }
    }
    if (universe.empty())
        throw UsageError("--universe: empty list");
    return universe;
}

std::uint64_t parse_seed(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const std::uint64_t seed = std::stoull(text, &used);
        if (used != text.size())
            throw std::invalid_argument(text);
        return seed;
    } catch (const std::exception&) {
        throw UsageError(what + ": not a valid seed: " + text);
    }
}

void apply_seed_env(SuiteConfig& config) {
    if (const char* env = std::getenv("FA12_SEED"))
        config.seed = parse_seed(env, "FA12_SEED");
}

std::string normalize_flag(std::string flag) {
    for (char& c : flag)
        if (c == '-')
            c = '_';
    return flag;
}

BuggyFlags parse_buggy_flags(const std::vector<std::string>& flags) {
    if (flags.empty())
        throw UsageError(
            "builtin:buggy needs at least one --flag "
            "(self-transfer-noop or view-keeps-tokens)");
    BuggyFlags parsed;
    for (const std::string& raw : flags) {
        const std::string flag = normalize_flag(raw);
        if (flag == "self_transfer_noop")
            parsed.self_transfer_noop = true;
        else if (flag == "view_keeps_tokens")
            parsed.view_keeps_tokens = true;
        else
            throw UsageError("unknown --flag " + raw);
    }
    return parsed;
}

std::string default_layout_path(const std::string& tz_path) {
    const std::size_t dot = tz_path.rfind('.');
    const std::size_t slash = tz_path.rfind('/');
    if (dot == std::string::npos ||
        (slash != std::string::npos && dot < slash))
        return tz_path + ".layout";
    return tz_path.substr(0, dot) + ".layout";
}

// The five ledger entrypoints a .tz target declares; nonstandard
// entrypoints of interpreted contracts are not exercised by generation.
std::vector<EntrypointSig> michelson_signatures(const Ty& parameter_ty) {
    std::vector<EntrypointSig> sigs;
    for (const char* name : {"transfer", "approve", "getAllowance",
                             "getBalance", "getTotalSupply"})
        if (find_entrypoint(parameter_ty, name))
            sigs.push_back(EntrypointSig{name, true, {}});
    return sigs;
}

SuiteTarget resolve_model_target(const std::string& spec,
                                 std::shared_ptr<const ContractModel> model,
                                 const SuiteConfig& config) {
    ModelInitConfig init;
    init.universe = config.universe;
    init.initial_balance = config.initial_balance;
    const ModelStorage storage = model->init(init);

    SuiteTarget target;
    target.name = spec;
    target.entrypoints = model->param_describe();
    target.originate = [model = std::move(model), storage](ChainState& chain) {
        return chain.originate(ModelInstance{model, storage});
    };
    return target;
}

SuiteTarget resolve_michelson_target(const std::string& path,
                                     const std::string& layout_flag,
                                     const std::string& init_flag,
                                     const SuiteConfig& config) {
    ContractScript script;
    std::shared_ptr<const TypedProgram> program;
    try {
        script = parse_contract_text(read_file(path));
        program = std::make_shared<const TypedProgram>(typecheck(script));
    } catch (const Error& e) {
        throw UsageError(path + ": " + e.what());
    }

    const std::string layout_path =
        layout_flag.empty() ? default_layout_path(path) : layout_flag;
    StorageLayout layout;
    try {
        layout = load_storage_layout(layout_path);
    } catch (const Error& e) {
        throw UsageError(layout_path + ": " + e.what());
    }

    Value storage;
    try {
        if (init_flag.empty())
            storage = synthesize_storage(script.storage_ty, layout,
                                         config.universe,
                                         config.initial_balance);
        else
            storage = elaborate_value(parse_micheline(init_flag),
                                      script.storage_ty);
    } catch (const Error& e) {
        throw UsageError("storage initialization: " + std::string(e.what()));
    }

    SuiteTarget target;
    target.name = path;
    target.entrypoints = michelson_signatures(program->parameter_ty);
    target.originate = [program, storage, layout](ChainState& chain) {
        return chain.originate(MichelsonInstance{program, storage, layout});
    };
    return target;
}

SuiteTarget resolve_target(const std::string& spec,
                           const std::vector<std::string>& flags,
                           const std::string& layout_flag,
                           const std::string& init_flag, SuiteConfig& config) {
    const bool builtin = spec.rfind("builtin:", 0) == 0;
    if (builtin && !init_flag.empty()) {
        try {
            config.initial_balance = TokenAmount::from_string(init_flag);
        } catch (const Error& e) {
            throw UsageError("--init for a builtin target must be a "
                             "per-account balance: " +
                             std::string(e.what()));
        }
    }
    if (!builtin && !flags.empty())
        throw UsageError("--flag only applies to builtin:buggy");

    if (spec == "builtin:standard") {
        if (!flags.empty())
            throw UsageError("--flag only applies to builtin:buggy");
        return resolve_model_target(spec, model_standard(), config);
    }
    if (spec == "builtin:managed") {
        if (!flags.empty())
            throw UsageError("--flag only applies to builtin:buggy");
        return resolve_model_target(spec, model_managed(), config);
    }
    if (spec == "builtin:buggy")
        return resolve_model_target(
            spec, model_legacy_buggy(parse_buggy_flags(flags)), config);
    if (builtin)
        throw UsageError("unknown builtin target " + spec +
                         " (expected standard, managed, or buggy)");
    return resolve_michelson_target(spec, layout_flag, init_flag, config);
}

void check_scenario_entrypoints(const Scenario& scenario,
                                const SuiteTarget& target) {
    std::set<std::string> declared;
    for (const EntrypointSig& sig : target.entrypoints)
        declared.insert(sig.name);
    for (std::size_t i = 0; i < scenario.calls.size(); ++i) {
        const std::string name = call_name(scenario.calls[i].call);
        if (declared.count(name) == 0)
            throw UsageError("/calls/" + std::to_string(i) +
                             "/entrypoint: target does not declare " + name);
    }
}

struct CommonFlags {
    std::string out_path;
    std::string format = "human";
};

void add_output_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--out", flags.out_path,
                    "Write the report to this file instead of stdout");
    cmd->add_option("--format", flags.format, "Report format")
        ->check(CLI::IsMember({"human", "json"}))
        ->capture_default_str();
}

int cmd_verify(const std::string& target_spec, SuiteConfig config,
               const std::vector<std::string>& flags,
               const std::string& layout_flag, const std::string& init_flag,
               const CommonFlags& output) {
    apply_seed_env(config);
    const SuiteTarget target =
        resolve_target(target_spec, flags, layout_flag, init_flag, config);
    const Report report = run_conformance_suite(target, config);
    write_output(output.out_path, output.format == "json"
                                      ? render_report_json(report)
                                      : render_report_human(report));
    return report.exit_code();
}

int cmd_run(const std::string& scenario_path, SuiteConfig config,
            const std::string& layout_flag, const std::string& init_flag,
            const CommonFlags& output) {
    apply_seed_env(config);
    Scenario scenario;
    try {
        scenario = parse_scenario(read_file(scenario_path));
    } catch (const ScenarioError& e) {
        throw UsageError(scenario_path + ": " + e.what());
    }
    config.universe = scenario.universe;
    config.num_sequences = 1;
    config.sequence_length = scenario.calls.size();
    if (scenario.strict_approve)
        config.strict_approve = *scenario.strict_approve;
    if (scenario.observation)
        config.observation = *scenario.observation;

    const std::string layout = !layout_flag.empty() ? layout_flag
                               : scenario.layout_path ? *scenario.layout_path
                                                      : "";
    const std::string init = !init_flag.empty() ? init_flag : scenario.init;
    const SuiteTarget target =
        resolve_target(scenario.target, scenario.flags, layout, init, config);
    check_scenario_entrypoints(scenario, target);

    const RunResult result = run_call_list(target, config, scenario.calls);
    write_output(output.out_path, output.format == "json"
                                      ? render_run_json(result)
                                      : render_run_human(result));
    return result.report.exit_code();
}

int cmd_parse(const std::string& path, const std::string& mode,
              const CommonFlags& output) {
    const std::string text = read_file(path);
    std::ostringstream rendered;
    try {
        if (mode == "ast") {
            const MichelineNode node = parse_micheline(text);
            if (node.kind == MichelineNode::Kind::seq && !node.args.empty()) {
                for (const MichelineNode& section : node.args)
                    rendered << print_micheline(section) << ";\n";
            } else {
                rendered << print_micheline(node) << "\n";
            }
        } else {
            std::vector<std::string> trace;
            typecheck(parse_contract_text(text), trace);
            for (const std::string& line : trace)
                rendered << line << "\n";
        }
    } catch (const Error& e) {
        throw UsageError(path + ": " + e.what());
    }
    write_output(output.out_path, rendered.str());
    return exit_pass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conformance checker for FA1.2 token-ledger contracts"};
    app.require_subcommand(1);

    SuiteConfig config;
    std::string target_spec;
    std::string scenario_path;
    std::string parse_path;
    std::string universe_csv;
    std::string layout_flag;
    std::string init_flag;
    std::string parse_mode = "ast";
    std::vector<std::string> buggy_flags;
    CommonFlags verify_output;
    CommonFlags run_output;
    CommonFlags parse_output;

    CLI::App* verify = app.add_subcommand(
        "verify", "Generate call sequences and judge a target against the "
                  "ledger standard");
    verify->add_option("target", target_spec,
                       "builtin:standard, builtin:managed, builtin:buggy, "
                       "or a .tz file")
        ->required();
    verify->add_option("--seed", config.seed,
                       "Generator seed (FA12_SEED overrides)");
    verify->add_option("--sequences", config.num_sequences,
                       "Number of generated call sequences")
        ->capture_default_str();
    verify->add_option("--length", config.sequence_length,
                       "Calls per sequence")
        ->capture_default_str();
    verify->add_option("--universe", universe_csv,
                       "Comma-separated address universe");
    verify->add_flag("--strict-approve", config.strict_approve,
                     "Require approve to fail on nonzero -> nonzero changes");
    verify->add_option("--liveness-threshold", config.liveness_threshold,
                       "Minimum success rate over may-succeed calls before "
                       "a pass counts as vacuous")
        ->capture_default_str();
    verify
        ->add_option_function<std::string>(
            "--observation",
            [&config](const std::string& mode) {
                config.observation = mode == "direct"
                                         ? ObservationMode::direct
                                         : ObservationMode::views;
            },
            "How post-states are observed")
        ->check(CLI::IsMember({"views", "direct"}));
    verify->add_option("--layout", layout_flag,
                       "Storage layout file for a .tz target");
    verify->add_option("--init", init_flag,
                       "Per-account balance (builtins) or Micheline storage "
                       "(.tz targets)");
    verify->add_option("--flag", buggy_flags,
                       "Defect to enable in builtin:buggy (repeatable)");
    add_output_flags(verify, verify_output);

    CLI::App* run = app.add_subcommand(
        "run", "Execute a scenario file and judge every call");
    run->add_option("scenario", scenario_path, "Scenario JSON file")
        ->required();
    run->add_option("--seed", config.seed, "Echoed into the report");
    run->add_option("--layout", layout_flag,
                    "Storage layout file, overriding the scenario");
    run->add_option("--init", init_flag,
                    "Initial storage, overriding the scenario");
    add_output_flags(run, run_output);

    CLI::App* parse = app.add_subcommand(
        "parse", "Parse a Michelson file and dump its structure");
    parse->add_option("file", parse_path, "Michelson source file")->required();
    parse->add_option("--mode", parse_mode,
                      "ast prints canonical Micheline; types prints the "
                      "typechecked per-instruction stacks")
        ->check(CLI::IsMember({"ast", "types"}))
        ->capture_default_str();
    add_output_flags(parse, parse_output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Collapse CLI11's many exit codes onto the usage-error code,
        // keeping 0 for --help and --version.
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        if (!universe_csv.empty())
            config.universe = parse_universe(universe_csv);
        if (verify->parsed())
            return cmd_verify(target_spec, config, buggy_flags, layout_flag,
                              init_flag, verify_output);
        if (run->parsed())
            return cmd_run(scenario_path, config, layout_flag, init_flag,
                           run_output);
        return cmd_parse(parse_path, parse_mode, parse_output);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
