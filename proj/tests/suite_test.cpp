// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/suite.hpp>

#include <gtest/gtest.h>

#include <json.hpp>

#include <fstream>
#include <sstream>

using namespace fa12;
using nlohmann::json;

namespace {

SuiteTarget model_target(std::shared_ptr<const ContractModel> model,
                         const SuiteConfig& config) {
    SuiteTarget target;
    target.name = model->name();
    target.entrypoints = model->param_describe();
    const ModelStorage storage = model->init(
        ModelInitConfig{config.universe, config.initial_balance, {}});
    target.originate = [model, storage](ChainState& chain) {
        return chain.originate(ModelInstance{model, storage});
    };
    return target;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    EXPECT_TRUE(in.good()) << path;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

SuiteConfig small_config(std::uint64_t seed, std::size_t sequences = 30,
                         std::size_t length = 8) {
    SuiteConfig config;
    config.seed = seed;
    config.num_sequences = sequences;
    config.sequence_length = length;
    return config;
}

bool is_corner_case(const GeneratedCall& gc) {
    if (const auto* t = std::get_if<TransferCall>(&gc.call)) {
        return t->from == t->to || t->value.is_zero() ||
               t->value > TokenAmount(100) || t->from != gc.sender;
    }
    if (const auto* a = std::get_if<ApproveCall>(&gc.call))
        return a->new_allowance.is_zero() ||
               a->new_allowance > TokenAmount(100);
    if (const auto* g = std::get_if<GetAllowanceCall>(&gc.call))
        if (g->owner == g->spender)
            return true;
    return is_view_call(gc.call) && !gc.amount.is_zero();
}

}  // namespace

TEST(generator, is_deterministic_per_seed) {
    const SuiteConfig config = small_config(7);
    const auto sigs = model_standard()->param_describe();
    const auto a = generate_call_sequence(1234, config, sigs);
    const auto b = generate_call_sequence(1234, config, sigs);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].sender, b[i].sender);
        EXPECT_EQ(call_name(a[i].call), call_name(b[i].call));
        EXPECT_EQ(call_args(a[i].call), call_args(b[i].call));
        EXPECT_EQ(a[i].amount, b[i].amount);
    }
    const auto c = generate_call_sequence(1235, config, sigs);
    bool any_difference = false;
    for (std::size_t i = 0; i < a.size() && !any_difference; ++i)
        any_difference = call_name(a[i].call) != call_name(c[i].call) ||
                         call_args(a[i].call) != call_args(c[i].call);
    EXPECT_TRUE(any_difference);
}

TEST(generator, respects_the_declared_signatures) {
    SuiteConfig config = small_config(3);
    config.sequence_length = 200;
    const auto standard_only = generate_call_sequence(
        5, config, model_standard()->param_describe());
    for (const auto& gc : standard_only)
        EXPECT_TRUE(is_standard_call(gc.call)) << call_name(gc.call);

    const auto with_admin = generate_call_sequence(
        5, config, model_managed()->param_describe());
    std::size_t admin_calls = 0;
    for (const auto& gc : with_admin) {
        if (const auto* other = std::get_if<OtherCall>(&gc.call)) {
            ++admin_calls;
            EXPECT_TRUE(other->name == "mint" || other->name == "burn" ||
                        other->name == "setAdmin" || other->name == "pause")
                << other->name;
        }
    }
    EXPECT_GT(admin_calls, 0u);
}

TEST(generator, senders_and_argument_addresses_stay_in_the_universe) {
    SuiteConfig config = small_config(11);
    config.sequence_length = 300;
    const auto calls = generate_call_sequence(
        99, config, model_standard()->param_describe());
    const auto in_universe = [&](const Address& a) {
        for (const Address& u : config.universe)
            if (u == a)
                return true;
        return false;
    };
    for (const auto& gc : calls) {
        EXPECT_TRUE(in_universe(gc.sender));
        for (const auto& [name, value] : call_args(gc.call))
            if (name == "from" || name == "to" || name == "owner" ||
                name == "spender")
                EXPECT_TRUE(in_universe(Address(value))) << value;
    }
}

TEST(generator, biases_toward_corner_cases) {
    SuiteConfig config = small_config(0);
    config.sequence_length = 10000;
    const auto calls = generate_call_sequence(
        42, config, model_standard()->param_describe());
    std::size_t corner = 0;
    for (const auto& gc : calls)
        if (is_corner_case(gc))
            ++corner;
    // At least 30 percent of generated calls probe a corner.
    EXPECT_GE(corner * 10, calls.size() * 3);
}

TEST(suite, clean_model_passes_with_full_accounting) {
    const SuiteConfig config = small_config(42);
    const Report report =
        run_conformance_suite(model_target(model_standard(), config), config);
    EXPECT_EQ(report.exit_code(), 0);
    EXPECT_FALSE(report.vacuous);
    EXPECT_EQ(report.summary.sequences, 30u);
    EXPECT_EQ(report.summary.calls, 240u);
    EXPECT_EQ(report.summary.calls,
              report.summary.standard_calls + report.summary.other_calls);
    EXPECT_EQ(report.summary.other_calls, 0u);
    EXPECT_EQ(report.summary.violations, 0u);
    EXPECT_EQ(report.summary.must_fail_successes, 0u);
    EXPECT_GT(report.summary.may_succeed_calls, 0u);
    EXPECT_GT(report.summary.must_fail_calls, 0u);
    EXPECT_TRUE(report.counterexamples.empty());
    EXPECT_TRUE(report.rule_counts.empty());
}

TEST(suite, reports_are_reproducible) {
    const SuiteConfig config = small_config(9, 10, 6);
    const Report a =
        run_conformance_suite(model_target(model_standard(), config), config);
    const Report b =
        run_conformance_suite(model_target(model_standard(), config), config);
    EXPECT_EQ(render_report_json(a), render_report_json(b));
}

TEST(suite, buggy_self_transfer_model_is_convicted_and_shrunk) {
    SuiteConfig config = small_config(42, 100, 10);
    const Report report = run_conformance_suite(
        model_target(model_legacy_buggy({.self_transfer_noop = true}), config),
        config);
    EXPECT_EQ(report.exit_code(), 2);
    EXPECT_GT(report.summary.violations, 0u);
    ASSERT_FALSE(report.counterexamples.empty());
    EXPECT_LE(report.counterexamples.size(), 3u);
    for (const auto& cex : report.counterexamples) {
        EXPECT_LE(cex.calls.size(), 3u);
        EXPECT_LE(cex.calls.size(), cex.original_length);
        // The final call of a shrunk sequence is the violating self-transfer.
        const auto* t = std::get_if<TransferCall>(&cex.calls.back().call);
        ASSERT_NE(t, nullptr);
        EXPECT_EQ(t->from, t->to);
        const auto rule = rule_from_id(rule_id(cex.rule));
        ASSERT_TRUE(rule.has_value());
    }
}

TEST(suite, buggy_view_model_shrinks_to_single_calls) {
    SuiteConfig config = small_config(42, 100, 10);
    const Report report = run_conformance_suite(
        model_target(model_legacy_buggy({.view_keeps_tokens = true}), config),
        config);
    EXPECT_EQ(report.exit_code(), 2);
    ASSERT_FALSE(report.counterexamples.empty());
    for (const auto& cex : report.counterexamples) {
        EXPECT_EQ(cex.rule, Rule::ViewPassthrough);
        ASSERT_EQ(cex.calls.size(), 1u);
        EXPECT_TRUE(is_view_call(cex.calls[0].call));
        // Value shrinking reduced the attached tez to the minimum that
        // still witnesses the kept-tokens bug.
        EXPECT_EQ(cex.calls[0].amount, Mutez(1));
    }
}

TEST(suite, rule_counts_name_the_violated_rules) {
    SuiteConfig config = small_config(42, 60, 10);
    const Report report = run_conformance_suite(
        model_target(model_legacy_buggy({.self_transfer_noop = true}), config),
        config);
    std::uint64_t counted = 0;
    for (const auto& [id, count] : report.rule_counts) {
        EXPECT_TRUE(rule_from_id(id).has_value()) << id;
        counted += count;
    }
    EXPECT_EQ(counted, report.summary.violations);
}

TEST(suite, vacuous_run_exits_three) {
    // One-member universe with nothing to spend: every transfer must fail.
    SuiteConfig config = small_config(5, 10, 10);
    config.universe = {Address("pauper")};
    config.initial_balance = TokenAmount(0);
    const Report report =
        run_conformance_suite(model_target(model_standard(), config), config);
    // Views still answer, so some calls may succeed; force vacuity through
    // the liveness threshold instead when the ratio is nonzero.
    if (report.summary.may_succeed_calls == 0) {
        EXPECT_TRUE(report.vacuous);
        EXPECT_EQ(report.exit_code(), 3);
    } else {
        SuiteConfig strict = config;
        strict.liveness_threshold = 1.1;
        const Report forced = run_conformance_suite(
            model_target(model_standard(), strict), strict);
        EXPECT_TRUE(forced.vacuous);
        EXPECT_EQ(forced.exit_code(), 3);
    }
}

TEST(suite, liveness_threshold_is_inclusive_of_healthy_targets) {
    SuiteConfig config = small_config(17, 20, 8);
    config.liveness_threshold = 0.5;
    const Report report =
        run_conformance_suite(model_target(model_standard(), config), config);
    EXPECT_FALSE(report.vacuous);
    EXPECT_GE(report.summary.may_succeed_successes * 2,
              report.summary.may_succeed_calls);
}

TEST(suite, managed_model_passes_with_pause_windows_skipped) {
    const SuiteConfig config = small_config(42, 60, 10);
    const Report report =
        run_conformance_suite(model_target(model_managed(), config), config);
    EXPECT_EQ(report.exit_code(), 0) << render_report_human(report);
    EXPECT_GT(report.summary.other_calls, 0u);
    // Pause windows make later pre-states unobservable through views.
    EXPECT_GT(report.summary.unknown_pre_calls, 0u);
}

TEST(suite, direct_observation_agrees_with_views_on_clean_models) {
    const SuiteConfig views_config = small_config(23, 20, 8);
    SuiteConfig direct_config = views_config;
    direct_config.observation = ObservationMode::direct;
    const Report via_views = run_conformance_suite(
        model_target(model_standard(), views_config), views_config);
    const Report via_direct = run_conformance_suite(
        model_target(model_standard(), direct_config), direct_config);
    EXPECT_EQ(via_views.exit_code(), 0);
    EXPECT_EQ(via_direct.exit_code(), 0);
    EXPECT_EQ(via_views.summary.calls, via_direct.summary.calls);
    EXPECT_EQ(via_views.summary.may_succeed_successes,
              via_direct.summary.may_succeed_successes);
}

TEST(report_json, has_the_stable_key_set) {
    const SuiteConfig config = small_config(1, 5, 5);
    const Report report =
        run_conformance_suite(model_target(model_standard(), config), config);
    const json doc = json::parse(render_report_json(report));
    ASSERT_TRUE(doc.is_object());
    EXPECT_EQ(doc.size(), 5u);
    EXPECT_TRUE(doc.contains("summary"));
    EXPECT_TRUE(doc.contains("rule_counts"));
    EXPECT_TRUE(doc.contains("counterexamples"));
    EXPECT_TRUE(doc.contains("config_echo"));
    EXPECT_TRUE(doc.contains("seed"));
    EXPECT_EQ(doc["seed"].get<std::uint64_t>(), 1u);
    EXPECT_EQ(doc["config_echo"]["sequences"].get<std::uint64_t>(), 5u);
    EXPECT_EQ(doc["summary"]["verdict"].get<std::string>(), "pass");
}

TEST(report_json, counterexamples_carry_replayable_calls) {
    SuiteConfig config = small_config(42, 100, 10);
    const Report report = run_conformance_suite(
        model_target(model_legacy_buggy({.self_transfer_noop = true}), config),
        config);
    const json doc = json::parse(render_report_json(report));
    ASSERT_FALSE(doc["counterexamples"].empty());
    const json& cex = doc["counterexamples"][0];
    EXPECT_TRUE(cex.contains("rule"));
    EXPECT_TRUE(cex.contains("detail"));
    EXPECT_TRUE(cex.contains("calls"));
    const json& call = cex["calls"][0];
    EXPECT_TRUE(call.contains("sender"));
    EXPECT_TRUE(call.contains("entrypoint"));
    EXPECT_TRUE(call.contains("args"));
    EXPECT_TRUE(call.contains("amount"));
}

TEST(run_mode, judges_every_call_without_aborting) {
    const SuiteConfig config = small_config(0, 1, 0);
    SuiteConfig run_config = config;
    run_config.universe = {Address("alice"), Address("bob")};
    const SuiteTarget target = model_target(
        model_legacy_buggy({.self_transfer_noop = true}), run_config);

    std::vector<GeneratedCall> calls;
    calls.push_back({Address("alice"),
                     TransferCall{Address("alice"), Address("alice"),
                                  TokenAmount(101)},
                     Mutez(0)});
    calls.push_back({Address("alice"),
                     TransferCall{Address("alice"), Address("bob"),
                                  TokenAmount(10)},
                     Mutez(0)});
    const RunResult result = run_call_list(target, run_config, calls);
    ASSERT_EQ(result.records.size(), 2u);
    EXPECT_NE(result.records[0].judgment.find("violation"), std::string::npos);
    EXPECT_EQ(result.records[1].judgment, "pass");
    EXPECT_EQ(result.report.exit_code(), 2);
    ASSERT_TRUE(result.final_ledger.has_value());
    EXPECT_EQ(get_balance(*result.final_ledger, Address("bob")),
              TokenAmount(110));
}

TEST(suite, fixture_contract_survives_a_short_differential_run) {
    const std::string root = FA12CHECK_SOURCE_DIR;
    const auto script =
        parse_contract_text(read_file(root + "/fixtures/fa12.tz"));
    const auto program =
        std::make_shared<const TypedProgram>(typecheck(script));
    const StorageLayout layout =
        load_storage_layout(root + "/fixtures/fa12.layout");

    SuiteConfig config = small_config(11, 10, 8);
    const Value storage = synthesize_storage(
        program->storage_ty, layout, config.universe, config.initial_balance);

    SuiteTarget target;
    target.name = "fa12.tz";
    target.entrypoints = model_standard()->param_describe();
    target.originate = [program, storage, layout](ChainState& chain) {
        return chain.originate(MichelsonInstance{program, storage, layout});
    };
    const Report report = run_conformance_suite(target, config);
    EXPECT_EQ(report.exit_code(), 0) << render_report_human(report);
}
