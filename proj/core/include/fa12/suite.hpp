// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.
#pragma once

#include <fa12/chain.hpp>
#include <fa12/models.hpp>
#include <fa12/oracle.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fa12 {

/// Everything that parameterizes one conformance run.
struct SuiteConfig {
    std::uint64_t seed = 0;
    std::size_t num_sequences = 100;
    std::size_t sequence_length = 10;
    std::vector<Address> universe = default_universe();
    bool strict_approve = false;
    double liveness_threshold = 0.5;
    ObservationMode observation = ObservationMode::views;
    TokenAmount initial_balance = TokenAmount(100);

    static std::vector<Address> default_universe();
};

/// One generated (or scripted) call: who sends what, with how much tez.
struct GeneratedCall {
    Address sender;
    EntrypointCall call;
    Mutez amount;
};

/// A target the suite can repeatedly originate on fresh chains. The
/// originate closure must be deterministic; declared entrypoints drive
/// call generation.
struct SuiteTarget {
    std::string name;
    std::vector<EntrypointSig> entrypoints;
    std::function<Address(ChainState&)> originate;
};

/// Deterministic pseudo-random call sequence, biased toward the corner
/// cases conformance cares about: self-transfers, zero values, overdrafts,
/// spender/owner splits, and tez riding on view calls. View callbacks are
/// placeholders; the runner points them at its own recorder.
std::vector<GeneratedCall> generate_call_sequence(
    std::uint64_t seed, const SuiteConfig& config,
    const std::vector<EntrypointSig>& entrypoints);

/// A violating sequence, reduced as far as replay allows.
struct Counterexample {
    Rule rule;
    std::string detail;
    std::size_t sequence_index = 0;
    std::size_t original_length = 0;
    std::vector<GeneratedCall> calls;
};

struct ReportSummary {
    std::uint64_t sequences = 0;
    std::uint64_t calls = 0;
    std::uint64_t standard_calls = 0;
    std::uint64_t other_calls = 0;
    std::uint64_t may_succeed_calls = 0;
    std::uint64_t may_succeed_successes = 0;
    std::uint64_t must_fail_calls = 0;
    std::uint64_t must_fail_successes = 0;
    std::uint64_t unknown_pre_calls = 0;
    std::uint64_t observation_errors = 0;
    std::uint64_t violations = 0;
    std::uint64_t extra_counterexamples = 0;
};

/// Aggregated result of a conformance run. A fixed (seed, config, target)
/// triple reproduces the identical report.
struct Report {
    std::string target_name;
    SuiteConfig config;
    ReportSummary summary;
    std::map<std::string, std::uint64_t> rule_counts;
    std::vector<Counterexample> counterexamples;
    std::vector<std::string> warnings;
    bool vacuous = false;

    bool has_violations() const { return summary.violations > 0; }
    /// 0 clean, 2 any violation, 3 vacuous pass.
    int exit_code() const { return has_violations() ? 2 : vacuous ? 3 : 0; }
};

/// Generate, execute, and judge num_sequences call sequences against the
/// target, shrinking the first violating sequences to minimal
/// counterexamples. Violations are data in the report, never exceptions.
Report run_conformance_suite(const SuiteTarget& target,
                             const SuiteConfig& config);

/// What happened to one scripted call, for scenario runs.
struct CallRecord {
    GeneratedCall call;
    bool executed_success = false;
    std::string judgment;  // "pass", "violation: <rule>", or a skip note
};

struct RunResult {
    Report report;
    std::vector<CallRecord> records;
    std::optional<LedgerStorage> final_ledger;
};

/// Execute an explicit call list as a single sequence, judging every call
/// (no shrinking, no abort on violation).
RunResult run_call_list(const SuiteTarget& target, const SuiteConfig& config,
                        const std::vector<GeneratedCall>& calls);

/// Argument map used when rendering calls into reports and scenarios.
/// View callbacks are omitted; the harness supplies its recorder on replay.
std::map<std::string, std::string> call_args(const EntrypointCall& call);

std::string render_report_json(const Report& report);
std::string render_report_human(const Report& report);

/// Report plus per-call verdicts and the final observed ledger.
std::string render_run_json(const RunResult& result);
std::string render_run_human(const RunResult& result);

}  // namespace fa12
