// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/rng.hpp>
#include <fa12/suite.hpp>

#include <algorithm>

namespace fa12 {

namespace {

GeneratedCall with_callback(GeneratedCall gc, const ContractRef& recorder) {
    if (auto* c = std::get_if<GetAllowanceCall>(&gc.call))
        c->callback = recorder;
    else if (auto* c = std::get_if<GetBalanceCall>(&gc.call))
        c->callback = recorder;
    else if (auto* c = std::get_if<GetTotalSupplyCall>(&gc.call))
        c->callback = recorder;
    return gc;
}

bool carries_tez_on_core_call(const GeneratedCall& gc) {
    return !gc.amount.is_zero() &&
           (std::holds_alternative<TransferCall>(gc.call) ||
            std::holds_alternative<ApproveCall>(gc.call));
}

struct SequenceRunOutput {
    // Every violation in judged order; the suite aborts at the first one.
    std::vector<std::pair<Rule, std::string>> violations;
    std::optional<Counterexample> first_violation;
    std::optional<LedgerStorage> final_state;
};

void note_violation(SequenceRunOutput& out, Report& report,
                    const std::vector<GeneratedCall>& calls,
                    std::size_t index, Rule rule, std::string detail,
                    std::vector<CallRecord>* records) {
    ++report.summary.violations;
    ++report.rule_counts[rule_id(rule)];
    if (records != nullptr && !records->empty())
        records->back().judgment =
            std::string("violation: ") + rule_id(rule);
    out.violations.emplace_back(rule, detail);
    if (!out.first_violation) {
        Counterexample ce;
        ce.rule = rule;
        ce.detail = std::move(detail);
        ce.original_length = calls.size();
        ce.calls.assign(calls.begin(), calls.begin() + index + 1);
        out.first_violation = std::move(ce);
    }
}

// Executes one call list against a fresh origination of the target,
// observing around every call and judging the standard ones. Mutates the
// report's counters; sequence bookkeeping stays with the caller.
SequenceRunOutput run_sequence(const SuiteTarget& target,
                               const SuiteConfig& config,
                               const std::vector<GeneratedCall>& calls,
                               bool stop_at_violation, Report& report,
                               std::vector<CallRecord>* records,
                               std::uint64_t* tez_lints) {
    SequenceRunOutput out;
    ReportSummary& stats = report.summary;
    const OracleConfig oracle_config{config.strict_approve};

    ChainState chain;
    const Address target_addr = target.originate(chain);
    const Address recorder_addr =
        chain.originate(RecorderInstance{Ty::int_(), false, "", Mutez(0)});
    const ContractRef recorder{recorder_addr, ""};

    auto observe = [&]() {
        return observe_abstract_storage(chain, target_addr, config.universe,
                                        config.observation);
    };

    std::optional<LedgerStorage> pre;
    try {
        pre = observe();
    } catch (const Error&) {
        ++stats.observation_errors;
    }

    for (std::size_t i = 0; i < calls.size(); ++i) {
        const GeneratedCall gc = with_callback(calls[i], recorder);
        ++stats.calls;
        if (tez_lints != nullptr && carries_tez_on_core_call(gc))
            ++*tez_lints;
        if (records != nullptr)
            records->push_back(CallRecord{gc, false, "pass"});

        chain.clear_recorder(recorder_addr);
        const InjectionOutcome injected =
            inject_call(chain, gc.sender, target_addr, gc.call, gc.amount);
        const ImplResult impl = injected.success
                                    ? ImplResult::success(injected.root_ops)
                                    : ImplResult::failure();
        if (records != nullptr)
            records->back().executed_success = injected.success;

        // Observe the post-state of any successful call; failures roll back
        // and keep the pre-state by atomicity.
        std::optional<LedgerStorage> post;
        std::optional<std::pair<Rule, std::string>> violation;
        if (injected.success) {
            try {
                post = observe();
            } catch (const ObservationIncomplete&) {
                ++stats.observation_errors;
            } catch (const LayoutMismatch& e) {
                violation = {Rule::StorageInvalid, std::string(e.what())};
            }
        }

        const bool standard = is_standard_call(gc.call);
        bool judged_pass = false;
        if (standard)
            ++stats.standard_calls;
        else
            ++stats.other_calls;

        if (!violation && standard && pre) {
            const CallEnv env{gc.sender, target_addr, gc.amount};
            const SpecOutcome spec =
                spec_outcome(gc.call, env, *pre, oracle_config);
            if (spec.is_must_fail()) {
                ++stats.must_fail_calls;
                if (injected.success)
                    ++stats.must_fail_successes;
            } else {
                ++stats.may_succeed_calls;
                if (injected.success)
                    ++stats.may_succeed_successes;
            }
            try {
                const Verdict verdict =
                    check_conformance(gc.call, env, *pre, impl, post,
                                      config.universe, oracle_config);
                if (verdict.kind == Verdict::Kind::Violation)
                    violation = {verdict.rule, verdict.detail};
                else
                    judged_pass = true;
            } catch (const ObservationIncomplete&) {
                if (records != nullptr)
                    records->back().judgment =
                        "not judged: post-state unobservable";
            }
        } else if (!violation && standard) {
            ++stats.unknown_pre_calls;
            if (records != nullptr)
                records->back().judgment = "not judged: pre-state unknown";
        } else if (!violation && records != nullptr) {
            records->back().judgment = "not judged: nonstandard entrypoint";
        }

        // Suite-level invariants over any observed post-state.
        if (!violation && injected.success && post) {
            if (post->tracked_total() != sum_of_all_balances(*post)) {
                violation = {Rule::TotalSupplyMismatch,
                             "reported total " + post->tracked_total().str() +
                                 " but balances sum to " +
                                 sum_of_all_balances(*post).str()};
            } else if (config.observation == ObservationMode::direct) {
                const std::vector<std::string> defects =
                    scan_storage_defects(chain, target_addr);
                if (!defects.empty())
                    violation = {Rule::StorageInvalid, defects.front()};
            }
        }

        if (violation) {
            note_violation(out, report, calls, i, violation->first,
                           violation->second, records);
            if (stop_at_violation)
                return out;
        } else if (judged_pass && records != nullptr) {
            records->back().judgment = "pass";
        }

        if (injected.success)
            pre = post;  // possibly unknown; later calls skip judgment
    }
    out.final_state = std::move(pre);
    return out;
}

std::optional<std::string> replay_detail(const SuiteTarget& target,
                                         const SuiteConfig& config,
                                         const std::vector<GeneratedCall>& calls,
                                         Rule rule) {
    Report scratch;
    const SequenceRunOutput out =
        run_sequence(target, config, calls, false, scratch, nullptr, nullptr);
    for (const auto& [r, detail] : out.violations)
        if (r == rule)
            return detail;
    return std::nullopt;
}

void halve_toward_zero(TokenAmount& value, bool try_zero) {
    value = try_zero ? TokenAmount(0) : TokenAmount(BigInt(value.value() / 2));
}

// Single-field reductions of one call, smallest first.
std::vector<GeneratedCall> value_candidates(const GeneratedCall& gc) {
    std::vector<GeneratedCall> candidates;
    auto add_token_variants = [&](auto field_of) {
        GeneratedCall base = gc;
        const TokenAmount current = field_of(base);
        if (current.is_zero())
            return;
        for (const bool zero : {true, false}) {
            GeneratedCall candidate = gc;
            TokenAmount next = current;
            halve_toward_zero(next, zero);
            if (next == current)
                continue;
            field_of(candidate) = next;
            candidates.push_back(std::move(candidate));
        }
    };
    if (std::holds_alternative<TransferCall>(gc.call))
        add_token_variants([](GeneratedCall& c) -> TokenAmount& {
            return std::get<TransferCall>(c.call).value;
        });
    if (std::holds_alternative<ApproveCall>(gc.call))
        add_token_variants([](GeneratedCall& c) -> TokenAmount& {
            return std::get<ApproveCall>(c.call).new_allowance;
        });
    if (const auto* other = std::get_if<OtherCall>(&gc.call)) {
        for (const auto& [name, text] : other->args) {
            TokenAmount current(0);
            try {
                current = TokenAmount::from_string(text);
            } catch (const Error&) {
                if (text == "true") {
                    GeneratedCall candidate = gc;
                    std::get<OtherCall>(candidate.call).args[name] = "false";
                    candidates.push_back(std::move(candidate));
                }
                continue;
            }
            if (current.is_zero())
                continue;
            for (const bool zero : {true, false}) {
                TokenAmount next = current;
                halve_toward_zero(next, zero);
                if (next == current)
                    continue;
                GeneratedCall candidate = gc;
                std::get<OtherCall>(candidate.call).args[name] = next.str();
                candidates.push_back(std::move(candidate));
            }
        }
    }
    if (!gc.amount.is_zero()) {
        for (const std::int64_t next : {std::int64_t{0}, gc.amount.value() / 2}) {
            if (next == gc.amount.value())
                continue;
            GeneratedCall candidate = gc;
            candidate.amount = Mutez(next);
            candidates.push_back(std::move(candidate));
        }
    }
    return candidates;
}

// Greedy shrink: drop calls, then pull values toward zero, accepting any
// candidate that still reproduces the violated rule on replay.
void shrink_counterexample(const SuiteTarget& target,
                           const SuiteConfig& config, Counterexample& ce) {
    auto keeps_rule = [&](const std::vector<GeneratedCall>& calls) {
        return replay_detail(target, config, calls, ce.rule).has_value();
    };
    std::vector<GeneratedCall>& calls = ce.calls;
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i < calls.size() && calls.size() > 1;) {
            std::vector<GeneratedCall> candidate = calls;
            candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(i));
            if (keeps_rule(candidate)) {
                calls = std::move(candidate);
                improved = true;
            } else {
                ++i;
            }
        }
        for (std::size_t i = 0; i < calls.size(); ++i) {
            bool reduced = true;
            while (reduced) {
                reduced = false;
                for (GeneratedCall& variant : value_candidates(calls[i])) {
                    std::vector<GeneratedCall> candidate = calls;
                    candidate[i] = std::move(variant);
                    if (keeps_rule(candidate)) {
                        calls = std::move(candidate);
                        improved = true;
                        reduced = true;
                        break;
                    }
                }
            }
        }
    }
    if (const auto detail = replay_detail(target, config, calls, ce.rule))
        ce.detail = *detail;
}

void finalize_report(Report& report, std::uint64_t tez_lints) {
    if (tez_lints > 0)
        report.warnings.push_back(
            "tez attached to " + std::to_string(tez_lints) +
            " transfer/approve call(s); tolerated, never judged");
    const ReportSummary& s = report.summary;
    if (report.has_violations() || s.standard_calls == 0) {
        report.vacuous = false;
        return;
    }
    if (s.may_succeed_calls == 0) {
        report.vacuous = true;
        return;
    }
    const double ratio = static_cast<double>(s.may_succeed_successes) /
                         static_cast<double>(s.may_succeed_calls);
    report.vacuous = ratio < report.config.liveness_threshold;
}

constexpr std::size_t max_shrunk_counterexamples = 3;

}  // namespace

Report run_conformance_suite(const SuiteTarget& target,
                             const SuiteConfig& config) {
    Report report;
    report.target_name = target.name;
    report.config = config;
    std::uint64_t tez_lints = 0;

    for (std::size_t seq = 0; seq < config.num_sequences; ++seq) {
        const std::uint64_t sequence_seed =
            mix64(config.seed ^ mix64(0x1000 + seq));
        const std::vector<GeneratedCall> calls =
            generate_call_sequence(sequence_seed, config, target.entrypoints);
        ++report.summary.sequences;
        SequenceRunOutput out = run_sequence(target, config, calls, true,
                                             report, nullptr, &tez_lints);
        if (!out.first_violation)
            continue;
        if (report.counterexamples.size() < max_shrunk_counterexamples) {
            Counterexample ce = std::move(*out.first_violation);
            ce.sequence_index = seq;
            shrink_counterexample(target, config, ce);
            report.counterexamples.push_back(std::move(ce));
        } else {
            ++report.summary.extra_counterexamples;
        }
    }
    finalize_report(report, tez_lints);
    return report;
}

RunResult run_call_list(const SuiteTarget& target, const SuiteConfig& config,
                        const std::vector<GeneratedCall>& calls) {
    RunResult result;
    result.report.target_name = target.name;
    result.report.config = config;
    std::uint64_t tez_lints = 0;

    ++result.report.summary.sequences;
    SequenceRunOutput out = run_sequence(target, config, calls, false,
                                         result.report, &result.records,
                                         &tez_lints);
    finalize_report(result.report, tez_lints);
    result.final_ledger = std::move(out.final_state);
    return result;
}

}  // namespace fa12
