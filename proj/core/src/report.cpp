// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/suite.hpp>

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace fa12 {

namespace {

using nlohmann::json;

// Surfaced in every report: the standard does not say who owns the
// allowance an approve call changes, so the oracle pins it to the caller.
constexpr const char* approve_owner_note =
    "approve records the caller as the owner of the changed allowance";

const char* verdict_word(const Report& report) {
    if (report.has_violations())
        return "violation";
    return report.vacuous ? "vacuous" : "pass";
}

json call_to_json(const GeneratedCall& gc) {
    return json{{"sender", gc.sender.id()},
                {"entrypoint", call_name(gc.call)},
                {"args", call_args(gc.call)},
                {"amount", gc.amount.value()}};
}

std::string render_call(const GeneratedCall& gc) {
    std::ostringstream out;
    out << gc.sender.id() << " -> " << call_name(gc.call) << "(";
    bool first = true;
    for (const auto& [name, value] : call_args(gc.call)) {
        if (!first)
            out << ", ";
        out << name << "=" << value;
        first = false;
    }
    out << ")";
    if (!gc.amount.is_zero())
        out << " amount=" << gc.amount.value();
    return out.str();
}

std::string liveness_fraction(const ReportSummary& s) {
    return std::to_string(s.may_succeed_successes) + "/" +
           std::to_string(s.may_succeed_calls);
}

}  // namespace

std::map<std::string, std::string> call_args(const EntrypointCall& call) {
    struct Renderer {
        std::map<std::string, std::string> operator()(const TransferCall& c) {
            return {{"from", c.from.id()},
                    {"to", c.to.id()},
                    {"value", c.value.str()}};
        }
        std::map<std::string, std::string> operator()(const ApproveCall& c) {
            return {{"spender", c.spender.id()},
                    {"value", c.new_allowance.str()}};
        }
        std::map<std::string, std::string> operator()(
            const GetAllowanceCall& c) {
            return {{"owner", c.owner.id()}, {"spender", c.spender.id()}};
        }
        std::map<std::string, std::string> operator()(const GetBalanceCall& c) {
            return {{"owner", c.owner.id()}};
        }
        std::map<std::string, std::string> operator()(
            const GetTotalSupplyCall&) {
            return {};
        }
        std::map<std::string, std::string> operator()(const OtherCall& c) {
            return c.args;
        }
    };
    return std::visit(Renderer{}, call);
}

std::string render_report_json(const Report& report) {
    const ReportSummary& s = report.summary;

    json config_echo{
        {"target", report.target_name},
        {"sequences", s.sequences},
        {"length", report.config.sequence_length},
        {"strict_approve", report.config.strict_approve},
        {"liveness_threshold", report.config.liveness_threshold},
        {"observation", report.config.observation == ObservationMode::views
                            ? "views"
                            : "direct"},
        {"initial_balance", report.config.initial_balance.str()},
    };
    json universe = json::array();
    for (const Address& addr : report.config.universe)
        universe.push_back(addr.id());
    config_echo["universe"] = std::move(universe);

    json notes = json::array();
    notes.push_back(approve_owner_note);
    for (const std::string& warning : report.warnings)
        notes.push_back(warning);

    json summary{
        {"sequences", s.sequences},
        {"calls", s.calls},
        {"standard_calls", s.standard_calls},
        {"other_calls", s.other_calls},
        {"may_succeed_calls", s.may_succeed_calls},
        {"may_succeed_successes", s.may_succeed_successes},
        {"must_fail_calls", s.must_fail_calls},
        {"must_fail_successes", s.must_fail_successes},
        {"unknown_pre_calls", s.unknown_pre_calls},
        {"observation_errors", s.observation_errors},
        {"violations", s.violations},
        {"extra_counterexamples", s.extra_counterexamples},
        {"liveness", liveness_fraction(s)},
        {"vacuous", report.vacuous},
        {"verdict", verdict_word(report)},
        {"exit_code", report.exit_code()},
        {"notes", std::move(notes)},
    };

    json rule_counts = json::object();
    for (const auto& [rule, count] : report.rule_counts)
        rule_counts[rule] = count;

    json counterexamples = json::array();
    for (const Counterexample& ce : report.counterexamples) {
        json calls = json::array();
        for (const GeneratedCall& gc : ce.calls)
            calls.push_back(call_to_json(gc));
        counterexamples.push_back(json{{"rule", rule_id(ce.rule)},
                                       {"detail", ce.detail},
                                       {"sequence", ce.sequence_index},
                                       {"original_length", ce.original_length},
                                       {"calls", std::move(calls)}});
    }

    const json document{{"summary", std::move(summary)},
                        {"rule_counts", std::move(rule_counts)},
                        {"counterexamples", std::move(counterexamples)},
                        {"config_echo", std::move(config_echo)},
                        {"seed", report.config.seed}};
    return document.dump(2) + "\n";
}

namespace {

json ledger_to_json(const LedgerStorage& ledger) {
    json balances = json::object();
    for (const auto& [owner, amount] : ledger.balances())
        balances[owner.id()] = amount.str();
    json allowances = json::object();
    for (const auto& [key, amount] : ledger.allowances())
        allowances[key.first.id() + "->" + key.second.id()] = amount.str();
    return json{{"balances", std::move(balances)},
                {"allowances", std::move(allowances)},
                {"total", ledger.tracked_total().str()}};
}

}  // namespace

std::string render_run_json(const RunResult& result) {
    json document = json::parse(render_report_json(result.report));
    json calls = json::array();
    for (const CallRecord& record : result.records) {
        json entry = call_to_json(record.call);
        entry["executed"] = record.executed_success ? "success" : "failure";
        entry["judgment"] = record.judgment;
        calls.push_back(std::move(entry));
    }
    document["calls"] = std::move(calls);
    document["final_ledger"] = result.final_ledger
                                   ? ledger_to_json(*result.final_ledger)
                                   : json(nullptr);
    return document.dump(2) + "\n";
}

std::string render_run_human(const RunResult& result) {
    std::ostringstream out;
    out << "scripted run against " << result.report.target_name << "\n\n";
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const CallRecord& record = result.records[i];
        out << "  " << i + 1 << ". " << render_call(record.call) << "  ["
            << (record.executed_success ? "success" : "failure") << "] "
            << record.judgment << "\n";
    }
    out << "\nfinal observed ledger:\n";
    if (!result.final_ledger) {
        out << "  (unobservable)\n";
    } else {
        const LedgerStorage& ledger = *result.final_ledger;
        for (const auto& [owner, amount] : ledger.balances())
            out << "  balance " << owner.id() << " = " << amount.str() << "\n";
        for (const auto& [key, amount] : ledger.allowances())
            out << "  allowance (" << key.first.id() << ", "
                << key.second.id() << ") = " << amount.str() << "\n";
        out << "  total supply = " << ledger.tracked_total().str() << "\n";
    }
    out << "\n" << render_report_human(result.report);
    return out.str();
}

std::string render_report_human(const Report& report) {
    const ReportSummary& s = report.summary;
    std::ostringstream out;
    out << "conformance report for " << report.target_name << "\n";
    out << "  seed:          " << report.config.seed << "\n";
    out << "  sequences:     " << s.sequences << " x "
        << report.config.sequence_length << " calls\n";
    out << "  observation:   "
        << (report.config.observation == ObservationMode::views ? "views"
                                                                : "direct")
        << "\n";
    out << "  universe:     ";
    for (const Address& addr : report.config.universe)
        out << " " << addr.id();
    out << "\n";
    out << "  note:          " << approve_owner_note << "\n";
    for (const std::string& warning : report.warnings)
        out << "  warning:       " << warning << "\n";
    out << "\n";
    out << "  calls:         " << s.calls << " (" << s.standard_calls
        << " standard, " << s.other_calls << " other)\n";
    out << "  may-succeed:   " << s.may_succeed_calls << ", of which "
        << s.may_succeed_successes << " succeeded (liveness "
        << liveness_fraction(s) << ", threshold " << std::setprecision(3)
        << report.config.liveness_threshold << ")\n";
    out << "  must-fail:     " << s.must_fail_calls << ", of which "
        << s.must_fail_successes << " succeeded\n";
    out << "  not judged:    " << s.unknown_pre_calls
        << " with unknown pre-state, " << s.observation_errors
        << " observation error(s)\n";
    out << "  violations:    " << s.violations << "\n";

    if (!report.rule_counts.empty()) {
        out << "\n  rule counts:\n";
        for (const auto& [rule, count] : report.rule_counts)
            out << "    " << rule << ": " << count << "\n";
    }
    for (std::size_t i = 0; i < report.counterexamples.size(); ++i) {
        const Counterexample& ce = report.counterexamples[i];
        out << "\n  counterexample " << i + 1 << " (rule " << rule_id(ce.rule)
            << ", sequence " << ce.sequence_index << ", shrunk from "
            << ce.original_length << " to " << ce.calls.size()
            << " call(s)):\n";
        for (std::size_t k = 0; k < ce.calls.size(); ++k)
            out << "    " << k + 1 << ". " << render_call(ce.calls[k]) << "\n";
        out << "    detail: " << ce.detail << "\n";
    }
    if (s.extra_counterexamples > 0)
        out << "\n  " << s.extra_counterexamples
            << " further violating sequence(s) not shrunk\n";

    out << "\nverdict: ";
    if (report.has_violations())
        out << "VIOLATION (exit 2)";
    else if (report.vacuous)
        out << "VACUOUS PASS (exit 3): too few live successes to certify";
    else
        out << "PASS";
    out << "\n";
    return out.str();
}

}  // namespace fa12
