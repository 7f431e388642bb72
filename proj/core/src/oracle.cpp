// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/oracle.hpp>

#include <sstream>

namespace fa12 {

std::string call_name(const EntrypointCall& call) {
    struct Namer {
        std::string operator()(const TransferCall&) { return "transfer"; }
        std::string operator()(const ApproveCall&) { return "approve"; }
        std::string operator()(const GetAllowanceCall&) { return "getAllowance"; }
        std::string operator()(const GetBalanceCall&) { return "getBalance"; }
        std::string operator()(const GetTotalSupplyCall&) { return "getTotalSupply"; }
        std::string operator()(const OtherCall& c) { return c.name; }
    };
    return std::visit(Namer{}, call);
}

bool is_view_call(const EntrypointCall& call) {
    return std::holds_alternative<GetAllowanceCall>(call) ||
           std::holds_alternative<GetBalanceCall>(call) ||
           std::holds_alternative<GetTotalSupplyCall>(call);
}

bool is_standard_call(const EntrypointCall& call) {
    return !std::holds_alternative<OtherCall>(call);
}

const char* rule_id(Rule rule) {
    switch (rule) {
    case Rule::InsufficientBalance: return "insufficient-balance";
    case Rule::InsufficientAllowance: return "insufficient-allowance";
    case Rule::MustFailInsufficientBalance: return "must-fail-insufficient-balance";
    case Rule::MustFailInsufficientAllowance: return "must-fail-insufficient-allowance";
    case Rule::WrongPostStorage: return "wrong-post-storage";
    case Rule::ViewStorageMutated: return "view-storage-mutated";
    case Rule::ViewWrongValue: return "view-wrong-value";
    case Rule::ViewPassthrough: return "view-passthrough";
    case Rule::ViewExtraOps: return "view-extra-ops";
    case Rule::UnsafeAllowanceChange: return "unsafe-allowance-change";
    case Rule::TotalSupplyMismatch: return "total-supply-mismatch";
    case Rule::StorageInvalid: return "storage-invalid";
    }
    return "unknown";
}

std::optional<Rule> rule_from_id(const std::string& id) {
    static const Rule all[] = {
        Rule::InsufficientBalance,      Rule::InsufficientAllowance,
        Rule::MustFailInsufficientBalance, Rule::MustFailInsufficientAllowance,
        Rule::WrongPostStorage,         Rule::ViewStorageMutated,
        Rule::ViewWrongValue,           Rule::ViewPassthrough,
        Rule::ViewExtraOps,             Rule::UnsafeAllowanceChange,
        Rule::TotalSupplyMismatch,      Rule::StorageInvalid,
    };
    for (Rule r : all)
        if (id == rule_id(r))
            return r;
    return std::nullopt;
}

OpConstraint OpConstraint::unconstrained() {
    return OpConstraint{};
}

OpConstraint OpConstraint::exactly(std::vector<EmittedOperation> ops) {
    OpConstraint c;
    c.exact = true;
    c.ops = std::move(ops);
    return c;
}

SpecOutcome SpecOutcome::must_fail(std::vector<Rule> violated) {
    SpecOutcome o;
    o.must_fail_ = true;
    o.violated_ = std::move(violated);
    return o;
}

SpecOutcome SpecOutcome::may_succeed(LedgerStorage required_storage,
                                     OpConstraint required_ops) {
    SpecOutcome o;
    o.required_storage_ = std::move(required_storage);
    o.required_ops_ = std::move(required_ops);
    return o;
}

ImplResult ImplResult::success(std::vector<EmittedOperation> ops) {
    return ImplResult{true, std::move(ops)};
}

ImplResult ImplResult::failure() {
    return ImplResult{false, {}};
}

Verdict Verdict::pass() {
    return Verdict{};
}

Verdict Verdict::pass_vacuous(std::size_t successes, std::size_t attempts) {
    Verdict v;
    v.kind = Kind::PassVacuous;
    v.successes = successes;
    v.attempts = attempts;
    return v;
}

Verdict Verdict::violation(Rule rule, std::string detail) {
    Verdict v;
    v.kind = Kind::Violation;
    v.rule = rule;
    v.detail = std::move(detail);
    return v;
}

SpecOutcome spec_transfer(const CallEnv& env, const Address& from,
                          const Address& to, const TokenAmount& value,
                          const LedgerStorage& sto) {
    std::vector<Rule> violated;
    if (get_balance(sto, from) < value)
        violated.push_back(Rule::InsufficientBalance);
    if (env.sender != from && get_allowance(sto, from, env.sender) < value)
        violated.push_back(Rule::InsufficientAllowance);
    if (!violated.empty())
        return SpecOutcome::must_fail(std::move(violated));

    // Debit first, credit on the updated map, so from = to nets to no change.
    LedgerStorage post = set_balance(sto, from, get_balance(sto, from) - value);
    post = set_balance(post, to, get_balance(post, to) + value);
    if (env.sender != from)
        post = set_allowance(post, from, env.sender,
                             get_allowance(sto, from, env.sender) - value);
    return SpecOutcome::may_succeed(std::move(post),
                                    OpConstraint::unconstrained());
}

SpecOutcome spec_approve(const CallEnv& env, const Address& spender,
                         const TokenAmount& new_allowance,
                         const LedgerStorage& sto, const OracleConfig& config) {
    if (config.strict_approve) {
        const TokenAmount current = get_allowance(sto, env.sender, spender);
        if (!current.is_zero() && !new_allowance.is_zero())
            return SpecOutcome::must_fail({Rule::UnsafeAllowanceChange});
    }
    return SpecOutcome::may_succeed(
        set_allowance(sto, env.sender, spender, new_allowance),
        OpConstraint::unconstrained());
}

namespace {

SpecOutcome view_outcome(const CallEnv& env, const ContractRef& callback,
                         const TokenAmount& value, const LedgerStorage& sto) {
    EmittedOperation op;
    op.destination = callback;
    op.amount = env.amount;
    op.value = value.str();
    return SpecOutcome::may_succeed(sto, OpConstraint::exactly({op}));
}

}  // namespace

SpecOutcome spec_get_balance(const CallEnv& env, const Address& owner,
                             const ContractRef& callback,
                             const LedgerStorage& sto) {
    return view_outcome(env, callback, get_balance(sto, owner), sto);
}

SpecOutcome spec_get_allowance(const CallEnv& env, const Address& owner,
                               const Address& spender,
                               const ContractRef& callback,
                               const LedgerStorage& sto) {
    return view_outcome(env, callback, get_allowance(sto, owner, spender), sto);
}

SpecOutcome spec_get_total_supply(const CallEnv& env,
                                  const ContractRef& callback,
                                  const LedgerStorage& sto) {
    return view_outcome(env, callback, get_total_supply(sto), sto);
}

SpecOutcome spec_outcome(const EntrypointCall& call, const CallEnv& env,
                         const LedgerStorage& sto, const OracleConfig& config) {
    struct Dispatch {
        const CallEnv& env;
        const LedgerStorage& sto;
        const OracleConfig& config;

        SpecOutcome operator()(const TransferCall& c) {
            return spec_transfer(env, c.from, c.to, c.value, sto);
        }
        SpecOutcome operator()(const ApproveCall& c) {
            return spec_approve(env, c.spender, c.new_allowance, sto, config);
        }
        SpecOutcome operator()(const GetAllowanceCall& c) {
            return spec_get_allowance(env, c.owner, c.spender, c.callback, sto);
        }
        SpecOutcome operator()(const GetBalanceCall& c) {
            return spec_get_balance(env, c.owner, c.callback, sto);
        }
        SpecOutcome operator()(const GetTotalSupplyCall& c) {
            return spec_get_total_supply(env, c.callback, sto);
        }
        SpecOutcome operator()(const OtherCall&) {
            // Nonstandard entrypoints carry no per-call obligations; the
            // suite-level invariants still apply to whatever state results.
            return SpecOutcome::may_succeed(sto, OpConstraint::unconstrained());
        }
    };
    return std::visit(Dispatch{env, sto, config}, call);
}

namespace {

Rule must_fail_rule(Rule precondition) {
    switch (precondition) {
    case Rule::InsufficientBalance: return Rule::MustFailInsufficientBalance;
    case Rule::InsufficientAllowance: return Rule::MustFailInsufficientAllowance;
    default: return precondition;
    }
}

Verdict judge_view_ops(const std::vector<EmittedOperation>& required,
                       const std::vector<EmittedOperation>& actual) {
    if (actual.size() != required.size()) {
        std::ostringstream out;
        out << "expected exactly " << required.size() << " callback operation"
            << (required.size() == 1 ? "" : "s") << ", got " << actual.size();
        return Verdict::violation(Rule::ViewExtraOps, out.str());
    }
    for (std::size_t i = 0; i < required.size(); ++i) {
        const EmittedOperation& want = required[i];
        const EmittedOperation& got = actual[i];
        if (got.destination != want.destination)
            return Verdict::violation(
                Rule::ViewExtraOps,
                "callback sent to " + got.destination.address.id() +
                    ", expected " + want.destination.address.id());
        if (got.value != want.value)
            return Verdict::violation(Rule::ViewWrongValue,
                                      "callback carried value " + got.value +
                                          ", expected " + want.value);
        if (got.amount != want.amount) {
            std::ostringstream out;
            out << "callback forwarded " << got.amount.value()
                << " mutez, expected " << want.amount.value();
            return Verdict::violation(Rule::ViewPassthrough, out.str());
        }
    }
    return Verdict::pass();
}

std::string storage_diff(const LedgerStorage& want, const LedgerStorage& got,
                         const std::vector<Address>& universe) {
    std::ostringstream out;
    bool first = true;
    auto item = [&](const std::string& text) {
        if (!first)
            out << "; ";
        first = false;
        out << text;
    };
    for (const Address& a : universe) {
        const TokenAmount w = get_balance(want, a);
        const TokenAmount g = get_balance(got, a);
        if (w != g)
            item("balance(" + a.id() + ") = " + g.str() + ", expected " +
                 w.str());
    }
    for (const Address& owner : universe)
        for (const Address& spender : universe) {
            const TokenAmount w = get_allowance(want, owner, spender);
            const TokenAmount g = get_allowance(got, owner, spender);
            if (w != g)
                item("allowance(" + owner.id() + ", " + spender.id() + ") = " +
                     g.str() + ", expected " + w.str());
        }
    if (first)
        item("storages differ outside the configured universe");
    return out.str();
}

}  // namespace

Verdict check_conformance(const EntrypointCall& call, const CallEnv& env,
                          const LedgerStorage& observed_pre,
                          const ImplResult& impl_result,
                          const std::optional<LedgerStorage>& observed_post,
                          const std::vector<Address>& universe,
                          const OracleConfig& config) {
    // Nonstandard entrypoints are judged only by the suite-level invariants.
    if (!is_standard_call(call))
        return Verdict::pass();

    const SpecOutcome outcome = spec_outcome(call, env, observed_pre, config);

    if (outcome.is_must_fail()) {
        if (!impl_result.is_success)
            return Verdict::pass();
        const Rule rule = must_fail_rule(outcome.violated().front());
        std::ostringstream out;
        out << call_name(call) << " succeeded although the standard requires "
               "failure (";
        for (std::size_t i = 0; i < outcome.violated().size(); ++i)
            out << (i ? ", " : "") << rule_id(outcome.violated()[i]);
        out << ")";
        return Verdict::violation(rule, out.str());
    }

    // Failures on MaySucceed calls are tolerated per call; liveness is
    // accounted at the suite level.
    if (!impl_result.is_success)
        return Verdict::pass();

    if (!observed_post.has_value())
        throw ObservationIncomplete(
            "post-state of successful " + call_name(call) +
            " call could not be reconstructed");

    if (!equal_on_universe(outcome.required_storage(), *observed_post,
                           universe)) {
        const Rule rule = is_view_call(call) ? Rule::ViewStorageMutated
                                             : Rule::WrongPostStorage;
        return Verdict::violation(
            rule, storage_diff(outcome.required_storage(), *observed_post,
                               universe));
    }

    if (outcome.required_ops().exact) {
        Verdict ops_verdict =
            judge_view_ops(outcome.required_ops().ops, impl_result.ops);
        if (ops_verdict.kind != Verdict::Kind::Pass)
            return ops_verdict;
    }

    return Verdict::pass();
}

}  // namespace fa12
