// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <fa12/ledger.hpp>

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fa12 {

/// Ambient data of one contract call: who sent it, which contract runs, and
/// how many mutez came attached.
struct CallEnv {
    Address sender;
    Address self;
    Mutez amount;
};

/// Destination of an emitted operation: an address plus an entrypoint name
/// (empty = default entrypoint).
struct ContractRef {
    Address address;
    std::string entrypoint;

    auto operator<=>(const ContractRef&) const = default;
};

/// A transfer_tokens operation produced by a contract call. `value` holds the
/// parameter as canonical Micheline text ("5", "(Pair 1 2)", ...), which keeps
/// reference models and interpreted contracts comparable byte for byte.
struct EmittedOperation {
    ContractRef destination;
    Mutez amount;
    std::string value;

    auto operator<=>(const EmittedOperation&) const = default;
};

struct TransferCall {
    Address from;
    Address to;
    TokenAmount value;
};

struct ApproveCall {
    Address spender;
    TokenAmount new_allowance;
};

struct GetAllowanceCall {
    Address owner;
    Address spender;
    ContractRef callback;
};

struct GetBalanceCall {
    Address owner;
    ContractRef callback;
};

struct GetTotalSupplyCall {
    ContractRef callback;
};

/// A call to an entrypoint outside the five the standard names. Never judged
/// against the standard's postconditions; args are name→text pairs (amounts as
/// decimal numerals, booleans as "true"/"false").
struct OtherCall {
    std::string name;
    std::map<std::string, std::string> args;
};

using EntrypointCall = std::variant<TransferCall, ApproveCall, GetAllowanceCall,
                                    GetBalanceCall, GetTotalSupplyCall,
                                    OtherCall>;

/// Entrypoint name for a call ("transfer", ..., or the OtherCall name).
std::string call_name(const EntrypointCall& call);
bool is_view_call(const EntrypointCall& call);
bool is_standard_call(const EntrypointCall& call);

/// Closed catalogue of verdict rule identifiers, stable across runs.
enum class Rule {
    InsufficientBalance,
    InsufficientAllowance,
    MustFailInsufficientBalance,
    MustFailInsufficientAllowance,
    WrongPostStorage,
    ViewStorageMutated,
    ViewWrongValue,
    ViewPassthrough,
    ViewExtraOps,
    UnsafeAllowanceChange,
    TotalSupplyMismatch,
    StorageInvalid,
};

/// The stable string identifier of a rule.
const char* rule_id(Rule rule);
std::optional<Rule> rule_from_id(const std::string& id);

/// What a success must emit: the exact operation list (view entrypoints) or
/// anything at all (transfer/approve, per the standard's silence).
struct OpConstraint {
    static OpConstraint unconstrained();
    static OpConstraint exactly(std::vector<EmittedOperation> ops);

    bool exact = false;
    std::vector<EmittedOperation> ops;
};

/// What the standard requires of one call on one storage: the call must fail
/// (with the preconditions it violates), or it may succeed and the post-state
/// and operations are pinned down.
class SpecOutcome {
public:
    static SpecOutcome must_fail(std::vector<Rule> violated);
    static SpecOutcome may_succeed(LedgerStorage required_storage,
                                   OpConstraint required_ops);

    bool is_must_fail() const noexcept { return must_fail_; }
    const std::vector<Rule>& violated() const { return violated_; }
    const LedgerStorage& required_storage() const { return required_storage_; }
    const OpConstraint& required_ops() const { return required_ops_; }

private:
    bool must_fail_ = false;
    std::vector<Rule> violated_;
    LedgerStorage required_storage_;
    OpConstraint required_ops_;
};

/// What an implementation actually did with a call.
struct ImplResult {
    static ImplResult success(std::vector<EmittedOperation> ops);
    static ImplResult failure();

    bool is_success = false;
    std::vector<EmittedOperation> ops;
};

struct Verdict {
    enum class Kind { Pass, PassVacuous, Violation };

    static Verdict pass();
    static Verdict pass_vacuous(std::size_t successes, std::size_t attempts);
    static Verdict violation(Rule rule, std::string detail);

    Kind kind = Kind::Pass;
    Rule rule = Rule::WrongPostStorage;  // meaningful only for Violation
    std::string detail;
    std::size_t successes = 0;  // meaningful only for PassVacuous
    std::size_t attempts = 0;
};

/// Oracle knobs. strict_approve makes a nonzero→nonzero allowance change a
/// required failure; off by default since the standard itself says nothing.
struct OracleConfig {
    bool strict_approve = false;
};

SpecOutcome spec_transfer(const CallEnv& env, const Address& from,
                          const Address& to, const TokenAmount& value,
                          const LedgerStorage& sto);

/// The owner of the changed allowance is taken to be env.sender.
SpecOutcome spec_approve(const CallEnv& env, const Address& spender,
                         const TokenAmount& new_allowance,
                         const LedgerStorage& sto,
                         const OracleConfig& config = {});

SpecOutcome spec_get_balance(const CallEnv& env, const Address& owner,
                             const ContractRef& callback,
                             const LedgerStorage& sto);

SpecOutcome spec_get_allowance(const CallEnv& env, const Address& owner,
                               const Address& spender,
                               const ContractRef& callback,
                               const LedgerStorage& sto);

SpecOutcome spec_get_total_supply(const CallEnv& env,
                                  const ContractRef& callback,
                                  const LedgerStorage& sto);

/// Dispatch over the five standard entrypoints. OtherCall yields MaySucceed
/// with unconstrained storage and ops (judged only by suite-level invariants).
SpecOutcome spec_outcome(const EntrypointCall& call, const CallEnv& env,
                         const LedgerStorage& sto,
                         const OracleConfig& config = {});

/// Raised when a conformance judgment needs a post-state observation that
/// could not be reconstructed.
class ObservationIncomplete : public Error {
public:
    explicit ObservationIncomplete(const std::string& what) : Error(what) {}
};

/// Judge one observed call against the standard. Deterministic; failure
/// payloads are never inspected. `universe` bounds the extensional storage
/// comparison. Throws ObservationIncomplete when a successful standard call
/// has no reconstructible post-state.
Verdict check_conformance(const EntrypointCall& call, const CallEnv& env,
                          const LedgerStorage& observed_pre,
                          const ImplResult& impl_result,
                          const std::optional<LedgerStorage>& observed_post,
                          const std::vector<Address>& universe,
                          const OracleConfig& config = {});

}  // namespace fa12
