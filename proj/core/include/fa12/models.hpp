// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <fa12/oracle.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fa12 {

/// State of one reference model instance. The admin/paused fields are only
/// meaningful for the managed model; the others ignore them.
struct ModelStorage {
    LedgerStorage ledger;
    Address admin;
    bool paused = false;

    bool operator==(const ModelStorage&) const = default;
};

struct ModelInitConfig {
    std::vector<Address> universe;
    TokenAmount initial_balance;
    std::optional<Address> admin;  // defaults to the first universe member
};

/// Kinds an extra-entrypoint argument can have, enough for the generator to
/// synthesize calls from a signature.
enum class ArgKind { address, amount, flag };

struct ArgSpec {
    std::string name;
    ArgKind kind;
};

struct EntrypointSig {
    std::string name;
    bool standard = false;  // one of the five ledger entrypoints
    std::vector<ArgSpec> args;
};

struct StepResult {
    static StepResult success(std::vector<EmittedOperation> ops,
                              ModelStorage storage);
    static StepResult failure();

    bool is_success = false;
    std::vector<EmittedOperation> ops;
    ModelStorage storage;
};

/// A reference implementation as a deterministic state machine: step never
/// throws and never mutates its input storage.
class ContractModel {
public:
    virtual ~ContractModel() = default;

    virtual std::string name() const = 0;
    virtual std::vector<EntrypointSig> param_describe() const = 0;
    virtual ModelStorage init(const ModelInitConfig& config) const = 0;
    virtual StepResult step(const CallEnv& env, const EntrypointCall& call,
                            const ModelStorage& storage) const = 0;
    virtual LedgerStorage abstract_view(const ModelStorage& storage) const = 0;
};

/// The plain five-entrypoint ledger: self-transfer is a regular transfer,
/// views forward the attached tez, total supply is recomputed on demand.
std::shared_ptr<const ContractModel> model_standard();

/// The standard ledger plus mint/burn/setAdmin/pause. Mint and burn are
/// admin-only and keep the tracked total in step with the balances; pausing
/// blocks the five standard entrypoints but not the administrative ones.
std::shared_ptr<const ContractModel> model_managed();

struct BuggyFlags {
    bool self_transfer_noop = false;
    bool view_keeps_tokens = false;
};

/// The standard ledger with historical defects reintroduced on demand:
/// self_transfer_noop makes from = to return the storage untouched, and
/// view_keeps_tokens makes view callbacks carry 0 mutez.
std::shared_ptr<const ContractModel> model_legacy_buggy(BuggyFlags flags);

}  // namespace fa12
