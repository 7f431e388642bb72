// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <fa12/layout.hpp>
#include <fa12/models.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fa12 {

/// A reference model instance on the chain.
struct ModelInstance {
    std::shared_ptr<const ContractModel> model;
    ModelStorage storage;
};

/// An interpreted Michelson contract on the chain.
struct MichelsonInstance {
    std::shared_ptr<const TypedProgram> program;
    Value storage;
    StorageLayout layout;
};

/// A passive callback sink: stores the last value and amount it received
/// instead of running code. The declared type answers CONTRACT lookups.
struct RecorderInstance {
    Ty value_ty;
    bool has_record = false;
    std::string value_text;
    Mutez amount;
};

using ContractInstance =
    std::variant<ModelInstance, MichelsonInstance, RecorderInstance>;

class UnknownDestination : public Error {
public:
    explicit UnknownDestination(const Address& addr)
        : Error("no contract at address " + addr.id()) {}
};

class ChainState;

/// Answers CONTRACT instruction lookups against a chain's origination
/// table. Valid only while the chain it points at is alive.
class ChainResolver : public ContractResolver {
public:
    explicit ChainResolver(const ChainState& chain) : chain_(&chain) {}

    std::optional<Ty> entrypoint_type(
        const Address& address, const std::string& entrypoint) const override;

private:
    const ChainState* chain_;
};

/// The simulated chain: originated contracts under deterministic addresses.
/// Value semantics; copying snapshots the whole state.
class ChainState {
public:
    Address originate(ContractInstance instance);

    bool has(const Address& addr) const;
    const ContractInstance& at(const Address& addr) const;
    ContractInstance& at(const Address& addr);
    const std::map<Address, ContractInstance>& contracts() const {
        return contracts_;
    }

    const RecorderInstance* recorder(const Address& addr) const;
    void clear_recorder(const Address& addr);

    /// Stable rendering of the whole state, for bit-identical comparisons.
    std::string digest() const;

    ChainResolver resolver() const { return ChainResolver(*this); }

private:
    std::map<Address, ContractInstance> contracts_;
    std::size_t next_fresh_ = 0;
};

/// One call and everything observed about its execution.
struct InjectionOutcome {
    bool success = false;
    std::vector<EmittedOperation> root_ops;  // emitted by the target itself
    std::string failure_reason;              // empty on success
};

/// Execute a call on the target and drain every emitted operation breadth
/// first (an operation's sender is the contract that emitted it). Any
/// failure anywhere rolls the chain back; the failure reason is descriptive
/// only, never part of conformance judgments.
InjectionOutcome inject_call(ChainState& chain, const Address& sender,
                             const Address& target, const EntrypointCall& call,
                             const Mutez& amount);

/// As inject_call, but starting from a raw Micheline parameter aimed at one
/// entrypoint (models decode it; Michelson contracts elaborate it).
InjectionOutcome inject_value(ChainState& chain, const Address& sender,
                              const ContractRef& dest,
                              const std::string& value_text,
                              const Mutez& amount);

enum class ObservationMode { views, direct };

/// Reconstruct the target's abstract ledger over a finite universe. In views
/// mode every entry is read through the contract's own view entrypoints
/// (recorder callbacks, zero tez) on a scratch copy of the chain; in direct
/// mode the storage is projected via the layout or the model's view. Throws
/// ObservationIncomplete when the target cannot answer.
LedgerStorage observe_abstract_storage(const ChainState& chain,
                                       const Address& target,
                                       const std::vector<Address>& universe,
                                       ObservationMode mode);

/// Storage-validity findings visible only by looking at the implementation
/// state directly: stored zero entries, undecodable projections, a model
/// view that is not canonical. Empty for a healthy target.
std::vector<std::string> scan_storage_defects(const ChainState& chain,
                                              const Address& target);

}  // namespace fa12
