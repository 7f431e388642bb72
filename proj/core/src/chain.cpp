// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/chain.hpp>

#include <deque>
#include <sstream>

namespace fa12 {

namespace {

// Parameter types of the standard entrypoints, used when a Michelson
// contract resolves a reference model through CONTRACT. The numeric leaves
// follow the common published shapes.
std::optional<Ty> model_entrypoint_type(const std::string& entrypoint) {
    if (entrypoint == "transfer")
        return Ty::pair(Ty::address(), Ty::pair(Ty::address(), Ty::nat()));
    if (entrypoint == "approve")
        return Ty::pair(Ty::address(), Ty::nat());
    if (entrypoint == "getAllowance")
        return Ty::pair(Ty::pair(Ty::address(), Ty::address()),
                        Ty::contract(Ty::nat()));
    if (entrypoint == "getBalance")
        return Ty::pair(Ty::address(), Ty::contract(Ty::nat()));
    if (entrypoint == "getTotalSupply")
        return Ty::pair(Ty::unit(), Ty::contract(Ty::nat()));
    return std::nullopt;
}

}  // namespace

std::optional<Ty> ChainResolver::entrypoint_type(
    const Address& address, const std::string& entrypoint) const {
    if (!chain_->has(address))
        return std::nullopt;
    const ContractInstance& instance = chain_->at(address);
    if (const auto* m = std::get_if<MichelsonInstance>(&instance)) {
        const auto ep = find_entrypoint(m->program->parameter_ty, entrypoint);
        if (!ep)
            return std::nullopt;
        return ep->ty;
    }
    if (const auto* r = std::get_if<RecorderInstance>(&instance)) {
        if (!entrypoint.empty())
            return std::nullopt;
        return r->value_ty;
    }
    return model_entrypoint_type(entrypoint);
}

Address ChainState::originate(ContractInstance instance) {
    Address addr("addr_" + std::to_string(next_fresh_++));
    contracts_.emplace(addr, std::move(instance));
    return addr;
}

bool ChainState::has(const Address& addr) const {
    return contracts_.count(addr) != 0;
}

const ContractInstance& ChainState::at(const Address& addr) const {
    const auto it = contracts_.find(addr);
    if (it == contracts_.end())
        throw UnknownDestination(addr);
    return it->second;
}

ContractInstance& ChainState::at(const Address& addr) {
    const auto it = contracts_.find(addr);
    if (it == contracts_.end())
        throw UnknownDestination(addr);
    return it->second;
}

const RecorderInstance* ChainState::recorder(const Address& addr) const {
    const auto it = contracts_.find(addr);
    if (it == contracts_.end())
        return nullptr;
    return std::get_if<RecorderInstance>(&it->second);
}

void ChainState::clear_recorder(const Address& addr) {
    if (auto* r = std::get_if<RecorderInstance>(&at(addr)))
        r->has_record = false;
}

namespace {

void digest_ledger(const LedgerStorage& ledger, std::ostringstream& out) {
    for (const auto& [owner, amount] : ledger.balances())
        out << owner.id() << "=" << amount.str() << ";";
    out << "|";
    for (const auto& [key, amount] : ledger.allowances())
        out << "(" << key.first.id() << "," << key.second.id()
            << ")=" << amount.str() << ";";
    out << "|total=" << ledger.tracked_total().str();
}

}  // namespace

std::string ChainState::digest() const {
    std::ostringstream out;
    for (const auto& [addr, instance] : contracts_) {
        out << addr.id() << ":";
        if (const auto* m = std::get_if<ModelInstance>(&instance)) {
            out << "model[" << m->model->name() << "]{";
            digest_ledger(m->storage.ledger, out);
            out << "|admin=" << m->storage.admin.id()
                << "|paused=" << (m->storage.paused ? "1" : "0") << "}";
        } else if (const auto* c = std::get_if<MichelsonInstance>(&instance)) {
            out << "code{" << print_value(c->storage) << "}";
        } else {
            const auto& r = std::get<RecorderInstance>(instance);
            out << "recorder{";
            if (r.has_record)
                out << r.value_text << "@" << r.amount.value();
            out << "}";
        }
        out << "\n";
    }
    out << "next=" << next_fresh_;
    return out.str();
}

namespace {

std::string contract_literal(const ContractRef& ref) {
    if (ref.entrypoint.empty())
        return ref.address.id();
    return ref.address.id() + "%" + ref.entrypoint;
}

// Micheline data encodings of the standard calls, following the published
// parameter shapes (the numeric leaf is validated by the target's own type).
MichelineNode encode_standard_call(const EntrypointCall& call) {
    struct Encoder {
        MichelineNode operator()(const TransferCall& c) {
            return MichelineNode::prim(
                "Pair",
                {MichelineNode::string(c.from.id()),
                 MichelineNode::prim("Pair",
                                     {MichelineNode::string(c.to.id()),
                                      MichelineNode::integer(c.value.value())})});
        }
        MichelineNode operator()(const ApproveCall& c) {
            return MichelineNode::prim(
                "Pair", {MichelineNode::string(c.spender.id()),
                         MichelineNode::integer(c.new_allowance.value())});
        }
        MichelineNode operator()(const GetAllowanceCall& c) {
            return MichelineNode::prim(
                "Pair",
                {MichelineNode::prim("Pair",
                                     {MichelineNode::string(c.owner.id()),
                                      MichelineNode::string(c.spender.id())}),
                 MichelineNode::string(contract_literal(c.callback))});
        }
        MichelineNode operator()(const GetBalanceCall& c) {
            return MichelineNode::prim(
                "Pair", {MichelineNode::string(c.owner.id()),
                         MichelineNode::string(contract_literal(c.callback))});
        }
        MichelineNode operator()(const GetTotalSupplyCall& c) {
            return MichelineNode::prim(
                "Pair", {MichelineNode::prim("Unit"),
                         MichelineNode::string(contract_literal(c.callback))});
        }
        MichelineNode operator()(const OtherCall&) {
            throw Error("nonstandard entrypoints have no generic encoding");
        }
    };
    return std::visit(Encoder{}, call);
}

std::optional<ContractRef> node_contract(const MichelineNode& node) {
    if (node.kind != MichelineNode::Kind::string_lit)
        return std::nullopt;
    try {
        const std::size_t sep = node.text.find('%');
        if (sep == std::string::npos)
            return ContractRef{Address(node.text), ""};
        return ContractRef{Address(node.text.substr(0, sep)),
                           node.text.substr(sep + 1)};
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::optional<Address> node_address(const MichelineNode& node) {
    if (node.kind != MichelineNode::Kind::string_lit)
        return std::nullopt;
    try {
        return Address(node.text);
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::optional<TokenAmount> node_amount(const MichelineNode& node) {
    if (node.kind != MichelineNode::Kind::int_lit || node.int_value < 0)
        return std::nullopt;
    return TokenAmount(node.int_value);
}

bool is_pair_node(const MichelineNode& node) {
    return node.is_prim("Pair") && node.args.size() == 2;
}

// Best-effort reverse of encode_standard_call, for operations delivered to a
// reference model. Anything that does not match the published shapes becomes
// a failing call.
std::optional<EntrypointCall> decode_model_call(const std::string& entrypoint,
                                                const MichelineNode& node) {
    if (entrypoint == "transfer") {
        if (!is_pair_node(node) || !is_pair_node(node.args[1]))
            return std::nullopt;
        const auto from = node_address(node.args[0]);
        const auto to = node_address(node.args[1].args[0]);
        const auto value = node_amount(node.args[1].args[1]);
        if (!from || !to || !value)
            return std::nullopt;
        return EntrypointCall(TransferCall{*from, *to, *value});
    }
    if (entrypoint == "approve") {
        if (!is_pair_node(node))
            return std::nullopt;
        const auto spender = node_address(node.args[0]);
        const auto value = node_amount(node.args[1]);
        if (!spender || !value)
            return std::nullopt;
        return EntrypointCall(ApproveCall{*spender, *value});
    }
    if (entrypoint == "getAllowance") {
        if (!is_pair_node(node) || !is_pair_node(node.args[0]))
            return std::nullopt;
        const auto owner = node_address(node.args[0].args[0]);
        const auto spender = node_address(node.args[0].args[1]);
        const auto callback = node_contract(node.args[1]);
        if (!owner || !spender || !callback)
            return std::nullopt;
        return EntrypointCall(GetAllowanceCall{*owner, *spender, *callback});
    }
    if (entrypoint == "getBalance") {
        if (!is_pair_node(node))
            return std::nullopt;
        const auto owner = node_address(node.args[0]);
        const auto callback = node_contract(node.args[1]);
        if (!owner || !callback)
            return std::nullopt;
        return EntrypointCall(GetBalanceCall{*owner, *callback});
    }
    if (entrypoint == "getTotalSupply") {
        const MichelineNode* cb_node = &node;
        if (is_pair_node(node) && node.args[0].is_prim("Unit"))
            cb_node = &node.args[1];
        const auto callback = node_contract(*cb_node);
        if (!callback)
            return std::nullopt;
        return EntrypointCall(GetTotalSupplyCall{*callback});
    }
    // Positional text cannot be matched to named model arguments; deliver a
    // call the model will reject.
    return EntrypointCall(OtherCall{entrypoint, {{"_raw", ""}}});
}

struct PendingDelivery {
    Address sender;
    ContractRef dest;
    // Either a structured call (direct injections) or Micheline text from a
    // drained operation.
    std::optional<EntrypointCall> call;
    std::string value_text;
    Mutez amount;
};

struct DeliveryResult {
    bool ok = false;
    std::vector<EmittedOperation> ops;
    std::string reason;
};

DeliveryResult deliver_failure(std::string reason) {
    DeliveryResult r;
    r.reason = std::move(reason);
    return r;
}

DeliveryResult deliver(ChainState& chain, const PendingDelivery& d) {
    if (!chain.has(d.dest.address))
        return deliver_failure("no contract at " + d.dest.address.id());
    ContractInstance& instance = chain.at(d.dest.address);

    if (auto* recorder = std::get_if<RecorderInstance>(&instance)) {
        recorder->has_record = true;
        recorder->value_text =
            d.call ? print_micheline(encode_standard_call(*d.call))
                   : d.value_text;
        recorder->amount = d.amount;
        return DeliveryResult{true, {}, ""};
    }

    const CallEnv env{d.sender, d.dest.address, d.amount};

    if (auto* model = std::get_if<ModelInstance>(&instance)) {
        EntrypointCall call = OtherCall{"", {}};
        if (d.call) {
            call = *d.call;
        } else {
            MichelineNode node;
            try {
                node = parse_micheline(d.value_text);
            } catch (const ParseError& e) {
                return deliver_failure(e.what());
            }
            auto decoded = decode_model_call(d.dest.entrypoint, node);
            if (!decoded)
                return deliver_failure("cannot decode parameter for " +
                                       d.dest.entrypoint);
            call = std::move(*decoded);
        }
        StepResult result = model->model->step(env, call, model->storage);
        if (!result.is_success)
            return deliver_failure(call_name(call) + " failed on " +
                                   model->model->name());
        model->storage = std::move(result.storage);
        return DeliveryResult{true, std::move(result.ops), ""};
    }

    auto& code = std::get<MichelsonInstance>(instance);
    const std::string entrypoint =
        d.call ? call_name(*d.call) : d.dest.entrypoint;
    const auto ep = find_entrypoint(code.program->parameter_ty, entrypoint);
    if (!ep)
        return deliver_failure("no entrypoint %" + entrypoint + " at " +
                               d.dest.address.id());
    Value param;
    try {
        const MichelineNode node = d.call
                                       ? encode_standard_call(*d.call)
                                       : parse_micheline(d.value_text);
        param = elaborate_value(node, ep->ty);
    } catch (const Error& e) {
        return deliver_failure(e.what());
    }
    for (std::size_t i = ep->rights.size(); i-- > 0;)
        param = ep->rights[i] ? Value::right(std::move(param))
                              : Value::left(std::move(param));

    const ChainResolver resolver = chain.resolver();
    InterpretResult result = interpret(*code.program, env, param,
                                       code.storage, &resolver);
    switch (result.status) {
    case InterpretResult::Status::success:
        code.storage = std::move(result.storage);
        return DeliveryResult{true, std::move(result.ops), ""};
    case InterpretResult::Status::failed:
        return deliver_failure("failed with " +
                               print_value(result.fail_value));
    case InterpretResult::Status::step_limit:
        return deliver_failure("step limit exceeded");
    }
    return deliver_failure("unreachable");
}

InjectionOutcome run_injection(ChainState& chain, PendingDelivery root) {
    const ChainState snapshot = chain;
    InjectionOutcome outcome;

    std::deque<PendingDelivery> queue;
    queue.push_back(std::move(root));
    bool is_root = true;
    std::size_t budget = 1024;

    while (!queue.empty()) {
        if (budget-- == 0) {
            chain = snapshot;
            outcome.failure_reason = "operation budget exhausted";
            return outcome;
        }
        const PendingDelivery d = std::move(queue.front());
        queue.pop_front();
        DeliveryResult result = deliver(chain, d);
        if (!result.ok) {
            chain = snapshot;
            outcome.root_ops.clear();
            outcome.failure_reason = std::move(result.reason);
            return outcome;
        }
        if (is_root) {
            outcome.root_ops = result.ops;
            is_root = false;
        }
        for (EmittedOperation& op : result.ops) {
            PendingDelivery next;
            next.sender = d.dest.address;
            next.dest = op.destination;
            next.value_text = std::move(op.value);
            next.amount = op.amount;
            queue.push_back(std::move(next));
        }
    }
    outcome.success = true;
    return outcome;
}

}  // namespace

InjectionOutcome inject_call(ChainState& chain, const Address& sender,
                             const Address& target, const EntrypointCall& call,
                             const Mutez& amount) {
    PendingDelivery root;
    root.sender = sender;
    root.dest = ContractRef{target, call_name(call)};
    root.call = call;
    root.amount = amount;
    return run_injection(chain, std::move(root));
}

InjectionOutcome inject_value(ChainState& chain, const Address& sender,
                              const ContractRef& dest,
                              const std::string& value_text,
                              const Mutez& amount) {
    PendingDelivery root;
    root.sender = sender;
    root.dest = dest;
    root.value_text = value_text;
    root.amount = amount;
    return run_injection(chain, std::move(root));
}

namespace {

TokenAmount recorded_amount(const ChainState& scratch, const Address& recorder,
                            const std::string& what) {
    const RecorderInstance* r = scratch.recorder(recorder);
    if (r == nullptr || !r->has_record)
        throw ObservationIncomplete(what + ": callback never invoked");
    try {
        return TokenAmount::from_string(r->value_text);
    } catch (const Error&) {
        throw ObservationIncomplete(what + ": callback carried '" +
                                    r->value_text +
                                    "', expected a token amount");
    }
}

template <typename MakeCall>
TokenAmount query_view(const ChainState& chain, const Address& target,
                       MakeCall&& make_call, const std::string& what) {
    // Fresh scratch per query: a misbehaving view cannot leak state into
    // later queries, and the real chain is never touched.
    ChainState scratch = chain;
    const Address rec =
        scratch.originate(RecorderInstance{Ty::int_(), false, "", Mutez(0)});
    const InjectionOutcome outcome =
        inject_call(scratch, Address("observer"), target,
                    make_call(ContractRef{rec, ""}), Mutez(0));
    if (!outcome.success)
        throw ObservationIncomplete(what + ": " + outcome.failure_reason);
    return recorded_amount(scratch, rec, what);
}

LedgerStorage observe_via_views(const ChainState& chain, const Address& target,
                                const std::vector<Address>& universe) {
    LedgerStorage::BalanceMap balances;
    for (const Address& owner : universe) {
        const TokenAmount balance = query_view(
            chain, target,
            [&](ContractRef cb) {
                return EntrypointCall(GetBalanceCall{owner, std::move(cb)});
            },
            "getBalance(" + owner.id() + ")");
        if (!balance.is_zero())
            balances.emplace(owner, balance);
    }
    LedgerStorage::AllowanceMap allowances;
    for (const Address& owner : universe)
        for (const Address& spender : universe) {
            const TokenAmount allowance = query_view(
                chain, target,
                [&](ContractRef cb) {
                    return EntrypointCall(
                        GetAllowanceCall{owner, spender, std::move(cb)});
                },
                "getAllowance(" + owner.id() + ", " + spender.id() + ")");
            if (!allowance.is_zero())
                allowances.emplace(std::make_pair(owner, spender), allowance);
        }
    const TokenAmount total = query_view(
        chain, target,
        [&](ContractRef cb) {
            return EntrypointCall(GetTotalSupplyCall{std::move(cb)});
        },
        "getTotalSupply");
    return LedgerStorage::from_raw(std::move(balances), std::move(allowances),
                                   total);
}

}  // namespace

LedgerStorage observe_abstract_storage(const ChainState& chain,
                                       const Address& target,
                                       const std::vector<Address>& universe,
                                       ObservationMode mode) {
    if (mode == ObservationMode::views)
        return observe_via_views(chain, target, universe);

    const ContractInstance& instance = chain.at(target);
    if (const auto* model = std::get_if<ModelInstance>(&instance))
        return model->model->abstract_view(model->storage);
    if (const auto* code = std::get_if<MichelsonInstance>(&instance))
        return decode_abstract_storage(code->storage, code->layout);
    throw ObservationIncomplete("target " + target.id() +
                                " is a recorder, not a token contract");
}

std::vector<std::string> scan_storage_defects(const ChainState& chain,
                                              const Address& target) {
    const ContractInstance& instance = chain.at(target);
    if (const auto* model = std::get_if<ModelInstance>(&instance)) {
        const LedgerStorage view = model->model->abstract_view(model->storage);
        if (!view.is_canonical())
            return {"model view stores zero entries"};
        return {};
    }
    if (const auto* code = std::get_if<MichelsonInstance>(&instance)) {
        try {
            std::vector<std::string> findings =
                scan_zero_entries(code->storage, code->layout);
            decode_abstract_storage(code->storage, code->layout);
            return findings;
        } catch (const LayoutMismatch& e) {
            return {e.what()};
        }
    }
    return {};
}

}  // namespace fa12
