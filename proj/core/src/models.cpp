// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/models.hpp>

namespace fa12 {

StepResult StepResult::success(std::vector<EmittedOperation> ops,
                               ModelStorage storage) {
    StepResult r;
    r.is_success = true;
    r.ops = std::move(ops);
    r.storage = std::move(storage);
    return r;
}

StepResult StepResult::failure() {
    return StepResult{};
}

namespace {

std::vector<EntrypointSig> standard_signatures() {
    return {
        {"transfer", true, {}},       {"approve", true, {}},
        {"getAllowance", true, {}},   {"getBalance", true, {}},
        {"getTotalSupply", true, {}},
    };
}

ModelStorage init_balances(const ModelInitConfig& config) {
    ModelStorage storage;
    for (const Address& a : config.universe)
        storage.ledger =
            set_balance(storage.ledger, a, config.initial_balance);
    if (config.admin.has_value())
        storage.admin = *config.admin;
    else if (!config.universe.empty())
        storage.admin = config.universe.front();
    return storage;
}

EmittedOperation callback_op(const ContractRef& callback, const Mutez& amount,
                             const TokenAmount& value) {
    return EmittedOperation{callback, amount, value.str()};
}

/// Shared transition of the five standard entrypoints, parameterized by the
/// two reintroducible defects.
class StandardCore {
public:
    explicit StandardCore(BuggyFlags flags = {}) : flags_(flags) {}

    StepResult step(const CallEnv& env, const EntrypointCall& call,
                    const ModelStorage& storage) const {
        if (const auto* c = std::get_if<TransferCall>(&call))
            return transfer(env, *c, storage);
        if (const auto* c = std::get_if<ApproveCall>(&call))
            return approve(env, *c, storage);
        if (const auto* c = std::get_if<GetAllowanceCall>(&call))
            return view(env, c->callback,
                        get_allowance(storage.ledger, c->owner, c->spender),
                        storage);
        if (const auto* c = std::get_if<GetBalanceCall>(&call))
            return view(env, c->callback, get_balance(storage.ledger, c->owner),
                        storage);
        if (const auto* c = std::get_if<GetTotalSupplyCall>(&call))
            return view(env, c->callback, get_total_supply(storage.ledger),
                        storage);
        return StepResult::failure();  // unknown entrypoint
    }

private:
    StepResult transfer(const CallEnv& env, const TransferCall& c,
                        const ModelStorage& storage) const {
        if (flags_.self_transfer_noop && c.from == c.to)
            return StepResult::success({}, storage);

        if (get_balance(storage.ledger, c.from) < c.value)
            return StepResult::failure();
        const bool spend_allowance = env.sender != c.from;
        if (spend_allowance &&
            get_allowance(storage.ledger, c.from, env.sender) < c.value)
            return StepResult::failure();

        ModelStorage next = storage;
        next.ledger = set_balance(next.ledger, c.from,
                                  get_balance(next.ledger, c.from) - c.value);
        next.ledger = set_balance(next.ledger, c.to,
                                  get_balance(next.ledger, c.to) + c.value);
        if (spend_allowance)
            next.ledger = set_allowance(
                next.ledger, c.from, env.sender,
                get_allowance(next.ledger, c.from, env.sender) - c.value);
        return StepResult::success({}, std::move(next));
    }

    StepResult approve(const CallEnv& env, const ApproveCall& c,
                       const ModelStorage& storage) const {
        ModelStorage next = storage;
        next.ledger =
            set_allowance(next.ledger, env.sender, c.spender, c.new_allowance);
        return StepResult::success({}, std::move(next));
    }

    StepResult view(const CallEnv& env, const ContractRef& callback,
                    const TokenAmount& value,
                    const ModelStorage& storage) const {
        const Mutez forwarded =
            flags_.view_keeps_tokens ? Mutez(0) : env.amount;
        return StepResult::success({callback_op(callback, forwarded, value)},
                                   storage);
    }

    BuggyFlags flags_;
};

class StandardModel : public ContractModel {
public:
    explicit StandardModel(BuggyFlags flags = {}) : core_(flags) {}

    std::string name() const override { return "standard"; }

    std::vector<EntrypointSig> param_describe() const override {
        return standard_signatures();
    }

    ModelStorage init(const ModelInitConfig& config) const override {
        return init_balances(config);
    }

    StepResult step(const CallEnv& env, const EntrypointCall& call,
                    const ModelStorage& storage) const override {
        return core_.step(env, call, storage);
    }

    LedgerStorage abstract_view(const ModelStorage& storage) const override {
        // Total supply is not tracked here; report the recomputed sum.
        return LedgerStorage::from_raw(storage.ledger.balances(),
                                       storage.ledger.allowances(),
                                       sum_of_all_balances(storage.ledger));
    }

private:
    StandardCore core_;
};

class BuggyModel : public StandardModel {
public:
    explicit BuggyModel(BuggyFlags flags)
        : StandardModel(flags), flags_(flags) {}

    std::string name() const override {
        std::string n = "legacy-buggy";
        std::string sep = "(";
        if (flags_.self_transfer_noop) {
            n += sep + "self_transfer_noop";
            sep = ",";
        }
        if (flags_.view_keeps_tokens) {
            n += sep + "view_keeps_tokens";
            sep = ",";
        }
        if (sep == ",")
            n += ")";
        return n;
    }

private:
    BuggyFlags flags_;
};

class ManagedModel : public ContractModel {
public:
    std::string name() const override { return "managed"; }

    std::vector<EntrypointSig> param_describe() const override {
        std::vector<EntrypointSig> sigs = standard_signatures();
        sigs.push_back({"mint",
                        false,
                        {{"to", ArgKind::address}, {"value", ArgKind::amount}}});
        sigs.push_back({"burn",
                        false,
                        {{"from", ArgKind::address},
                         {"value", ArgKind::amount}}});
        sigs.push_back({"setAdmin", false, {{"addr", ArgKind::address}}});
        sigs.push_back({"pause", false, {{"flag", ArgKind::flag}}});
        return sigs;
    }

    ModelStorage init(const ModelInitConfig& config) const override {
        return init_balances(config);
    }

    StepResult step(const CallEnv& env, const EntrypointCall& call,
                    const ModelStorage& storage) const override {
        if (const auto* other = std::get_if<OtherCall>(&call))
            return admin_step(env, *other, storage);
        if (storage.paused)
            return StepResult::failure();
        return core_.step(env, call, storage);
    }

    LedgerStorage abstract_view(const ModelStorage& storage) const override {
        return storage.ledger;
    }

private:
    StepResult admin_step(const CallEnv& env, const OtherCall& call,
                          const ModelStorage& storage) const {
        if (call.name == "mint" || call.name == "burn") {
            if (env.sender != storage.admin)
                return StepResult::failure();
            const auto addr_arg =
                call.args.find(call.name == "mint" ? "to" : "from");
            const auto value_arg = call.args.find("value");
            if (addr_arg == call.args.end() || value_arg == call.args.end())
                return StepResult::failure();
            Address account;
            TokenAmount value;
            try {
                account = Address(addr_arg->second);
                value = TokenAmount::from_string(value_arg->second);
            } catch (const Error&) {
                return StepResult::failure();
            }
            ModelStorage next = storage;
            if (call.name == "mint") {
                next.ledger =
                    set_balance(next.ledger, account,
                                get_balance(next.ledger, account) + value);
            } else {
                if (get_balance(next.ledger, account) < value)
                    return StepResult::failure();
                next.ledger =
                    set_balance(next.ledger, account,
                                get_balance(next.ledger, account) - value);
            }
            return StepResult::success({}, std::move(next));
        }
        if (call.name == "setAdmin") {
            const auto addr_arg = call.args.find("addr");
            if (addr_arg == call.args.end())
                return StepResult::failure();
            ModelStorage next = storage;
            try {
                next.admin = Address(addr_arg->second);
            } catch (const Error&) {
                return StepResult::failure();
            }
            return StepResult::success({}, std::move(next));
        }
        if (call.name == "pause") {
            const auto flag_arg = call.args.find("flag");
            if (flag_arg == call.args.end() ||
                (flag_arg->second != "true" && flag_arg->second != "false"))
                return StepResult::failure();
            ModelStorage next = storage;
            next.paused = flag_arg->second == "true";
            return StepResult::success({}, std::move(next));
        }
        return StepResult::failure();
    }

    StandardCore core_;
};

}  // namespace

std::shared_ptr<const ContractModel> model_standard() {
    return std::make_shared<StandardModel>();
}

std::shared_ptr<const ContractModel> model_managed() {
    return std::make_shared<ManagedModel>();
}

std::shared_ptr<const ContractModel> model_legacy_buggy(BuggyFlags flags) {
    return std::make_shared<BuggyModel>(flags);
}

}  // namespace fa12
