// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/rng.hpp>
#include <fa12/suite.hpp>

namespace fa12 {

std::vector<Address> SuiteConfig::default_universe() {
    return {Address("alice"), Address("bob"),   Address("carol"),
            Address("dan"),   Address("eve"),  Address("frank")};
}

namespace {

// The runner redirects every view callback to its own recorder.
ContractRef placeholder_callback() {
    return ContractRef{Address("sink"), ""};
}

TokenAmount pick_token_value(Rng& rng, const SuiteConfig& config,
                             std::uint64_t zero_pct, std::uint64_t small_pct,
                             std::uint64_t huge_pct) {
    const std::uint64_t roll = rng.below(100);
    if (roll < zero_pct)
        return TokenAmount(0);
    if (roll < zero_pct + small_pct)
        return TokenAmount(1 + rng.below(20));
    if (roll < zero_pct + small_pct + huge_pct) {
        TokenAmount beyond_total = config.initial_balance;
        for (std::size_t i = 1; i < config.universe.size(); ++i)
            beyond_total = beyond_total + config.initial_balance;
        return beyond_total + TokenAmount(1 + rng.below(100));
    }
    return config.initial_balance;  // exact-balance boundary
}

Mutez pick_amount(Rng& rng, double nonzero_p, std::uint64_t cap) {
    if (rng.chance(nonzero_p))
        return Mutez(static_cast<std::int64_t>(1 + rng.below(cap)));
    return Mutez(0);
}

GeneratedCall generate_one(Rng& rng, const SuiteConfig& config,
                           const EntrypointSig& sig) {
    GeneratedCall gc;
    gc.sender = rng.pick(config.universe);
    gc.amount = Mutez(0);

    if (sig.name == "transfer") {
        TransferCall c{gc.sender, gc.sender, TokenAmount(0)};
        if (!rng.chance(0.55))
            c.from = rng.pick(config.universe);
        c.to = rng.chance(0.20) ? c.from : rng.pick(config.universe);
        c.value = pick_token_value(rng, config, 10, 65, 15);
        gc.call = c;
        gc.amount = pick_amount(rng, 0.10, 5);
    } else if (sig.name == "approve") {
        ApproveCall c{rng.pick(config.universe),
                      pick_token_value(rng, config, 15, 65, 15)};
        gc.call = c;
        gc.amount = pick_amount(rng, 0.10, 5);
    } else if (sig.name == "getAllowance") {
        const Address owner = rng.pick(config.universe);
        const Address spender =
            rng.chance(0.15) ? owner : rng.pick(config.universe);
        gc.call = GetAllowanceCall{owner, spender, placeholder_callback()};
        gc.amount = pick_amount(rng, 0.45, 10);
    } else if (sig.name == "getBalance") {
        gc.call = GetBalanceCall{rng.pick(config.universe),
                                 placeholder_callback()};
        gc.amount = pick_amount(rng, 0.45, 10);
    } else if (sig.name == "getTotalSupply") {
        gc.call = GetTotalSupplyCall{placeholder_callback()};
        gc.amount = pick_amount(rng, 0.45, 10);
    } else {
        OtherCall c{sig.name, {}};
        for (const ArgSpec& arg : sig.args) {
            switch (arg.kind) {
            case ArgKind::address:
                c.args[arg.name] = rng.pick(config.universe).id();
                break;
            case ArgKind::amount:
                c.args[arg.name] = TokenAmount(rng.below(21)).str();
                break;
            case ArgKind::flag:
                c.args[arg.name] = rng.chance(0.25) ? "true" : "false";
                break;
            }
        }
        gc.call = c;
        gc.amount = pick_amount(rng, 0.10, 5);
    }
    return gc;
}

}  // namespace

std::vector<GeneratedCall> generate_call_sequence(
    std::uint64_t seed, const SuiteConfig& config,
    const std::vector<EntrypointSig>& entrypoints) {
    // Weighted choice over declared entrypoints; extras share one slice.
    std::vector<std::pair<const EntrypointSig*, std::uint64_t>> table;
    std::size_t num_extras = 0;
    for (const EntrypointSig& sig : entrypoints)
        if (!sig.standard)
            ++num_extras;
    for (const EntrypointSig& sig : entrypoints) {
        std::uint64_t weight = 0;
        if (sig.name == "transfer")
            weight = 30;
        else if (sig.name == "approve")
            weight = 20;
        else if (sig.name == "getBalance")
            weight = 9;
        else if (sig.name == "getAllowance")
            weight = 9;
        else if (sig.name == "getTotalSupply")
            weight = 7;
        else
            weight = (15 + num_extras - 1) / num_extras;
        table.emplace_back(&sig, weight);
    }
    std::uint64_t total_weight = 0;
    for (const auto& [sig, weight] : table)
        total_weight += weight;

    std::vector<GeneratedCall> calls;
    if (total_weight == 0)
        return calls;
    Rng rng(mix64(mix64(seed) ^ 0x5541f12cULL));
    calls.reserve(config.sequence_length);
    for (std::size_t i = 0; i < config.sequence_length; ++i) {
        std::uint64_t roll = rng.below(total_weight);
        const EntrypointSig* chosen = table.front().first;
        for (const auto& [sig, weight] : table) {
            if (roll < weight) {
                chosen = sig;
                break;
            }
            roll -= weight;
        }
        calls.push_back(generate_one(rng, config, *chosen));
    }
    return calls;
}

}  // namespace fa12
