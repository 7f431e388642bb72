// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/scenario.hpp>

#include <json.hpp>

#include <set>

namespace fa12 {

namespace {

using nlohmann::json;

[[noreturn]] void fail_at(const std::string& pointer,
                          const std::string& message) {
    throw ScenarioError(pointer + ": " + message);
}

const json& require_field(const json& object, const std::string& pointer,
                          const std::string& name) {
    const auto it = object.find(name);
    if (it == object.end())
        fail_at(pointer + "/" + name, "missing required field");
    return *it;
}

std::string require_string(const json& value, const std::string& pointer) {
    if (!value.is_string())
        fail_at(pointer, "expected a string");
    return value.get<std::string>();
}

Address require_address(const json& value, const std::string& pointer) {
    const std::string text = require_string(value, pointer);
    try {
        return Address(text);
    } catch (const Error& e) {
        fail_at(pointer, e.what());
    }
}

TokenAmount require_token_amount(const std::string& text,
                                 const std::string& pointer) {
    try {
        return TokenAmount::from_string(text);
    } catch (const Error& e) {
        fail_at(pointer, e.what());
    }
}

std::string scalar_to_string(const json& value, const std::string& pointer) {
    if (value.is_string())
        return value.get<std::string>();
    if (value.is_number_integer())
        return std::to_string(value.get<std::int64_t>());
    if (value.is_boolean())
        return value.get<bool>() ? "true" : "false";
    fail_at(pointer, "expected a string, integer, or boolean");
}

std::map<std::string, std::string> parse_args(const json& call,
                                              const std::string& pointer) {
    std::map<std::string, std::string> args;
    const auto it = call.find("args");
    if (it == call.end())
        return args;
    if (!it->is_object())
        fail_at(pointer + "/args", "expected an object");
    for (const auto& [name, value] : it->items())
        args[name] = scalar_to_string(value, pointer + "/args/" + name);
    return args;
}

// Exact argument sets for the standard entrypoints; anything else is kept
// verbatim as a nonstandard call.
EntrypointCall build_call(const std::string& entrypoint,
                          std::map<std::string, std::string> args,
                          const std::string& pointer) {
    const auto take = [&](const char* name) {
        const auto it = args.find(name);
        if (it == args.end())
            fail_at(pointer + "/args/" + name, "missing required argument");
        std::string value = std::move(it->second);
        args.erase(it);
        return value;
    };
    const auto take_address = [&](const char* name) {
        const std::string text = take(name);
        try {
            return Address(text);
        } catch (const Error& e) {
            fail_at(pointer + "/args/" + std::string(name), e.what());
        }
    };
    const auto done = [&]() {
        if (!args.empty())
            fail_at(pointer + "/args/" + args.begin()->first,
                    "unexpected argument for this entrypoint");
    };
    const ContractRef callback{Address("sink"), ""};  // runner supplies real

    if (entrypoint == "transfer") {
        const Address from = take_address("from");
        const Address to = take_address("to");
        const TokenAmount value =
            require_token_amount(take("value"), pointer + "/args/value");
        done();
        return TransferCall{from, to, value};
    }
    if (entrypoint == "approve") {
        const Address spender = take_address("spender");
        const TokenAmount value =
            require_token_amount(take("value"), pointer + "/args/value");
        done();
        return ApproveCall{spender, value};
    }
    if (entrypoint == "getAllowance") {
        const Address owner = take_address("owner");
        const Address spender = take_address("spender");
        done();
        return GetAllowanceCall{owner, spender, callback};
    }
    if (entrypoint == "getBalance") {
        const Address owner = take_address("owner");
        done();
        return GetBalanceCall{owner, callback};
    }
    if (entrypoint == "getTotalSupply") {
        done();
        return GetTotalSupplyCall{callback};
    }
    return OtherCall{entrypoint, std::move(args)};
}

GeneratedCall parse_call(const json& call, const std::string& pointer) {
    if (!call.is_object())
        fail_at(pointer, "expected an object");
    GeneratedCall gc;
    gc.sender = require_address(require_field(call, pointer, "sender"),
                                pointer + "/sender");
    const std::string entrypoint = require_string(
        require_field(call, pointer, "entrypoint"), pointer + "/entrypoint");
    if (entrypoint.empty())
        fail_at(pointer + "/entrypoint", "must not be empty");
    gc.call = build_call(entrypoint, parse_args(call, pointer), pointer);
    gc.amount = Mutez(0);
    if (const auto it = call.find("amount"); it != call.end()) {
        if (!it->is_number_integer() || it->get<std::int64_t>() < 0)
            fail_at(pointer + "/amount", "expected a nonnegative integer");
        gc.amount = Mutez(it->get<std::int64_t>());
    }
    return gc;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json document;
    try {
        document = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("/: not valid JSON: ") + e.what());
    }
    if (!document.is_object())
        fail_at("/", "expected a JSON object");

    Scenario scenario;
    scenario.target = require_string(
        require_field(document, "", "target"), "/target");
    if (scenario.target.empty())
        fail_at("/target", "must not be empty");
    scenario.init =
        require_string(require_field(document, "", "init"), "/init");

    const json& universe = require_field(document, "", "universe");
    if (!universe.is_array() || universe.empty())
        fail_at("/universe", "expected a nonempty array of addresses");
    std::set<Address> seen;
    for (std::size_t i = 0; i < universe.size(); ++i) {
        const Address addr = require_address(
            universe[i], "/universe/" + std::to_string(i));
        if (!seen.insert(addr).second)
            fail_at("/universe/" + std::to_string(i), "duplicate address");
        scenario.universe.push_back(addr);
    }

    const json& calls = require_field(document, "", "calls");
    if (!calls.is_array())
        fail_at("/calls", "expected an array");
    for (std::size_t i = 0; i < calls.size(); ++i)
        scenario.calls.push_back(
            parse_call(calls[i], "/calls/" + std::to_string(i)));

    if (const auto it = document.find("layout"); it != document.end())
        scenario.layout_path = require_string(*it, "/layout");
    if (const auto it = document.find("flags"); it != document.end()) {
        if (!it->is_array())
            fail_at("/flags", "expected an array of strings");
        for (std::size_t i = 0; i < it->size(); ++i)
            scenario.flags.push_back(
                require_string((*it)[i], "/flags/" + std::to_string(i)));
    }
    if (const auto it = document.find("strict_approve");
        it != document.end()) {
        if (!it->is_boolean())
            fail_at("/strict_approve", "expected a boolean");
        scenario.strict_approve = it->get<bool>();
    }
    if (const auto it = document.find("observation"); it != document.end()) {
        const std::string mode = require_string(*it, "/observation");
        if (mode == "views")
            scenario.observation = ObservationMode::views;
        else if (mode == "direct")
            scenario.observation = ObservationMode::direct;
        else
            fail_at("/observation", "expected \"views\" or \"direct\"");
    }
    return scenario;
}

}  // namespace fa12
