// fa12check: conformance laboratory for the FA1.2 token-ledger standard
// Copyright 2026 The fa12check Authors.
// Licensed under the Apache License, Version 2.0.

#include <fa12/layout.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fa12 {

namespace {

std::string trim(const std::string& s) {
    const std::size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<bool> parse_path(const std::string& text,
                             const std::string& field) {
    std::vector<bool> path;
    if (text.empty() || text == ".")
        return path;
    std::istringstream in(text);
    std::string step;
    while (std::getline(in, step, '/')) {
        step = trim(step);
        if (step == "car")
            path.push_back(false);
        else if (step == "cdr")
            path.push_back(true);
        else
            throw LayoutError("bad step '" + step + "' in " + field +
                              " (expected car or cdr)");
    }
    return path;
}

}  // namespace

StorageLayout parse_storage_layout(const std::string& text) {
    StorageLayout layout;
    bool seen_balances = false;
    bool seen_allowances = false;
    bool seen_shape = false;
    bool seen_total = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw LayoutError("line " + std::to_string(lineno) +
                              ": expected 'field = value'");
        const std::string field = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (field == "balances_path") {
            layout.balances_path = parse_path(value, field);
            seen_balances = true;
        } else if (field == "allowances_path") {
            layout.allowances_path = parse_path(value, field);
            seen_allowances = true;
        } else if (field == "allowance_shape") {
            if (value == "nested")
                layout.allowance_shape = StorageLayout::AllowanceShape::nested;
            else if (value == "pair-key")
                layout.allowance_shape =
                    StorageLayout::AllowanceShape::pair_key;
            else
                throw LayoutError("allowance_shape must be nested or "
                                  "pair-key, got '" +
                                  value + "'");
            seen_shape = true;
        } else if (field == "total_path") {
            layout.total_path = parse_path(value, field);
            seen_total = true;
        } else {
            throw LayoutError("unknown layout field '" + field + "'");
        }
    }
    if (!seen_balances || !seen_allowances || !seen_shape || !seen_total)
        throw LayoutError("layout must define balances_path, "
                          "allowances_path, allowance_shape, and total_path");
    return layout;
}

StorageLayout load_storage_layout(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw LayoutError("cannot open layout file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_storage_layout(buffer.str());
}

namespace {

const Value& navigate(const Value& storage, const std::vector<bool>& path) {
    const Value* node = &storage;
    for (const bool cdr : path) {
        if (node->tag != Value::Tag::pair_v)
            throw LayoutMismatch("layout path expects a pair, found " +
                                 print_value(*node));
        node = &node->args[cdr ? 1 : 0];
    }
    return *node;
}

const Value& navigate_map(const Value& storage, const std::vector<bool>& path,
                          const std::string& what) {
    const Value& node = navigate(storage, path);
    if (node.tag != Value::Tag::map_v)
        throw LayoutMismatch("layout " + what + " path does not reach a map");
    return node;
}

Address key_address(const Value& key, const std::string& what) {
    if (key.tag != Value::Tag::string_v)
        throw LayoutMismatch(what + " key is not an address");
    try {
        return Address(key.str);
    } catch (const Error& e) {
        throw LayoutMismatch(what + " key: " + e.what());
    }
}

BigInt entry_amount(const Value& val, const std::string& what) {
    if (val.tag != Value::Tag::int_v)
        throw LayoutMismatch(what + " entry is not a number");
    if (val.num < 0)
        throw LayoutMismatch(what + " entry is negative: " + val.num.str());
    return val.num;
}

template <typename Fn>
void for_each_allowance(const Value& storage, const StorageLayout& layout,
                        Fn&& fn) {
    const Value& allowances =
        navigate_map(storage, layout.allowances_path, "allowances");
    if (layout.allowance_shape == StorageLayout::AllowanceShape::pair_key) {
        for (std::size_t i = 0; i < allowances.map_size(); ++i) {
            const Value& key = allowances.map_key(i);
            if (key.tag != Value::Tag::pair_v)
                throw LayoutMismatch("allowance key is not a pair");
            fn(key_address(key.first(), "allowance owner"),
               key_address(key.second(), "allowance spender"),
               allowances.map_val(i));
        }
        return;
    }
    for (std::size_t i = 0; i < allowances.map_size(); ++i) {
        const Address owner =
            key_address(allowances.map_key(i), "allowance owner");
        const Value& inner = allowances.map_val(i);
        if (inner.tag != Value::Tag::map_v)
            throw LayoutMismatch("nested allowance entry is not a map");
        for (std::size_t j = 0; j < inner.map_size(); ++j)
            fn(owner, key_address(inner.map_key(j), "allowance spender"),
               inner.map_val(j));
    }
}

}  // namespace

LedgerStorage decode_abstract_storage(const Value& storage,
                                      const StorageLayout& layout) {
    LedgerStorage::BalanceMap balances;
    const Value& balance_map =
        navigate_map(storage, layout.balances_path, "balances");
    for (std::size_t i = 0; i < balance_map.map_size(); ++i) {
        const Address owner = key_address(balance_map.map_key(i), "balance");
        const BigInt amount = entry_amount(balance_map.map_val(i), "balance");
        if (amount != 0)
            balances.emplace(owner, TokenAmount(amount));
    }

    LedgerStorage::AllowanceMap allowances;
    for_each_allowance(storage, layout,
                       [&](const Address& owner, const Address& spender,
                           const Value& val) {
                           const BigInt amount =
                               entry_amount(val, "allowance");
                           if (amount != 0)
                               allowances.emplace(
                                   std::make_pair(owner, spender),
                                   TokenAmount(amount));
                       });

    const Value& total_node = navigate(storage, layout.total_path);
    const BigInt total = entry_amount(total_node, "total supply");

    return LedgerStorage::from_raw(std::move(balances), std::move(allowances),
                                   TokenAmount(total));
}

std::vector<std::string> scan_zero_entries(const Value& storage,
                                           const StorageLayout& layout) {
    std::vector<std::string> findings;
    const Value& balance_map =
        navigate_map(storage, layout.balances_path, "balances");
    for (std::size_t i = 0; i < balance_map.map_size(); ++i) {
        const Value& val = balance_map.map_val(i);
        if (val.tag == Value::Tag::int_v && val.num == 0)
            findings.push_back("stored zero balance for " +
                               print_value(balance_map.map_key(i)));
    }
    for_each_allowance(storage, layout,
                       [&](const Address& owner, const Address& spender,
                           const Value& val) {
                           if (val.tag == Value::Tag::int_v && val.num == 0)
                               findings.push_back(
                                   "stored zero allowance for (" +
                                   owner.id() + ", " + spender.id() + ")");
                       });
    return findings;
}

namespace {

Value default_value(const Ty& ty) {
    switch (ty.tag) {
    case Ty::Tag::nat_t:
    case Ty::Tag::int_t:
    case Ty::Tag::mutez_t:
        return Value::integer(0);
    case Ty::Tag::address_t:
        return Value::string("nobody");
    case Ty::Tag::bool_t:
        return Value::boolean(false);
    case Ty::Tag::string_t:
        return Value::string("");
    case Ty::Tag::bytes_t:
        return Value::bytes({});
    case Ty::Tag::unit_t:
        return Value::unit();
    case Ty::Tag::pair_t:
        return Value::pair(default_value(ty.args[0]),
                           default_value(ty.args[1]));
    case Ty::Tag::or_t:
        return Value::left(default_value(ty.args[0]));
    case Ty::Tag::option_t:
        return Value::none();
    case Ty::Tag::map_t:
    case Ty::Tag::big_map_t:
        return Value::map({});
    case Ty::Tag::list_t:
        return Value::list({});
    case Ty::Tag::contract_t:
    case Ty::Tag::operation_t:
        break;
    }
    throw LayoutError("cannot synthesize a default " + ty.str());
}

bool is_numeric_leaf(const Ty& ty) {
    return ty.tag == Ty::Tag::nat_t || ty.tag == Ty::Tag::int_t;
}

using PathTail = std::optional<std::vector<bool>>;

PathTail descend(const PathTail& tail, bool step) {
    if (!tail || tail->empty() || tail->front() != step)
        return std::nullopt;
    return std::vector<bool>(tail->begin() + 1, tail->end());
}

bool ends_here(const PathTail& tail) {
    return tail && tail->empty();
}

struct Synthesizer {
    const StorageLayout& layout;
    const std::vector<Address>& universe;
    const TokenAmount& initial_balance;

    Value build(const Ty& ty, const PathTail& balances,
                const PathTail& allowances, const PathTail& total) const {
        const int endpoints = static_cast<int>(ends_here(balances)) +
                              static_cast<int>(ends_here(allowances)) +
                              static_cast<int>(ends_here(total));
        if (endpoints > 1)
            throw LayoutError("layout paths collide");
        if (ends_here(balances))
            return build_balances(ty);
        if (ends_here(allowances))
            return build_allowances(ty);
        if (ends_here(total))
            return build_total(ty);
        if (balances || allowances || total) {
            if (ty.tag != Ty::Tag::pair_t)
                throw LayoutError("layout path expects a pair but the "
                                  "storage type has " +
                                  ty.str());
            return Value::pair(
                build(ty.args[0], descend(balances, false),
                      descend(allowances, false), descend(total, false)),
                build(ty.args[1], descend(balances, true),
                      descend(allowances, true), descend(total, true)));
        }
        return default_value(ty);
    }

    Value build_balances(const Ty& ty) const {
        if ((ty.tag != Ty::Tag::map_t && ty.tag != Ty::Tag::big_map_t) ||
            ty.args[0].tag != Ty::Tag::address_t ||
            !is_numeric_leaf(ty.args[1]))
            throw LayoutError(
                "balances_path must name a map from address to nat or int, "
                "found " +
                ty.str());
        std::vector<std::string> ids;
        for (const Address& addr : universe)
            ids.push_back(addr.id());
        std::sort(ids.begin(), ids.end());
        std::vector<Value> flat;
        for (const std::string& id : ids) {
            flat.push_back(Value::string(id));
            flat.push_back(Value::integer(initial_balance.value()));
        }
        return Value::map(std::move(flat));
    }

    Value build_allowances(const Ty& ty) const {
        if (ty.tag != Ty::Tag::map_t && ty.tag != Ty::Tag::big_map_t)
            throw LayoutError("allowances_path must name a map, found " +
                              ty.str());
        return Value::map({});
    }

    Value build_total(const Ty& ty) const {
        if (!is_numeric_leaf(ty))
            throw LayoutError("total_path must name a nat or int, found " +
                              ty.str());
        BigInt total = 0;
        for (std::size_t i = 0; i < universe.size(); ++i)
            total += initial_balance.value();
        return Value::integer(std::move(total));
    }
};

}  // namespace

Value synthesize_storage(const Ty& storage_ty, const StorageLayout& layout,
                         const std::vector<Address>& universe,
                         const TokenAmount& initial_balance) {
    const Synthesizer synth{layout, universe, initial_balance};
    return synth.build(storage_ty, layout.balances_path,
                       layout.allowances_path, layout.total_path);
}

}  // namespace fa12
